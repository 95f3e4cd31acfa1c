#include "gg/gates.hpp"
#include "gg/modn.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace gg {

namespace {

Int int_pow(long base, int exp) {
    Int out;
    mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(base),
                  static_cast<unsigned long>(exp));
    return out;
}

Rat rat_from_json(const nlohmann::json& j) {
    if (j.is_number_integer()) return Rat(static_cast<long>(j.get<long long>()));
    Rat r(j.get<std::string>());
    r.canonicalize();
    return r;
}

Int int_from_json(const nlohmann::json& j) {
    if (j.is_number_integer()) return Int(static_cast<long>(j.get<long long>()));
    return Int(j.get<std::string>());
}

// alpha/beta polynomial in gamma, evaluated in the algebra by Horner.
AlgebraElem eval_poly_at(const std::array<Rat, 5>& c, const AlgebraElem& g) {
    AlgebraElem acc;
    for (int i = 4; i >= 0; --i) {
        acc = d_mul(acc, g);
        acc = acc + AlgebraElem(LElem(MElem(c[static_cast<std::size_t>(i)])));
    }
    return acc;
}

// (c0*t^0 + ... + c4*t^4 as GF(2) bitmask) helpers for the mod-2 test.
unsigned poly_mod2(const std::array<Int, 6>& mp) {
    unsigned bits = 0;
    for (std::size_t i = 0; i < 6; ++i)
        if (mpz_odd_p(mp[i].get_mpz_t())) bits |= 1u << i;
    return bits;
}

unsigned gf2_rem(unsigned a, unsigned b) {
    int db = 31 - __builtin_clz(b);
    while (a != 0) {
        int da = 31 - __builtin_clz(a);
        if (da < db) break;
        a ^= b << (da - db);
    }
    return a;
}

bool x_central_in_e(const AlgebraElem& x) {
    for (std::size_t i = 1; i < 5; ++i)
        if (!x.coeff(i).is_zero()) return false;
    return x.coeff(0).in_E();
}

void process_hit_impl(const OrderBundle& order, const std::vector<CandidateEntry>& candidates,
                      const std::map<Int, std::vector<std::size_t>>& by_q, const Int& target,
                      const std::vector<Int>& v, const Int& value, std::vector<NormSolution>& out);

std::string vec50_key(const std::vector<Rat>& v) {
    std::string key;
    for (const Rat& r : v) {
        key += r.get_str();
        key += ',';
    }
    return key;
}

}  // namespace

bool is_split_prime(long p) {
    long r = p % 7;
    return r == 1 || r == 2 || r == 4;
}

int gate_exponent(long p) {
    if (p == 2 || p == 7) throw std::invalid_argument("gate_exponent: p must avoid 2 and 7");
    return is_split_prime(p) ? 1 : 2;
}

EElem split_prime_element(long p) {
    if (!is_split_prime(p)) throw std::invalid_argument("split_prime_element: p is inert");
    // r^2 + rs + 2s^2 >= 7s^2/4, so s is bounded by sqrt(4p/7); r by |r| <= s + sqrt(p).
    for (long s = 1; 7 * s * s <= 4 * p; ++s) {
        for (long r = 0; r <= p; ++r) {
            if (r * r + r * s + 2 * s * s == p) return EElem(Rat(r), Rat(s));
            long rn = -r;
            if (rn != r && rn * rn + rn * s + 2 * s * s == p) return EElem(Rat(rn), Rat(s));
            if (r > s && (r - s) * (r - s) > p) break;
        }
    }
    throw std::logic_error("split_prime_element: no representation found");
}

bool minpoly_irreducible_mod2(const std::array<Int, 6>& mp) {
    unsigned f = poly_mod2(mp);
    if ((f & (1u << 5)) == 0) return false;  // leading coefficient must be odd
    // A degree-5 polynomial over GF(2) is irreducible iff it has no linear
    // factor (no root at 0 or 1) and no factor x^2 + x + 1 (the only
    // irreducible quadratic).
    if ((f & 1u) == 0) return false;              // root at 0
    if (__builtin_popcount(f) % 2 == 0) return false;  // root at 1
    return gf2_rem(f, 0b111u) != 0;
}

bool norm_identity_holds(const CandidateEntry& c) {
    // alpha^2 + alpha*beta + 2*beta^2 reduced modulo the (monic) minpoly.
    std::array<Rat, 9> prod;
    prod.fill(Rat(0));
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j)
            prod[i + j] += c.alpha_expr[i] * c.alpha_expr[j] +
                           c.alpha_expr[i] * c.beta_expr[j] +
                           2 * c.beta_expr[i] * c.beta_expr[j];
    for (std::size_t i = 8; i >= 5; --i) {
        Rat lead = prod[i];
        if (lead == 0) continue;
        prod[i] = 0;
        for (std::size_t j = 0; j < 5; ++j)
            prod[i - 5 + j] -= lead * Rat(c.gamma_minpoly[j]);
    }
    if (prod[0] != Rat(c.target)) return false;
    for (std::size_t i = 1; i < 5; ++i)
        if (prod[i] != 0) return false;
    return true;
}

std::vector<CandidateEntry> parse_candidates(const std::string& json_text,
                                             std::vector<std::string>* rejects) {
    nlohmann::json doc = nlohmann::json::parse(json_text);
    if (!doc.is_array()) throw std::invalid_argument("candidate file: top-level array expected");
    std::vector<CandidateEntry> out;
    for (const auto& item : doc) {
        CandidateEntry c;
        c.source_id = item.value("id", std::string("unnamed"));
        const auto& mp = item.at("minpoly");
        if (mp.size() != 6) throw std::invalid_argument("candidate minpoly: 6 coefficients expected");
        for (std::size_t i = 0; i < 6; ++i) c.gamma_minpoly[i] = int_from_json(mp[i]);
        c.disc = int_from_json(item.at("disc"));
        const auto& al = item.at("alpha");
        const auto& be = item.at("beta");
        if (al.size() != 5 || be.size() != 5)
            throw std::invalid_argument("candidate alpha/beta: 5 coefficients expected");
        for (std::size_t i = 0; i < 5; ++i) {
            c.alpha_expr[i] = rat_from_json(al[i]);
            c.beta_expr[i] = rat_from_json(be[i]);
        }
        c.target = int_from_json(item.at("target"));
        if (c.gamma_minpoly[5] != 1) {
            if (rejects) rejects->push_back(c.source_id + ": minpoly not monic");
            continue;
        }
        if (!minpoly_irreducible_mod2(c.gamma_minpoly)) {
            if (rejects) rejects->push_back(c.source_id + ": minpoly reducible mod 2");
            continue;
        }
        if (!norm_identity_holds(c)) {
            if (rejects) rejects->push_back(c.source_id + ": norm identity fails");
            continue;
        }
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<CandidateEntry> load_candidates(const std::string& path,
                                            std::vector<std::string>* rejects) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open candidate file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_candidates(ss.str(), rejects);
}

Rat disc_bound(long p, int e, bool ramified7) {
    Rat c(134288, 1000000);
    c.canonicalize();
    Rat base = Rat(4) * Rat(int_pow(p, e));
    if (!ramified7) base /= 7;
    Rat pw(1);
    for (int i = 0; i < 10; ++i) pw *= base;
    return c * pw;
}

std::vector<NormSolution> solve_norm_equation(const OrderBundle& order, long p, int e,
                                              const Rat& bound,
                                              const std::vector<CandidateEntry>& candidates,
                                              unsigned threads) {
    const Int target = int_pow(p, e);
    // Cheap pre-filter: for an iota-fixed gamma, Q_max(gamma) = Trd(gamma^2)
    // = m4^2 - 2*m3 from the charpoly, invariant under gamma -> -gamma.
    std::map<Int, std::vector<std::size_t>> by_q;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (candidates[i].target != target) continue;
        Int q = candidates[i].gamma_minpoly[4] * candidates[i].gamma_minpoly[4] -
                2 * candidates[i].gamma_minpoly[3];
        by_q[q].push_back(i);
    }
    std::mutex mu;
    std::vector<std::pair<std::vector<Int>, Int>> hits;
    auto sink = [&](const std::vector<Int>& v, const Int& value) {
        if (!by_q.count(value)) return;
        std::lock_guard<std::mutex> lk(mu);
        hits.emplace_back(v, value);
    };
    if (threads > 1)
        enumerate_short_parallel(order.qmax(), bound, sink, threads);
    else
        enumerate_short(order.qmax(), bound, sink);
    std::sort(hits.begin(), hits.end());

    std::vector<std::vector<NormSolution>> per_hit(hits.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            std::size_t h = next.fetch_add(1);
            if (h >= hits.size()) break;
            process_hit_impl(order, candidates, by_q, target, hits[h].first, hits[h].second,
                             per_hit[h]);
        }
    };
    if (threads > 1) {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    } else {
        worker();
    }

    std::vector<NormSolution> out;
    std::set<std::string> seen;
    for (auto& group : per_hit)
        for (NormSolution& sol : group)
            if (seen.insert(vec50_key(algebra_to_vec50(sol.x))).second)
                out.push_back(std::move(sol));
    std::sort(out.begin(), out.end(), [](const NormSolution& a, const NormSolution& b) {
        if (a.candidate != b.candidate) return a.candidate < b.candidate;
        return a.gamma_vec < b.gamma_vec;
    });
    return out;
}

namespace {

void process_hit_impl(const OrderBundle& order, const std::vector<CandidateEntry>& candidates,
                      const std::map<Int, std::vector<std::size_t>>& by_q, const Int& target,
                      const std::vector<Int>& v, const Int& value,
                      std::vector<NormSolution>& out) {
    AlgebraElem g = order.gamma_from_vec(v);
    // Second cheap filter: Trd(gamma) = -m4 (or +m4 for the negated gamma).
    EElem tr = trd(g);
    bool tr_possible = false;
    for (std::size_t ci : by_q.at(value)) {
        const Int& m4 = candidates[ci].gamma_minpoly[4];
        if (tr.is_rational() && (tr.r() == Rat(-m4) || tr.r() == Rat(m4))) {
            tr_possible = true;
            break;
        }
    }
    if (!tr_possible) return;
    std::array<EElem, 6> cp = charpoly(g);
    {
        // One hit can in principle match several candidates or both signs.
        for (std::size_t ci : by_q.at(value)) {
            const CandidateEntry& cand = candidates[ci];
            // charpoly(-gamma) has coefficients (-1)^(5-i) * c_i, so one
            // enumeration representative covers both signs of gamma.
            for (int sign : {+1, -1}) {
                bool match = true;
                for (std::size_t i = 0; i < 6 && match; ++i) {
                    Int want = cand.gamma_minpoly[i];
                    if (sign < 0 && (5 - i) % 2 == 1) want = -want;
                    match = cp[i].is_rational() && cp[i].r() == Rat(want);
                }
                if (!match) continue;
                AlgebraElem gamma = sign > 0 ? g : -g;
                AlgebraElem x = eval_poly_at(cand.alpha_expr, gamma) +
                                d_scale(eval_poly_at(cand.beta_expr, gamma),
                                        LElem(EElem::rho2()));
                if (!verify_norm_equation(x, Rat(target))) continue;
                if (!order.lambda_max_contains(x)) continue;
                if (x_central_in_e(x)) continue;
                // One representative per {x, -x}: the lexicographically larger
                // 50-coordinate vector. Negating x keeps gamma fixed.
                std::vector<Rat> v50 = algebra_to_vec50(x);
                std::vector<Rat> v50n = algebra_to_vec50(-x);
                if (std::lexicographical_compare(v50.begin(), v50.end(), v50n.begin(),
                                                 v50n.end())) {
                    x = -x;
                    v50 = std::move(v50n);
                }
                NormSolution sol;
                sol.x = x;
                sol.gamma_vec = v;
                if (sign < 0)
                    for (Int& t : sol.gamma_vec) t = -t;
                sol.candidate = ci;
                out.push_back(std::move(sol));
            }
        }
    }
}

}  // namespace

Poly minpoly_via_powers(const AlgebraElem& gamma) {
    // columns: vec50 of gamma^0..gamma^k; find the first monic relation
    std::vector<std::vector<Rat>> pows;
    AlgebraElem acc(1);
    pows.push_back(algebra_to_vec50(acc));
    for (int k = 1; k <= 5; ++k) {
        acc = d_mul(acc, gamma);
        pows.push_back(algebra_to_vec50(acc));
        // solve sum_{i<k} c_i * pows[i] = pows[k] by Gaussian elimination
        std::vector<std::vector<Rat>> m(50, std::vector<Rat>(static_cast<std::size_t>(k) + 1));
        for (int r = 0; r < 50; ++r) {
            for (int i = 0; i < k; ++i) m[r][static_cast<std::size_t>(i)] = pows[static_cast<std::size_t>(i)][static_cast<std::size_t>(r)];
            m[r][static_cast<std::size_t>(k)] = pows[static_cast<std::size_t>(k)][static_cast<std::size_t>(r)];
        }
        std::size_t row = 0;
        std::vector<int> pivot_col;
        for (int col = 0; col < k && row < 50; ++col) {
            std::size_t pr = row;
            while (pr < 50 && m[pr][static_cast<std::size_t>(col)] == 0) ++pr;
            if (pr == 50) continue;
            std::swap(m[row], m[pr]);
            Rat inv_p = 1 / m[row][static_cast<std::size_t>(col)];
            for (auto& v : m[row]) v *= inv_p;
            for (std::size_t r2 = 0; r2 < 50; ++r2) {
                if (r2 == row || m[r2][static_cast<std::size_t>(col)] == 0) continue;
                Rat f = m[r2][static_cast<std::size_t>(col)];
                for (std::size_t c2 = 0; c2 <= static_cast<std::size_t>(k); ++c2)
                    m[r2][c2] -= f * m[row][c2];
            }
            pivot_col.push_back(col);
            ++row;
        }
        // consistent iff no pivot in the rhs column
        bool consistent = true;
        for (std::size_t r2 = row; r2 < 50; ++r2)
            if (m[r2][static_cast<std::size_t>(k)] != 0) consistent = false;
        if (!consistent || static_cast<int>(pivot_col.size()) != k) continue;
        Poly mp(static_cast<std::size_t>(k) + 1);
        mp[static_cast<std::size_t>(k)] = 1;
        for (int i = 0; i < k; ++i) mp[static_cast<std::size_t>(i)] = -m[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
        return mp;
    }
    throw std::logic_error("no degree <= 5 relation for gamma");
}

namespace {

// ---- arithmetic in (Z/mod)[t]/(m), m monic integer quintic ----
using P5 = std::array<Int, 5>;

Int imod(const Int& v, const Int& mod) {
    Int r = v % mod;
    if (r < 0) r += mod;
    return r;
}

P5 p5_mul(const P5& a, const P5& b, const std::array<Int, 6>& m, const Int& mod) {
    std::array<Int, 9> t{};
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) t[i + j] += a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)];
    for (int deg = 8; deg >= 5; --deg) {
        Int lead = imod(t[static_cast<std::size_t>(deg)], mod);
        if (lead == 0) continue;
        for (int j = 0; j < 5; ++j)
            t[static_cast<std::size_t>(deg - 5 + j)] -= lead * m[static_cast<std::size_t>(j)];
        t[static_cast<std::size_t>(deg)] = 0;
    }
    P5 r;
    for (int j = 0; j < 5; ++j) r[static_cast<std::size_t>(j)] = imod(t[static_cast<std::size_t>(j)], mod);
    return r;
}

P5 p5_pow(P5 base, Int exp, const std::array<Int, 6>& m, const Int& mod) {
    P5 r{};
    r[0] = 1;
    while (exp > 0) {
        if (mpz_odd_p(exp.get_mpz_t())) r = p5_mul(r, base, m, mod);
        base = p5_mul(base, base, m, mod);
        exp /= 2;
    }
    return r;
}

bool p5_is(const P5& a, long c0) {
    if (a[0] != c0) return false;
    for (int j = 1; j < 5; ++j)
        if (a[static_cast<std::size_t>(j)] != 0) return false;
    return true;
}

Int fl_inv(const Int& a, const Int& ell) {
    Int r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), ell.get_mpz_t()) == 0)
        throw std::logic_error("non-invertible element mod ell");
    return r;
}

// gcd over F_ell of m (quintic) and a lower-degree poly; used for the
// irreducibility test. Represent dense with leading-zero trimming.
std::vector<Int> fl_gcd(std::vector<Int> a, std::vector<Int> b, const Int& ell) {
    auto trim = [&](std::vector<Int>& p) {
        while (!p.empty() && imod(p.back(), ell) == 0) p.pop_back();
        for (auto& c : p) c = imod(c, ell);
    };
    trim(a);
    trim(b);
    while (!b.empty()) {
        // a mod b
        Int lead_inv = fl_inv(b.back(), ell);
        while (a.size() >= b.size()) {
            Int f = imod(a.back() * lead_inv, ell);
            std::size_t off = a.size() - b.size();
            for (std::size_t i = 0; i < b.size(); ++i)
                a[off + i] = imod(a[off + i] - f * b[i], ell);
            trim(a);
            if (a.empty()) break;
        }
        std::swap(a, b);
    }
    return a;
}

bool m_irreducible_mod(const std::array<Int, 6>& m, long ell) {
    Int l(ell);
    P5 t{};
    t[1] = 1;
    // frobenius t^ell
    P5 fr = p5_pow(t, Int(ell), m, l);
    // gcd(t^ell - t, m) must be 1
    std::vector<Int> diff = {imod(fr[0], l), imod(fr[1] - 1, l), fr[2], fr[3], fr[4]};
    std::vector<Int> mm(m.begin(), m.end());
    auto g = fl_gcd(mm, diff, l);
    if (g.size() != 1) return false;
    // t^(ell^5) == t
    P5 f5 = fr;
    for (int i = 1; i < 5; ++i) f5 = p5_pow(f5, Int(ell), m, l);
    return f5 == t;
}

// rational reconstruction: find p/q = r mod mod with |p|, q <= sqrt(mod/2)
bool rat_reconstruct(const Int& r, const Int& mod, Rat& out) {
    Int bound;
    mpz_sqrt(bound.get_mpz_t(), Int(mod / 2).get_mpz_t());
    Int a = mod, b = imod(r, mod);
    Int x0 = 0, x1 = 1;
    while (b > bound) {
        Int q = a / b;
        Int t = a - q * b;
        a = b;
        b = t;
        t = x0 - q * x1;
        x0 = x1;
        x1 = t;
    }
    if (x1 == 0) return false;
    if (x1 < 0) { x1 = -x1; b = -b; }
    if (x1 > bound) return false;
    Int g;
    mpz_gcd(g.get_mpz_t(), b.get_mpz_t(), x1.get_mpz_t());
    if (g != 1 && !(b == 0 && x1 == 1)) return false;
    out = Rat(b) / Rat(x1);
    out.canonicalize();
    return true;
}

// exact check s^2 == w in Q[t]/(m)
bool sqrt_verifies(const std::array<Int, 6>& m, const std::array<Rat, 5>& w,
                   const std::array<Rat, 5>& s) {
    std::array<Rat, 9> t{};
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) t[i + j] += s[static_cast<std::size_t>(i)] * s[static_cast<std::size_t>(j)];
    for (int deg = 8; deg >= 5; --deg) {
        Rat lead = t[static_cast<std::size_t>(deg)];
        if (lead == 0) continue;
        for (int j = 0; j < 5; ++j)
            t[static_cast<std::size_t>(deg - 5 + j)] -= lead * Rat(m[static_cast<std::size_t>(j)]);
        t[static_cast<std::size_t>(deg)] = 0;
    }
    for (int j = 0; j < 5; ++j)
        if (t[static_cast<std::size_t>(j)] != w[static_cast<std::size_t>(j)]) return false;
    return true;
}

}  // namespace

bool field_sqrt(const std::array<Int, 6>& m, const std::array<Rat, 5>& w,
                std::array<Rat, 5>& out) {
    // clear denominators: sqrt(w) = sqrt(w * D^2) / D
    Int den = 1;
    for (const Rat& c : w) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
    P5 wi;
    bool w_zero = true;
    for (int j = 0; j < 5; ++j) {
        Rat scaled = w[static_cast<std::size_t>(j)] * Rat(den) * Rat(den);
        wi[static_cast<std::size_t>(j)] = scaled.get_num();
        if (wi[static_cast<std::size_t>(j)] != 0) w_zero = false;
    }
    if (w_zero) {
        out.fill(Rat(0));
        return true;
    }

    // Primes where m stays irreducible and w stays a unit. The Euler test at
    // one prime only certifies local squareness, which half of the global
    // non-squares pass, so screen at three independent primes before the
    // expensive lifting.
    std::array<long, 3> ells{};
    int found = 0;
    for (long c = 1000003; found < 3; c += 2) {
        if (c > 1004003) return false;  // reducible minpoly: ~2000 primes tried
        Int cand(c);
        if (mpz_probab_prime_p(cand.get_mpz_t(), 25) == 0) continue;
        bool w_unit = false;
        for (int j = 0; j < 5; ++j)
            if (imod(wi[static_cast<std::size_t>(j)], cand) != 0) w_unit = true;
        if (!w_unit) continue;
        if (m_irreducible_mod(m, c)) ells[static_cast<std::size_t>(found++)] = c;
    }
    for (long lc : ells) {
        Int lq(lc);
        Int qq = lq * lq * lq * lq * lq;
        P5 wc;
        for (int j = 0; j < 5; ++j) wc[static_cast<std::size_t>(j)] = imod(wi[static_cast<std::size_t>(j)], lq);
        P5 eu = p5_pow(wc, (qq - 1) / 2, m, lq);
        if (!p5_is(eu, 1)) return false;
    }
    long ell = ells[0];
    Int l(ell);
    Int q = l * l * l * l * l;

    // Tonelli-Shanks in F_{ell^5}
    P5 wl;
    for (int j = 0; j < 5; ++j) wl[static_cast<std::size_t>(j)] = imod(wi[static_cast<std::size_t>(j)], l);

    Int q1 = q - 1;
    int s2 = 0;
    while (mpz_even_p(q1.get_mpz_t())) { q1 /= 2; ++s2; }
    // quadratic non-residue
    P5 z{};
    for (long c = 0;; ++c) {
        P5 cand{};
        cand[0] = imod(Int(c), l);
        cand[1] = 1;
        P5 e2 = p5_pow(cand, (q - 1) / 2, m, l);
        if (p5_is(e2, 1)) continue;
        z = cand;
        break;
    }
    P5 cc = p5_pow(z, q1, m, l);
    P5 t = p5_pow(wl, q1, m, l);
    P5 r = p5_pow(wl, (q1 + 1) / 2, m, l);
    int mlev = s2;
    while (!p5_is(t, 1)) {
        P5 tt = t;
        int i = 0;
        while (!p5_is(tt, 1)) { tt = p5_mul(tt, tt, m, l); ++i; }
        P5 b = cc;
        for (int j = 0; j < mlev - i - 1; ++j) b = p5_mul(b, b, m, l);
        mlev = i;
        cc = p5_mul(b, b, m, l);
        t = p5_mul(t, cc, m, l);
        r = p5_mul(r, b, m, l);
    }

    // Hensel: lift r with r^2 = wi mod ell^(2^k); i tracks (2r)^{-1}
    P5 two_r = r;
    for (auto& c : two_r) c = imod(2 * c, l);
    P5 inv2r = p5_pow(two_r, q - 2, m, l);
    Int mod = l;
    for (int level = 0; level < 7; ++level) {
        // attempt reconstruction at the current precision
        std::array<Rat, 5> cand;
        bool ok = true;
        for (int j = 0; j < 5 && ok; ++j) {
            Rat c;
            if (!rat_reconstruct(r[static_cast<std::size_t>(j)], mod, c)) ok = false;
            else cand[static_cast<std::size_t>(j)] = c;
        }
        if (ok) {
            std::array<Rat, 5> w_int;
            for (int j = 0; j < 5; ++j) w_int[static_cast<std::size_t>(j)] = Rat(wi[static_cast<std::size_t>(j)]);
            if (sqrt_verifies(m, w_int, cand)) {
                for (int j = 0; j < 5; ++j) out[static_cast<std::size_t>(j)] = cand[static_cast<std::size_t>(j)] / Rat(den);
                return true;
            }
        }
        // one lifting step
        Int mod2 = mod * mod;
        P5 r2 = r, i2 = inv2r;
        P5 rsq = p5_mul(r2, r2, m, mod2);
        P5 defect;
        for (int j = 0; j < 5; ++j)
            defect[static_cast<std::size_t>(j)] = imod(rsq[static_cast<std::size_t>(j)] - wi[static_cast<std::size_t>(j)], mod2);
        P5 corr = p5_mul(defect, i2, m, mod2);
        for (int j = 0; j < 5; ++j) r2[static_cast<std::size_t>(j)] = imod(r[static_cast<std::size_t>(j)] - corr[static_cast<std::size_t>(j)], mod2);
        // refresh the inverse of 2r
        P5 tr;
        for (int j = 0; j < 5; ++j) tr[static_cast<std::size_t>(j)] = imod(2 * r2[static_cast<std::size_t>(j)], mod2);
        P5 prod = p5_mul(tr, i2, m, mod2);
        P5 two_minus;
        for (int j = 0; j < 5; ++j) two_minus[static_cast<std::size_t>(j)] = imod((j == 0 ? 2 : 0) - prod[static_cast<std::size_t>(j)], mod2);
        inv2r = p5_mul(i2, two_minus, m, mod2);
        r = r2;
        mod = mod2;
    }
    return false;
}

namespace {

// Element of the division algebra with coordinates reduced mod a prime n,
// as 5 L-coordinates in the powers of u. Multiplication uses u l = sigma(l) u
// and u^5 = a.
struct ModD {
    std::array<ModLElem, 5> c;
};

ModD modd_from(const AlgebraElem& x, const Int& n) {
    ModD out;
    for (int i = 0; i < 5; ++i)
        out.c[static_cast<std::size_t>(i)] = ModLElem::from_l(x.coeff(static_cast<std::size_t>(i)), n);
    return out;
}

ModD modd_mul(const ModD& x, const ModD& y, const ModScalar& a, const Int& n) {
    // sig[j][i] = sigma^i(y.c[j])
    std::array<std::array<ModLElem, 5>, 5> sig;
    for (int j = 0; j < 5; ++j) {
        sig[static_cast<std::size_t>(j)][0] = y.c[static_cast<std::size_t>(j)];
        for (int i = 1; i < 5; ++i)
            sig[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] =
                sig[static_cast<std::size_t>(j)][static_cast<std::size_t>(i - 1)].sigma(n);
    }
    ModD out;
    ModLElem al = ModLElem::from_scalar(a, n);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) {
            ModLElem term = x.c[static_cast<std::size_t>(i)].mul(
                sig[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)], n);
            int k = i + j;
            if (k >= 5) {
                k -= 5;
                term = term.mul(al, n);
            }
            out.c[static_cast<std::size_t>(k)] = out.c[static_cast<std::size_t>(k)].add(term, n);
        }
    return out;
}

// Minimal polynomial of gamma mod a large prime n, balanced-lifted to integer
// coefficients. Returns false when the degree is below 5 (or the prime is
// unlucky); the caller's exact verification of any reconstructed x makes a
// rare false positive harmless.
bool fast_minpoly_deg5(const AlgebraElem& gamma, const Int& n, std::array<Int, 6>& mi) {
    ModD g = modd_from(gamma, n);
    ModScalar a = ModScalar::from_e(consts::a(), n);
    // rows of [gamma^0 .. gamma^5] coordinates, built into an RREF with the
    // last column as right-hand side
    std::array<ModD, 6> pw;
    for (int i = 0; i < 5; ++i)
        pw[0].c[static_cast<std::size_t>(i)] =
            ModLElem::from_scalar(ModScalar::from_int(i == 0 ? 1 : 0, n), n);
    for (int k = 1; k <= 5; ++k) pw[static_cast<std::size_t>(k)] = modd_mul(pw[static_cast<std::size_t>(k - 1)], g, a, n);

    std::vector<std::array<Int, 6>> rref;  // rows normalized, pivot order by column
    std::vector<int> pivots;
    for (int ui = 0; ui < 5 && static_cast<int>(rref.size()) < 5; ++ui)
        for (int ci = 0; ci < 5 && static_cast<int>(rref.size()) < 5; ++ci)
            for (int part = 0; part < 2 && static_cast<int>(rref.size()) < 5; ++part) {
                std::array<Int, 6> row;
                for (int k = 0; k <= 5; ++k) {
                    const ModScalar& s = pw[static_cast<std::size_t>(k)]
                                             .c[static_cast<std::size_t>(ui)]
                                             .c[static_cast<std::size_t>(ci)];
                    row[static_cast<std::size_t>(k)] = part == 0 ? s.a : s.b;
                }
                for (std::size_t r = 0; r < rref.size(); ++r) {
                    Int f = row[static_cast<std::size_t>(pivots[r])] % n;
                    if (f == 0) continue;
                    for (int k = 0; k <= 5; ++k)
                        row[static_cast<std::size_t>(k)] =
                            (row[static_cast<std::size_t>(k)] - f * rref[r][static_cast<std::size_t>(k)]) % n;
                }
                int pc = -1;
                for (int k = 0; k < 5; ++k)
                    if (row[static_cast<std::size_t>(k)] % n != 0) { pc = k; break; }
                if (pc < 0) continue;
                Int inv;
                Int lead = row[static_cast<std::size_t>(pc)] % n;
                if (lead < 0) lead += n;
                mpz_invert(inv.get_mpz_t(), lead.get_mpz_t(), n.get_mpz_t());
                for (int k = 0; k <= 5; ++k) {
                    row[static_cast<std::size_t>(k)] = (row[static_cast<std::size_t>(k)] * inv) % n;
                    if (row[static_cast<std::size_t>(k)] < 0) row[static_cast<std::size_t>(k)] += n;
                }
                for (std::size_t r = 0; r < rref.size(); ++r) {
                    Int f = rref[r][static_cast<std::size_t>(pc)];
                    if (f == 0) continue;
                    for (int k = 0; k <= 5; ++k) {
                        rref[r][static_cast<std::size_t>(k)] =
                            (rref[r][static_cast<std::size_t>(k)] - f * row[static_cast<std::size_t>(k)]) % n;
                        if (rref[r][static_cast<std::size_t>(k)] < 0) rref[r][static_cast<std::size_t>(k)] += n;
                    }
                }
                rref.push_back(row);
                pivots.push_back(pc);
            }
    if (rref.size() < 5) return false;  // gamma generates a proper subfield
    // gamma^5 = sum c_j gamma^j, so minpoly coeff j is -c_j
    Int half = n / 2;
    mi[5] = 1;
    for (std::size_t r = 0; r < rref.size(); ++r) {
        Int c = (n - rref[r][5]) % n;
        if (c > half) c -= n;
        mi[static_cast<std::size_t>(pivots[r])] = c;
    }
    return true;
}

}  // namespace

std::vector<NormSolution> solve_norm_equation_direct(const OrderBundle& order, long p, int e,
                                                     const Rat& bound, unsigned threads) {
    const Int target = int_pow(p, e);
    std::mutex mu;
    std::vector<std::vector<Int>> hits;
    auto sink = [&](const std::vector<Int>& v, const Int&) {
        std::lock_guard<std::mutex> lk(mu);
        hits.push_back(v);
    };
    if (threads > 1)
        enumerate_short_parallel(order.qmax(), bound, sink, threads);
    else
        enumerate_short(order.qmax(), bound, sink);
    std::sort(hits.begin(), hits.end());

    Int minpoly_prime;
    mpz_nextprime(minpoly_prime.get_mpz_t(), Int(Int(1) << 61).get_mpz_t());

    std::vector<std::vector<NormSolution>> per_hit(hits.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            std::size_t h = next.fetch_add(1);
            if (h >= hits.size()) break;
            // Solutions for -gamma are the negatives of those for gamma and
            // canonicalize to the same {x, -x} representative, so one sign of
            // each enumerated +- pair suffices.
            AlgebraElem gamma = order.gamma_from_vec(hits[h]);
            std::array<Int, 6> mi{};
            if (!fast_minpoly_deg5(gamma, minpoly_prime, mi)) continue;
            // w = 7(4 p^e - t^2), already of degree < 5
            std::array<Rat, 5> w{};
            w[0] = Rat(28 * target);
            w[2] = Rat(-7);
            std::array<Rat, 5> s;
            if (!field_sqrt(mi, w, s)) continue;
            for (int pm : {+1, -1}) {
                // alpha = (7t + pm*S)/14, beta = gamma - 2 alpha = -pm*S/7;
                // pm = -1 yields iota(x) of the pm = +1 solution
                std::array<Rat, 5> ae, be;
                for (int j = 0; j < 5; ++j) {
                    ae[static_cast<std::size_t>(j)] = Rat(pm) * s[static_cast<std::size_t>(j)] / 14;
                    be[static_cast<std::size_t>(j)] = Rat(-pm) * s[static_cast<std::size_t>(j)] / 7;
                }
                ae[1] += Rat(1, 2);
                AlgebraElem x = eval_poly_at(ae, gamma) +
                                d_scale(eval_poly_at(be, gamma), LElem(EElem::rho2()));
                if (!verify_norm_equation(x, Rat(target))) continue;
                if (!order.lambda_max_contains(x)) continue;
                if (x_central_in_e(x)) continue;
                std::vector<Rat> v50 = algebra_to_vec50(x);
                std::vector<Rat> v50n = algebra_to_vec50(-x);
                if (std::lexicographical_compare(v50.begin(), v50.end(), v50n.begin(),
                                                 v50n.end()))
                    x = -x;
                NormSolution sol;
                sol.x = x;
                sol.gamma_vec = hits[h];
                sol.candidate = static_cast<std::size_t>(-1);
                per_hit[h].push_back(std::move(sol));
            }
        }
    };
    if (threads > 1) {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    } else {
        worker();
    }

    std::vector<NormSolution> out;
    std::set<std::string> seen;
    for (auto& group : per_hit)
        for (NormSolution& sol : group)
            if (seen.insert(vec50_key(algebra_to_vec50(sol.x))).second)
                out.push_back(std::move(sol));
    std::sort(out.begin(), out.end(), [](const NormSolution& a, const NormSolution& b) {
        return a.gamma_vec < b.gamma_vec;
    });
    return out;
}

std::vector<GateElement> gates_from_solutions(long p, int e,
                                              const std::vector<NormSolution>& sols) {
    EElem scale;
    if (is_split_prime(p)) {
        if (e != 1) throw std::invalid_argument("gates_from_solutions: split p needs e = 1");
        scale = inv(conj(split_prime_element(p)));
    } else {
        if (e != 2) throw std::invalid_argument("gates_from_solutions: inert p needs e = 2");
        scale = EElem(Rat(1, static_cast<unsigned long>(p)), Rat(0));
    }
    std::vector<GateElement> out;
    out.reserve(sols.size());
    for (const NormSolution& s : sols) out.push_back(GateElement{s.x, scale, s.candidate});
    return out;
}

Int gaussian_binomial(unsigned n, unsigned k, const Int& q) {
    if (k > n) return Int(0);
    Int num(1), den(1);
    for (unsigned i = 0; i < k; ++i) {
        Int qn, qd;
        mpz_pow_ui(qn.get_mpz_t(), q.get_mpz_t(), n - i);
        mpz_pow_ui(qd.get_mpz_t(), q.get_mpz_t(), i + 1);
        num *= qn - 1;
        den *= qd - 1;
    }
    Int out, rem;
    mpz_tdiv_qr(out.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (rem != 0) throw std::logic_error("gaussian_binomial: non-exact division");
    return out;
}

Int gate_count_formula(long p) {
    Int q(p);
    if (is_split_prime(p)) {
        Int total(0);
        for (unsigned i = 1; i <= 4; ++i) total += gaussian_binomial(5, i, q);
        return total;
    }
    auto qp = [&](unsigned k) {
        Int out;
        mpz_pow_ui(out.get_mpz_t(), q.get_mpz_t(), k);
        return out;
    };
    return q * (qp(2) + 1) * (qp(5) + 1) +
           ((q + 1) * (qp(3) + 1) - 1) * (qp(3) + 1) * (qp(5) + 1);
}

}  // namespace gg
