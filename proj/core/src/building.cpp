#include "gg/building.hpp"

#include <algorithm>
#include <stdexcept>

namespace gg {

namespace {

long lmod(long v, long m) {
    long r = v % m;
    if (r < 0) r += m;
    return r;
}

long linv(long a, long m) {
    // inverse of a unit mod m (m = p or p^2 with p prime)
    Int r;
    if (mpz_invert(r.get_mpz_t(), Int(a).get_mpz_t(), Int(m).get_mpz_t()) == 0)
        throw std::domain_error("linv: not a unit");
    return r.get_si();
}

}  // namespace

// ---------- split side ----------

Subspace subspace_from_generators(std::vector<std::array<long, 5>> gens, long p) {
    for (auto& g : gens)
        for (long& v : g) v = lmod(v, p);
    std::vector<std::array<long, 5>> rows;
    for (int col = 0; col < 5; ++col) {
        std::size_t pr = gens.size();
        for (std::size_t i = 0; i < gens.size(); ++i)
            if (gens[i][static_cast<std::size_t>(col)] != 0) { pr = i; break; }
        if (pr == gens.size()) continue;
        std::array<long, 5> row = gens[pr];
        gens.erase(gens.begin() + static_cast<std::ptrdiff_t>(pr));
        long inv = linv(row[static_cast<std::size_t>(col)], p);
        for (long& v : row) v = lmod(v * inv, p);
        for (auto& g : gens) {
            long f = g[static_cast<std::size_t>(col)];
            if (f == 0) continue;
            for (int j = 0; j < 5; ++j)
                g[static_cast<std::size_t>(j)] =
                    lmod(g[static_cast<std::size_t>(j)] - f * row[static_cast<std::size_t>(j)], p);
        }
        for (auto& r : rows) {
            long f = r[static_cast<std::size_t>(col)];
            if (f == 0) continue;
            for (int j = 0; j < 5; ++j)
                r[static_cast<std::size_t>(j)] =
                    lmod(r[static_cast<std::size_t>(j)] - f * row[static_cast<std::size_t>(j)], p);
        }
        rows.push_back(row);
    }
    return Subspace{rows};
}

void for_each_subspace(long p, int k, const std::function<void(const Subspace&)>& fn) {
    if (k < 1 || k > 4) throw std::invalid_argument("for_each_subspace: k in 1..4");
    // choose pivot columns c_0 < ... < c_{k-1}; free entries are the
    // positions right of each pivot that are not pivot columns themselves
    std::vector<int> piv(static_cast<std::size_t>(k));
    std::function<void(int, int)> choose = [&](int idx, int from) {
        if (idx == k) {
            std::vector<std::pair<int, int>> free_pos;  // (row, col)
            for (int r = 0; r < k; ++r)
                for (int c = piv[static_cast<std::size_t>(r)] + 1; c < 5; ++c)
                    if (std::find(piv.begin(), piv.end(), c) == piv.end())
                        free_pos.emplace_back(r, c);
            std::vector<long> vals(free_pos.size(), 0);
            for (;;) {
                Subspace s;
                s.rows.assign(static_cast<std::size_t>(k), {0, 0, 0, 0, 0});
                for (int r = 0; r < k; ++r)
                    s.rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(piv[static_cast<std::size_t>(r)])] = 1;
                for (std::size_t i = 0; i < free_pos.size(); ++i)
                    s.rows[static_cast<std::size_t>(free_pos[i].first)]
                          [static_cast<std::size_t>(free_pos[i].second)] = vals[i];
                fn(s);
                std::size_t d = 0;
                while (d < vals.size() && ++vals[d] == p) vals[d++] = 0;
                if (d == vals.size()) break;
            }
            return;
        }
        for (int c = from; c < 5; ++c) {
            piv[static_cast<std::size_t>(idx)] = c;
            choose(idx + 1, c + 1);
        }
    };
    choose(0, 0);
}

Int count_split_labels(long p) {
    Int total = 0;
    for (int k = 1; k <= 4; ++k)
        for_each_subspace(p, k, [&](const Subspace&) { total += 1; });
    return total;
}

bool subspace_contains(const Subspace& b, const Subspace& a, long p) {
    // every row of a must reduce to zero against the RREF rows of b
    for (const auto& row : a.rows) {
        std::array<long, 5> v = row;
        for (const auto& br : b.rows) {
            int pc = 0;
            while (pc < 5 && br[static_cast<std::size_t>(pc)] == 0) ++pc;
            long f = v[static_cast<std::size_t>(pc)];
            if (f == 0) continue;
            for (int j = 0; j < 5; ++j)
                v[static_cast<std::size_t>(j)] =
                    lmod(v[static_cast<std::size_t>(j)] - f * br[static_cast<std::size_t>(j)], p);
        }
        for (long x : v)
            if (x != 0) return false;
    }
    return true;
}

Subspace split_gate_label(const AlgebraElem& g, long p, const ModNContext& ctx,
                          const BnData& bn) {
    ModMatrix m = reduce_algebra(g, bn, ctx);
    // component map O_E/p -> F_p through the root of t^2 - t + 2 killed by
    // rho_p = r + s*rho2
    EElem rp = split_prime_element(p);
    long r = lmod(Rat(rp.r()).get_num().get_si(), p);
    long s = lmod(Rat(rp.s()).get_num().get_si(), p);
    long w = -1;
    for (long t = 0; t < p; ++t)
        if (lmod(t * t - t + 2, p) == 0 && lmod(r + s * t, p) == 0) { w = t; break; }
    if (w < 0) throw std::logic_error("split_gate_label: no root of t^2-t+2 kills rho_p");
    std::vector<std::array<long, 5>> cols;
    bool nonzero = false;
    for (int j = 0; j < 5; ++j) {
        std::array<long, 5> col{};
        for (int i = 0; i < 5; ++i) {
            const ModScalar& e = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            long a = lmod(e.a.get_si(), p);
            long b = lmod(e.b.get_si(), p);
            col[static_cast<std::size_t>(i)] = lmod(a + b * w, p);
            if (col[static_cast<std::size_t>(i)] != 0) nonzero = true;
        }
        cols.push_back(col);
    }
    if (!nonzero) throw std::domain_error("split_gate_label: gate reduces to zero mod rho_p");
    Subspace sp = subspace_from_generators(cols, p);
    if (sp.dim() == 5) throw std::domain_error("split_gate_label: gate is invertible mod rho_p");
    return sp;
}

Int split_valency(long q, const std::set<int>& types) {
    if (types.empty() || types.count(0) || *types.rbegin() > 4)
        throw std::invalid_argument("split_valency: types must be a nonempty subset of {1..4}");
    // the table depends only on the multiset of cyclic gaps of {0} u types
    std::vector<int> all{0};
    for (int t : types) all.push_back(t);
    std::sort(all.begin(), all.end());
    std::vector<int> gaps;
    for (std::size_t i = 0; i < all.size(); ++i) {
        int next = i + 1 < all.size() ? all[i + 1] : all[0] + 5;
        gaps.push_back(next - all[i]);
    }
    std::sort(gaps.begin(), gaps.end());
    Int Q(q);
    Int q2 = Q * Q, q3 = q2 * Q, q4 = q3 * Q, q5 = q4 * Q;
    auto is = [&](std::initializer_list<int> g) {
        return gaps == std::vector<int>(g);
    };
    if (is({1, 4})) return 2 * (q5 - 1) / (Q - 1);
    if (is({2, 3})) return 2 * (q5 - 1) * (q4 - 1) / ((q2 - 1) * (Q - 1));
    if (is({1, 1, 3})) return 3 * (q5 - 1) * (q4 - 1) / ((Q - 1) * (Q - 1));
    if (is({1, 2, 2})) return 3 * (q5 - 1) * (q4 - 1) * (q3 - 1) / ((q2 - 1) * (Q - 1) * (Q - 1));
    if (is({1, 1, 1, 2}))
        return 4 * (q5 - 1) * (q4 - 1) * (q3 - 1) / ((Q - 1) * (Q - 1) * (Q - 1));
    return (q5 - 1) * (q4 - 1) * (q3 - 1) * (q2 - 1) /
           ((Q - 1) * (Q - 1) * (Q - 1) * (Q - 1));
}

Int split_chambers_per_facet(long q) { return Int(q) + 1; }

// ---------- inert side ----------

namespace {

// coordinates: R^5 with R = O_E/p^2, entry i stored as (a, b) for a + b*rho
// at positions 2i, 2i+1. rho * (a + b rho) = -2b + (a + b) rho.
using Vec10 = std::array<long, 10>;

Vec10 rho_mul(const Vec10& v, long m) {
    Vec10 out;
    for (int i = 0; i < 5; ++i) {
        long a = v[static_cast<std::size_t>(2 * i)], b = v[static_cast<std::size_t>(2 * i + 1)];
        out[static_cast<std::size_t>(2 * i)] = lmod(-2 * b, m);
        out[static_cast<std::size_t>(2 * i + 1)] = lmod(a + b, m);
    }
    return out;
}

int val_p(long v, long p) {
    if (v == 0) return 2;
    if (v % p == 0) return 1;
    return 0;
}

// Howell normal form over Z/p^2: echelon with canonical pivots p^v, entries
// above pivots reduced, plus closure under leading-position shifts.
std::vector<Vec10> howell(std::vector<Vec10> rows, long p) {
    long m = p * p;
    auto echelon = [&](std::vector<Vec10>& rs) {
        std::vector<Vec10> out;
        for (int col = 0; col < 10; ++col) {
            std::size_t best = rs.size();
            int bv = 2;
            for (std::size_t i = 0; i < rs.size(); ++i) {
                int v = val_p(rs[i][static_cast<std::size_t>(col)], p);
                if (v < bv) { bv = v; best = i; }
            }
            if (best == rs.size() || bv == 2) continue;
            Vec10 row = rs[best];
            rs.erase(rs.begin() + static_cast<std::ptrdiff_t>(best));
            long piv = row[static_cast<std::size_t>(col)];
            long unit = piv;
            for (int v = 0; v < bv; ++v) unit /= p;
            long inv = linv(lmod(unit, m), m);
            for (long& x : row) x = lmod(x * inv, m);
            long pv = 1;
            for (int v = 0; v < bv; ++v) pv *= p;
            // eliminate col in remaining rows (valuation >= bv there now)
            for (auto& g : rs) {
                long f = g[static_cast<std::size_t>(col)] / pv;
                if (lmod(g[static_cast<std::size_t>(col)], pv) != 0)
                    throw std::logic_error("howell: pivot not minimal");
                if (f == 0) continue;
                for (int j = 0; j < 10; ++j)
                    g[static_cast<std::size_t>(j)] =
                        lmod(g[static_cast<std::size_t>(j)] - f * row[static_cast<std::size_t>(j)], m);
            }
            // reduce entries of earlier rows at this column mod pv
            for (auto& g : out) {
                long f = g[static_cast<std::size_t>(col)] / pv;
                if (f == 0) continue;
                for (int j = 0; j < 10; ++j)
                    g[static_cast<std::size_t>(j)] =
                        lmod(g[static_cast<std::size_t>(j)] - f * row[static_cast<std::size_t>(j)], m);
            }
            out.push_back(row);
        }
        rs = out;
    };
    echelon(rows);
    // closure: p * (unit-pivot rows) may introduce new leading positions
    // after reduction; one extra pass reaches the fixpoint for k = 2
    std::vector<Vec10> extra = rows;
    for (auto r : rows) {
        for (long& x : r) x = lmod(x * p, m);
        extra.push_back(r);
    }
    echelon(extra);
    // drop zero rows
    std::vector<Vec10> out;
    for (auto& r : extra) {
        bool z = true;
        for (long x : r)
            if (x != 0) z = false;
        if (!z) out.push_back(r);
    }
    return out;
}

Vec10 scalar_to_vec(const ModScalar& s, int pos, long m) {
    Vec10 v{};
    v[static_cast<std::size_t>(2 * pos)] = lmod(s.a.get_si(), m);
    v[static_cast<std::size_t>(2 * pos + 1)] = lmod(s.b.get_si(), m);
    return v;
}

// H(row-vector g, x) as two Z/p^2-linear functionals on the 10 coordinates
// of x: functional[t][j] = coefficient of x_j in component t of
// sum_i conj(g_i) H_{ij} x_j.
std::array<Vec10, 2> hermitian_functionals(const Vec10& g, const ModMatrix& h, long p) {
    long m = p * p;
    std::array<Vec10, 2> out{};
    for (int j = 0; j < 5; ++j) {
        // c_j = sum_i conj(g_i) H_{ij} in R
        long ca = 0, cb = 0;
        for (int i = 0; i < 5; ++i) {
            long ga = g[static_cast<std::size_t>(2 * i)], gb = g[static_cast<std::size_t>(2 * i + 1)];
            // conj: (a, b) -> (a + b, -b)
            long xa = lmod(ga + gb, m), xb = lmod(-gb, m);
            long ha = lmod(h[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].a.get_si(), m);
            long hb = lmod(h[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].b.get_si(), m);
            // (xa + xb rho)(ha + hb rho), rho^2 = rho - 2
            ca = lmod(ca + xa * ha - 2 * xb * hb, m);
            cb = lmod(cb + xa * hb + xb * ha + xb * hb, m);
        }
        // c_j * (xj_a + xj_b rho) components
        // a-part: ca * xj_a - 2 cb * xj_b ; b-part: cb * xj_a + (ca + cb) * xj_b
        out[0][static_cast<std::size_t>(2 * j)] = ca;
        out[0][static_cast<std::size_t>(2 * j + 1)] = lmod(-2 * cb, m);
        out[1][static_cast<std::size_t>(2 * j)] = cb;
        out[1][static_cast<std::size_t>(2 * j + 1)] = lmod(ca + cb, m);
    }
    return out;
}

// kernel mod p^2 of the constraint matrix (rows = functionals), via the
// two-level F_p method: x = x0 + p x1 with A x0 = 0 mod p and
// (A x0)/p + A x1 = 0 mod p.
std::vector<Vec10> kernel_mod_p2(const std::vector<Vec10>& constraints, long p) {
    long m = p * p;
    // F_p row reduction of A with augmented identity to solve systems
    std::size_t nr = constraints.size();
    // column space data of A mod p for solvability checks: reduce A^T? keep
    // a copy of A mod p in RREF with transformation on the solution side is
    // overkill; instead compute kernel basis of A mod p and the RREF of A
    // mod p for membership of rhs in the column space.
    std::vector<std::vector<long>> a(nr, std::vector<long>(10));
    for (std::size_t i = 0; i < nr; ++i)
        for (int j = 0; j < 10; ++j) a[i][static_cast<std::size_t>(j)] = lmod(constraints[i][static_cast<std::size_t>(j)], p);
    // RREF of a with recorded operations applied to an identity on rows
    std::vector<std::vector<long>> red = a;
    std::vector<std::vector<long>> ops(nr, std::vector<long>(nr, 0));
    for (std::size_t i = 0; i < nr; ++i) ops[i][i] = 1;
    std::vector<int> pivcol;
    std::size_t rrow = 0;
    for (int col = 0; col < 10 && rrow < nr; ++col) {
        std::size_t pr = nr;
        for (std::size_t i = rrow; i < nr; ++i)
            if (red[i][static_cast<std::size_t>(col)] != 0) { pr = i; break; }
        if (pr == nr) continue;
        std::swap(red[rrow], red[pr]);
        std::swap(ops[rrow], ops[pr]);
        long inv = linv(red[rrow][static_cast<std::size_t>(col)], p);
        for (int j = 0; j < 10; ++j) red[rrow][static_cast<std::size_t>(j)] = lmod(red[rrow][static_cast<std::size_t>(j)] * inv, p);
        for (std::size_t j = 0; j < nr; ++j) ops[rrow][j] = lmod(ops[rrow][j] * inv, p);
        for (std::size_t i = 0; i < nr; ++i) {
            if (i == rrow) continue;
            long f = red[i][static_cast<std::size_t>(col)];
            if (f == 0) continue;
            for (int j = 0; j < 10; ++j)
                red[i][static_cast<std::size_t>(j)] = lmod(red[i][static_cast<std::size_t>(j)] - f * red[rrow][static_cast<std::size_t>(j)], p);
            for (std::size_t j = 0; j < nr; ++j) ops[i][j] = lmod(ops[i][j] - f * ops[rrow][j], p);
        }
        pivcol.push_back(col);
        ++rrow;
    }
    std::size_t rank = rrow;
    // kernel basis of A mod p
    std::vector<Vec10> ker;
    for (int col = 0; col < 10; ++col) {
        if (std::find(pivcol.begin(), pivcol.end(), col) != pivcol.end()) continue;
        Vec10 v{};
        v[static_cast<std::size_t>(col)] = 1;
        for (std::size_t r = 0; r < rank; ++r)
            v[static_cast<std::size_t>(pivcol[r])] = lmod(-red[r][static_cast<std::size_t>(col)], p);
        ker.push_back(v);
    }
    // second level: v in ker(A mod p) lifts to an x = v + p x1 in the mod-p^2
    // kernel iff A x1 = -(A v)/p mod p is solvable, i.e. the transformed
    // right-hand side vanishes beyond the rank. The liftable v form a
    // subspace; solve for it as the kernel of the tail map, not vector by
    // vector.
    std::vector<std::vector<long>> heads, tails;
    for (const Vec10& v : ker) {
        std::vector<long> rhs(nr);
        for (std::size_t i = 0; i < nr; ++i) {
            long acc = 0;
            for (int j = 0; j < 10; ++j)
                acc = lmod(acc + constraints[i][static_cast<std::size_t>(j)] * v[static_cast<std::size_t>(j)], m);
            if (acc % p != 0) throw std::logic_error("kernel_mod_p2: not in mod-p kernel");
            rhs[i] = lmod(-(acc / p), p);
        }
        std::vector<long> t(nr, 0);
        for (std::size_t i = 0; i < nr; ++i) {
            long acc = 0;
            for (std::size_t j = 0; j < nr; ++j) acc = lmod(acc + ops[i][j] * rhs[j], p);
            t[i] = acc;
        }
        heads.emplace_back(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(rank));
        tails.emplace_back(t.begin() + static_cast<std::ptrdiff_t>(rank), t.end());
    }
    // kernel over F_p of the (#ker x (nr - rank)) tail matrix
    std::size_t nk = ker.size(), nt = nr - rank;
    std::vector<std::vector<long>> tm = tails;  // row k = tail of ker[k]
    std::vector<std::vector<long>> cop(nk, std::vector<long>(nk, 0));
    for (std::size_t i = 0; i < nk; ++i) cop[i][i] = 1;
    std::vector<std::size_t> tpiv;
    std::size_t trow = 0;
    for (std::size_t col = 0; col < nt && trow < nk; ++col) {
        std::size_t pr = nk;
        for (std::size_t i = trow; i < nk; ++i)
            if (tm[i][col] != 0) { pr = i; break; }
        if (pr == nk) continue;
        std::swap(tm[trow], tm[pr]);
        std::swap(cop[trow], cop[pr]);
        long inv = linv(tm[trow][col], p);
        for (std::size_t j = 0; j < nt; ++j) tm[trow][j] = lmod(tm[trow][j] * inv, p);
        for (std::size_t j = 0; j < nk; ++j) cop[trow][j] = lmod(cop[trow][j] * inv, p);
        for (std::size_t i = 0; i < nk; ++i) {
            if (i == trow) continue;
            long f = tm[i][col];
            if (f == 0) continue;
            for (std::size_t j = 0; j < nt; ++j) tm[i][j] = lmod(tm[i][j] - f * tm[trow][j], p);
            for (std::size_t j = 0; j < nk; ++j) cop[i][j] = lmod(cop[i][j] - f * cop[trow][j], p);
        }
        tpiv.push_back(col);
        ++trow;
    }
    std::vector<Vec10> out;
    for (std::size_t i = trow; i < nk; ++i) {
        // combination cop[i] has zero tail: liftable. Recompute the
        // correction from the combined representative to absorb mod-p
        // carries.
        Vec10 x{};
        for (std::size_t k = 0; k < nk; ++k) {
            long c = cop[i][k];
            if (c == 0) continue;
            for (int j = 0; j < 10; ++j)
                x[static_cast<std::size_t>(j)] = lmod(x[static_cast<std::size_t>(j)] + c * ker[k][static_cast<std::size_t>(j)], m);
        }
        std::vector<long> rhs(nr);
        for (std::size_t r = 0; r < nr; ++r) {
            long acc = 0;
            for (int j = 0; j < 10; ++j)
                acc = lmod(acc + constraints[r][static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(j)], m);
            if (acc % p != 0) throw std::logic_error("kernel_mod_p2: combination left the kernel");
            rhs[r] = lmod(-(acc / p), p);
        }
        std::vector<long> t(nr, 0);
        for (std::size_t r = 0; r < nr; ++r) {
            long acc = 0;
            for (std::size_t j = 0; j < nr; ++j) acc = lmod(acc + ops[r][j] * rhs[j], p);
            t[r] = acc;
        }
        for (std::size_t r = rank; r < nr; ++r)
            if (t[r] != 0) throw std::logic_error("kernel_mod_p2: tail did not vanish");
        for (std::size_t r = 0; r < rank; ++r)
            x[static_cast<std::size_t>(pivcol[r])] =
                lmod(x[static_cast<std::size_t>(pivcol[r])] + p * t[r], m);
        out.push_back(x);
    }
    // plus p * (kernel of A mod p)
    for (Vec10 v : ker) {
        for (long& x : v) x = lmod(x * p, m);
        out.push_back(v);
    }
    return out;
}

}  // namespace

bool InertModule::operator==(const InertModule& o) const { return gens == o.gens; }
bool InertModule::operator<(const InertModule& o) const {
    auto cmp = [](const ModScalar& x, const ModScalar& y) {
        if (x.a != y.a) return x.a < y.a ? -1 : 1;
        if (x.b != y.b) return x.b < y.b ? -1 : 1;
        return 0;
    };
    std::size_t n = std::min(gens.size(), o.gens.size());
    for (std::size_t i = 0; i < n; ++i)
        for (int j = 0; j < 5; ++j) {
            int c = cmp(gens[i][static_cast<std::size_t>(j)], o.gens[i][static_cast<std::size_t>(j)]);
            if (c != 0) return c < 0;
        }
    return gens.size() < o.gens.size();
}

InertModule inert_module_canonical(std::vector<std::array<ModScalar, 5>> gens, long p) {
    long m = p * p;
    std::vector<Vec10> rows;
    for (const auto& g : gens) {
        Vec10 v{};
        for (int i = 0; i < 5; ++i) {
            v[static_cast<std::size_t>(2 * i)] = lmod(g[static_cast<std::size_t>(i)].a.get_si(), m);
            v[static_cast<std::size_t>(2 * i + 1)] = lmod(g[static_cast<std::size_t>(i)].b.get_si(), m);
        }
        rows.push_back(v);
        rows.push_back(rho_mul(v, m));
    }
    std::vector<Vec10> h = howell(rows, p);
    InertModule out;
    for (const Vec10& v : h) {
        std::array<ModScalar, 5> g;
        for (int i = 0; i < 5; ++i) {
            g[static_cast<std::size_t>(i)].a = v[static_cast<std::size_t>(2 * i)];
            g[static_cast<std::size_t>(i)].b = v[static_cast<std::size_t>(2 * i + 1)];
        }
        out.gens.push_back(g);
    }
    return out;
}

namespace {

std::vector<Vec10> module_rows(const InertModule& mm, long p) {
    long m = p * p;
    std::vector<Vec10> rows;
    for (const auto& g : mm.gens) {
        Vec10 v{};
        for (int i = 0; i < 5; ++i) {
            v[static_cast<std::size_t>(2 * i)] = lmod(g[static_cast<std::size_t>(i)].a.get_si(), m);
            v[static_cast<std::size_t>(2 * i + 1)] = lmod(g[static_cast<std::size_t>(i)].b.get_si(), m);
        }
        rows.push_back(v);
    }
    return rows;
}

InertModule module_from_rows(const std::vector<Vec10>& rows, long p) {
    std::vector<std::array<ModScalar, 5>> gens;
    for (const Vec10& v : rows) {
        std::array<ModScalar, 5> g;
        for (int i = 0; i < 5; ++i) {
            g[static_cast<std::size_t>(i)].a = v[static_cast<std::size_t>(2 * i)];
            g[static_cast<std::size_t>(i)].b = v[static_cast<std::size_t>(2 * i + 1)];
        }
        gens.push_back(g);
    }
    return inert_module_canonical(gens, p);
}

}  // namespace

InertModule inert_dual(const InertModule& mm, const ModMatrix& h, long p) {
    std::vector<Vec10> constraints;
    for (const Vec10& g : module_rows(mm, p)) {
        auto f = hermitian_functionals(g, h, p);
        constraints.push_back(f[0]);
        constraints.push_back(f[1]);
    }
    std::vector<Vec10> ker = kernel_mod_p2(constraints, p);
    return module_from_rows(ker, p);
}

bool inert_selfdual(const InertModule& m, const ModMatrix& h, long p) {
    return inert_dual(m, h, p) == m;
}

InertModule inert_gate_label(const AlgebraElem& g, long p, const ModNContext& ctx,
                             const BnData& bn) {
    ModMatrix m = reduce_algebra(g, bn, ctx);
    std::vector<std::array<ModScalar, 5>> cols;
    for (int j = 0; j < 5; ++j) {
        std::array<ModScalar, 5> col;
        for (int i = 0; i < 5; ++i) col[static_cast<std::size_t>(i)] = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        cols.push_back(col);
    }
    return inert_module_canonical(cols, p);
}

InertModule inert_module_r5(long p) {
    std::vector<std::array<ModScalar, 5>> gens(5);
    for (int i = 0; i < 5; ++i) {
        for (int j = 0; j < 5; ++j) gens[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = ModScalar{0, 0};
        gens[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = ModScalar{1, 0};
    }
    return inert_module_canonical(gens, p);
}

InertModule inert_module_pr5(long p) { return inert_p_scale(inert_module_r5(p), p); }

InertModule inert_p_scale(const InertModule& m, long p) {
    std::vector<Vec10> rows = module_rows(m, p);
    long mm = p * p;
    for (auto& r : rows)
        for (long& x : r) x = lmod(x * p, mm);
    return module_from_rows(rows, p);
}

InertModule inert_div_p(const InertModule& m, const ModMatrix& h, long p) {
    // p x in M  <=>  H(z, p x) = 0 for all z in dual(M)  <=>  H(p z, x) = 0.
    return inert_dual(inert_p_scale(inert_dual(m, h, p), p), h, p);
}

bool inert_module_contains(const InertModule& big, const InertModule& small, long p) {
    long mm = p * p;
    std::vector<Vec10> rows = module_rows(big, p);
    // pivot position and valuation per Howell row
    std::vector<std::pair<int, long>> piv;
    for (const Vec10& r : rows) {
        int c = 0;
        while (c < 10 && r[static_cast<std::size_t>(c)] == 0) ++c;
        if (c == 10) continue;
        long pv = 1;
        if (r[static_cast<std::size_t>(c)] % p == 0) pv = p;
        piv.emplace_back(c, pv);
    }
    for (Vec10 y : module_rows(small, p)) {
        for (std::size_t i = 0; i < piv.size(); ++i) {
            long v = y[static_cast<std::size_t>(piv[i].first)];
            if (v == 0) continue;
            if (v % piv[i].second != 0) return false;
            long f = v / piv[i].second;
            for (int j = 0; j < 10; ++j)
                y[static_cast<std::size_t>(j)] =
                    lmod(y[static_cast<std::size_t>(j)] - f * rows[i][static_cast<std::size_t>(j)], mm);
        }
        for (long v : y)
            if (v != 0) return false;
    }
    return true;
}

int inert_unit_rank(const InertModule& m, long p) {
    std::vector<std::array<long, 10>> a;
    for (const Vec10& r : module_rows(m, p)) {
        std::array<long, 10> v;
        for (int j = 0; j < 10; ++j) v[static_cast<std::size_t>(j)] = lmod(r[static_cast<std::size_t>(j)], p);
        a.push_back(v);
    }
    int rank = 0;
    for (int col = 0; col < 10; ++col) {
        std::size_t pr = a.size();
        for (std::size_t i = static_cast<std::size_t>(rank); i < a.size(); ++i)
            if (a[i][static_cast<std::size_t>(col)] != 0) { pr = i; break; }
        if (pr == a.size()) continue;
        std::swap(a[static_cast<std::size_t>(rank)], a[pr]);
        long inv = linv(a[static_cast<std::size_t>(rank)][static_cast<std::size_t>(col)], p);
        for (int j = 0; j < 10; ++j)
            a[static_cast<std::size_t>(rank)][static_cast<std::size_t>(j)] =
                lmod(a[static_cast<std::size_t>(rank)][static_cast<std::size_t>(j)] * inv, p);
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i == static_cast<std::size_t>(rank)) continue;
            long f = a[i][static_cast<std::size_t>(col)];
            if (f == 0) continue;
            for (int j = 0; j < 10; ++j)
                a[i][static_cast<std::size_t>(j)] =
                    lmod(a[i][static_cast<std::size_t>(j)] - f * a[static_cast<std::size_t>(rank)][static_cast<std::size_t>(j)], p);
        }
        ++rank;
    }
    return rank;
}

InertModule inert_midpoint(const InertModule& label, long p, int* type) {
    std::vector<std::array<ModScalar, 5>> gens = label.gens;
    for (int i = 0; i < 5; ++i) {
        std::array<ModScalar, 5> e;
        for (int j = 0; j < 5; ++j) e[static_cast<std::size_t>(j)] = ModScalar{0, 0};
        e[static_cast<std::size_t>(i)] = ModScalar{Int(p), 0};
        gens.push_back(e);
    }
    InertModule mid = inert_module_canonical(gens, p);
    int ur = inert_unit_rank(mid, p);
    if (ur % 2 != 0 || ur / 2 < 1 || ur / 2 > 2)
        throw std::domain_error("inert_midpoint: label is not a distance-2 vertex");
    if (type) *type = ur / 2;
    return mid;
}

bool inert_vertex1_valid(const InertModule& m1, const ModMatrix& h, long p,
                         InertModule* m2out) {
    InertModule r5 = inert_module_r5(p), pr5 = inert_module_pr5(p);
    InertModule m2 = inert_div_p(inert_dual(m1, h, p), h, p);
    if (m2out) *m2out = m2;
    if (!(inert_module_contains(m1, pr5, p) && !(m1 == pr5))) return false;
    if (!(inert_module_contains(m2, m1, p) && !(m2 == m1))) return false;
    if (m2 == r5) return false;
    return inert_dual(inert_p_scale(m2, p), h, p) == m1;
}

Int inert_valency(long q, int base, const std::set<int>& types) {
    Int Q(q);
    Int q2 = Q * Q, q3 = q2 * Q, q5 = q2 * q3;
    auto key = [&](std::initializer_list<int> t) { return types == std::set<int>(t); };
    if (base == 0) {
        if (key({0, 1})) return (q2 + 1) * (q5 + 1);
        if (key({0, 2})) return (q3 + 1) * (q5 + 1);
        if (key({0, 1, 2})) return (q2 + 1) * (q3 + 1) * (q5 + 1);
    } else if (base == 1) {
        if (key({0, 1})) return Q + 1;
        if (key({1, 2})) return q3 + 1;
        if (key({0, 1, 2})) return (Q + 1) * (q3 + 1);
    } else if (base == 2) {
        if (key({0, 2})) return (Q + 1) * (q3 + 1);
        if (key({1, 2})) return (q2 + 1) * (q3 + 1);
        if (key({0, 1, 2})) return (Q + 1) * (q2 + 1) * (q3 + 1);
    }
    throw std::invalid_argument("inert_valency: unknown (base, types) combination");
}

Int inert_chambers_per_edge(long q, int t1, int t2) {
    std::set<int> s{t1, t2};
    Int Q(q);
    if (s == std::set<int>{0, 1}) return Q * Q * Q + 1;
    if (s == std::set<int>{0, 2}) return Q * Q + 1;
    if (s == std::set<int>{1, 2}) return Q + 1;
    throw std::invalid_argument("inert_chambers_per_edge: bad edge type");
}

}  // namespace gg
