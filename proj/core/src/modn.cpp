#include "gg/modn.hpp"

#include <random>
#include <stdexcept>

namespace gg {

namespace {

Int md(const Int& v, const Int& n) {
    Int r = v % n;
    if (r < 0) r += n;
    return r;
}

// v = num/den mod n; den must be a unit.
Int rat_mod(const Rat& v, const Int& n) {
    Int num = v.get_num(), den = v.get_den();
    return md(num * int_inv(md(den, n), n), n);
}

Int crt_pair(const Int& r1, const Int& m1, const Int& r2, const Int& m2) {
    // r = r1 + m1 * t with t = (r2 - r1) / m1 mod m2
    Int t = md((r2 - r1) * int_inv(md(m1, m2), m2), m2);
    return r1 + m1 * t;
}

// sigma on the alpha-power basis of O_M, as an integer matrix (columns are
// the images of alpha^j).
const std::array<std::array<Int, 5>, 5>& sigma_int_matrix() {
    static const auto m = [] {
        std::array<std::array<Int, 5>, 5> s;
        MElem p(1);
        for (int j = 0; j < 5; ++j) {
            MElem img = apply_sigma(p);
            for (int i = 0; i < 5; ++i) {
                const Rat& c = img[i];
                if (c.get_den() != 1) throw std::logic_error("sigma matrix not integral");
                s[i][j] = c.get_num();
            }
            p = p * MElem::alpha();
        }
        return s;
    }();
    return m;
}

// ---------------------------------------------------------------------------
// Linear algebra over Z/q^k: Gauss-Jordan inversion with unit pivots mod q.
// ---------------------------------------------------------------------------
using IntRows = std::vector<std::vector<Int>>;

IntRows invert_local(IntRows a, long q, const Int& m) {
    std::size_t n = a.size();
    IntRows inv(n, std::vector<Int>(n, 0));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = n;
        for (std::size_t r = col; r < n; ++r) {
            if (a[r][col] % q != 0) { piv = r; break; }
        }
        if (piv == n) throw std::domain_error("matrix not invertible mod q");
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        Int s = int_inv(a[col][col], m);
        for (std::size_t j = 0; j < n; ++j) {
            a[col][j] = md(a[col][j] * s, m);
            inv[col][j] = md(inv[col][j] * s, m);
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col] == 0) continue;
            Int f = a[r][col];
            for (std::size_t j = 0; j < n; ++j) {
                a[r][j] = md(a[r][j] - f * a[col][j], m);
                inv[r][j] = md(inv[r][j] - f * inv[col][j], m);
            }
        }
    }
    return inv;
}

// Invert an integer matrix over Z/n by prime-power locals + CRT.
IntRows invert_crt(const IntRows& a, const ModNContext& ctx) {
    std::size_t n = a.size();
    IntRows acc;
    Int mod_acc = 1;
    for (auto [q, k] : ctx.primes) {
        Int m(q);
        for (int i = 1; i < k; ++i) m *= q;
        IntRows loc = a;
        for (auto& row : loc)
            for (auto& v : row) v = md(v, m);
        loc = invert_local(std::move(loc), q, m);
        if (acc.empty()) {
            acc = std::move(loc);
            mod_acc = m;
        } else {
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    acc[i][j] = crt_pair(acc[i][j], mod_acc, loc[i][j], m);
            mod_acc *= m;
        }
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Coordinate packings: O_E/n entry -> 2 coords, O_L/n entry -> 10 coords.
// ---------------------------------------------------------------------------
void scalar_block(const ModScalar& z, IntRows& dst, std::size_t r0, std::size_t c0,
                  const Int& n) {
    // multiplication by a + b*rho on the basis (1, rho): rho^2 = rho - 2
    dst[r0][c0] = z.a;
    dst[r0][c0 + 1] = md(-2 * z.b, n);
    dst[r0 + 1][c0] = z.b;
    dst[r0 + 1][c0 + 1] = md(z.a + z.b, n);
}

std::vector<Int> lelem_coords(const ModLElem& z) {
    std::vector<Int> v(10);
    for (int j = 0; j < 5; ++j) {
        v[2 * j] = z.c[j].a;
        v[2 * j + 1] = z.c[j].b;
    }
    return v;
}

ModLElem lelem_from_coords(const std::vector<Int>& v, std::size_t off) {
    ModLElem z;
    for (int j = 0; j < 5; ++j) z.c[j] = ModScalar{v[off + 2 * j], v[off + 2 * j + 1]};
    return z;
}

ModLElem lelem_basis(int idx, const Int& n) {
    // idx in 0..9: alpha^j (even) or rho*alpha^j (odd)
    ModLElem z = ModLElem::from_scalar(ModScalar{Int(0), Int(0)}, n);
    z.c[idx / 2] = (idx % 2 == 0) ? ModScalar{Int(1), Int(0)} : ModScalar{Int(0), Int(1)};
    return z;
}

// 10x10 regular representation of multiplication by z on O_L/n.
IntRows lelem_regrep(const ModLElem& z, const Int& n) {
    IntRows m(10, std::vector<Int>(10, 0));
    for (int idx = 0; idx < 10; ++idx) {
        ModLElem col = z.mul(lelem_basis(idx, n), n);
        auto v = lelem_coords(col);
        for (int r = 0; r < 10; ++r) m[r][idx] = v[r];
    }
    return m;
}

}  // namespace

// ---------------------------------------------------------------------------
// Context
// ---------------------------------------------------------------------------
ModNContext make_modn_context(const Int& n) {
    if (n < 2) throw std::invalid_argument("modulus must be >= 2");
    if (n % 2 == 0 || n % 7 == 0 || n % 11 == 0)
        throw std::invalid_argument("modulus must be coprime to 2*7*11");
    ModNContext ctx;
    ctx.n = n;
    Int rest = n;
    for (long q = 3; Int(q) * q <= rest; q += 2) {
        if (rest % q != 0) continue;
        int k = 0;
        while (rest % q == 0) { rest /= q; ++k; }
        ctx.primes.emplace_back(q, k);
    }
    if (rest > 1) {
        if (!rest.fits_slong_p()) throw std::invalid_argument("prime factor too large");
        ctx.primes.emplace_back(rest.get_si(), 1);
    }
    return ctx;
}

// ---------------------------------------------------------------------------
// ModScalar
// ---------------------------------------------------------------------------
Int int_inv(const Int& v, const Int& n) {
    Int r;
    if (mpz_invert(r.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t()) == 0)
        throw std::domain_error("not a unit");
    return r;
}

ModScalar ModScalar::from_e(const EElem& e, const Int& n) {
    return ModScalar{rat_mod(e.r(), n), rat_mod(e.s(), n)};
}
ModScalar ModScalar::from_int(const Int& v, const Int& n) { return ModScalar{md(v, n), Int(0)}; }

ModScalar ModScalar::add(const ModScalar& o, const Int& n) const {
    return ModScalar{md(a + o.a, n), md(b + o.b, n)};
}
ModScalar ModScalar::sub(const ModScalar& o, const Int& n) const {
    return ModScalar{md(a - o.a, n), md(b - o.b, n)};
}
ModScalar ModScalar::mul(const ModScalar& o, const Int& n) const {
    return ModScalar{md(a * o.a - 2 * b * o.b, n), md(a * o.b + b * o.a + b * o.b, n)};
}
ModScalar ModScalar::neg(const Int& n) const { return ModScalar{md(-a, n), md(-b, n)}; }
ModScalar ModScalar::conj(const Int& n) const { return ModScalar{md(a + b, n), md(-b, n)}; }
Int ModScalar::norm(const Int& n) const { return md(a * a + a * b + 2 * b * b, n); }

ModScalar mod_inv(const ModScalar& z, const Int& n) {
    Int ninv = int_inv(z.norm(n), n);
    ModScalar zc = z.conj(n);
    return ModScalar{md(zc.a * ninv, n), md(zc.b * ninv, n)};
}

// ---------------------------------------------------------------------------
// ModLElem
// ---------------------------------------------------------------------------
ModLElem ModLElem::from_l(const LElem& l, const Int& n) {
    ModLElem z;
    for (int j = 0; j < 5; ++j)
        z.c[j] = ModScalar{rat_mod(l.m0()[j], n), rat_mod(l.m1()[j], n)};
    return z;
}
ModLElem ModLElem::from_scalar(const ModScalar& s, const Int& n) {
    ModLElem z;
    z.c.fill(ModScalar{Int(0), Int(0)});
    z.c[0] = ModScalar{md(s.a, n), md(s.b, n)};
    return z;
}

ModLElem ModLElem::add(const ModLElem& o, const Int& n) const {
    ModLElem z;
    for (int j = 0; j < 5; ++j) z.c[j] = c[j].add(o.c[j], n);
    return z;
}

ModLElem ModLElem::mul(const ModLElem& o, const Int& n) const {
    // convolution to degree 8, then reduce with alpha^5 = alpha^4 + 4 alpha^3
    // - 3 alpha^2 - 3 alpha + 1
    std::array<ModScalar, 9> t;
    t.fill(ModScalar{Int(0), Int(0)});
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) t[i + j] = t[i + j].add(c[i].mul(o.c[j], n), n);
    static const long red[5] = {1, -3, -3, 4, 1};  // alpha^5 in the power basis
    for (int deg = 8; deg >= 5; --deg) {
        ModScalar lead = t[deg];
        if (lead.is_zero()) continue;
        t[deg] = ModScalar{Int(0), Int(0)};
        for (int j = 0; j < 5; ++j) {
            ModScalar term{md(lead.a * red[j], n), md(lead.b * red[j], n)};
            t[deg - 5 + j] = t[deg - 5 + j].add(term, n);
        }
    }
    ModLElem z;
    for (int j = 0; j < 5; ++j) z.c[j] = t[j];
    return z;
}

ModLElem ModLElem::sigma(const Int& n) const {
    const auto& s = sigma_int_matrix();
    ModLElem z;
    z.c.fill(ModScalar{Int(0), Int(0)});
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) {
            ModScalar term{md(c[j].a * s[i][j], n), md(c[j].b * s[i][j], n)};
            z.c[i] = z.c[i].add(term, n);
        }
    return z;
}

ModLElem ModLElem::conj(const Int& n) const {
    ModLElem z;
    for (int j = 0; j < 5; ++j) z.c[j] = c[j].conj(n);
    return z;
}

ModScalar ModLElem::norm_to_e(const Int& n) const {
    ModLElem prod = *this;
    ModLElem s = *this;
    for (int i = 1; i < 5; ++i) {
        s = s.sigma(n);
        prod = prod.mul(s, n);
    }
    if (!prod.is_scalar()) throw std::logic_error("norm not in E");
    return prod.c[0];
}

bool ModLElem::is_scalar() const {
    for (int j = 1; j < 5; ++j)
        if (!c[j].is_zero()) return false;
    return true;
}

ModLElem mod_inv(const ModLElem& z, const ModNContext& ctx) {
    IntRows rep = lelem_regrep(z, ctx.n);
    IntRows inv = invert_crt(rep, ctx);
    // column of the basis element 1 gives the coordinates of z^{-1}
    std::vector<Int> col(10);
    for (int r = 0; r < 10; ++r) col[r] = md(inv[r][0], ctx.n);
    return lelem_from_coords(col, 0);
}

// ---------------------------------------------------------------------------
// Matrices
// ---------------------------------------------------------------------------
ModMatrix mod_identity(const Int& n) {
    ModMatrix m;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) m[i][j] = ModScalar{Int(i == j ? 1 : 0), Int(0)};
    (void)n;
    return m;
}

ModMatrix mod_mul(const ModMatrix& x, const ModMatrix& y, const Int& n) {
    ModMatrix z;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) {
            ModScalar acc{Int(0), Int(0)};
            for (int k = 0; k < 5; ++k) acc = acc.add(x[i][k].mul(y[k][j], n), n);
            z[i][j] = acc;
        }
    return z;
}

ModMatrix mod_dagger(const ModMatrix& x, const Int& n) {
    ModMatrix z;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) z[i][j] = x[j][i].conj(n);
    return z;
}

ModMatrix mod_scale(const ModMatrix& x, const ModScalar& s, const Int& n) {
    ModMatrix z;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) z[i][j] = x[i][j].mul(s, n);
    return z;
}

bool mod_equal(const ModMatrix& x, const ModMatrix& y) {
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j)
            if (!(x[i][j] == y[i][j])) return false;
    return true;
}

ModMatrix mod_inv(const ModMatrix& x, const ModNContext& ctx) {
    const Int& n = ctx.n;
    IntRows rep(10, std::vector<Int>(10, 0));
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) scalar_block(x[i][j], rep, 2 * i, 2 * j, n);
    IntRows inv = invert_crt(rep, ctx);
    ModMatrix z;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j)
            z[i][j] = ModScalar{md(inv[2 * i][2 * j], n), md(inv[2 * i + 1][2 * j], n)};
    return z;
}

ModLMatrix modl_mul(const ModLMatrix& x, const ModLMatrix& y, const Int& n) {
    ModLMatrix z;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) {
            ModLElem acc = ModLElem::from_scalar(ModScalar{Int(0), Int(0)}, n);
            for (int k = 0; k < 5; ++k) acc = acc.add(x[i][k].mul(y[k][j], n), n);
            z[i][j] = acc;
        }
    return z;
}

ModLMatrix modl_dagger(const ModLMatrix& x, const Int& n) {
    ModLMatrix z;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) z[i][j] = x[j][i].conj(n);
    return z;
}

ModLMatrix modl_inv(const ModLMatrix& x, const ModNContext& ctx) {
    const Int& n = ctx.n;
    // action on (O_L/n)^5 = (Z/n)^50
    IntRows rep(50, std::vector<Int>(50, 0));
    for (int col = 0; col < 50; ++col) {
        int t = col / 10, idx = col % 10;
        ModLElem basis = lelem_basis(idx, n);
        for (int i = 0; i < 5; ++i) {
            ModLElem entry = x[i][t].mul(basis, n);
            auto v = lelem_coords(entry);
            for (int r = 0; r < 10; ++r) rep[10 * i + r][col] = v[r];
        }
    }
    IntRows inv = invert_crt(rep, ctx);
    ModLMatrix z;
    for (int j = 0; j < 5; ++j) {
        int col = 10 * j;  // basis element (e_j, 1)
        for (int i = 0; i < 5; ++i) {
            std::vector<Int> v(10);
            for (int r = 0; r < 10; ++r) v[r] = md(inv[10 * i + r][col], ctx.n);
            z[i][j] = lelem_from_coords(v, 0);
        }
    }
    return z;
}

// ---------------------------------------------------------------------------
// hensel_gamma
// ---------------------------------------------------------------------------
namespace {

// gamma is produced as beta/conj(beta) with N_{L/E}(beta) = rho2 * rho11^3:
// then N_{L/E}(gamma) = a and gamma*conj(gamma) = 1. The extra unitarity
// makes U_n^dagger U_n = I, so the Hermitian form B_n^dagger B_n collapses to
// the (rational) inverse trace form of the conjugate basis.
ModLElem hensel_gamma_local(long q, int k, const Int& m) {
    EElem anum = consts::rho2() * consts::rho11() * consts::rho11() * consts::rho11();
    ModScalar target = ModScalar::from_e(anum, m);
    Int qi(q);
    ModScalar target_q{md(target.a, qi), md(target.b, qi)};

    // deterministic seeded search modulo q
    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL ^ static_cast<unsigned long>(q));
    ModLElem g;
    bool found = false;
    for (int tries = 0; tries < 2000000 && !found; ++tries) {
        ModLElem cand;
        for (int j = 0; j < 5; ++j)
            cand.c[j] = ModScalar{Int(static_cast<long>(rng() % q)),
                                  Int(static_cast<long>(rng() % q))};
        ModScalar nm = cand.norm_to_e(qi);
        if (nm == target_q) { g = cand; found = true; }
    }
    if (!found) throw std::runtime_error("no norm seed found mod q");

    // lift to Z/q^k: gamma <- gamma (1 + t*alpha) with Tr_{L/E}(alpha) = 1,
    // so N(gamma(1+t*alpha)) = N(gamma)(1 + t + O(t^2)) and t = a/N(gamma) - 1
    // converges quadratically.
    ModLElem alpha = lelem_basis(2, m);  // alpha
    ModLElem one = ModLElem::from_scalar(ModScalar{Int(1), Int(0)}, m);
    for (int iter = 0; iter < k + 2; ++iter) {
        ModScalar nm = g.norm_to_e(m);
        if (nm == target) break;
        ModScalar t = target.mul(mod_inv(nm, m), m).sub(ModScalar{Int(1), Int(0)}, m);
        ModLElem factor = one;
        for (int j = 0; j < 5; ++j)
            factor.c[j] = factor.c[j].add(alpha.c[j].mul(t, m), m);
        g = g.mul(factor, m);
    }
    if (!(g.norm_to_e(m) == target)) throw std::runtime_error("hensel lift failed");

    // gamma = beta / conj(beta)
    IntRows rep = lelem_regrep(g.conj(m), m);
    IntRows inv = invert_local(std::move(rep), q, m);
    std::vector<Int> col(10);
    for (int r = 0; r < 10; ++r) col[r] = md(inv[r][0], m);
    return g.mul(lelem_from_coords(col, 0), m);
}

}  // namespace

ModLElem hensel_gamma(const ModNContext& ctx) {
    ModLElem acc;
    Int mod_acc = 1;
    bool first = true;
    for (auto [q, k] : ctx.primes) {
        Int m(q);
        for (int i = 1; i < k; ++i) m *= q;
        ModLElem loc = hensel_gamma_local(q, k, m);
        if (first) {
            acc = loc;
            mod_acc = m;
            first = false;
        } else {
            for (int j = 0; j < 5; ++j) {
                acc.c[j].a = crt_pair(acc.c[j].a, mod_acc, loc.c[j].a, m);
                acc.c[j].b = crt_pair(acc.c[j].b, mod_acc, loc.c[j].b, m);
            }
            mod_acc *= m;
        }
    }
    return acc;
}

// ---------------------------------------------------------------------------
// B_n
// ---------------------------------------------------------------------------
BnData build_Bn(const ModNContext& ctx) {
    const Int& n = ctx.n;
    ModLElem zero = ModLElem::from_scalar(ModScalar{Int(0), Int(0)}, n);
    ModLElem one = ModLElem::from_scalar(ModScalar{Int(1), Int(0)}, n);

    ModLElem gamma = hensel_gamma(ctx);

    // U = diag(1, gamma, gamma gamma^sigma, ...)
    std::array<ModLElem, 5> diag;
    diag[0] = one;
    ModLElem s = gamma;
    for (int i = 1; i < 5; ++i) {
        diag[i] = diag[i - 1].mul(s, n);
        s = s.sigma(n);
    }

    // A_{ij} = sigma^{i+j}(alpha_M), the circulant of conjugates
    ModLMatrix a;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j)
            a[i][j] = ModLElem::from_l(LElem(apply_sigma(MElem::alpha(), (i + j) % 5)), n);
    ModLMatrix a_inv = modl_inv(a, ctx);

    BnData out;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) {
            out.bn[i][j] = diag[i].mul(a_inv[i][j], n);      // U A^{-1}
            out.bn_inv[i][j] = zero;
        }
    // B^{-1} = A U^{-1}
    std::array<ModLElem, 5> diag_inv;
    for (int i = 0; i < 5; ++i) diag_inv[i] = mod_inv(diag[i], ctx);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) out.bn_inv[i][j] = a[i][j].mul(diag_inv[j], n);

    // H = B^dagger B must be Hermitian with entries in O_E/n
    ModLMatrix h = modl_mul(modl_dagger(out.bn, n), out.bn, n);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) {
            if (!h[i][j].is_scalar())
                throw std::logic_error("B^dagger B has entries outside O_E/n");
            out.h[i][j] = h[i][j].c[0];
        }
    if (!mod_equal(out.h, mod_dagger(out.h, n)))
        throw std::logic_error("B^dagger B not Hermitian");
    return out;
}

ModLMatrix eta_modn(const AlgebraElem& x, const Int& n) {
    EtaMatrix m = eta(x);
    ModLMatrix z;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) z[i][j] = ModLElem::from_l(m(i, j), n);
    return z;
}

ModMatrix reduce_algebra(const AlgebraElem& x, const BnData& bn, const ModNContext& ctx) {
    const Int& n = ctx.n;
    ModLMatrix m = modl_mul(bn.bn_inv, modl_mul(eta_modn(x, n), bn.bn, n), n);
    ModMatrix out;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) {
            if (!m[i][j].is_scalar())
                throw std::domain_error("reduced matrix not E-valued");
            out[i][j] = m[i][j].c[0];
        }
    return out;
}

// ---------------------------------------------------------------------------
// C_n
// ---------------------------------------------------------------------------
namespace {

// root of t^2 - t + 2 mod q^k (the rho-component of the split idempotent)
Int split_root(long q, int k, const Int& m) {
    long r0 = -1;
    for (long t = 0; t < q; ++t) {
        if ((t * t - t + 2) % q == 0) { r0 = t; break; }
    }
    if (r0 < 0) throw std::domain_error("prime not split");
    Int r(r0);
    for (int i = 1; i < k; ++i) {
        // Newton: r <- r - f(r)/f'(r)
        Int fr = md(r * r - r + 2, m);
        Int fpr = md(2 * r - 1, m);
        r = md(r - fr * int_inv(fpr, m), m);
    }
    return r;
}

// s in O_E/q^k (inert q) with s*conj(s) = d, d a unit of Z/q^k.
ModScalar norm_preimage(const Int& d, long q, const Int& m) {
    Int qi(q);
    Int dq = md(d, qi);
    ModScalar s{Int(0), Int(0)};
    bool found = false;
    for (long x = 0; x < q && !found; ++x)
        for (long y = 0; y < q && !found; ++y) {
            ModScalar c{Int(x), Int(y)};
            if (c.norm(qi) == dq) { s = c; found = true; }
        }
    if (!found) throw std::runtime_error("norm not represented mod q");
    // lift: s <- s(1+t), t rational: N(s(1+t)) = N(s)(1+t)^2
    Int half = int_inv(Int(2), m);
    for (int iter = 0; iter < 64; ++iter) {
        Int nm = s.norm(m);
        if (nm == md(d, m)) break;
        Int t = md((md(d, m) * int_inv(nm, m) - 1) * half, m);
        ModScalar f{md(1 + t, m), Int(0)};
        s = s.mul(f, m);
    }
    if (!(s.norm(m) == md(d, m))) throw std::runtime_error("norm lift failed");
    return s;
}

using Mat5I = std::array<std::array<Int, 5>, 5>;

Mat5I mat5_mul(const Mat5I& x, const Mat5I& y, const Int& m) {
    Mat5I z;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) {
            Int acc = 0;
            for (int k = 0; k < 5; ++k) acc += x[i][k] * y[k][j];
            z[i][j] = md(acc, m);
        }
    return z;
}

Mat5I mat5_inv(Mat5I x, long q, const Int& m) {
    IntRows rows(5, std::vector<Int>(5));
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) rows[i][j] = x[i][j];
    IntRows inv = invert_local(std::move(rows), q, m);
    Mat5I z;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) z[i][j] = inv[i][j];
    return z;
}

// local C for split q: components (X^{-1} J, I) through the idempotents
ModMatrix build_cn_split(const ModMatrix& h, long q, int k, const Int& m) {
    Int w = split_root(q, k, m);
    Int wbar = md(1 - w, m);
    // rho-component of each entry: a + b*w
    Mat5I x;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) x[i][j] = md(h[i][j].a + h[i][j].b * w, m);
    Mat5I j5{};
    for (int i = 0; i < 5; ++i) j5[i][4 - i] = 1;
    Mat5I cw = mat5_mul(mat5_inv(x, q, m), j5, m);
    // combine components: entry = cw at w, identity at wbar;
    // z = u + v*rho with u + v*w = cw and u + v*wbar = delta_ij
    Int dinv = int_inv(md(w - wbar, m), m);  // (2w-1)^{-1}, unit since (2w-1)^2 = -7
    ModMatrix c;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) {
            Int other(i == j ? 1 : 0);
            Int v = md((cw[i][j] - other) * dinv, m);
            Int u = md(cw[i][j] - v * w, m);
            c[i][j] = ModScalar{u, v};
        }
    return c;
}

// local C for inert q: diagonalize, normalize to 1, convert to J
ModMatrix build_cn_inert(const ModMatrix& h_in, long q, int k, const Int& m) {
    (void)k;
    ModMatrix h = h_in;
    ModMatrix c = mod_identity(m);
    auto col_op = [&](int dst, int src, const ModScalar& s) {
        // v_dst += v_src * s : H <- E^dagger H E, C <- C E
        for (int r = 0; r < 5; ++r) {
            h[r][dst] = h[r][dst].add(h[r][src].mul(s, m), m);
            c[r][dst] = c[r][dst].add(c[r][src].mul(s, m), m);
        }
        ModScalar sc = s.conj(m);
        for (int r = 0; r < 5; ++r) h[dst][r] = h[dst][r].add(sc.mul(h[src][r], m), m);
    };
    auto col_swap = [&](int i, int j) {
        for (int r = 0; r < 5; ++r) { std::swap(h[r][i], h[r][j]); std::swap(c[r][i], c[r][j]); }
        for (int r = 0; r < 5; ++r) std::swap(h[i][r], h[j][r]);
    };
    auto is_unit = [&](const ModScalar& z) { return z.norm(m) % q != 0; };

    for (int i = 0; i < 5; ++i) {
        if (!is_unit(h[i][i])) {
            bool fixed = false;
            for (int j = i + 1; j < 5 && !fixed; ++j)
                if (is_unit(h[j][j])) { col_swap(i, j); fixed = true; }
            if (!fixed) {
                // all remaining diagonals non-units; find a unit off-diagonal
                // entry and push it onto the diagonal (char != 2)
                for (int j = i; j < 5 && !fixed; ++j)
                    for (int l = j + 1; l < 5 && !fixed; ++l) {
                        if (!is_unit(h[j][l])) continue;
                        static const std::array<ModScalar, 3> tries = {
                            ModScalar{Int(1), Int(0)}, ModScalar{Int(0), Int(1)},
                            ModScalar{Int(1), Int(1)}};
                        for (const auto& s : tries) {
                            ModMatrix hs = h, cs = c;
                            col_op(j, l, s);
                            if (is_unit(h[j][j])) {
                                if (j != i) col_swap(i, j);
                                fixed = true;
                                break;
                            }
                            h = hs;
                            c = cs;
                        }
                    }
            }
            if (!fixed) throw std::domain_error("Hermitian form not invertible");
        }
        ModScalar piv_inv = mod_inv(h[i][i], m);
        for (int j = i + 1; j < 5; ++j) {
            if (h[i][j].is_zero()) continue;
            col_op(j, i, piv_inv.mul(h[i][j], m).neg(m));
        }
    }
    // diagonal entries are conj-fixed units of Z/q^k; scale each to 1
    for (int i = 0; i < 5; ++i) {
        if (!(h[i][i].b == 0)) throw std::logic_error("diagonal not rational");
        ModScalar s = mod_inv(norm_preimage(h[i][i].a, q, m), m);
        for (int r = 0; r < 5; ++r) c[r][i] = c[r][i].mul(s, m);
        h[i][i] = ModScalar{Int(1), Int(0)};
    }
    // now C^dagger H C = I; append Q with Q^dagger Q = J via hyperbolic pairs
    ModScalar nu = norm_preimage(md(Int(-1), m), q, m);  // N(nu) = -1
    ModScalar half{int_inv(Int(2), m), Int(0)};
    ModMatrix qm;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) qm[i][j] = ModScalar{Int(0), Int(0)};
    for (int i = 0; i < 2; ++i) {
        // columns i and 4-i from the I-orthonormal pair (e_i, e_{4-i})
        qm[i][i] = ModScalar{Int(1), Int(0)};
        qm[4 - i][i] = nu;
        qm[i][4 - i] = half;
        qm[4 - i][4 - i] = nu.neg(m).mul(half, m);
    }
    qm[2][2] = ModScalar{Int(1), Int(0)};
    return mod_mul(c, qm, m);
}

}  // namespace

ModMatrix mod_j(const Int& n) {
    ModMatrix j;
    for (int i = 0; i < 5; ++i)
        for (int c = 0; c < 5; ++c) j[i][c] = ModScalar{Int(i + c == 4 ? 1 : 0), Int(0)};
    (void)n;
    return j;
}

CnData build_Cn(const ModMatrix& h, const ModNContext& ctx) {
    const Int& n = ctx.n;
    if (!mod_equal(h, mod_dagger(h, n))) throw std::domain_error("form not Hermitian");
    ModMatrix acc;
    Int mod_acc = 1;
    bool first = true;
    for (auto [q, k] : ctx.primes) {
        Int m(q);
        for (int i = 1; i < k; ++i) m *= q;
        ModMatrix hq;
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 5; ++j) hq[i][j] = ModScalar{md(h[i][j].a, m), md(h[i][j].b, m)};
        ModMatrix loc = ((q % 7 == 1 || q % 7 == 2 || q % 7 == 4) ? build_cn_split
                                                                  : build_cn_inert)(hq, q, k, m);
        if (first) {
            acc = loc;
            mod_acc = m;
            first = false;
        } else {
            for (int i = 0; i < 5; ++i)
                for (int j = 0; j < 5; ++j) {
                    acc[i][j].a = crt_pair(acc[i][j].a, mod_acc, loc[i][j].a, m);
                    acc[i][j].b = crt_pair(acc[i][j].b, mod_acc, loc[i][j].b, m);
                }
            mod_acc *= m;
        }
    }
    CnData out;
    out.c = acc;
    out.c_inv = mod_inv(acc, ctx);
    out.lambda = ModScalar{Int(1), Int(0)};
    ModMatrix check = mod_mul(mod_dagger(acc, n), mod_mul(h, acc, n), n);
    if (!mod_equal(check, mod_j(n)))
        throw std::logic_error("C^dagger H C != J");
    return out;
}

ModMatrix reduce_gate(const GateElement& gate, const BnData& bn, const CnData& cn,
                      const ModNContext& ctx) {
    AlgebraElem scaled = d_scale(gate.g, LElem(gate.scale));
    ModMatrix x = reduce_algebra(scaled, bn, ctx);
    return mod_mul(cn.c_inv, mod_mul(x, cn.c, ctx.n), ctx.n);
}

// ---------------------------------------------------------------------------
// group sizes
// ---------------------------------------------------------------------------
Int group_size_u5(const ModNContext& ctx) {
    Int size = 1;
    Int n25 = 1;
    for (int i = 0; i < 25; ++i) n25 *= ctx.n;
    size = n25;
    for (auto [q, k] : ctx.primes) {
        (void)k;
        Int qi(q);
        Int q25 = 1;
        for (int i = 0; i < 25; ++i) q25 *= qi;
        Int factor = 1;
        Int q5 = qi * qi * qi * qi * qi;
        bool split = (q % 7 == 1 || q % 7 == 2 || q % 7 == 4);
        Int qp = 1;
        for (int i = 0; i < 5; ++i) {
            Int term;
            if (split) term = q5 - qp;
            else if (i % 2 == 0) term = q5 + qp;
            else term = q5 - qp;
            factor *= term;
            qp *= qi;
        }
        size = size / q25 * factor;
    }
    return size;
}

Int group_size_u1(const ModNContext& ctx) {
    Int size = ctx.n;
    for (auto [q, k] : ctx.primes) {
        (void)k;
        bool split = (q % 7 == 1 || q % 7 == 2 || q % 7 == 4);
        size = size / q * (split ? q - 1 : q + 1);
    }
    return size;
}

}  // namespace gg
