#pragma once

// Finite-ring arithmetic over O_E/n (E = Q(sqrt(-7)), rho = (1+sqrt(-7))/2)
// and O_L/n, plus the mod-n trivialization of the division algebra:
//   B_n^{-1} eta(.) B_n  maps the order into Mat_5(O_E/n),
//   C_n conjugates the Hermitian form H = B_n^dagger B_n to a multiple of the
//   antidiagonal form J, giving the reduction map into U_5(Z/n).
// n must be odd and coprime to 7 and 11.

#include "gg/orders.hpp"
#include "gg/gates.hpp"

#include <array>
#include <vector>

namespace gg {

// Factorization context for a modulus. All mod-n computations run prime-power
// locally (Gaussian elimination over Z/q^k needs unit pivots mod q) and are
// CRT-combined at the end.
struct ModNContext {
    Int n;
    std::vector<std::pair<long, int>> primes;  // (q, k) with n = prod q^k
};
ModNContext make_modn_context(const Int& n);

// Element of O_E/n: a + b*rho with rho^2 = rho - 2, conj(rho) = 1 - rho.
struct ModScalar {
    Int a, b;

    static ModScalar from_e(const EElem& e, const Int& n);  // denominators must be units mod n
    static ModScalar from_int(const Int& v, const Int& n);

    ModScalar add(const ModScalar& o, const Int& n) const;
    ModScalar sub(const ModScalar& o, const Int& n) const;
    ModScalar mul(const ModScalar& o, const Int& n) const;
    ModScalar neg(const Int& n) const;
    ModScalar conj(const Int& n) const;
    Int norm(const Int& n) const;  // a^2 + ab + 2b^2

    bool is_zero() const { return a == 0 && b == 0; }
    bool operator==(const ModScalar& o) const { return a == o.a && b == o.b; }
};

// Inverse in O_E/n; throws std::domain_error if the norm is not a unit.
ModScalar mod_inv(const ModScalar& z, const Int& n);
Int int_inv(const Int& v, const Int& n);

// Element of O_L/n in the alpha-power basis (L = M tensor E, M = Q[x]/(f)).
struct ModLElem {
    std::array<ModScalar, 5> c;

    static ModLElem from_l(const LElem& l, const Int& n);
    static ModLElem from_scalar(const ModScalar& s, const Int& n);

    ModLElem add(const ModLElem& o, const Int& n) const;
    ModLElem mul(const ModLElem& o, const Int& n) const;
    ModLElem sigma(const Int& n) const;   // alpha |-> -alpha^4 + 4 alpha^2 - 2
    ModLElem conj(const Int& n) const;    // E-conjugation, coefficientwise
    ModScalar norm_to_e(const Int& n) const;  // product of the five sigma-conjugates

    bool is_scalar() const;  // alpha-components vanish
};

// Inverse in O_L/n via the 10x10 regular representation over Z/n (prime-power
// local Gaussian elimination, CRT-combined). Throws if not a unit.
ModLElem mod_inv(const ModLElem& z, const ModNContext& ctx);

// 5x5 matrices over O_E/n and O_L/n.
using ModMatrix = std::array<std::array<ModScalar, 5>, 5>;
using ModLMatrix = std::array<std::array<ModLElem, 5>, 5>;

ModMatrix mod_identity(const Int& n);
ModMatrix mod_mul(const ModMatrix& x, const ModMatrix& y, const Int& n);
ModMatrix mod_dagger(const ModMatrix& x, const Int& n);  // conjugate transpose
ModMatrix mod_scale(const ModMatrix& x, const ModScalar& s, const Int& n);
bool mod_equal(const ModMatrix& x, const ModMatrix& y);
// Inverse over O_E/n (50-dim regular representation, prime-power local + CRT).
ModMatrix mod_inv(const ModMatrix& x, const ModNContext& ctx);

ModLMatrix modl_mul(const ModLMatrix& x, const ModLMatrix& y, const Int& n);
ModLMatrix modl_dagger(const ModLMatrix& x, const Int& n);
ModLMatrix modl_inv(const ModLMatrix& x, const ModNContext& ctx);

// gamma in O_L/n with N_{L/E}(gamma) = a mod n, where a is the algebra
// constant. Seeded search modulo q, Newton lift along 1 + t*alpha (Tr(alpha)=1),
// CRT across prime powers.
ModLElem hensel_gamma(const ModNContext& ctx);

// The trivialization data: B_n = U_n A^{-1} with U_n the diagonal of partial
// sigma-products of gamma_n and A the circulant matrix of conjugates of a
// power-basis generator of O_M. H = B_n^dagger B_n is Hermitian with entries
// in O_E/n.
struct BnData {
    ModLMatrix bn;
    ModLMatrix bn_inv;
    ModMatrix h;
};
BnData build_Bn(const ModNContext& ctx);

// Left-regular-representation matrix of x on the u-power basis (right
// L-coefficients), reduced mod n. Denominators of x must be units mod n.
ModLMatrix eta_modn(const AlgebraElem& x, const Int& n);

// B_n^{-1} eta(x) B_n; throws if the result is not E-valued (it is whenever
// x is integral at every prime dividing n).
ModMatrix reduce_algebra(const AlgebraElem& x, const BnData& bn, const ModNContext& ctx);

// C with C^dagger H C = lambda J for Hermitian invertible H (J antidiagonal).
// Split q: component trick through the idempotents of O_E/q^k; inert q:
// diagonalize, scale to 1 by Hensel-lifted norms, convert to J by hyperbolic
// pairs. Throws std::domain_error if H is not Hermitian or not invertible.
struct CnData {
    ModMatrix c;
    ModMatrix c_inv;
    ModScalar lambda;
};
CnData build_Cn(const ModMatrix& h, const ModNContext& ctx);

// Antidiagonal Hermitian form J.
ModMatrix mod_j(const Int& n);

// Image of a gate in U_5(Z/n): C_n^{-1} B_n^{-1} eta(scale*g) B_n C_n.
// The result X satisfies X^dagger J X = J.
ModMatrix reduce_gate(const GateElement& gate, const BnData& bn, const CnData& cn,
                      const ModNContext& ctx);

// |U_5(Z/n)| and |U_1(Z/n)| by the product formulas over primes dividing n.
Int group_size_u5(const ModNContext& ctx);
Int group_size_u1(const ModNContext& ctx);

}  // namespace gg
