#pragma once

// The cyclic division algebra D = ⊕_{i=0}^4 u^i L with u^5 = a and
// u l u^{-1} = sigma(l), its involution iota of the second kind, and the
// matrix realization eta: D -> Mat_5(L).
//
// Elements are stored with coefficients on the right: x = sum_i u^i * l_i.
// Moving a coefficient right past u^j twists it by sigma^{-j}.

#include "gg/tower.hpp"

#include <array>

namespace gg {

class AlgebraElem {
  public:
    AlgebraElem() = default;
    AlgebraElem(long v) { c_[0] = LElem(v); }  // NOLINT: implicit by design
    explicit AlgebraElem(const LElem& l) { c_[0] = l; }
    explicit AlgebraElem(const std::array<LElem, 5>& coeffs) : c_(coeffs) {}

    static AlgebraElem u() {
        AlgebraElem x;
        x.c_[1] = LElem(1);
        return x;
    }

    const LElem& coeff(std::size_t i) const { return c_[i]; }
    LElem& coeff(std::size_t i) { return c_[i]; }

    bool is_zero() const;

    friend AlgebraElem operator+(const AlgebraElem& a, const AlgebraElem& b);
    friend AlgebraElem operator-(const AlgebraElem& a, const AlgebraElem& b);
    friend AlgebraElem operator-(const AlgebraElem& a);
    friend bool operator==(const AlgebraElem& a, const AlgebraElem& b) { return a.c_ == b.c_; }
    friend bool operator!=(const AlgebraElem& a, const AlgebraElem& b) { return !(a == b); }

  private:
    std::array<LElem, 5> c_;
};

using EtaMatrix = Mat<LElem>;

AlgebraElem d_mul(const AlgebraElem& x, const AlgebraElem& y);
AlgebraElem d_scale(const AlgebraElem& x, const LElem& l);  // x * l
AlgebraElem d_pow(const AlgebraElem& x, unsigned n);

// The involution of the second kind: iota(u) = u^{-1}, iota(l) = conj(l).
AlgebraElem iota(const AlgebraElem& x);

// eta(l) = diag(l, sigma(l), ..., sigma^4(l)); eta(u) = cyclic companion
// matrix with a in the bottom-left corner.
EtaMatrix eta(const AlgebraElem& x);

// Conjugate transpose of an eta image (conj entrywise, then transpose).
EtaMatrix conj_transpose(const EtaMatrix& m);

// Reduced trace Trd_{D/E}(x) = Tr_{L/E}(l_0).
EElem trd(const AlgebraElem& x);

// Characteristic polynomial of eta(x): monic degree 5, coefficients in E.
// charpoly[i] is the coefficient of t^i; charpoly[5] = 1.
std::array<EElem, 6> charpoly(const AlgebraElem& x);

// Trd_{D/E}(x^2) for an iota-fixed x; throws if iota(x) != x or the value is
// not rational.
Rat trd_square(const AlgebraElem& x);

// true iff iota(x)*x == target exactly.
bool verify_norm_equation(const AlgebraElem& x, const Rat& target);

}  // namespace gg
