#pragma once

// Exact arithmetic in the number field tower used throughout:
//   E = Q(sqrt(-7)) with ring of integers Z[rho2], rho2 = (1+sqrt(-7))/2,
//   M = totally real quintic field Q[x]/(x^5 - x^4 - 4x^3 + 3x^2 + 3x - 1),
//   L = ME, a degree-10 CM field, cyclic of degree 5 over E with Galois
//   generator sigma and complex conjugation fixing M.

#include "gg/matrix.hpp"

#include <array>
#include <vector>

namespace gg {

// Monic-or-not dense polynomial over Q; coeffs[i] is the coefficient of x^i.
using Poly = std::vector<Rat>;

// ---------------------------------------------------------------------------
// M = Q(alpha), alpha a root of x^5 - x^4 - 4x^3 + 3x^2 + 3x - 1.
// ---------------------------------------------------------------------------
class MElem {
  public:
    MElem() { c_.fill(Rat(0)); }
    MElem(long v) : MElem() { c_[0] = v; }  // NOLINT: implicit by design
    MElem(const Rat& v) : MElem() { c_[0] = v; }
    explicit MElem(const std::array<Rat, 5>& coords) : c_(coords) {}

    static MElem alpha() {
        MElem a;
        a.c_[1] = 1;
        return a;
    }
    static const Poly& min_poly_of_alpha();  // the defining quintic

    const std::array<Rat, 5>& coords() const { return c_; }
    const Rat& operator[](std::size_t i) const { return c_[i]; }

    bool is_zero() const;
    bool is_rational() const;

    friend MElem operator+(const MElem& a, const MElem& b);
    friend MElem operator-(const MElem& a, const MElem& b);
    friend MElem operator-(const MElem& a);
    friend MElem operator*(const MElem& a, const MElem& b);
    friend bool operator==(const MElem& a, const MElem& b) { return a.c_ == b.c_; }
    friend bool operator!=(const MElem& a, const MElem& b) { return !(a == b); }

  private:
    std::array<Rat, 5> c_;  // c0 + c1*alpha + ... + c4*alpha^4
};

MElem inv(const MElem& a);                       // throws on zero
MElem apply_sigma(const MElem& a, unsigned k = 1);
Rat trace_M_over_Q(const MElem& a);
Rat norm_M_over_Q(const MElem& a);
MElem eval_poly(const Poly& p, const MElem& at);

// 5x5 rational matrix of sigma^k in the power basis (columns = images).
RatMatrix sigma_matrix(unsigned k = 1);

// T = (Tr_{M/Q}(alpha^i alpha^j)), 5x5 symmetric positive definite.
IntMatrix trace_form_T();

// ---------------------------------------------------------------------------
// E = Q(rho2), rho2^2 = rho2 - 2.
// ---------------------------------------------------------------------------
class EElem {
  public:
    EElem() : r_(0), s_(0) {}
    EElem(long v) : r_(v), s_(0) {}  // NOLINT: implicit by design
    EElem(const Rat& r, const Rat& s) : r_(r), s_(s) {}

    static EElem rho2() { return EElem(Rat(0), Rat(1)); }

    const Rat& r() const { return r_; }
    const Rat& s() const { return s_; }
    bool is_zero() const { return r_ == 0 && s_ == 0; }
    bool is_rational() const { return s_ == 0; }

    friend EElem operator+(const EElem& a, const EElem& b) {
        return EElem(a.r_ + b.r_, a.s_ + b.s_);
    }
    friend EElem operator-(const EElem& a, const EElem& b) {
        return EElem(a.r_ - b.r_, a.s_ - b.s_);
    }
    friend EElem operator-(const EElem& a) { return EElem(-a.r_, -a.s_); }
    friend EElem operator*(const EElem& a, const EElem& b) {
        // (r + s*rho)(r' + s'*rho), rho^2 = rho - 2
        return EElem(a.r_ * b.r_ - 2 * a.s_ * b.s_,
                     a.r_ * b.s_ + a.s_ * b.r_ + a.s_ * b.s_);
    }
    friend bool operator==(const EElem& a, const EElem& b) {
        return a.r_ == b.r_ && a.s_ == b.s_;
    }
    friend bool operator!=(const EElem& a, const EElem& b) { return !(a == b); }

  private:
    Rat r_, s_;  // r + s*rho2
};

EElem conj(const EElem& a);  // rho2 -> 1 - rho2
EElem inv(const EElem& a);   // throws on zero

// ---------------------------------------------------------------------------
// L = M(rho2) = ME.
// ---------------------------------------------------------------------------
class LElem {
  public:
    LElem() = default;
    LElem(long v) : m0_(v) {}  // NOLINT: implicit by design
    LElem(const MElem& m0, const MElem& m1) : m0_(m0), m1_(m1) {}
    LElem(const MElem& m) : m0_(m) {}          // NOLINT: embed M
    LElem(const EElem& e) : m0_(e.r()), m1_(e.s()) {}  // NOLINT: embed E

    const MElem& m0() const { return m0_; }
    const MElem& m1() const { return m1_; }
    bool is_zero() const { return m0_.is_zero() && m1_.is_zero(); }
    bool in_E() const { return m0_.is_rational() && m1_.is_rational(); }
    bool in_M() const { return m1_.is_zero(); }
    EElem to_E() const;  // throws unless in_E()

    friend LElem operator+(const LElem& a, const LElem& b) {
        return LElem(a.m0_ + b.m0_, a.m1_ + b.m1_);
    }
    friend LElem operator-(const LElem& a, const LElem& b) {
        return LElem(a.m0_ - b.m0_, a.m1_ - b.m1_);
    }
    friend LElem operator-(const LElem& a) { return LElem(-a.m0_, -a.m1_); }
    LElem& operator+=(const LElem& o) {
        m0_ = m0_ + o.m0_;
        m1_ = m1_ + o.m1_;
        return *this;
    }
    friend LElem operator*(const LElem& a, const LElem& b) {
        return LElem(a.m0_ * b.m0_ - MElem(2) * (a.m1_ * b.m1_),
                     a.m0_ * b.m1_ + a.m1_ * b.m0_ + a.m1_ * b.m1_);
    }
    friend bool operator==(const LElem& a, const LElem& b) {
        return a.m0_ == b.m0_ && a.m1_ == b.m1_;
    }
    friend bool operator!=(const LElem& a, const LElem& b) { return !(a == b); }

  private:
    MElem m0_, m1_;  // m0 + rho2*m1
};

LElem inv(const LElem& a);                       // throws on zero
LElem apply_sigma(const LElem& a, unsigned k = 1);  // fixes E
LElem conj(const LElem& a);                      // fixes M, rho2 -> 1-rho2
LElem lpow(const LElem& a, long n);              // integer powers (n may be < 0)

EElem trace_L_over_E(const LElem& a);
EElem norm_L_over_E(const LElem& a);
MElem trace_L_over_M(const LElem& a);
MElem norm_L_over_M(const LElem& a);

// Minimal polynomial over Q (degree divides 5 resp. 10).
Poly min_poly(const MElem& a);
Poly min_poly(const LElem& a);

// ---------------------------------------------------------------------------
// Compiled-in constants of the concrete instance (p0 = 11 throughout).
// ---------------------------------------------------------------------------
namespace consts {

inline constexpr long p0 = 11;
inline constexpr long d = 3;   // a = rho2^e * rho_{p0}^d / conj
inline constexpr long e = 1;
inline constexpr long b = 10;  // b in O_E with b*conj(b) = 1 mod p0

EElem rho2();       // (1+sqrt(-7))/2
EElem rho2_bar();
EElem rho11();      // 2+sqrt(-7) = 1 + 2*rho2
EElem rho11_bar();
MElem delta();      // alpha + 2, N_{M/Q} = 11
EElem a();          // rho2*rho11^3 / (rho2_bar*rho11_bar^3); a*conj(a) = 1
Rat a0();           // a = a0 + rho2*a1 with a0, a1 in Q
Rat a1();

}  // namespace consts

}  // namespace gg
