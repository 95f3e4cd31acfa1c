#pragma once

// Integral structure: the order Lambda_D, the maximal orders Lambda_{D,+/-}^max
// and the iota-stable order Lambda_D^max (the sum of the two chains intersected
// with its own iota-image), realized as exact rational lattices in the
// 50-dimensional coordinate system
//   index (2i+j)*5 + k  <->  u^i * rho2^j * alpha^k   (i<5, j<2, k<5),
// plus the 25x25 basis B_max of the free coordinates of the iota-fixed part
// and the quadratic form Q_max.

#include "gg/algebra.hpp"
#include "gg/hnf.hpp"
#include "gg/quadform.hpp"

#include <iosfwd>
#include <memory>
#include <optional>

namespace gg {

// 50 exact rational coordinates of an algebra element in the u-rho2-alpha
// coordinate system.
std::vector<Rat> algebra_to_vec50(const AlgebraElem& x);
AlgebraElem algebra_from_vec50(const std::vector<Rat>& v);

// The 5x5 matrices A_+ and A_- over L with Lambda_{D,+/-}^max = u-vec * A_+/- * O_M^10,
// A_+/- = T(s,t) * diag(a_{+/-,i}).
struct PlusMinusBases {
    Mat<LElem> a_plus;
    Mat<LElem> a_minus;
    std::array<LElem, 5> scalars_plus;   // a_{+,i}
    std::array<LElem, 5> scalars_minus;  // a_{-,i}
    LElem s_plus, t_plus, s_minus, t_minus;
};
PlusMinusBases build_plus_minus_bases();

// Z-expansion of a 5x5 L-matrix basis to the 50-column rational generator
// matrix in the fixed coordinate order.
RatMatrix expand_to_z50(const Mat<LElem>& a_l);

// The paper-anchored 25x25 reference basis of (Col_max^half)_Z, kept as
// instance data for the lattice-equality regression test.
RatMatrix reference_bmax();

class OrderBundle {
  public:
    // Builds everything from scratch (a few seconds of exact linear algebra).
    static OrderBundle build();

    const RatMatrix& amax() const { return amax_; }
    const RatMatrix& bmax() const { return bmax_; }
    const GramForm& qmax() const { return *qmax_; }
    const RationalLattice& lattice50() const { return lattice50_; }
    const RationalLattice& lattice_lambda_d() const { return lambda_d_; }
    // The plain sum of the two maximal chains (a maximal order, but not
    // iota-stable); the local structure at p0 = 11 is read off this one.
    const RationalLattice& lattice50_sum() const { return lattice_sum_; }

    // Q_max(x) = x^T (B_max^T A0 B_max) x.
    Int qmax_eval(const std::vector<Int>& x) const;

    // Reconstructs the iota-fixed element: free coordinates m = B_max * x,
    // dependent coordinates via the a0/a1 relations.
    AlgebraElem gamma_from_vec(const std::vector<Int>& x) const;

    // Free-coordinate extraction: inverse of gamma_from_vec on its image
    // (rational output; integral iff gamma is in the iota-fixed lattice).
    std::vector<Rat> vec_from_gamma(const AlgebraElem& gamma) const;

    bool lambda_max_contains(const AlgebraElem& x) const;

    struct Report {
        bool unit_contained = false;
        bool closed_under_multiplication = false;
        bool iota_stable = false;
        bool contains_lambda_d = false;
        Int lambda_d_index{0};       // index [Lambda_D^max : Lambda_D]
        bool index_power_of_11 = false;
        bool a_valuations_ok = false;  // v_{rho2}(a) = +-1 (not divisible by 5)
        std::string failure;           // first offending item, if any
        bool ok() const {
            return unit_contained && closed_under_multiplication && iota_stable &&
                   contains_lambda_d && index_power_of_11 && a_valuations_ok;
        }
    };
    Report verify_order_properties() const;

    // Exact JSON round-trip (rationals as "num/den" strings) to cache the build.
    std::string to_json() const;
    static OrderBundle from_json(const std::string& text);

  private:
    OrderBundle(RatMatrix amax, RatMatrix bmax, RationalLattice l50, RationalLattice lsum,
                RationalLattice ld);

    RatMatrix amax_;   // canonical 50x50 basis of Lambda_D^max coordinates
    RatMatrix bmax_;   // canonical 25x25 basis of the free iota-fixed coords
    RationalLattice lattice50_;
    RationalLattice lattice_sum_;
    RationalLattice lambda_d_;
    std::shared_ptr<GramForm> qmax_;
    RatMatrix a0_;     // the 25x25 trace-form block matrix
    void finish();     // builds qmax_ and a0_ from bmax_
};

// The block trace-form matrix A0 = diag(T, (2T T; T 4T), (2T T; T 4T)).
RatMatrix trace_block_a0();

}  // namespace gg
