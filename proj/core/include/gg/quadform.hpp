#pragma once

// Positive definite integral quadratic forms: exact LDL^T factorization and
// Fincke-Pohst short-vector enumeration. No floating point on the
// accept/reject path; interval endpoints use exact integer square roots.

#include "gg/matrix.hpp"

#include <functional>
#include <vector>

namespace gg {

class GramForm {
  public:
    explicit GramForm(const IntMatrix& gram);

    std::size_t dim() const { return gram_.rows(); }
    const IntMatrix& gram() const { return gram_; }

    // x^T G x for an integer vector.
    Int evaluate(const std::vector<Int>& x) const;

    bool is_positive_definite() const;  // certified by exact LDL^T

  private:
    IntMatrix gram_;
};

struct LdlFactorization {
    RatMatrix l;           // unit lower triangular
    std::vector<Rat> d;    // positive diagonal
};

// Exact LDL^T; throws std::domain_error if the form is not positive definite.
LdlFactorization exact_ldl(const GramForm& q);

// Exact-rational LLL reduction of a positive definite Gram matrix
// (delta = 99/100): gram' = U^T gram U with U unimodular. Enumeration uses
// this internally; highly skewed input bases make the search tree explode.
struct GramReduction {
    IntMatrix gram;       // reduced Gram matrix
    IntMatrix transform;  // U; columns are the reduced basis in input coordinates
};
GramReduction lll_reduce_gram(const IntMatrix& gram);

// Enumerate every nonzero x in Z^dim with x^T G x <= bound, emitting exactly
// one representative of each +-pair (the one whose first nonzero coordinate
// is positive), in a deterministic order. Returns the number of vectors
// emitted. The callback may be empty when only the count is wanted.
using ShortVectorSink = std::function<void(const std::vector<Int>&, const Int& value)>;
std::size_t enumerate_short(const GramForm& q, const Rat& bound, const ShortVectorSink& sink);

// Same output set, computed by partitioning the range of the last coordinate
// across threads; used both for speed and as a determinism cross-check.
std::size_t enumerate_short_parallel(const GramForm& q, const Rat& bound,
                                     const ShortVectorSink& sink, unsigned threads);

}  // namespace gg
