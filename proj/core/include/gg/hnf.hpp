#pragma once

// Column-style Hermite normal form and exact rational lattices.
//
// Convention (fixed project-wide): column operations only; pivot entries are
// positive; in each pivot row the entries in columns left of the pivot are
// reduced into [0, pivot); zero columns trail. This form is the unique
// canonical representative of a column span, so lattice equality reduces to
// matrix equality.

#include "gg/matrix.hpp"

#include <optional>

namespace gg {

struct HnfResult {
    IntMatrix h;  // canonical column HNF
    IntMatrix u;  // unimodular, h = m * u
};

// Full HNF with unimodular transform. Entries of u can grow much larger than
// those of h; use hnf_canonical when the transform is not needed.
HnfResult hnf(const IntMatrix& m);

// Canonical HNF without the transform; zero columns are dropped. Pivoting on
// the smallest entry with rounded-quotient reduction keeps intermediate
// growth modest on the matrix itself.
IntMatrix hnf_canonical(const IntMatrix& m);

// Basis (as columns) of the integer kernel {x : m*x = 0}. The returned
// lattice is saturated (it is all integer points of the rational kernel).
IntMatrix int_kernel(const IntMatrix& m);

// Exact lattice in Q^n spanned by rational columns; eagerly canonicalized so
// equality of lattices is equality of basis matrices.
class RationalLattice {
  public:
    // Generators are the columns of `gens`; dependent/zero generators are fine.
    RationalLattice(std::size_t ambient_dim, const RatMatrix& gens);

    static RationalLattice standard(std::size_t n) {
        return RationalLattice(n, to_rational(IntMatrix::identity(n)));
    }

    std::size_t ambient_dim() const { return ambient_; }
    std::size_t rank() const { return basis_.cols(); }
    const RatMatrix& basis() const { return basis_; }

    bool contains(const std::vector<Rat>& v) const;

    bool operator==(const RationalLattice& o) const {
        return ambient_ == o.ambient_ && basis_ == o.basis_;
    }
    bool operator!=(const RationalLattice& o) const { return !(*this == o); }

  private:
    std::size_t ambient_;
    RatMatrix basis_;            // ambient x rank, canonical
    std::vector<std::size_t> pivot_rows_;  // row of first nonzero per basis column
};

RationalLattice lattice_sum(const RationalLattice& a, const RationalLattice& b);
RationalLattice lattice_intersect(const RationalLattice& a, const RationalLattice& b);

// |det sub / det sup| for full-rank lattices with sub ⊆ sup (verified).
Int lattice_index(const RationalLattice& sup, const RationalLattice& sub);

}  // namespace gg
