#include "gg/hnf.hpp"

#include <numeric>

namespace gg {

namespace {

// Round-to-nearest integer quotient (ties toward zero); keeps remainders small
// during elimination.
Int round_quot(const Int& a, const Int& b) {
    Int q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    Int babs = abs(b);
    if (r * 2 > babs) ++q;
    return q;
}

// Core column-HNF elimination. If `u` is non-null it tracks the transform.
void hnf_core(IntMatrix& a, IntMatrix* u) {
    const std::size_t rows = a.rows(), cols = a.cols();
    std::size_t cur = 0;
    for (std::size_t r = 0; r < rows && cur < cols; ++r) {
        // Euclid across columns >= cur in row r, smallest pivot first.
        for (;;) {
            std::size_t best = cols;
            for (std::size_t c = cur; c < cols; ++c)
                if (a(r, c) != 0 && (best == cols || abs(a(r, c)) < abs(a(r, best)))) best = c;
            if (best == cols) break;  // row r is zero on remaining columns
            if (best != cur) {
                a.swap_cols(cur, best);
                if (u) u->swap_cols(cur, best);
            }
            bool clean = true;
            for (std::size_t c = cur + 1; c < cols; ++c) {
                if (a(r, c) == 0) continue;
                Int q = round_quot(a(r, c), a(r, cur));
                if (q != 0) {
                    a.addmul_col(c, cur, q);
                    if (u) u->addmul_col(c, cur, q);
                }
                if (a(r, c) != 0) clean = false;
            }
            if (clean) break;
        }
        if (a(r, cur) == 0) continue;  // no pivot in this row
        if (a(r, cur) < 0) {
            a.negate_col(cur);
            if (u) u->negate_col(cur);
        }
        // Reduce entries left of the pivot into [0, pivot).
        const Int p = a(r, cur);
        for (std::size_t c = 0; c < cur; ++c) {
            Int q = floor_div(a(r, c), p);
            if (q != 0) {
                a.addmul_col(c, cur, q);
                if (u) u->addmul_col(c, cur, q);
            }
        }
        ++cur;
    }
}

// Move zero columns to the back, preserving the order of nonzero columns.
IntMatrix compact_zero_columns(const IntMatrix& a) {
    IntMatrix out(a.rows(), a.cols());
    std::size_t w = 0;
    for (std::size_t c = 0; c < a.cols(); ++c) {
        bool nz = false;
        for (std::size_t r = 0; r < a.rows(); ++r)
            if (a(r, c) != 0) { nz = true; break; }
        if (nz) {
            for (std::size_t r = 0; r < a.rows(); ++r) out(r, w) = a(r, c);
            ++w;
        }
    }
    return out;
}

}  // namespace

HnfResult hnf(const IntMatrix& m) {
    IntMatrix a = m;
    IntMatrix u = IntMatrix::identity(m.cols());
    hnf_core(a, &u);
    return HnfResult{a, u};
}

IntMatrix hnf_canonical(const IntMatrix& m) {
    IntMatrix a = m;
    hnf_core(a, nullptr);
    return compact_zero_columns(a);
}

IntMatrix int_kernel(const IntMatrix& m) {
    IntMatrix a = m;
    IntMatrix u = IntMatrix::identity(m.cols());
    hnf_core(a, &u);
    std::vector<std::size_t> zc;
    for (std::size_t c = 0; c < a.cols(); ++c) {
        bool zero = true;
        for (std::size_t r = 0; r < a.rows(); ++r)
            if (a(r, c) != 0) { zero = false; break; }
        if (zero) zc.push_back(c);
    }
    IntMatrix ker(m.cols(), zc.size());
    for (std::size_t j = 0; j < zc.size(); ++j)
        for (std::size_t r = 0; r < m.cols(); ++r) ker(r, j) = u(r, zc[j]);
    return ker;
}

RationalLattice::RationalLattice(std::size_t ambient_dim, const RatMatrix& gens)
    : ambient_(ambient_dim) {
    if (gens.rows() != ambient_dim)
        throw std::invalid_argument("RationalLattice: generator rows != ambient dim");
    // Clear denominators with a global lcm, canonicalize, scale back.
    Int den(1);
    for (std::size_t r = 0; r < gens.rows(); ++r)
        for (std::size_t c = 0; c < gens.cols(); ++c)
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), gens(r, c).get_den().get_mpz_t());
    IntMatrix im(gens.rows(), gens.cols());
    for (std::size_t r = 0; r < gens.rows(); ++r)
        for (std::size_t c = 0; c < gens.cols(); ++c) {
            Rat scaled = gens(r, c) * Rat(den);
            im(r, c) = scaled.get_num();
        }
    IntMatrix h = hnf_canonical(im);
    std::size_t rank = 0;
    for (std::size_t c = 0; c < h.cols(); ++c) {
        bool nz = false;
        for (std::size_t r = 0; r < h.rows(); ++r)
            if (h(r, c) != 0) { nz = true; break; }
        if (nz) ++rank;
        else break;  // zero columns trail in canonical form
    }
    basis_ = RatMatrix(ambient_, rank);
    pivot_rows_.resize(rank);
    for (std::size_t c = 0; c < rank; ++c) {
        std::size_t pr = ambient_;
        for (std::size_t r = 0; r < ambient_; ++r) {
            basis_(r, c) = Rat(h(r, c)) / Rat(den);
            basis_(r, c).canonicalize();
            if (pr == ambient_ && h(r, c) != 0) pr = r;
        }
        pivot_rows_[c] = pr;
    }
}

bool RationalLattice::contains(const std::vector<Rat>& v) const {
    if (v.size() != ambient_) throw std::invalid_argument("lattice contains: dim mismatch");
    // Back-substitute against the echelon basis (pivot rows are increasing).
    std::vector<Rat> rem = v;
    std::vector<Rat> coeff(basis_.cols());
    for (std::size_t c = 0; c < basis_.cols(); ++c) {
        std::size_t pr = pivot_rows_[c];
        // rows before the pivot row of column c must already be zero
        Rat f = rem[pr] / basis_(pr, c);
        coeff[c] = f;
        if (f != 0)
            for (std::size_t r = pr; r < ambient_; ++r) rem[r] -= f * basis_(r, c);
    }
    for (std::size_t r = 0; r < ambient_; ++r)
        if (rem[r] != 0) return false;
    for (const Rat& f : coeff)
        if (!is_integer(f)) return false;
    return true;
}

RationalLattice lattice_sum(const RationalLattice& a, const RationalLattice& b) {
    if (a.ambient_dim() != b.ambient_dim())
        throw std::invalid_argument("lattice_sum: ambient dimension mismatch");
    RatMatrix g(a.ambient_dim(), a.rank() + b.rank());
    for (std::size_t r = 0; r < a.ambient_dim(); ++r) {
        for (std::size_t c = 0; c < a.rank(); ++c) g(r, c) = a.basis()(r, c);
        for (std::size_t c = 0; c < b.rank(); ++c) g(r, a.rank() + c) = b.basis()(r, c);
    }
    return RationalLattice(a.ambient_dim(), g);
}

RationalLattice lattice_intersect(const RationalLattice& a, const RationalLattice& b) {
    if (a.ambient_dim() != b.ambient_dim())
        throw std::invalid_argument("lattice_intersect: ambient dimension mismatch");
    const std::size_t n = a.ambient_dim();
    const RatMatrix& ba = a.basis();
    const RatMatrix& bb = b.basis();
    // Scale both bases by one common denominator; the intersection scales the
    // same way, so dividing back at the end is exact.
    Int den(1);
    auto fold_lcm = [&den](const RatMatrix& m) {
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < m.cols(); ++c)
                mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), m(r, c).get_den().get_mpz_t());
    };
    fold_lcm(ba);
    fold_lcm(bb);
    // x in A∩B iff x = A y = B z; kernel of [A | -B] yields the (y, z) pairs.
    IntMatrix cat(n, ba.cols() + bb.cols());
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < ba.cols(); ++c)
            cat(r, c) = Rat(ba(r, c) * Rat(den)).get_num();
        for (std::size_t c = 0; c < bb.cols(); ++c)
            cat(r, ba.cols() + c) = Rat(-bb(r, c) * Rat(den)).get_num();
    }
    IntMatrix ker = int_kernel(cat);
    RatMatrix gens(n, ker.cols());
    for (std::size_t j = 0; j < ker.cols(); ++j)
        for (std::size_t r = 0; r < n; ++r) {
            Rat acc(0);
            for (std::size_t c = 0; c < ba.cols(); ++c) acc += ba(r, c) * Rat(ker(c, j));
            gens(r, j) = acc;
        }
    return RationalLattice(n, gens);
}

Int lattice_index(const RationalLattice& sup, const RationalLattice& sub) {
    if (sup.ambient_dim() != sub.ambient_dim())
        throw std::invalid_argument("lattice_index: ambient dimension mismatch");
    if (sup.rank() != sup.ambient_dim() || sub.rank() != sub.ambient_dim())
        throw std::invalid_argument("lattice_index: full-rank lattices required");
    for (std::size_t c = 0; c < sub.rank(); ++c)
        if (!sup.contains(sub.basis().col(c)))
            throw std::domain_error("lattice_index: sub is not contained in sup");
    // Both bases are triangular in canonical form: determinant = diag product.
    Rat dsub(1), dsup(1);
    for (std::size_t c = 0; c < sub.rank(); ++c) {
        dsub *= sub.basis()(c, c);
        dsup *= sup.basis()(c, c);
    }
    Rat idx = dsub / dsup;
    if (idx < 0) idx = -idx;
    if (!is_integer(idx))
        throw std::domain_error("lattice_index: index is not an integer");
    return idx.get_num();
}

}  // namespace gg
