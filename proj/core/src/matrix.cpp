#include "gg/matrix.hpp"

namespace gg {

RatMatrix rat_inverse(const RatMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("rat_inverse: square matrix required");
    const std::size_t n = m.rows();
    RatMatrix a = m;
    RatMatrix inv = RatMatrix::identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a(piv, col) == 0) ++piv;
        if (piv == n) throw std::domain_error("rat_inverse: singular matrix");
        if (piv != col)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(col, j), a(piv, j));
                std::swap(inv(col, j), inv(piv, j));
            }
        Rat d = a(col, col);
        for (std::size_t j = 0; j < n; ++j) {
            a(col, j) /= d;
            inv(col, j) /= d;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a(r, col) == 0) continue;
            Rat f = a(r, col);
            for (std::size_t j = 0; j < n; ++j) {
                a(r, j) -= f * a(col, j);
                inv(r, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

std::vector<Rat> rat_solve(const RatMatrix& m, const std::vector<Rat>& b) {
    if (m.rows() != m.cols() || m.rows() != b.size())
        throw std::invalid_argument("rat_solve: shape mismatch");
    const std::size_t n = m.rows();
    RatMatrix a = m;
    std::vector<Rat> x = b;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a(piv, col) == 0) ++piv;
        if (piv == n) throw std::domain_error("rat_solve: singular matrix");
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(col, j), a(piv, j));
            std::swap(x[col], x[piv]);
        }
        Rat d = a(col, col);
        for (std::size_t j = 0; j < n; ++j) a(col, j) /= d;
        x[col] /= d;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a(r, col) == 0) continue;
            Rat f = a(r, col);
            for (std::size_t j = 0; j < n; ++j) a(r, j) -= f * a(col, j);
            x[r] -= f * x[col];
        }
    }
    return x;
}

std::size_t rat_rank(RatMatrix a) {
    std::size_t rank = 0;
    for (std::size_t col = 0; col < a.cols() && rank < a.rows(); ++col) {
        std::size_t piv = rank;
        while (piv < a.rows() && a(piv, col) == 0) ++piv;
        if (piv == a.rows()) continue;
        if (piv != rank)
            for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(rank, j), a(piv, j));
        Rat d = a(rank, col);
        for (std::size_t r = rank + 1; r < a.rows(); ++r) {
            if (a(r, col) == 0) continue;
            Rat f = a(r, col) / d;
            for (std::size_t j = col; j < a.cols(); ++j) a(r, j) -= f * a(rank, j);
        }
        ++rank;
    }
    return rank;
}

Int int_det(IntMatrix a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("int_det: square matrix required");
    const std::size_t n = a.rows();
    if (n == 0) return Int(1);
    Int prev(1);
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        std::size_t piv = k;
        while (piv < n && a(piv, k) == 0) ++piv;
        if (piv == n) return Int(0);
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Int t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                a(i, j) = t;
            }
        prev = a(k, k);
    }
    return sign > 0 ? a(n - 1, n - 1) : Int(-a(n - 1, n - 1));
}

}  // namespace gg
