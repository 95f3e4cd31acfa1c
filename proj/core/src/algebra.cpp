#include "gg/algebra.hpp"

namespace gg {

bool AlgebraElem::is_zero() const {
    for (const LElem& l : c_)
        if (!l.is_zero()) return false;
    return true;
}

AlgebraElem operator+(const AlgebraElem& a, const AlgebraElem& b) {
    AlgebraElem r;
    for (std::size_t i = 0; i < 5; ++i) r.coeff(i) = a.coeff(i) + b.coeff(i);
    return r;
}

AlgebraElem operator-(const AlgebraElem& a, const AlgebraElem& b) {
    AlgebraElem r;
    for (std::size_t i = 0; i < 5; ++i) r.coeff(i) = a.coeff(i) - b.coeff(i);
    return r;
}

AlgebraElem operator-(const AlgebraElem& a) {
    AlgebraElem r;
    for (std::size_t i = 0; i < 5; ++i) r.coeff(i) = -a.coeff(i);
    return r;
}

AlgebraElem d_mul(const AlgebraElem& x, const AlgebraElem& y) {
    const LElem a = LElem(consts::a());
    AlgebraElem z;
    for (std::size_t i = 0; i < 5; ++i) {
        if (x.coeff(i).is_zero()) continue;
        for (std::size_t j = 0; j < 5; ++j) {
            if (y.coeff(j).is_zero()) continue;
            // (u^i l_i)(u^j l_j) = u^{i+j} sigma^{-j}(l_i) l_j
            LElem c = apply_sigma(x.coeff(i), (5 - j) % 5) * y.coeff(j);
            std::size_t k = i + j;
            if (k >= 5) {
                k -= 5;
                c = c * a;  // u^5 = a, central
            }
            z.coeff(k) = z.coeff(k) + c;
        }
    }
    return z;
}

AlgebraElem d_scale(const AlgebraElem& x, const LElem& l) {
    AlgebraElem r;
    for (std::size_t i = 0; i < 5; ++i) r.coeff(i) = x.coeff(i) * l;
    return r;
}

AlgebraElem d_pow(const AlgebraElem& x, unsigned n) {
    AlgebraElem r(1);
    for (unsigned i = 0; i < n; ++i) r = d_mul(r, x);
    return r;
}

AlgebraElem iota(const AlgebraElem& x) {
    const LElem ainv = inv(LElem(consts::a()));
    AlgebraElem z;
    z.coeff(0) = conj(x.coeff(0));
    for (std::size_t i = 1; i < 5; ++i)
        z.coeff(i) = ainv * apply_sigma(conj(x.coeff(5 - i)), 5 - i);
    return z;
}

EtaMatrix eta(const AlgebraElem& x) {
    const LElem a = LElem(consts::a());
    // eta(u)^i has its 1-entries on the i-th superdiagonal, with a in the
    // wrapped positions; eta(u^i l) = eta(u)^i diag(l, sigma(l), ...).
    EtaMatrix m(5, 5);
    for (std::size_t i = 0; i < 5; ++i) {
        if (x.coeff(i).is_zero()) continue;
        for (std::size_t r = 0; r < 5; ++r) {
            std::size_t c = (r + i) % 5;
            LElem entry = apply_sigma(x.coeff(i), static_cast<unsigned>(c));
            if (r + i >= 5) entry = entry * a;  // wrapped past the corner
            m(r, c) = m(r, c) + entry;
        }
    }
    return m;
}

EtaMatrix conj_transpose(const EtaMatrix& m) {
    EtaMatrix t(m.cols(), m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) t(c, r) = conj(m(r, c));
    return t;
}

EElem trd(const AlgebraElem& x) { return trace_L_over_E(x.coeff(0)); }

std::array<EElem, 6> charpoly(const AlgebraElem& x) {
    // Faddeev-LeVerrier over the commutative field L.
    EtaMatrix a = eta(x);
    EtaMatrix m = EtaMatrix::identity(5);
    std::array<LElem, 6> c;
    c[5] = LElem(1);
    for (int k = 1; k <= 5; ++k) {
        EtaMatrix am = a * m;
        LElem tr;
        for (std::size_t i = 0; i < 5; ++i) tr = tr + am(i, i);
        LElem ck = -(LElem(MElem(Rat(1, k))) * tr);
        c[5 - k] = ck;
        m = am;
        for (std::size_t i = 0; i < 5; ++i) m(i, i) = m(i, i) + ck;
    }
    std::array<EElem, 6> out;
    for (std::size_t i = 0; i < 6; ++i) {
        if (!c[i].in_E())
            throw std::logic_error("charpoly: coefficient did not descend to E");
        out[i] = c[i].to_E();
    }
    return out;
}

Rat trd_square(const AlgebraElem& x) {
    if (iota(x) != x) throw std::domain_error("trd_square: input is not iota-fixed");
    EElem t = trd(d_mul(x, x));
    if (!t.is_rational()) throw std::logic_error("trd_square: non-rational value");
    return t.r();
}

bool verify_norm_equation(const AlgebraElem& x, const Rat& target) {
    AlgebraElem p = d_mul(iota(x), x);
    AlgebraElem expect;
    expect.coeff(0) = LElem(MElem(target));
    return p == expect;
}

}  // namespace gg
