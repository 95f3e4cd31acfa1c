#include "gg/tower.hpp"

#include <mutex>

namespace gg {

namespace {

// x^5 = x^4 + 4x^3 - 3x^2 - 3x + 1
const std::array<Rat, 5>& reduction_row() {
    static const std::array<Rat, 5> red = {Rat(1), Rat(-3), Rat(-3), Rat(4), Rat(1)};
    return red;
}

std::array<Rat, 5> reduce_degree9(std::array<Rat, 9> c) {
    for (std::size_t k = 8; k >= 5; --k) {
        Rat top = c[k];
        if (top != 0) {
            c[k] = 0;
            for (std::size_t i = 0; i < 5; ++i) c[k - 5 + i] += top * reduction_row()[i];
        }
        if (k == 5) break;
    }
    return {c[0], c[1], c[2], c[3], c[4]};
}

// coords of sigma(alpha)^j, j = 0..4, computed once
const std::array<MElem, 5>& sigma_powers() {
    static const std::array<MElem, 5> sp = [] {
        // sigma(alpha) = -alpha^4 + 4*alpha^2 - 2  (validated in tests by exact
        // substitution into the quintic; the conflicting sign that appears once
        // in the source material is not a root)
        MElem s(std::array<Rat, 5>{Rat(-2), Rat(0), Rat(4), Rat(0), Rat(-1)});
        std::array<MElem, 5> out;
        out[0] = MElem(1);
        for (std::size_t j = 1; j < 5; ++j) out[j] = out[j - 1] * s;
        return out;
    }();
    return sp;
}

}  // namespace

const Poly& MElem::min_poly_of_alpha() {
    static const Poly f = {Rat(-1), Rat(3), Rat(3), Rat(-4), Rat(-1), Rat(1)};
    return f;
}

bool MElem::is_zero() const {
    for (const Rat& x : c_)
        if (x != 0) return false;
    return true;
}

bool MElem::is_rational() const {
    for (std::size_t i = 1; i < 5; ++i)
        if (c_[i] != 0) return false;
    return true;
}

MElem operator+(const MElem& a, const MElem& b) {
    MElem r;
    for (std::size_t i = 0; i < 5; ++i) r.c_[i] = a.c_[i] + b.c_[i];
    return r;
}

MElem operator-(const MElem& a, const MElem& b) {
    MElem r;
    for (std::size_t i = 0; i < 5; ++i) r.c_[i] = a.c_[i] - b.c_[i];
    return r;
}

MElem operator-(const MElem& a) {
    MElem r;
    for (std::size_t i = 0; i < 5; ++i) r.c_[i] = -a.c_[i];
    return r;
}

MElem operator*(const MElem& a, const MElem& b) {
    std::array<Rat, 9> c;
    c.fill(Rat(0));
    for (std::size_t i = 0; i < 5; ++i) {
        if (a.c_[i] == 0) continue;
        for (std::size_t j = 0; j < 5; ++j)
            if (b.c_[j] != 0) c[i + j] += a.c_[i] * b.c_[j];
    }
    return MElem(reduce_degree9(c));
}

MElem inv(const MElem& a) {
    if (a.is_zero()) throw std::domain_error("MElem inv: zero element");
    // Solve (multiplication-by-a matrix) * x = e0.
    RatMatrix mul(5, 5);
    MElem apow(1);
    MElem alpha = MElem::alpha();
    for (std::size_t j = 0; j < 5; ++j) {
        MElem col = a * apow;
        for (std::size_t i = 0; i < 5; ++i) mul(i, j) = col[i];
        apow = apow * alpha;
    }
    std::vector<Rat> rhs(5, Rat(0));
    rhs[0] = 1;
    std::vector<Rat> x = rat_solve(mul, rhs);
    return MElem(std::array<Rat, 5>{x[0], x[1], x[2], x[3], x[4]});
}

MElem apply_sigma(const MElem& a, unsigned k) {
    MElem r = a;
    for (unsigned t = 0; t < k % 5; ++t) {
        MElem acc;
        for (std::size_t j = 0; j < 5; ++j) {
            if (r[j] == 0) continue;
            MElem term = sigma_powers()[j];
            std::array<Rat, 5> scaled;
            for (std::size_t i = 0; i < 5; ++i) scaled[i] = term[i] * r[j];
            acc = acc + MElem(scaled);
        }
        r = acc;
    }
    return r;
}

Rat trace_M_over_Q(const MElem& a) {
    MElem s;
    MElem x = a;
    for (int k = 0; k < 5; ++k) {
        s = s + x;
        x = apply_sigma(x);
    }
    if (!s.is_rational()) throw std::logic_error("trace_M_over_Q: non-rational trace");
    return s[0];
}

Rat norm_M_over_Q(const MElem& a) {
    MElem p(1);
    MElem x = a;
    for (int k = 0; k < 5; ++k) {
        p = p * x;
        x = apply_sigma(x);
    }
    if (!p.is_rational()) throw std::logic_error("norm_M_over_Q: non-rational norm");
    return p[0];
}

MElem eval_poly(const Poly& p, const MElem& at) {
    MElem acc;
    for (std::size_t i = p.size(); i-- > 0;) acc = acc * at + MElem(p[i]);
    return acc;
}

RatMatrix sigma_matrix(unsigned k) {
    RatMatrix s(5, 5);
    MElem apow(1);
    for (std::size_t j = 0; j < 5; ++j) {
        MElem img = apply_sigma(apow, k);
        for (std::size_t i = 0; i < 5; ++i) s(i, j) = img[i];
        apow = apow * MElem::alpha();
    }
    return s;
}

IntMatrix trace_form_T() {
    IntMatrix t(5, 5);
    std::array<MElem, 5> pw;
    pw[0] = MElem(1);
    for (std::size_t i = 1; i < 5; ++i) pw[i] = pw[i - 1] * MElem::alpha();
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j) {
            Rat tr = trace_M_over_Q(pw[i] * pw[j]);
            if (!is_integer(tr)) throw std::logic_error("trace_form_T: non-integral entry");
            t(i, j) = tr.get_num();
        }
    return t;
}

EElem conj(const EElem& a) { return EElem(a.r() + a.s(), -a.s()); }

EElem inv(const EElem& a) {
    if (a.is_zero()) throw std::domain_error("EElem inv: zero element");
    // a * conj(a) = r^2 + r*s + 2*s^2 in Q
    Rat n = a.r() * a.r() + a.r() * a.s() + 2 * a.s() * a.s();
    EElem c = conj(a);
    return EElem(c.r() / n, c.s() / n);
}

EElem LElem::to_E() const {
    if (!in_E()) throw std::domain_error("LElem::to_E: element is not in E");
    return EElem(m0_[0], m1_[0]);
}

LElem inv(const LElem& a) {
    if (a.is_zero()) throw std::domain_error("LElem inv: zero element");
    LElem c = conj(a);
    LElem n = a * c;  // lies in M
    if (!n.in_M()) throw std::logic_error("LElem inv: norm not in M");
    MElem ni = inv(n.m0());
    return LElem(c.m0() * ni, c.m1() * ni);
}

LElem apply_sigma(const LElem& a, unsigned k) {
    return LElem(apply_sigma(a.m0(), k), apply_sigma(a.m1(), k));
}

LElem conj(const LElem& a) { return LElem(a.m0() + a.m1(), -a.m1()); }

LElem lpow(const LElem& a, long n) {
    if (n < 0) return lpow(inv(a), -n);
    LElem r = LElem(1);
    LElem base = a;
    unsigned long e = static_cast<unsigned long>(n);
    while (e) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

EElem trace_L_over_E(const LElem& a) {
    LElem s;
    LElem x = a;
    for (int k = 0; k < 5; ++k) {
        s = s + x;
        x = apply_sigma(x);
    }
    return s.to_E();
}

EElem norm_L_over_E(const LElem& a) {
    LElem p(1);
    LElem x = a;
    for (int k = 0; k < 5; ++k) {
        p = p * x;
        x = apply_sigma(x);
    }
    return p.to_E();
}

MElem trace_L_over_M(const LElem& a) {
    LElem s = a + conj(a);
    if (!s.in_M()) throw std::logic_error("trace_L_over_M: result not in M");
    return s.m0();
}

MElem norm_L_over_M(const LElem& a) {
    LElem p = a * conj(a);
    if (!p.in_M()) throw std::logic_error("norm_L_over_M: result not in M");
    return p.m0();
}

namespace {

// Minimal polynomial of an element given coordinates of its powers: find the
// first linear dependency among 1, a, a^2, ... by Gaussian elimination.
Poly min_poly_from_powers(const std::vector<std::vector<Rat>>& powers) {
    const std::size_t dim = powers[0].size();
    // rows of the reduced system; track original combination
    std::vector<std::vector<Rat>> rows;    // reduced power vectors
    std::vector<std::vector<Rat>> combos;  // expression in terms of powers
    std::vector<std::size_t> pivots;
    for (std::size_t deg = 0; deg < powers.size(); ++deg) {
        std::vector<Rat> v = powers[deg];
        std::vector<Rat> combo(powers.size(), Rat(0));
        combo[deg] = 1;
        for (std::size_t k = 0; k < rows.size(); ++k) {
            const Rat& lead = v[pivots[k]];
            if (lead == 0) continue;
            Rat f = lead / rows[k][pivots[k]];
            for (std::size_t i = 0; i < dim; ++i) v[i] -= f * rows[k][i];
            for (std::size_t i = 0; i < combo.size(); ++i) combo[i] -= f * combos[k][i];
        }
        std::size_t p = dim;
        for (std::size_t i = 0; i < dim; ++i)
            if (v[i] != 0) { p = i; break; }
        if (p == dim) {
            // dependency found: monic polynomial of degree deg
            Poly out(combo.begin(), combo.begin() + deg + 1);
            Rat lc = out[deg];
            for (Rat& c : out) c /= lc;
            return out;
        }
        rows.push_back(std::move(v));
        combos.push_back(std::move(combo));
        pivots.push_back(p);
    }
    throw std::logic_error("min_poly: no dependency found (impossible)");
}

}  // namespace

Poly min_poly(const MElem& a) {
    std::vector<std::vector<Rat>> powers;
    MElem x(1);
    for (int deg = 0; deg <= 5; ++deg) {
        powers.push_back({x[0], x[1], x[2], x[3], x[4]});
        x = x * a;
    }
    return min_poly_from_powers(powers);
}

Poly min_poly(const LElem& a) {
    std::vector<std::vector<Rat>> powers;
    LElem x(1);
    for (int deg = 0; deg <= 10; ++deg) {
        std::vector<Rat> v;
        for (std::size_t i = 0; i < 5; ++i) v.push_back(x.m0()[i]);
        for (std::size_t i = 0; i < 5; ++i) v.push_back(x.m1()[i]);
        powers.push_back(std::move(v));
        x = x * a;
    }
    return min_poly_from_powers(powers);
}

namespace consts {

EElem rho2() { return EElem::rho2(); }
EElem rho2_bar() { return conj(rho2()); }
EElem rho11() { return EElem(Rat(1), Rat(2)); }  // 2 + sqrt(-7) = 1 + 2*rho2
EElem rho11_bar() { return conj(rho11()); }

MElem delta() { return MElem::alpha() + MElem(2); }

EElem a() {
    static const EElem value = [] {
        EElem num = rho2() * rho11() * rho11() * rho11();
        EElem den = rho2_bar() * rho11_bar() * rho11_bar() * rho11_bar();
        return num * inv(den);
    }();
    return value;
}

Rat a0() { return a().r(); }
Rat a1() { return a().s(); }

}  // namespace consts

}  // namespace gg
