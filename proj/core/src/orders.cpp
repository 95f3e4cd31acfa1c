#include "gg/orders.hpp"

#include <json.hpp>

#include <sstream>

namespace gg {

namespace {

using nlohmann::json;

LElem epow(const EElem& base, long n) { return lpow(LElem(base), n); }

// Complete homogeneous symmetric polynomial of degree `deg` in
// s, s^{sigma^-1}, ..., s^{sigma^-nvars+1}.
LElem sigma_hsym(const LElem& s, unsigned deg, unsigned nvars) {
    std::vector<LElem> vars;
    for (unsigned k = 0; k < nvars; ++k) vars.push_back(apply_sigma(s, (5 - k % 5) % 5));
    // h(deg, m) over first m variables: h(0,*) = 1; h(d,0) = 0 (d>0)
    std::vector<std::vector<LElem>> h(deg + 1, std::vector<LElem>(nvars + 1));
    for (unsigned m = 0; m <= nvars; ++m) h[0][m] = LElem(1);
    for (unsigned d = 1; d <= deg; ++d) {
        h[d][0] = LElem(0);
        for (unsigned m = 1; m <= nvars; ++m)
            h[d][m] = h[d][m - 1] + vars[m - 1] * h[d - 1][m];
    }
    return h[deg][nvars];
}

LElem sigma_prod(const LElem& t, unsigned k) {
    LElem p(1);
    for (unsigned i = 0; i < k; ++i) p = p * apply_sigma(t, (5 - i) % 5);
    return p;
}

Mat<LElem> t_matrix(const LElem& s, const LElem& t) {
    Mat<LElem> m(5, 5);
    m(0, 0) = LElem(1);
    for (unsigned c = 1; c < 5; ++c) m(0, c) = m(0, c - 1) * s;
    m(1, 1) = t;
    for (unsigned c = 2; c < 5; ++c) m(1, c) = sigma_hsym(s, c - 1, 2) * t;
    m(2, 2) = sigma_prod(t, 2);
    for (unsigned c = 3; c < 5; ++c) m(2, c) = sigma_hsym(s, c - 2, 3) * m(2, 2);
    m(3, 3) = sigma_prod(t, 3);
    m(3, 4) = sigma_hsym(s, 1, 4) * m(3, 3);
    m(4, 4) = sigma_prod(t, 4);
    return m;
}

// Multiplication-by-m matrix in the alpha power basis (columns = m * alpha^v).
void fill_mul_block(RatMatrix& big, std::size_t row0, std::size_t col0, const MElem& m) {
    MElem pw(1);
    for (std::size_t v = 0; v < 5; ++v) {
        MElem col = m * pw;
        for (std::size_t u = 0; u < 5; ++u) big(row0 + u, col0 + v) = col[u];
        pw = pw * MElem::alpha();
    }
}

// Constraint matrix of the iota-fixed relations (25 rows x 50 coordinate cols).
RatMatrix iota_constraints() {
    RatMatrix c(25, 50);
    RatMatrix s1 = sigma_matrix(1);
    RatMatrix s2 = sigma_matrix(2);
    const Rat a0 = consts::a0();
    const Rat a1 = consts::a1();
    auto put = [&c](std::size_t r0, std::size_t block, const RatMatrix& m, const Rat& f) {
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t j = 0; j < 5; ++j) c(r0 + i, block * 5 + j) += f * m(i, j);
    };
    RatMatrix id = to_rational(IntMatrix::identity(5));
    // blocks: (i,j) -> 2i+j : m0^0=0, m0^1=1, m1^0=2, m1^1=3, m2^0=4, m2^1=5,
    //                         m3^0=6, m3^1=7, m4^0=8, m4^1=9
    put(0, 1, id, 1);                                            // m0^1 = 0
    put(5, 8, id, 1);                                            // m4^0 ...
    put(5, 2, s1, -(a0 + a1));
    put(5, 3, s1, -(a0 - a1));
    put(10, 9, id, 1);                                           // m4^1 ...
    put(10, 2, s1, a1);
    put(10, 3, s1, a0 + a1);
    put(15, 6, id, 1);                                           // m3^0 ...
    put(15, 4, s2, -(a0 + a1));
    put(15, 5, s2, -(a0 - a1));
    put(20, 7, id, 1);                                           // m3^1 ...
    put(20, 4, s2, a1);
    put(20, 5, s2, a0 + a1);
    return c;
}

// Z-coordinate generators of Lambda_D = sum_i u^i c_i O_L.
RatMatrix lambda_d_generators() {
    RatMatrix g(50, 50);
    for (long i = 0; i < 5; ++i) {
        LElem ci = epow(consts::rho2_bar(), ceil_div(consts::e * i, 5)) *
                   epow(consts::rho11_bar(), ceil_div(consts::d * consts::e * i, 5)) *
                   epow(consts::rho2(), ceil_div(-consts::e * i, 5)) *
                   epow(consts::rho11(), ceil_div(-consts::d * consts::e * i, 5));
        for (long j = 0; j < 2; ++j) {
            LElem rho_j = (j == 0) ? LElem(1) : LElem(consts::rho2());
            MElem pw(1);
            for (long k = 0; k < 5; ++k) {
                LElem gen = ci * rho_j * LElem(pw);
                std::size_t col = static_cast<std::size_t>((2 * i + j) * 5 + k);
                for (std::size_t u = 0; u < 5; ++u) {
                    g((2 * i + 0) * 5 + u, col) = gen.m0()[u];
                    g((2 * i + 1) * 5 + u, col) = gen.m1()[u];
                }
                pw = pw * MElem::alpha();
            }
        }
    }
    return g;
}

const char* const kReferenceBmaxRows[25] = {
    "1/11 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0",
    "0 1/11 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0",
    "0 0 1/11 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0",
    "6/11 2/11 1/11 1 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0",
    "5/11 8/11 3/11 0 1 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0",
    "3/121 8/121 2/121 0 0 1/11 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0",
    "6/121 5/121 4/121 0 0 0 1/11 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0",
    "10/121 1/121 3/121 0 0 0 0 1/11 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0",
    "7/121 4/121 1/121 0 0 0 0 0 1/11 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0",
    "5/121 6/121 7/121 0 0 0 0 0 0 1/11 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0",
    "97/121 178/121 226/121 0 0 3/11 0 0 0 0 2 0 0 0 0 0 0 0 0 0 0 0 0 0 0",
    "194/121 81/121 210/121 0 0 0 3/11 0 0 0 0 2 0 0 0 0 0 0 0 0 0 0 0 0 0",
    "162/121 113/121 97/121 0 0 0 0 3/11 0 0 0 0 2 0 0 0 0 0 0 0 0 0 0 0 0",
    "2485/121 2146/121 1807/121 0 0 16 4 8 201/11 6 12 4 2 22 0 0 0 0 0 0 0 0 0 0 0",
    "1291/121 1162/121 791/121 0 0 10 20 12 4 25/11 10 16 6 0 22 0 0 0 0 0 0 0 0 0 0",
    "0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 1/121 0 0 0 0 0 0 0 0 0",
    "4/121 2/121 5/121 0 0 1/121 10/121 6/121 1/121 7/121 7/121 4/121 1/121 0 0 2/121 1/11 0 0 0 0 0 0 0 0",
    "9/121 6/121 5/121 0 0 10/121 9/121 10/121 5/121 9/121 5/121 6/121 7/121 0 0 7/121 0 1/11 0 0 0 0 0 0 0",
    "7/121 9/121 1/121 0 0 1/121 7/121 0 7/121 1/121 8/121 3/121 9/121 0 0 6/121 0 0 1/11 0 0 0 0 0 0",
    "10/121 6/121 4/121 0 0 5/121 8/121 1/121 1/121 6/121 5/121 6/121 7/121 0 0 9/121 0 0 0 1/11 0 0 0 0 0",
    "12 18 4 0 0 12 20 4 14 16 0 0 0 0 0 597/121 0 0 0 0 22 0 0 0 0",
    "2146/121 710/121 81/121 0 0 839/121 162/121 1888/121 1323/121 65/121 1517/121 2388/121 597/121 0 0 1194/121 113/11 0 0 0 0 22 0 0 0",
    "1501/121 920/121 565/121 0 0 162/121 1017/121 1372/121 1533/121 291/121 323/121 920/121 1517/121 0 0 1517/121 0 113/11 0 0 0 0 22 0 0",
    "549/121 1501/121 597/121 0 0 1323/121 65/121 2 1033/121 1565/121 2114/121 1791/121 49/121 0 0 920/121 0 0 113/11 0 0 0 0 22 0",
    "12988/121 23910/121 16908/121 0 0 16053/121 18570/121 28911/121 13181/121 18344/121 8309/121 8906/121 1517/121 0 0 26669/121 176 132 220 597/11 44 154 176 132 242",
};

json rat_to_json(const Rat& q) { return json(q.get_str()); }
Rat rat_from_json(const json& j) { return rat_from_string(j.get<std::string>()); }

json matrix_to_json(const RatMatrix& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(rat_to_json(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

RatMatrix matrix_from_json(const json& j) {
    std::size_t rows = j.size();
    std::size_t cols = rows ? j[0].size() : 0;
    RatMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = rat_from_json(j[r][c]);
    return m;
}

}  // namespace

std::vector<Rat> algebra_to_vec50(const AlgebraElem& x) {
    std::vector<Rat> v(50);
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t k = 0; k < 5; ++k) {
            v[(2 * i + 0) * 5 + k] = x.coeff(i).m0()[k];
            v[(2 * i + 1) * 5 + k] = x.coeff(i).m1()[k];
        }
    return v;
}

AlgebraElem algebra_from_vec50(const std::vector<Rat>& v) {
    if (v.size() != 50) throw std::invalid_argument("algebra_from_vec50: need 50 coords");
    AlgebraElem x;
    for (std::size_t i = 0; i < 5; ++i) {
        std::array<Rat, 5> m0, m1;
        for (std::size_t k = 0; k < 5; ++k) {
            m0[k] = v[(2 * i + 0) * 5 + k];
            m1[k] = v[(2 * i + 1) * 5 + k];
        }
        x.coeff(i) = LElem(MElem(m0), MElem(m1));
    }
    return x;
}

PlusMinusBases build_plus_minus_bases() {
    PlusMinusBases out;
    const LElem delta = LElem(consts::delta());
    const LElem b = LElem(consts::b);
    const long de = consts::d * consts::e;
    out.s_plus = lpow(delta, 4) * b * inv(LElem(consts::rho11_bar()));
    out.t_plus = -(lpow(delta, de + 4) * inv(LElem(consts::rho11_bar())));
    out.s_minus = lpow(delta, 4) * b * inv(LElem(consts::rho11()));
    out.t_minus = -(lpow(delta, 4 - de) * inv(LElem(consts::rho11())));
    for (long i = 0; i < 5; ++i) {
        LElem common = epow(consts::rho2_bar(), ceil_div(consts::e * i, 5)) *
                       epow(consts::rho2(), ceil_div(-consts::e * i, 5));
        out.scalars_plus[i] = common * epow(consts::rho11(), ceil_div(-4 * i, 5));
        out.scalars_minus[i] = common * epow(consts::rho11_bar(), ceil_div(2 * de * i, 5));
    }
    Mat<LElem> tp = t_matrix(out.s_plus, out.t_plus);
    Mat<LElem> tm = t_matrix(out.s_minus, out.t_minus);
    out.a_plus = Mat<LElem>(5, 5);
    out.a_minus = Mat<LElem>(5, 5);
    for (std::size_t r = 0; r < 5; ++r)
        for (std::size_t c = 0; c < 5; ++c) {
            out.a_plus(r, c) = tp(r, c) * out.scalars_plus[c];
            out.a_minus(r, c) = tm(r, c) * out.scalars_minus[c];
        }
    return out;
}

RatMatrix expand_to_z50(const Mat<LElem>& a_l) {
    RatMatrix big(50, 50);
    for (std::size_t r = 0; r < 5; ++r)
        for (std::size_t c = 0; c < 5; ++c) {
            const MElem& m0 = a_l(r, c).m0();
            const MElem& m1 = a_l(r, c).m1();
            // rho2-block of the entry m0 + rho2*m1, acting on (column rho2-power j):
            //   [ m0   -2*m1    ]
            //   [ m1   m0 + m1  ]
            fill_mul_block(big, (2 * r + 0) * 5, (2 * c + 0) * 5, m0);
            fill_mul_block(big, (2 * r + 0) * 5, (2 * c + 1) * 5, MElem(-2) * m1);
            fill_mul_block(big, (2 * r + 1) * 5, (2 * c + 0) * 5, m1);
            fill_mul_block(big, (2 * r + 1) * 5, (2 * c + 1) * 5, m0 + m1);
        }
    return big;
}

RatMatrix reference_bmax() {
    RatMatrix b(25, 25);
    for (std::size_t r = 0; r < 25; ++r) {
        std::istringstream in(kReferenceBmaxRows[r]);
        for (std::size_t c = 0; c < 25; ++c) {
            std::string tok;
            in >> tok;
            b(r, c) = rat_from_string(tok);
        }
    }
    return b;
}

RatMatrix trace_block_a0() {
    RatMatrix t = to_rational(trace_form_T());
    RatMatrix a0(25, 25);
    auto put = [&](std::size_t br, std::size_t bc, long f) {
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t j = 0; j < 5; ++j) a0(br * 5 + i, bc * 5 + j) += Rat(f) * t(i, j);
    };
    put(0, 0, 1);
    put(1, 1, 2); put(1, 2, 1); put(2, 1, 1); put(2, 2, 4);
    put(3, 3, 2); put(3, 4, 1); put(4, 3, 1); put(4, 4, 4);
    return a0;
}

OrderBundle::OrderBundle(RatMatrix amax, RatMatrix bmax, RationalLattice l50,
                         RationalLattice lsum, RationalLattice ld)
    : amax_(std::move(amax)), bmax_(std::move(bmax)), lattice50_(std::move(l50)),
      lattice_sum_(std::move(lsum)), lambda_d_(std::move(ld)) {
    finish();
}

void OrderBundle::finish() {
    a0_ = trace_block_a0();
    RatMatrix gram = bmax_.transposed() * a0_ * bmax_;
    IntMatrix g(25, 25);
    for (std::size_t i = 0; i < 25; ++i)
        for (std::size_t j = 0; j < 25; ++j) {
            if (!is_integer(gram(i, j)))
                throw std::logic_error("OrderBundle: Q_max has a non-integral entry");
            g(i, j) = gram(i, j).get_num();
        }
    qmax_ = std::make_shared<GramForm>(g);
}

OrderBundle OrderBundle::build() {
    PlusMinusBases pm = build_plus_minus_bases();
    RatMatrix zp = expand_to_z50(pm.a_plus);
    RatMatrix zm = expand_to_z50(pm.a_minus);
    RatMatrix gens(50, 100);
    for (std::size_t r = 0; r < 50; ++r)
        for (std::size_t c = 0; c < 50; ++c) {
            gens(r, c) = zp(r, c);
            gens(r, 50 + c) = zm(r, c);
        }
    RationalLattice lsum(50, gens);
    if (lsum.rank() != 50) throw std::logic_error("OrderBundle: sum lattice is not full rank");

    // The sum of the two chains is a maximal order but is not stable under the
    // involution here (the defect is a single local valuation unit at the prime
    // over rho11 in the constant coefficient of iota(y_+)). Intersecting with
    // its own iota-image restores stability without touching the iota-fixed
    // sublattice: any iota-fixed element of the sum already lies in the image,
    // so B_max below is unchanged.
    RatMatrix ig(50, 50);
    for (std::size_t c = 0; c < 50; ++c) {
        std::vector<Rat> v = algebra_to_vec50(iota(algebra_from_vec50(lsum.basis().col(c))));
        for (std::size_t r = 0; r < 50; ++r) ig(r, c) = v[r];
    }
    RationalLattice l50 = lattice_intersect(lsum, RationalLattice(50, ig));
    if (l50.rank() != 50)
        throw std::logic_error("OrderBundle: stabilized lattice is not full rank");
    RatMatrix amax = l50.basis();

    // iota-fixed sublattice: kernel of the constraint map restricted to the lattice
    RatMatrix k = iota_constraints() * amax;
    Int den(1);
    for (std::size_t r = 0; r < k.rows(); ++r)
        for (std::size_t c = 0; c < k.cols(); ++c)
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), k(r, c).get_den().get_mpz_t());
    IntMatrix ki(25, 50);
    for (std::size_t r = 0; r < 25; ++r)
        for (std::size_t c = 0; c < 50; ++c) ki(r, c) = Rat(k(r, c) * Rat(den)).get_num();
    IntMatrix w = int_kernel(ki);
    if (w.cols() != 25)
        throw std::logic_error("OrderBundle: iota-fixed sublattice has wrong rank");
    RatMatrix col_basis = amax * to_rational(w);  // 50 x 25, basis of Col_max

    // free coordinate rows: blocks (i,j) in {(0,0),(1,0),(1,1),(2,0),(2,1)}
    static const std::size_t kFreeBlocks[5] = {0, 2, 3, 4, 5};
    RatMatrix half(25, 25);
    for (std::size_t b = 0; b < 5; ++b)
        for (std::size_t kk = 0; kk < 5; ++kk)
            for (std::size_t c = 0; c < 25; ++c)
                half(b * 5 + kk, c) = col_basis(kFreeBlocks[b] * 5 + kk, c);
    RationalLattice halflat(25, half);
    if (halflat.rank() != 25)
        throw std::logic_error("OrderBundle: B_max lattice is not full rank");

    RationalLattice ld(50, lambda_d_generators());
    return OrderBundle(std::move(amax), RatMatrix(halflat.basis()), std::move(l50),
                       std::move(lsum), std::move(ld));
}

Int OrderBundle::qmax_eval(const std::vector<Int>& x) const { return qmax_->evaluate(x); }

AlgebraElem OrderBundle::gamma_from_vec(const std::vector<Int>& x) const {
    if (x.size() != 25) throw std::invalid_argument("gamma_from_vec: need 25 coords");
    std::vector<Rat> xr(25);
    for (std::size_t i = 0; i < 25; ++i) xr[i] = Rat(x[i]);
    std::vector<Rat> m = bmax_ * xr;
    auto melem = [&m](std::size_t block) {
        std::array<Rat, 5> c;
        for (std::size_t k = 0; k < 5; ++k) c[k] = m[block * 5 + k];
        return MElem(c);
    };
    MElem m00 = melem(0), m10 = melem(1), m11 = melem(2), m20 = melem(3), m21 = melem(4);
    const MElem ap = MElem(consts::a0() + consts::a1());
    const MElem am = MElem(consts::a0() - consts::a1());
    const MElem a1m = MElem(consts::a1());
    MElem s10 = apply_sigma(m10), s11 = apply_sigma(m11);
    MElem s20 = apply_sigma(m20, 2), s21 = apply_sigma(m21, 2);
    MElem m40 = ap * s10 + am * s11;
    MElem m41 = -(a1m * s10) - ap * s11;
    MElem m30 = ap * s20 + am * s21;
    MElem m31 = -(a1m * s20) - ap * s21;
    AlgebraElem g;
    g.coeff(0) = LElem(m00, MElem(0));
    g.coeff(1) = LElem(m10, m11);
    g.coeff(2) = LElem(m20, m21);
    g.coeff(3) = LElem(m30, m31);
    g.coeff(4) = LElem(m40, m41);
    return g;
}

std::vector<Rat> OrderBundle::vec_from_gamma(const AlgebraElem& gamma) const {
    std::vector<Rat> m(25);
    auto putm = [&m](std::size_t block, const MElem& e) {
        for (std::size_t k = 0; k < 5; ++k) m[block * 5 + k] = e[k];
    };
    putm(0, gamma.coeff(0).m0());
    putm(1, gamma.coeff(1).m0());
    putm(2, gamma.coeff(1).m1());
    putm(3, gamma.coeff(2).m0());
    putm(4, gamma.coeff(2).m1());
    return rat_solve(bmax_, m);
}

bool OrderBundle::lambda_max_contains(const AlgebraElem& x) const {
    return lattice50_.contains(algebra_to_vec50(x));
}

OrderBundle::Report OrderBundle::verify_order_properties() const {
    Report rep;
    // basis elements of Lambda_D^max as algebra elements
    std::vector<AlgebraElem> basis;
    for (std::size_t c = 0; c < 50; ++c) basis.push_back(algebra_from_vec50(amax_.col(c)));

    rep.unit_contained = lambda_max_contains(AlgebraElem(1));
    if (!rep.unit_contained) rep.failure = "unit not contained";

    rep.closed_under_multiplication = true;
    for (std::size_t i = 0; i < 50 && rep.closed_under_multiplication; ++i)
        for (std::size_t j = 0; j < 50; ++j)
            if (!lambda_max_contains(d_mul(basis[i], basis[j]))) {
                rep.closed_under_multiplication = false;
                rep.failure = "closure fails at basis pair (" + std::to_string(i) + "," +
                              std::to_string(j) + ")";
                break;
            }

    rep.iota_stable = true;
    for (std::size_t i = 0; i < 50; ++i)
        if (!lambda_max_contains(iota(basis[i]))) {
            rep.iota_stable = false;
            rep.failure = "iota instability at basis element " + std::to_string(i);
            break;
        }

    rep.contains_lambda_d = true;
    for (std::size_t c = 0; c < 50; ++c)
        if (!lattice50_.contains(lambda_d_.basis().col(c))) {
            rep.contains_lambda_d = false;
            rep.failure = "Lambda_D generator " + std::to_string(c) + " not contained";
            break;
        }
    if (rep.contains_lambda_d) {
        rep.lambda_d_index = lattice_index(lattice50_, lambda_d_);
        Int idx = rep.lambda_d_index;
        while (idx % 11 == 0) idx /= 11;
        rep.index_power_of_11 = (idx == 1);
        if (!rep.index_power_of_11) rep.failure = "index is not a power of 11";
    }

    // v_{rho2}(a) = 1 and v_{rho2bar}(a) = -1: a*rho2bar/rho2 and a^{-1}*rho2/rho2bar
    // must be units at 2, i.e. integral with integral inverse times odd denominators.
    {
        EElem a = consts::a();
        // numerator/denominator in O_E: a = (rho2*rho11^3) / (rho2bar*rho11bar^3)
        EElem nume = consts::rho2() * consts::rho11() * consts::rho11() * consts::rho11();
        EElem dene = consts::rho2_bar() * consts::rho11_bar() * consts::rho11_bar() *
                     consts::rho11_bar();
        auto v2 = [](EElem x) {
            // valuation at rho2 of an O_E element: divide by rho2 while integral
            long v = 0;
            auto integral = [](const EElem& y) {
                return is_integer(y.r()) && is_integer(y.s());
            };
            if (!integral(x)) throw std::logic_error("v2: non-integral input");
            EElem rho2_inv = inv(EElem::rho2());
            while (true) {
                EElem q = x * rho2_inv;
                if (!integral(q)) break;
                x = q;
                ++v;
            }
            return v;
        };
        long v_num = v2(nume), v_den = v2(dene);
        long v_num_bar = v2(conj(nume)), v_den_bar = v2(conj(dene));
        long va = v_num - v_den;          // v_{rho2}(a)
        long vabar = v_num_bar - v_den_bar;  // v_{rho2bar}(a) = v_{rho2}(conj a)... see below
        // conj swaps the two places over 2, so v_{rho2bar}(a) = v2(conj(num)) - v2(conj(den))
        rep.a_valuations_ok = (va == consts::e && vabar == -consts::e && va % 5 != 0);
        if (!rep.a_valuations_ok) rep.failure = "valuations of a at the places over 2 are wrong";
        (void)a;
    }
    return rep;
}

std::string OrderBundle::to_json() const {
    json j;
    j["format"] = "order-bundle-v1";
    j["amax"] = matrix_to_json(amax_);
    j["asum"] = matrix_to_json(lattice_sum_.basis());
    j["bmax"] = matrix_to_json(bmax_);
    j["lambda_d"] = matrix_to_json(lambda_d_.basis());
    return j.dump();
}

OrderBundle OrderBundle::from_json(const std::string& text) {
    json j = json::parse(text);
    if (j.value("format", "") != "order-bundle-v1")
        throw std::invalid_argument("OrderBundle::from_json: unknown format");
    RatMatrix amax = matrix_from_json(j.at("amax"));
    RatMatrix asum = matrix_from_json(j.at("asum"));
    RatMatrix bmax = matrix_from_json(j.at("bmax"));
    RatMatrix ld = matrix_from_json(j.at("lambda_d"));
    RationalLattice l50(50, amax);
    RationalLattice lsum(50, asum);
    RationalLattice lld(50, ld);
    return OrderBundle(std::move(amax), std::move(bmax), std::move(l50), std::move(lsum),
                       std::move(lld));
}

}  // namespace gg
