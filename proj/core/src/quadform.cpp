#include "gg/quadform.hpp"

#include <atomic>
#include <thread>

namespace gg {

GramForm::GramForm(const IntMatrix& gram) : gram_(gram) {
    if (gram.rows() != gram.cols())
        throw std::invalid_argument("GramForm: square matrix required");
    for (std::size_t i = 0; i < gram.rows(); ++i)
        for (std::size_t j = i + 1; j < gram.cols(); ++j)
            if (gram(i, j) != gram(j, i))
                throw std::invalid_argument("GramForm: matrix is not symmetric");
}

Int GramForm::evaluate(const std::vector<Int>& x) const {
    if (x.size() != dim()) throw std::invalid_argument("GramForm::evaluate: dim mismatch");
    Int acc(0);
    for (std::size_t i = 0; i < dim(); ++i) {
        if (x[i] == 0) continue;
        for (std::size_t j = 0; j < dim(); ++j)
            if (x[j] != 0) acc += gram_(i, j) * x[i] * x[j];
    }
    return acc;
}

bool GramForm::is_positive_definite() const {
    try {
        exact_ldl(*this);
        return true;
    } catch (const std::domain_error&) {
        return false;
    }
}

LdlFactorization exact_ldl(const GramForm& q) {
    const std::size_t n = q.dim();
    RatMatrix a = to_rational(q.gram());
    RatMatrix l = RatMatrix::identity(n);
    std::vector<Rat> d(n);
    for (std::size_t k = 0; k < n; ++k) {
        if (a(k, k) <= 0) throw std::domain_error("exact_ldl: form is not positive definite");
        d[k] = a(k, k);
        for (std::size_t i = k + 1; i < n; ++i) l(i, k) = a(i, k) / d[k];
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j <= i; ++j) {
                a(i, j) -= l(i, k) * a(j, k);
                a(j, i) = a(i, j);
            }
    }
    return LdlFactorization{l, d};
}

namespace {

Int rat_round(const Rat& r) {
    // round to nearest, ties toward +infinity: floor(r + 1/2)
    Rat s = r + Rat(1, 2);
    return floor_div(s.get_num(), s.get_den());
}

// Gram-matrix LLL (Cohen, Alg. 2.6.3) with exact rational GSO data.
class GramLll {
  public:
    explicit GramLll(const IntMatrix& gram)
        : n_(gram.rows()), a_(gram), u_(IntMatrix::identity(gram.rows())),
          mu_(gram.rows(), gram.rows()), b_(gram.rows()) {}

    GramReduction run() {
        if (n_ == 0) return GramReduction{a_, u_};
        b_[0] = Rat(a_(0, 0));
        if (b_[0] <= 0) throw std::domain_error("lll_reduce_gram: form is not positive definite");
        std::size_t k = 1, kmax = 0;
        const Rat delta(99, 100);
        while (k < n_) {
            if (k > kmax) {
                kmax = k;
                gso_row(k);
            }
            for (;;) {
                redi(k, k - 1);
                if (b_[k] < (delta - mu_(k, k - 1) * mu_(k, k - 1)) * b_[k - 1]) {
                    swapi(k, kmax);
                    k = (k > 1) ? k - 1 : 1;
                } else {
                    for (std::size_t l = k - 1; l-- > 0;) redi(k, l);
                    ++k;
                    break;
                }
            }
        }
        return GramReduction{a_, u_};
    }

  private:
    void gso_row(std::size_t k) {
        for (std::size_t j = 0; j <= k; ++j) {
            Rat d(a_(k, j));
            for (std::size_t i = 0; i < j; ++i) d -= mu_(j, i) * mu_(k, i) * b_[i];
            if (j < k) {
                mu_(k, j) = d / b_[j];
            } else {
                b_[k] = d;
                if (d <= 0)
                    throw std::domain_error("lll_reduce_gram: form is not positive definite");
            }
        }
    }

    // b_k -= q * b_l, applied to the Gram matrix, the transform and the GSO row.
    void redi(std::size_t k, std::size_t l) {
        Rat m = mu_(k, l);
        if (2 * m > 1 || 2 * m < -1) {
            Int q = rat_round(m);
            for (std::size_t i = 0; i < n_; ++i) a_(k, i) -= q * a_(l, i);
            for (std::size_t i = 0; i < n_; ++i) a_(i, k) -= q * a_(i, l);
            for (std::size_t i = 0; i < n_; ++i) u_(i, k) -= q * u_(i, l);
            mu_(k, l) -= Rat(q);
            for (std::size_t i = 0; i < l; ++i) mu_(k, i) -= Rat(q) * mu_(l, i);
        }
    }

    void swapi(std::size_t k, std::size_t kmax) {
        u_.swap_cols(k - 1, k);
        for (std::size_t i = 0; i < n_; ++i) std::swap(a_(k - 1, i), a_(k, i));
        for (std::size_t i = 0; i < n_; ++i) std::swap(a_(i, k - 1), a_(i, k));
        for (std::size_t j = 0; j + 1 < k; ++j) std::swap(mu_(k, j), mu_(k - 1, j));
        Rat muc = mu_(k, k - 1);
        Rat bt = b_[k] + muc * muc * b_[k - 1];
        mu_(k, k - 1) = muc * b_[k - 1] / bt;
        b_[k] = b_[k - 1] * b_[k] / bt;
        b_[k - 1] = bt;
        for (std::size_t i = k + 1; i <= kmax; ++i) {
            Rat t = mu_(i, k);
            mu_(i, k) = mu_(i, k - 1) - muc * t;
            mu_(i, k - 1) = t + mu_(k, k - 1) * mu_(i, k);
        }
    }

    std::size_t n_;
    IntMatrix a_;
    IntMatrix u_;
    RatMatrix mu_;
    std::vector<Rat> b_;
};

}  // namespace

GramReduction lll_reduce_gram(const IntMatrix& gram) {
    if (gram.rows() != gram.cols())
        throw std::invalid_argument("lll_reduce_gram: square matrix required");
    return GramLll(gram).run();
}

namespace {

// Exact integer interval for D*(x - c)^2 <= t with c, t rational, t >= 0:
// returns [lo, hi] (possibly empty: lo > hi).
void quad_interval(const Rat& c, const Rat& t_over_d, Int& lo, Int& hi) {
    // (x*cd - cn)^2 <= tn/td * cd^2  <=>  (x*cd - cn)^2 <= floor(tn*cd^2/td)
    const Int& cn = c.get_num();
    const Int& cd = c.get_den();
    Int bound = (t_over_d.get_num() * cd * cd) / t_over_d.get_den();
    if (bound < 0) { lo = 1; hi = 0; return; }
    Int s;
    mpz_sqrt(s.get_mpz_t(), bound.get_mpz_t());
    lo = -floor_div(s - cn, cd);  // ceil((cn - s)/cd)
    hi = floor_div(cn + s, cd);
}

struct EnumContext {
    const LdlFactorization* f;
    std::size_t n;
    Rat bound;
    const ShortVectorSink* sink;
    std::size_t count = 0;
    std::vector<Int> x;
    // partial inner products: center[i] = -sum_{j>i} L(j,i) x_j, maintained per level
    std::vector<std::vector<Rat>> centers;  // centers[level][i]
    std::vector<Rat> remaining;             // budget left at each level

    // restrict the top coordinate to [top_lo, top_hi] (used for partitioning)
    bool has_top_range = false;
    Int top_lo, top_hi;

    void run() {
        centers.assign(n + 1, std::vector<Rat>(n, Rat(0)));
        remaining.assign(n + 1, Rat(0));
        x.assign(n, Int(0));
        remaining[n] = bound;
        descend(n);
    }

    // levels go n (nothing fixed) down to 0 (all fixed); coordinate i = level-1
    void descend(std::size_t level) {
        if (level == 0) {
            emit();
            return;
        }
        const std::size_t i = level - 1;
        const Rat& c = centers[level][i];
        const Rat& di = f->d[i];
        Rat t_over_d = remaining[level] / di;
        Int lo, hi;
        quad_interval(c, t_over_d, lo, hi);
        if (level == n && has_top_range) {
            if (top_lo > lo) lo = top_lo;
            if (top_hi < hi) hi = top_hi;
        }
        for (Int v = lo; v <= hi; ++v) {
            x[i] = v;
            Rat u = Rat(v) - c;
            Rat used = di * u * u;
            remaining[level - 1] = remaining[level] - used;
            // update centers for lower coordinates
            for (std::size_t k = 0; k < i; ++k)
                centers[level - 1][k] = centers[level][k] - f->l(i, k) * Rat(v);
            descend(level - 1);
        }
        x[i] = 0;
    }

    void emit() {
        // canonical sign: first nonzero coordinate positive; zero excluded
        int first_sign = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (x[i] != 0) { first_sign = (x[i] > 0) ? 1 : -1; break; }
        if (first_sign <= 0) return;  // zero vector or negative representative
        ++count;
        if (sink && *sink) {
            Rat used = bound - remaining[0];
            // value is integral for integral Gram forms
            (*sink)(x, used.get_num() / used.get_den());
        }
    }
};

// Maps enumeration output through the LLL transform back to the caller's
// coordinates and re-canonicalizes the +- representative there.
ShortVectorSink remap_sink(const IntMatrix& u, const ShortVectorSink& sink) {
    if (!sink) return {};
    return [&u, &sink](const std::vector<Int>& y, const Int& value) {
        const std::size_t n = u.rows();
        std::vector<Int> x(n, Int(0));
        for (std::size_t c = 0; c < n; ++c) {
            if (y[c] == 0) continue;
            for (std::size_t r = 0; r < n; ++r) x[r] += u(r, c) * y[c];
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (x[r] == 0) continue;
            if (x[r] < 0)
                for (std::size_t i = r; i < n; ++i) x[i] = -x[i];
            break;
        }
        sink(x, value);
    };
}

}  // namespace

std::size_t enumerate_short(const GramForm& q, const Rat& bound, const ShortVectorSink& sink) {
    if (bound < 0) return 0;
    GramReduction red = lll_reduce_gram(q.gram());
    LdlFactorization f = exact_ldl(GramForm(red.gram));  // also certifies positive definiteness
    ShortVectorSink mapped = remap_sink(red.transform, sink);
    EnumContext ctx;
    ctx.f = &f;
    ctx.n = q.dim();
    ctx.bound = bound;
    ctx.sink = &mapped;
    ctx.run();
    return ctx.count;
}

std::size_t enumerate_short_parallel(const GramForm& q, const Rat& bound,
                                     const ShortVectorSink& sink, unsigned threads) {
    if (bound < 0) return 0;
    GramReduction red = lll_reduce_gram(q.gram());
    LdlFactorization f = exact_ldl(GramForm(red.gram));
    const std::size_t n = q.dim();
    // top coordinate range
    Int lo, hi;
    {
        Rat t_over_d = bound / f.d[n - 1];
        quad_interval(Rat(0), t_over_d, lo, hi);
    }
    if (threads == 0) threads = 1;
    std::vector<Int> tops;
    for (Int v = lo; v <= hi; ++v) tops.push_back(v);
    std::vector<std::vector<std::pair<std::vector<Int>, Int>>> results(tops.size());
    std::vector<std::size_t> counts(tops.size(), 0);
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            std::size_t idx = next.fetch_add(1);
            if (idx >= tops.size()) break;
            EnumContext ctx;
            ctx.f = &f;
            ctx.n = n;
            ctx.bound = bound;
            ShortVectorSink collect;
            if (sink) {
                collect = [&results, idx](const std::vector<Int>& v, const Int& val) {
                    results[idx].emplace_back(v, val);
                };
            }
            ShortVectorSink mapped = remap_sink(red.transform, collect);
            ctx.sink = &mapped;
            ctx.has_top_range = true;
            ctx.top_lo = tops[idx];
            ctx.top_hi = tops[idx];
            ctx.run();
            counts[idx] = ctx.count;
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    std::size_t total = 0;
    for (std::size_t i = 0; i < tops.size(); ++i) {
        total += counts[i];
        if (sink)
            for (auto& [v, val] : results[i]) sink(v, val);
    }
    return total;
}

}  // namespace gg
