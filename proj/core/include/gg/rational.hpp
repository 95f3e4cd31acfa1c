#pragma once

// Exact scalar types. All arithmetic in this project is exact: arbitrary
// precision integers and rationals backed by GMP. No floating point is used
// anywhere on a correctness-relevant path.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace gg {

using Int = mpz_class;
using Rat = mpq_class;

// ceil(n/d) for exact integers, d > 0.
inline long ceil_div(long n, long d) {
    if (d <= 0) throw std::invalid_argument("ceil_div: denominator must be positive");
    long q = n / d;
    if (n % d != 0 && n > 0) ++q;
    return q;
}

// floor(n/d) with d > 0 (true mathematical floor for negative n).
inline Int floor_div(const Int& n, const Int& d) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    return q;
}

inline Int mod_floor(const Int& n, const Int& d) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    return r;
}

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

inline Int num(const Rat& q) { return q.get_num(); }
inline Int den(const Rat& q) { return q.get_den(); }

// floor of a rational.
inline Int rat_floor(const Rat& q) { return floor_div(q.get_num(), q.get_den()); }

// ceil of a rational.
inline Int rat_ceil(const Rat& q) { return -rat_floor(-q); }

inline std::string to_string(const Int& n) { return n.get_str(); }
inline std::string to_string(const Rat& q) { return q.get_str(); }

inline Rat rat_from_string(const std::string& s) {
    Rat q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
    q.canonicalize();
    return q;
}

}  // namespace gg
