#pragma once

// Norm-equation gate solving: ingest a candidate list of CM quintic fields,
// enumerate short vectors of Q_max, match characteristic polynomials, and
// reconstruct solutions x of iota(x)x = p^e in Lambda_D^max \ O_E. The gate
// set is the set of central rescalings psi*x of the surviving solutions.

#include "gg/orders.hpp"

#include <string>

namespace gg {

// True iff p splits in E = Q(sqrt(-7)), i.e. p = 1, 2, 4 mod 7.
bool is_split_prime(long p);
// e = 1 for split p, 2 for inert p; throws for p in {2, 7}.
int gate_exponent(long p);

// A fixed choice of rho_p in O_E with rho_p * conj(rho_p) = p for split p:
// smallest s >= 1, then smallest r >= 0, then smallest |r| among r < 0.
// Reproduces rho_11 = 1 + 2*rho2.
EElem split_prime_element(long p);

struct CandidateEntry {
    std::array<Int, 6> gamma_minpoly;  // monic quintic, coefficient of t^i at [i]
    Int disc;                          // advisory field discriminant
    std::array<Rat, 5> alpha_expr;     // alpha as a polynomial in gamma
    std::array<Rat, 5> beta_expr;      // beta as a polynomial in gamma
    Int target;                        // p^e
    std::string source_id;
};

// Parse and validate a JSON candidate file. Entries failing validation are
// rejected; `rejects` (if non-null) collects one reason per rejected entry.
std::vector<CandidateEntry> load_candidates(const std::string& path,
                                            std::vector<std::string>* rejects = nullptr);
std::vector<CandidateEntry> parse_candidates(const std::string& json_text,
                                             std::vector<std::string>* rejects = nullptr);

// Validation pieces, exposed for tests.
bool minpoly_irreducible_mod2(const std::array<Int, 6>& mp);
// alpha(t)^2 + alpha(t)beta(t) + 2 beta(t)^2 == target modulo the minpoly.
bool norm_identity_holds(const CandidateEntry& c);

// Disc(M') <= C * (4 p^e / 7)^10 (unramified at 7) or C * (4 p^e)^10, with
// C = 0.134288 as a fixed rational constant.
Rat disc_bound(long p, int e, bool ramified7);

struct NormSolution {
    AlgebraElem x;              // iota(x) x = p^e, x in Lambda_D^max \ O_E
    std::vector<Int> gamma_vec; // the 25-vector of the matched gamma
    std::size_t candidate;      // index into the candidate list
};

// Enumerate gamma with Q_max(gamma) <= bound, match charpolys against the
// candidate list, reconstruct and verify x. One representative per {x, -x}
// (the one with lexicographically larger 50-coordinate vector); output sorted
// deterministically.
std::vector<NormSolution> solve_norm_equation(const OrderBundle& order, long p, int e,
                                              const Rat& bound,
                                              const std::vector<CandidateEntry>& candidates,
                                              unsigned threads = 1);

// Minimal polynomial of gamma over Q via powers in the 50-dimensional
// coordinate space (much faster than the symbolic charpoly); degree <= 5,
// monic, returned with deg+1 coefficients.
Poly minpoly_via_powers(const AlgebraElem& gamma);

// Square root in Q[t]/(m) for monic integer quintic m, by Tonelli-Shanks
// modulo a prime where m stays irreducible, Hensel lifting, and rational
// reconstruction. Returns false if w is not a square (or m is reducible).
bool field_sqrt(const std::array<Int, 6>& m, const std::array<Rat, 5>& w,
                std::array<Rat, 5>& out);

// Candidate-free search: every solution x with iota(x)x = p^e determines
// gamma = x + iota(x) with Trd(gamma^2) <= 20 p^e, and conversely alpha, beta
// solve 7a^2 - 7*gamma*a + (2 gamma^2 - p^e) = 0 in Q(gamma), which has a
// root iff 7(4p^e - gamma^2) is a square there. Enumerates gamma up to
// `bound`, derives x, and keeps those in the order (per lambda_max_contains).
std::vector<NormSolution> solve_norm_equation_direct(const OrderBundle& order, long p, int e,
                                                     const Rat& bound, unsigned threads = 1);

struct GateElement {
    AlgebraElem g;        // unscaled solution, iota(g) g = p^e
    EElem scale;          // psi: rho_p_bar^{-1} (split) or p^{-1} (inert)
    std::size_t candidate;
};

// Keep the non-central solutions and attach the central scale.
std::vector<GateElement> gates_from_solutions(long p, int e,
                                              const std::vector<NormSolution>& sols);

// Gaussian binomial [n choose k]_q.
Int gaussian_binomial(unsigned n, unsigned k, const Int& q);

// Theoretical gate-set size: sum of Gaussian binomials (split) or the inert
// distance-2 vertex count.
Int gate_count_formula(long p);

}  // namespace gg
