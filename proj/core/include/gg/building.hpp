#pragma once

// Local building combinatorics at an unramified prime p != 11 and the
// labeling of gates by simplices of the local building:
//  - split p: the reduced building of PGL_5(Q_p); vertices correspond to
//    proper nonzero subspaces of F_p^5 (the star of the base vertex), flags
//    give higher simplices, and a gate s is labeled by the column space of
//    B_p^{-1} eta(s) B_p mod rho_p.
//  - inert p: the building of the quasi-split unitary group; the star of the
//    base (hyperspecial) vertex is described by H_p-selfdual O_E/p^2-
//    submodules of (O_E/p^2)^5.

#include "gg/modn.hpp"

#include <array>
#include <functional>
#include <set>
#include <vector>

namespace gg {

// ---------- split side: subspaces of F_p^5 ----------

// Subspace in reduced row echelon form; rows are the RREF basis, entries
// reduced into [0, p).
struct Subspace {
    std::vector<std::array<long, 5>> rows;

    int dim() const { return static_cast<int>(rows.size()); }
    bool operator==(const Subspace& o) const { return rows == o.rows; }
    bool operator<(const Subspace& o) const { return rows < o.rows; }
};

// Row reduction of an arbitrary generating set.
Subspace subspace_from_generators(std::vector<std::array<long, 5>> gens, long p);

// Visit every dimension-k subspace of F_p^5 exactly once, as explicit RREF
// matrices (pivot-column pattern plus all free entries).
void for_each_subspace(long p, int k, const std::function<void(const Subspace&)>& fn);

// Streaming census of the proper nonzero subspaces (k = 1..4), counted by
// explicit RREF enumeration.
Int count_split_labels(long p);

// True iff a is contained in b.
bool subspace_contains(const Subspace& b, const Subspace& a, long p);

// Label of a gate at a split prime p: the column space of
// B_p^{-1} eta(g) B_p over O_E/p, projected to F_p through the rho_p
// component of the splitting O_E/p = F_p x F_p. g is the unscaled gate
// (iota(g) g = p); its reduction must be nonzero and singular mod rho_p.
Subspace split_gate_label(const AlgebraElem& g, long p, const ModNContext& ctx,
                          const BnData& bn);

// Expected number of simplices containing a fixed vertex whose type set
// (vertex types in Z/5 up to the cyclic relabeling induced by the gate
// action) is `types` together with the base type 0. `types` must be a
// nonempty subset of {1, 2, 3, 4}.
Int split_valency(long q, const std::set<int>& types);

// Number of chambers containing a fixed 4-simplex: q + 1.
Int split_chambers_per_facet(long q);

// ---------- inert side: selfdual submodules of (O_E/p^2)^5 ----------

// Submodule of (O_E/p^2)^5 given by a canonical generating matrix (Howell
// form): columns generate the module over O_E/p^2.
struct InertModule {
    std::vector<std::array<ModScalar, 5>> gens;  // canonicalized generators
    bool operator==(const InertModule& o) const;
    bool operator<(const InertModule& o) const;
};

// Canonicalize a generating set (Howell-type normal form mod p^2).
InertModule inert_module_canonical(std::vector<std::array<ModScalar, 5>> gens, long p);

// The H-dual {x : H(m, x) = 0 mod p^2 for all m in M}.
InertModule inert_dual(const InertModule& m, const ModMatrix& h, long p);

// M is H-selfdual iff M equals the dual of itself... the vertices of the
// local building at distance <= 2 from the base vertex correspond to the
// selfdual modules; distance-1 pairs are M1 < M2 with M1 = dual(p * M2).
bool inert_selfdual(const InertModule& m, const ModMatrix& h, long p);

// Label of a gate at an inert prime p: the column span of
// B_{p^2}^{-1} eta(g) B_{p^2} over O_E/p^2, for the unscaled gate g with
// iota(g) g = p^2 (this is p * s for the unitary rescaling s = g/p). The
// result is an H_p-selfdual module of size p^10.
InertModule inert_gate_label(const AlgebraElem& g, long p, const ModNContext& ctx,
                             const BnData& bn);

// The modules R^5 and p R^5 (R = O_E/p^2) and elementary module operations.
InertModule inert_module_r5(long p);
InertModule inert_module_pr5(long p);
InertModule inert_p_scale(const InertModule& m, long p);
// {x : p x in M}, computed as dual(p * dual(M)); needs the (unimodular) form.
InertModule inert_div_p(const InertModule& m, const ModMatrix& h, long p);
bool inert_module_contains(const InertModule& big, const InertModule& small, long p);
// F_p-dimension of M / (M intersect p R^5): the rank of the generators mod p.
// Always even; half of it is the F_{p^2}-dimension.
int inert_unit_rank(const InertModule& m, long p);

// The midpoint of [x_0, x_2(M)]: among the distance-1 vertices between x_0
// and x_2 (all of whose M_1 contain both M and p R^5), the minimal one is
// M + p R^5 itself, independently of any apartment choice. Its type (1 or 2)
// is the F_{p^2}-dimension of M_1 / p R^5. Throws if that dimension is not
// 1 or 2 (the label was not a valid distance-2 vertex).
InertModule inert_midpoint(const InertModule& label, long p, int* type = nullptr);

// Check that M_1 is a valid distance-1 vertex: with M_2 = {x : p x in
// dual(M_1)}, the chain p R^5 < M_1 < M_2 < R^5 is strict and
// dual(p M_2) = M_1. Optionally returns M_2.
bool inert_vertex1_valid(const InertModule& m1, const ModMatrix& h, long p,
                         InertModule* m2 = nullptr);

// Valency table of the quasi-split unitary building of rank 2 (N = 5):
// expected number of simplices with type set `types` (subset of {0,1,2})
// containing a fixed vertex of type `base`.
Int inert_valency(long q, int base, const std::set<int>& types);

// Number of chambers containing a fixed edge of the given type pair.
Int inert_chambers_per_edge(long q, int t1, int t2);

}  // namespace gg
