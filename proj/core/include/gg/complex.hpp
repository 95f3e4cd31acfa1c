#pragma once

// Cayley-style quotient complexes over an abstract finite group with a
// labeled gate set (the split and inert constructions), streaming vertex
// neighborhood exploration, and structural validation. The builders are
// generic over a GroupOracle so the machinery is testable on small synthetic
// groups; the real U_5(Z/n) instances only ever run through the star
// exploration (full materialization grows like n^25).

#include "gg/building.hpp"

#include <functional>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace gg {

// Abstract finite group. Elements are canonical strings (hashable, equality
// decidable); `elements` may be absent for groups too large to enumerate.
struct GroupOracle {
    std::function<std::string()> identity;
    std::function<std::string(const std::string&, const std::string&)> mul;
    std::function<std::string(const std::string&)> inv;
    std::function<std::vector<std::string>()> elements;  // may be null
};

// Serialization of U_5(Z/n) elements and the corresponding oracle
// (multiplication/inversion only; no enumeration).
std::string mod_matrix_key(const ModMatrix& m);
ModMatrix mod_matrix_from_key(const std::string& key, const Int& n);
GroupOracle unitary_group_oracle(const ModNContext& ctx);

// Local star template for the split construction: labels 0..num_labels-1
// stand for the vertices x of the template star Q with type colors, and each
// entry of `simplices` is a nonempty sorted label subset Delta such that
// {x_0} union Delta is a simplex of the star of x_0.
struct ComplexTemplate {
    int num_labels = 0;
    std::vector<int> label_type;                // size num_labels
    std::vector<std::vector<int>> simplices;    // sorted label ids
};

// Template for the inert construction: gates are grouped into midpoint
// fibers T_j; `simplices` lists sorted fiber subsets Delta such that
// {x_0} union {y_{T_j} : j in Delta} is a top simplex.
struct InertTemplate {
    std::vector<std::vector<int>> fibers;       // sorted gate ids per fiber
    std::vector<int> fiber_type;                // 1 or 2 per fiber
    std::vector<std::vector<int>> simplices;    // sorted fiber ids
};

// A built quotient complex: vertices with type colors, simplices of
// dimension >= 1 as canonical sorted vertex-key tuples, closed downward.
struct QuotientComplex {
    std::map<std::string, int> vertices;
    std::set<std::vector<std::string>> simplices;
    std::string provenance;
    bool complete = true;
};

// Vertices are the group elements; the r-simplices are the translates
// x_1 union {s_x x_1 : x in Delta} over all template simplices Delta,
// closed downward. gate_map[label] is the group element of that gate.
QuotientComplex build_split_complex(const GroupOracle& group,
                                    const std::vector<std::string>& gate_map,
                                    const ComplexTemplate& tmpl);

// Two vertex classes: the group elements (type 0) and the filled-in sets
// y_{T_j}(x) = {x} union {s_t x : t in T_j} (types 1/2; set identity
// resolves the non-uniqueness of the labeling). Top simplices are
// {x} union {y_{T_j}(x) : j in Delta}, closed downward.
QuotientComplex build_inert_complex(const GroupOracle& group,
                                    const std::vector<std::string>& gate_map,
                                    const InertTemplate& tmpl);

// Streaming star/neighborhood exploration around a vertex, without global
// materialization. radius 0: the vertex; 1: all simplices containing it;
// 2: the union of the stars of its neighbors (closed neighborhood).
QuotientComplex explore_split_vertex(const GroupOracle& group,
                                     const std::vector<std::string>& gate_map,
                                     const ComplexTemplate& tmpl,
                                     const std::string& x, int radius);
QuotientComplex explore_inert_vertex(const GroupOracle& group,
                                     const std::vector<std::string>& gate_map,
                                     const InertTemplate& tmpl,
                                     const std::string& x, int radius);

struct ValidationReport {
    bool ok = true;
    std::vector<std::string> violations;
};

// Structural audit: downward closure, vertex consistency, gate sanity
// (duplicate gates, gates reducing to the identity, products s t^{-1} and
// s t hitting the identity — the checkable fragment of the injectivity
// radius assumption), and an optional per-type edge-degree audit
// (degree of each vertex into neighbors of a given type; <= expected, or
// == expected when `exact_degrees`).
ValidationReport validate_structure(const QuotientComplex& c,
                                    const GroupOracle& group,
                                    const std::vector<std::string>& gates,
                                    const std::map<int, Int>* expected_edge_degrees = nullptr,
                                    bool exact_degrees = false);

// Star of the base vertex in the real complex at an unramified prime p,
// computed from an available (possibly partial) gate set via the local
// building labels. Degrees are keyed by simplex type sets and compared
// against the valency tables; `complete` certifies that the distinct labels
// exhaust the theoretical gate count, in which case equality is expected.
struct StarReport {
    long p = 0;
    int e = 0;
    std::size_t gates_used = 0;
    std::size_t labels = 0;                  // distinct building labels
    bool complete = false;                   // labels == gate_count_formula(p)
    bool within_bounds = true;
    bool equality = false;                   // degrees == bounds throughout
    std::map<std::set<int>, Int> degrees;    // type set -> observed count
    std::map<std::set<int>, Int> bounds;     // type set -> valency entry
    std::vector<std::size_t> fiber_sizes;    // inert: gates per midpoint
    std::vector<std::string> notes;
};
StarReport explore_star_inert(const std::vector<GateElement>& gates, long p);
StarReport explore_star_split(const std::vector<GateElement>& gates, long p);

// JSON-lines export: one simplex per line (dimension, type multiset,
// canonical vertex keys), vertices included as dimension-0 lines.
void write_complex_jsonl(const QuotientComplex& c, std::ostream& os);

}  // namespace gg
