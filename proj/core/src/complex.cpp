#include "gg/complex.hpp"
#include "gg/gates.hpp"

#include <json.hpp>

#include <algorithm>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace gg {

namespace {

constexpr std::size_t kTriangleCap = 20000;

// Insert a simplex and all of its faces of dimension >= 1; vertices are
// registered by the callers (they carry the type colors).
void insert_closed(QuotientComplex& c, std::vector<std::string> simp) {
    std::sort(simp.begin(), simp.end());
    simp.erase(std::unique(simp.begin(), simp.end()), simp.end());
    std::size_t k = simp.size();
    if (k < 2) return;
    for (unsigned mask = 1; mask < (1u << k); ++mask) {
        if (__builtin_popcount(mask) < 2) continue;
        std::vector<std::string> face;
        for (std::size_t i = 0; i < k; ++i)
            if (mask & (1u << i)) face.push_back(simp[i]);
        c.simplices.insert(std::move(face));
    }
}

std::string group_vertex_key(const std::string& x) { return "g|" + x; }

std::vector<std::string> y_members(const GroupOracle& group,
                                   const std::vector<std::string>& gate_map,
                                   const std::vector<int>& fiber, const std::string& x) {
    std::vector<std::string> mem{x};
    for (int t : fiber) mem.push_back(group.mul(gate_map[static_cast<std::size_t>(t)], x));
    std::sort(mem.begin(), mem.end());
    mem.erase(std::unique(mem.begin(), mem.end()), mem.end());
    return mem;
}

std::string y_vertex_key(const std::vector<std::string>& members) {
    std::string key = "y";
    for (const std::string& m : members) key += "|" + m;
    return key;
}

std::vector<std::string> split_translate(const GroupOracle& group,
                                         const std::vector<std::string>& gate_map,
                                         const std::vector<int>& delta, const std::string& x1) {
    std::vector<std::string> simp{x1};
    for (int l : delta) simp.push_back(group.mul(gate_map[static_cast<std::size_t>(l)], x1));
    return simp;
}

void inert_top_at(QuotientComplex& c, const GroupOracle& group,
                  const std::vector<std::string>& gate_map, const InertTemplate& tmpl,
                  const std::vector<int>& delta, const std::string& x) {
    std::vector<std::string> simp{group_vertex_key(x)};
    for (int j : delta) {
        auto mem = y_members(group, gate_map, tmpl.fibers[static_cast<std::size_t>(j)], x);
        std::string key = y_vertex_key(mem);
        c.vertices.emplace(key, tmpl.fiber_type[static_cast<std::size_t>(j)]);
        simp.push_back(key);
    }
    c.vertices.emplace(group_vertex_key(x), 0);
    insert_closed(c, simp);
}

}  // namespace

std::string mod_matrix_key(const ModMatrix& m) {
    std::ostringstream os;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) {
            const ModScalar& s = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            os << s.a << "." << s.b << (i == 4 && j == 4 ? "" : ",");
        }
    return os.str();
}

ModMatrix mod_matrix_from_key(const std::string& key, const Int& n) {
    ModMatrix m;
    std::istringstream is(key);
    std::string tok;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) {
            if (!std::getline(is, tok, ','))
                throw std::invalid_argument("mod_matrix_from_key: bad key");
            std::size_t dot = tok.find('.');
            if (dot == std::string::npos)
                throw std::invalid_argument("mod_matrix_from_key: bad entry");
            ModScalar s;
            s.a = Int(tok.substr(0, dot)) % n;
            s.b = Int(tok.substr(dot + 1)) % n;
            if (s.a < 0) s.a += n;
            if (s.b < 0) s.b += n;
            m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = s;
        }
    return m;
}

GroupOracle unitary_group_oracle(const ModNContext& ctx) {
    GroupOracle g;
    Int n = ctx.n;
    g.identity = [n]() { return mod_matrix_key(mod_identity(n)); };
    g.mul = [n](const std::string& a, const std::string& b) {
        return mod_matrix_key(mod_mul(mod_matrix_from_key(a, n), mod_matrix_from_key(b, n), n));
    };
    g.inv = [ctx](const std::string& a) {
        return mod_matrix_key(mod_inv(mod_matrix_from_key(a, ctx.n), ctx));
    };
    g.elements = nullptr;
    return g;
}

QuotientComplex build_split_complex(const GroupOracle& group,
                                    const std::vector<std::string>& gate_map,
                                    const ComplexTemplate& tmpl) {
    if (!group.elements)
        throw std::invalid_argument("build_split_complex: group is not enumerable");
    if (static_cast<int>(gate_map.size()) != tmpl.num_labels)
        throw std::invalid_argument("build_split_complex: gate_map does not cover the template");
    QuotientComplex c;
    c.provenance = "split-quotient";
    std::vector<std::string> els = group.elements();
    for (const std::string& x : els) c.vertices.emplace(x, 0);
    for (const std::string& x1 : els)
        for (const auto& delta : tmpl.simplices)
            insert_closed(c, split_translate(group, gate_map, delta, x1));
    return c;
}

QuotientComplex build_inert_complex(const GroupOracle& group,
                                    const std::vector<std::string>& gate_map,
                                    const InertTemplate& tmpl) {
    if (!group.elements)
        throw std::invalid_argument("build_inert_complex: group is not enumerable");
    QuotientComplex c;
    c.provenance = "inert-quotient";
    std::vector<std::string> els = group.elements();
    // all 0-simplices exist even when a fiber appears in no top simplex
    for (const std::string& x : els) {
        c.vertices.emplace(group_vertex_key(x), 0);
        for (std::size_t j = 0; j < tmpl.fibers.size(); ++j) {
            auto mem = y_members(group, gate_map, tmpl.fibers[j], x);
            c.vertices.emplace(y_vertex_key(mem), tmpl.fiber_type[j]);
        }
    }
    for (const std::string& x : els)
        for (const auto& delta : tmpl.simplices) inert_top_at(c, group, gate_map, tmpl, delta, x);
    return c;
}

QuotientComplex explore_split_vertex(const GroupOracle& group,
                                     const std::vector<std::string>& gate_map,
                                     const ComplexTemplate& tmpl,
                                     const std::string& x, int radius) {
    QuotientComplex c;
    c.provenance = "split-star";
    c.vertices.emplace(x, 0);
    if (radius <= 0) return c;
    auto star_of = [&](const std::string& v) {
        // v can sit at the base slot or at any gate slot of a translate
        for (const auto& delta : tmpl.simplices) {
            for (int role = -1; role < static_cast<int>(delta.size()); ++role) {
                std::string x1 = v;
                if (role >= 0)
                    x1 = group.mul(group.inv(gate_map[static_cast<std::size_t>(
                                       delta[static_cast<std::size_t>(role)])]),
                                   v);
                std::vector<std::string> simp = split_translate(group, gate_map, delta, x1);
                for (const std::string& w : simp) c.vertices.emplace(w, 0);
                insert_closed(c, simp);
            }
        }
    };
    star_of(x);
    if (radius >= 2) {
        std::vector<std::string> nbrs;
        for (const auto& v : c.vertices) nbrs.push_back(v.first);
        for (const std::string& w : nbrs) star_of(w);
    }
    return c;
}

QuotientComplex explore_inert_vertex(const GroupOracle& group,
                                     const std::vector<std::string>& gate_map,
                                     const InertTemplate& tmpl,
                                     const std::string& x, int radius) {
    QuotientComplex c;
    c.provenance = "inert-star";
    c.vertices.emplace(group_vertex_key(x), 0);
    if (radius <= 0) return c;
    auto star_of_group = [&](const std::string& v) {
        for (const auto& delta : tmpl.simplices) inert_top_at(c, group, gate_map, tmpl, delta, v);
    };
    auto star_of_y = [&](const std::string& key) {
        // recover the defining subset from the key and find every (x', j)
        // presentation of this vertex
        std::vector<std::string> mem;
        std::istringstream is(key.substr(2));
        std::string tok;
        while (std::getline(is, tok, '|')) mem.push_back(tok);
        for (const std::string& xp : mem)
            for (std::size_t j = 0; j < tmpl.fibers.size(); ++j) {
                if (y_members(group, gate_map, tmpl.fibers[j], xp) != mem) continue;
                for (const auto& delta : tmpl.simplices)
                    if (std::find(delta.begin(), delta.end(), static_cast<int>(j)) != delta.end())
                        inert_top_at(c, group, gate_map, tmpl, delta, xp);
            }
    };
    star_of_group(x);
    if (radius >= 2) {
        std::vector<std::string> nbrs;
        for (const auto& v : c.vertices) nbrs.push_back(v.first);
        for (const std::string& w : nbrs) {
            if (w.rfind("g|", 0) == 0)
                star_of_group(w.substr(2));
            else
                star_of_y(w);
        }
    }
    return c;
}

ValidationReport validate_structure(const QuotientComplex& c,
                                    const GroupOracle& group,
                                    const std::vector<std::string>& gates,
                                    const std::map<int, Int>* expected_edge_degrees,
                                    bool exact_degrees) {
    ValidationReport rep;
    auto fail = [&rep](const std::string& msg) {
        rep.ok = false;
        rep.violations.push_back(msg);
    };
    // downward closure and vertex consistency
    for (const auto& simp : c.simplices) {
        if (simp.size() < 2) fail("stored simplex of dimension < 1");
        if (!std::is_sorted(simp.begin(), simp.end()) ||
            std::adjacent_find(simp.begin(), simp.end()) != simp.end())
            fail("simplex not in canonical sorted form");
        for (const std::string& v : simp)
            if (!c.vertices.count(v)) fail("simplex references unknown vertex " + v);
        if (simp.size() > 2) {
            for (std::size_t drop = 0; drop < simp.size(); ++drop) {
                std::vector<std::string> face;
                for (std::size_t i = 0; i < simp.size(); ++i)
                    if (i != drop) face.push_back(simp[i]);
                if (!c.simplices.count(face)) fail("missing face of a stored simplex");
            }
        }
    }
    // gate sanity: the checkable fragment of the injectivity assumption
    std::string id = group.identity();
    for (std::size_t i = 0; i < gates.size(); ++i) {
        if (gates[i] == id) fail("gate " + std::to_string(i) + " reduces to the identity");
        for (std::size_t j = i + 1; j < gates.size(); ++j) {
            if (gates[i] == gates[j])
                fail("gates " + std::to_string(i) + " and " + std::to_string(j) + " collide");
            if (group.mul(gates[i], group.inv(gates[j])) == id)
                fail("product s t^-1 hits the identity");
        }
        for (std::size_t j = 0; j < gates.size(); ++j)
            if (group.mul(gates[i], gates[j]) == id)
                fail("product s t hits the identity (gates " + std::to_string(i) + ", " +
                     std::to_string(j) + ")");
    }
    // per-type edge-degree audit
    if (expected_edge_degrees) {
        std::map<std::string, std::map<int, Int>> deg;
        for (const auto& simp : c.simplices) {
            if (simp.size() != 2) continue;
            int t0 = c.vertices.at(simp[0]), t1 = c.vertices.at(simp[1]);
            deg[simp[0]][t1] += 1;
            deg[simp[1]][t0] += 1;
        }
        for (const auto& v : c.vertices)
            for (const auto& [type, bound] : *expected_edge_degrees) {
                Int d = 0;
                auto it = deg.find(v.first);
                if (it != deg.end()) {
                    auto jt = it->second.find(type);
                    if (jt != it->second.end()) d = jt->second;
                }
                if (d > bound || (exact_degrees && d != bound))
                    fail("vertex " + v.first + " has degree " + d.get_str() +
                         " into type " + std::to_string(type) + " (expected " +
                         (exact_degrees ? "" : "<= ") + bound.get_str() + ")");
            }
    }
    return rep;
}

StarReport explore_star_inert(const std::vector<GateElement>& gates, long p) {
    if (is_split_prime(p)) throw std::invalid_argument("explore_star_inert: p is split");
    StarReport rep;
    rep.p = p;
    rep.e = 2;
    rep.gates_used = gates.size();
    ModNContext ctx = make_modn_context(Int(p) * Int(p));
    BnData bn = build_Bn(ctx);
    const ModMatrix& h = bn.h;

    std::set<InertModule> labels;
    for (const GateElement& g : gates) {
        InertModule lab = inert_gate_label(g.g, p, ctx, bn);
        if (!inert_selfdual(lab, h, p)) {
            rep.notes.push_back("gate label is not selfdual (broken gate)");
            rep.within_bounds = false;
            continue;
        }
        labels.insert(lab);
    }
    rep.labels = labels.size();
    rep.complete = Int(static_cast<long>(labels.size())) == gate_count_formula(p);

    std::map<InertModule, std::size_t> fiber;
    std::set<InertModule> mids1, mids2;
    for (const InertModule& lab : labels) {
        int type = 0;
        InertModule mid = inert_midpoint(lab, p, &type);
        fiber[mid] += 1;
        (type == 1 ? mids1 : mids2).insert(mid);
    }
    for (const auto& f : fiber) rep.fiber_sizes.push_back(f.second);
    std::sort(rep.fiber_sizes.begin(), rep.fiber_sizes.end());

    rep.degrees[{0, 1}] = Int(static_cast<long>(mids1.size()));
    rep.degrees[{0, 2}] = Int(static_cast<long>(mids2.size()));
    rep.bounds[{0, 1}] = inert_valency(p, 0, {0, 1});
    rep.bounds[{0, 2}] = inert_valency(p, 0, {0, 2});
    if (mids1.size() + mids2.size() <= kTriangleCap) {
        Int tri = 0;
        for (const InertModule& m1 : mids1)
            for (const InertModule& m2 : mids2)
                if (inert_module_contains(m2, m1, p)) tri += 1;
        rep.degrees[{0, 1, 2}] = tri;
        rep.bounds[{0, 1, 2}] = inert_valency(p, 0, {0, 1, 2});
    } else {
        rep.notes.push_back("triangle census skipped (too many midpoints)");
    }

    Int big_fiber = (Int(p) + 1) * (Int(p) * p * p + 1) - 1;
    for (std::size_t s : rep.fiber_sizes)
        if (Int(static_cast<long>(s)) > big_fiber) {
            rep.notes.push_back("fiber larger than (p+1)(p^3+1)-1");
            rep.within_bounds = false;
        }
    for (const auto& [key, d] : rep.degrees) {
        if (d > rep.bounds.at(key)) rep.within_bounds = false;
    }
    rep.equality = !rep.degrees.empty();
    for (const auto& [key, d] : rep.degrees)
        if (d != rep.bounds.at(key)) rep.equality = false;
    return rep;
}

StarReport explore_star_split(const std::vector<GateElement>& gates, long p) {
    if (!is_split_prime(p)) throw std::invalid_argument("explore_star_split: p is inert");
    StarReport rep;
    rep.p = p;
    rep.e = 1;
    rep.gates_used = gates.size();
    ModNContext ctx = make_modn_context(Int(p));
    BnData bn = build_Bn(ctx);

    std::set<Subspace> labels;
    for (const GateElement& g : gates) labels.insert(split_gate_label(g.g, p, ctx, bn));
    rep.labels = labels.size();
    rep.complete = Int(static_cast<long>(labels.size())) == gate_count_formula(p);

    std::map<int, std::vector<const Subspace*>> by_dim;
    for (const Subspace& s : labels) by_dim[s.dim()].push_back(&s);
    for (int d = 1; d <= 4; ++d) {
        rep.degrees[{0, d}] = Int(static_cast<long>(by_dim[d].size()));
        rep.bounds[{0, d}] = gaussian_binomial(5, static_cast<unsigned>(d), Int(p));
    }
    if (labels.size() <= kTriangleCap) {
        for (int d1 = 1; d1 <= 3; ++d1)
            for (int d2 = d1 + 1; d2 <= 4; ++d2) {
                Int tri = 0;
                for (const Subspace* a : by_dim[d1])
                    for (const Subspace* b : by_dim[d2])
                        if (subspace_contains(*b, *a, p)) tri += 1;
                rep.degrees[{0, d1, d2}] = tri;
                rep.bounds[{0, d1, d2}] =
                    gaussian_binomial(5, static_cast<unsigned>(d2), Int(p)) *
                    gaussian_binomial(static_cast<unsigned>(d2), static_cast<unsigned>(d1), Int(p));
            }
    } else {
        rep.notes.push_back("flag census skipped (too many labels)");
    }
    for (const auto& [key, d] : rep.degrees)
        if (d > rep.bounds.at(key)) rep.within_bounds = false;
    rep.equality = !rep.degrees.empty();
    for (const auto& [key, d] : rep.degrees)
        if (d != rep.bounds.at(key)) rep.equality = false;
    return rep;
}

void write_complex_jsonl(const QuotientComplex& c, std::ostream& os) {
    for (const auto& [key, type] : c.vertices) {
        nlohmann::json j;
        j["dim"] = 0;
        j["types"] = std::vector<int>{type};
        j["vertices"] = std::vector<std::string>{key};
        os << j.dump() << "\n";
    }
    for (const auto& simp : c.simplices) {
        nlohmann::json j;
        j["dim"] = simp.size() - 1;
        std::vector<int> types;
        for (const std::string& v : simp) types.push_back(c.vertices.at(v));
        std::sort(types.begin(), types.end());
        j["types"] = types;
        j["vertices"] = simp;
        os << j.dump() << "\n";
    }
}

}  // namespace gg
