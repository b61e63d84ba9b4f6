#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "subreg/poly.hpp"
#include "subreg/quiver.hpp"
#include "subreg/rewrite.hpp"

namespace subreg {

struct ContractionStep {
    std::string arrow;        // contracted arrow
    std::string dual_arrow;   // its dual
    std::string merged_a;     // source of `arrow`
    std::string merged_b;     // target of `arrow`
    std::string new_vertex;
    Weight pair_weight;
    std::map<std::string, std::string> vertex_rename;  // old -> new (merged pair only)
    std::map<std::string, std::string> arrow_rename;   // old id -> new id (rerouted only)
    bool loop_elided = false;
    std::string loop_id;  // empty when elided

    bool operator==(const ContractionStep& o) const {
        return arrow == o.arrow && dual_arrow == o.dual_arrow && merged_a == o.merged_a &&
               merged_b == o.merged_b && new_vertex == o.new_vertex &&
               pair_weight == o.pair_weight && vertex_rename == o.vertex_rename &&
               arrow_rename == o.arrow_rename && loop_elided == o.loop_elided &&
               loop_id == o.loop_id;
    }
};

using ContractionTrace = std::vector<ContractionStep>;

namespace detail {

inline std::string fresh_vertex_name(const GDQuiver& q, const std::string& a,
                                     const std::string& b) {
    std::string base = a + "." + b;
    std::string name = base;
    int k = 2;
    while (q.has_vertex(name)) name = base + "#" + std::to_string(k++);
    return name;
}

inline std::string fresh_arrow_name(const std::set<std::string>& taken, std::string base) {
    while (taken.count(base)) base += "'";
    return base;
}

}  // namespace detail

/// Contracts the dual pair {alpha, d(alpha)}: requires distinct endpoints and
/// odd finite weight >= 3. The endpoints merge into a fresh vertex, other
/// arrows reroute (weights and duals preserved), and the pair is replaced by a
/// self-dual loop of the same weight, omitted when the weight is 3 and elision
/// is requested.
inline std::pair<GDQuiver, ContractionStep> contract(const GDQuiver& q, const std::string& alpha,
                                                     bool elide_weight3_loop) {
    q.validate();
    const Arrow& a = q.arrow(alpha);
    const std::string& beta = q.dual.at(alpha);
    if (beta == alpha) throw DomainError("pair not contractible: arrow is self-dual");
    if (a.source == a.target) throw DomainError("pair not contractible: arrow is a loop");
    Weight m = q.weight.at(alpha);
    if (m.is_infinite()) throw DomainError("pair not contractible: infinite weight");
    if (m.value() % 2 == 0) throw DomainError("pair not contractible: even weight");
    if (m.value() < 3) throw DomainError("pair not contractible: weight below 3");

    ContractionStep step;
    step.arrow = alpha;
    step.dual_arrow = beta;
    step.merged_a = a.source;
    step.merged_b = a.target;
    step.pair_weight = m;
    step.new_vertex = detail::fresh_vertex_name(q, a.source, a.target);
    step.vertex_rename[a.source] = step.new_vertex;
    step.vertex_rename[a.target] = step.new_vertex;

    GDQuiver out;
    bool placed = false;
    for (const auto& v : q.vertices) {
        if (v == a.source || v == a.target) {
            if (!placed) {
                out.vertices.push_back(step.new_vertex);
                placed = true;
            }
        } else {
            out.vertices.push_back(v);
        }
    }

    std::set<std::string> taken;
    auto reroute = [&](const std::string& v) {
        return (v == a.source || v == a.target) ? step.new_vertex : v;
    };
    for (const auto& g : q.arrows) {
        if (g.id == alpha || g.id == beta) continue;
        std::string src = reroute(g.source);
        std::string tgt = reroute(g.target);
        std::string id = g.id;
        if (src != g.source || tgt != g.target) {
            id = detail::fresh_arrow_name(taken, g.id + "'");
            step.arrow_rename[g.id] = id;
        }
        taken.insert(id);
        out.arrows.push_back({id, src, tgt});
    }
    auto renamed = [&](const std::string& id) {
        auto it = step.arrow_rename.find(id);
        return it == step.arrow_rename.end() ? id : it->second;
    };
    for (const auto& g : q.arrows) {
        if (g.id == alpha || g.id == beta) continue;
        std::string id = renamed(g.id);
        out.dual[id] = renamed(q.dual.at(g.id));
        out.weight[id] = q.weight.at(g.id);
    }

    if (m.value() == 3 && elide_weight3_loop) {
        step.loop_elided = true;
    } else {
        step.loop_id = detail::fresh_arrow_name(taken, "eps@" + step.new_vertex);
        out.arrows.push_back({step.loop_id, step.new_vertex, step.new_vertex});
        out.dual[step.loop_id] = step.loop_id;
        out.weight[step.loop_id] = m;
    }
    out.validate();
    return {out, step};
}

/// Contraction at diagram level: the edge must be simple (weight 3) and its
/// endpoints must share no neighbor, so the result is again a diagram.
inline CoxeterDiagram simple_contract_diagram(const CoxeterDiagram& d, const std::string& u,
                                              const std::string& v) {
    Weight m = d.m(u, v);
    if (m.is_infinite() || m.value() != 3)
        throw DomainError("only weight-3 edges admit a simple contraction");
    auto nu = d.neighbors(u);
    auto nv = d.neighbors(v);
    std::vector<std::string> shared;
    std::set_intersection(nu.begin(), nu.end(), nv.begin(), nv.end(), std::back_inserter(shared));
    if (!shared.empty())
        throw DomainError("cannot contract: endpoints share neighbor '" + shared.front() + "'");

    std::string merged = u + "." + v;
    while (d.has_vertex(merged)) merged += "#";
    std::vector<std::string> vertices{merged};
    for (const auto& w : d.vertices())
        if (w != u && w != v) vertices.push_back(w);
    std::vector<CoxeterDiagram::Edge> edges;
    for (const auto& e : d.edges()) {
        if ((e.u == u && e.v == v) || (e.u == v && e.v == u)) continue;
        auto ren = [&](const std::string& s) { return (s == u || s == v) ? merged : s; };
        edges.push_back({ren(e.u), ren(e.v), e.m});
    }
    return CoxeterDiagram::create(std::move(vertices), std::move(edges));
}

/// Greedily contracts contractible pairs (lexicographically smallest arrow id
/// first) until none remain; weight-3 loops are elided.
inline std::pair<GDQuiver, ContractionTrace> contract_to_core(const GDQuiver& q) {
    GDQuiver cur = q;
    ContractionTrace trace;
    for (;;) {
        std::string best;
        for (const auto& a : cur.arrows) {
            const std::string& dual = cur.dual.at(a.id);
            Weight m = cur.weight.at(a.id);
            if (dual == a.id || a.source == a.target) continue;
            if (m.is_infinite() || m.value() % 2 == 0 || m.value() < 3) continue;
            if (best.empty() || a.id < best) best = a.id;
        }
        if (best.empty()) break;
        auto [next, step] = contract(cur, best, /*elide_weight3_loop=*/true);
        cur = std::move(next);
        trace.push_back(std::move(step));
    }
    return {cur, trace};
}

/// Free-algebra presentation of a one-vertex quiver: one generator per loop,
/// one relation per duality orbit.
struct Presentation {
    std::vector<std::string> generators;
    std::map<std::string, std::string> generator_of_arrow;
    std::vector<std::string> relations;
    std::string annotation;

    std::string text() const {
        std::string g;
        for (std::size_t i = 0; i < generators.size(); ++i) {
            if (i) g += ",";
            g += generators[i];
        }
        std::string r;
        for (std::size_t i = 0; i < relations.size(); ++i) {
            if (i) r += ", ";
            r += relations[i];
        }
        std::string body = "<" + g + " | " + r + ">";
        return annotation.empty() ? body : annotation + ": " + body;
    }
};

namespace detail {

inline std::string power_word(const std::string& x, const std::string& y, long k) {
    // (xy)^k rendered without parentheses for k = 1
    std::string base = x + y;
    if (k == 1) return base;
    return "(" + base + ")^" + std::to_string(k);
}

inline std::string render_relation_element(const AlgebraElement& r,
                                           const std::map<std::string, std::string>& sym) {
    // renders r = 0 with paths spelled in generator symbols
    std::string out;
    for (auto it = r.rbegin(); it != r.rend(); ++it) {
        const Rat c = it->second;
        bool neg = c < 0;
        Rat ac = neg ? Rat(-c) : c;
        if (out.empty())
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        std::string word;
        for (const auto& id : it->first.arrows) word += sym.at(id);
        if (word.empty()) word = "1";
        std::string cs = rat_str(ac);
        if (cs != "1" || word == "1")
            out += (word == "1") ? cs : cs + "*" + word;
        else
            out += word;
    }
    return out + " = 0";
}

}  // namespace detail

inline Presentation presentation(const GDQuiver& q, FamilyKind fam) {
    q.validate();
    if (q.vertices.size() != 1) throw DomainError("presentation requires a one-vertex quiver");

    Presentation pres;
    // orbit structure: dual pairs and self-dual loops, in arrow order
    std::vector<std::pair<std::string, std::string>> pairs;
    std::vector<std::string> selfdual;
    std::set<std::string> seen;
    for (const auto& a : q.arrows) {
        if (seen.count(a.id)) continue;
        const std::string& d = q.dual.at(a.id);
        seen.insert(a.id);
        seen.insert(d);
        if (d == a.id)
            selfdual.push_back(a.id);
        else
            pairs.push_back({a.id, d});
    }

    // generator names
    if (pairs.size() == 1 && selfdual.empty()) {
        pres.generator_of_arrow[pairs[0].first] = "x";
        pres.generator_of_arrow[pairs[0].second] = "y";
    } else if (pairs.empty()) {
        for (std::size_t i = 0; i < selfdual.size(); ++i)
            pres.generator_of_arrow[selfdual[i]] = "x" + std::to_string(i + 1);
    } else {
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            pres.generator_of_arrow[pairs[i].first] = "x" + std::to_string(i + 1);
            pres.generator_of_arrow[pairs[i].second] = "y" + std::to_string(i + 1);
        }
        for (std::size_t i = 0; i < selfdual.size(); ++i)
            pres.generator_of_arrow[selfdual[i]] = "z" + std::to_string(i + 1);
    }
    for (const auto& a : q.arrows) pres.generators.push_back(pres.generator_of_arrow.at(a.id));

    if (fam == FamilyKind::Power) {
        std::vector<long> orders;  // for the cyclic free-product annotation
        for (const auto& [p1, p2] : pairs) {
            Weight m = q.weight.at(p1);
            if (m.is_infinite() || m.value() % 2 == 0)
                throw DomainError("power-family presentation supports only odd finite loop weights");
            long k = (m.value() - 1) / 2;
            const std::string& x = pres.generator_of_arrow.at(p1);
            const std::string& y = pres.generator_of_arrow.at(p2);
            pres.relations.push_back(detail::power_word(x, y, k) + "=" +
                                     detail::power_word(y, x, k) + "=1");
        }
        for (const auto& s : selfdual) {
            Weight m = q.weight.at(s);
            if (m.is_infinite() || m.value() % 2 == 0)
                throw DomainError("power-family presentation supports only odd finite loop weights");
            long k = (m.value() - 1) / 2;
            const std::string& x = pres.generator_of_arrow.at(s);
            pres.relations.push_back(k == 1 ? x + "=1" : x + "^" + std::to_string(k) + "=1");
            orders.push_back(k);
        }
        if (pairs.empty() && selfdual.empty()) {
            pres.annotation = "K";
        } else if (pairs.size() == 1 && selfdual.empty()) {
            long k = (q.weight.at(pairs[0].first).value() - 1) / 2;
            pres.annotation = k == 1 ? "Laurent" : "T_" + std::to_string(k);
        } else if (pairs.empty()) {
            std::string ann;
            for (std::size_t i = 0; i < orders.size(); ++i) {
                if (i) ann += "*";
                ann += "C" + std::to_string(orders[i]);
            }
            pres.annotation = ann;
        }
    } else {
        // mechanical relations from the evaluation ideal
        std::set<std::string> done;
        for (const auto& a : q.arrows) {
            if (done.count(a.id)) continue;
            done.insert(a.id);
            done.insert(q.dual.at(a.id));
            AlgebraElement r = relation(a.id, fam, q);
            if (!r.empty())
                pres.relations.push_back(
                    detail::render_relation_element(r, pres.generator_of_arrow));
            if (q.dual.at(a.id) != a.id) {
                AlgebraElement r2 = relation(q.dual.at(a.id), fam, q);
                if (!r2.empty())
                    pres.relations.push_back(
                        detail::render_relation_element(r2, pres.generator_of_arrow));
            }
        }
    }
    return pres;
}

}  // namespace subreg
