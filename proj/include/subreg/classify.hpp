#pragma once

#include <string>
#include <vector>

#include "subreg/diagram.hpp"

namespace subreg {

enum class Verdict { Semisimple, BoundedSimplesNotFinite, UnboundedSimples };

inline std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Semisimple: return "Semisimple";
        case Verdict::BoundedSimplesNotFinite: return "BoundedSimplesNotFinite";
        default: return "UnboundedSimples";
    }
}

struct ComponentClassification {
    std::vector<std::string> vertices;
    Verdict verdict;
    bool is_tree = false;
    int independent_cycles = 0;
    std::vector<CoxeterDiagram::Edge> heavy_edges;    // weight >= 4, including inf
    std::vector<CoxeterDiagram::Edge> infinite_edges;
};

struct ClassificationResult {
    Verdict verdict;
    bool finitely_many_simples = false;
    bool reducible = false;  // more than one component; verdict combined
    // set when reducible: the combination rule is derived from the
    // component-product decomposition, not stated for reducible systems
    std::string combination_note;
    std::vector<ComponentClassification> components;
};

/// Per connected component: Semisimple iff tree with no infinite edge and at
/// most one heavy edge; BoundedSimplesNotFinite iff a unique all-simple cycle,
/// or a tree whose exactly two heavy edges both have weight 4 or 5; otherwise
/// UnboundedSimples. A reducible diagram is Semisimple iff every component is,
/// bounded iff every component is at worst bounded, and unbounded otherwise
/// (simple modules of a product are simple modules of one factor).
inline ClassificationResult classify(const CoxeterDiagram& d) {
    ClassificationResult res;
    auto comps = d.components();
    for (const auto& cv : comps) {
        ComponentClassification c;
        c.vertices = cv;
        std::set<std::string> inc(cv.begin(), cv.end());
        int nedges = 0;
        for (const auto& e : d.edges()) {
            if (!inc.count(e.u)) continue;
            ++nedges;
            bool heavy = e.m.is_infinite() || e.m.value() >= 4;
            if (heavy) c.heavy_edges.push_back(e);
            if (e.m.is_infinite()) c.infinite_edges.push_back(e);
        }
        c.independent_cycles = nedges - static_cast<int>(cv.size()) + 1;
        c.is_tree = c.independent_cycles == 0;

        if (c.is_tree && c.infinite_edges.empty() && c.heavy_edges.size() <= 1) {
            c.verdict = Verdict::Semisimple;
        } else if (c.independent_cycles == 1 && c.heavy_edges.empty()) {
            c.verdict = Verdict::BoundedSimplesNotFinite;
        } else if (c.is_tree && c.heavy_edges.size() == 2 &&
                   [&] {
                       for (const auto& e : c.heavy_edges)
                           if (e.m.is_infinite() || (e.m.value() != 4 && e.m.value() != 5))
                               return false;
                       return true;
                   }()) {
            c.verdict = Verdict::BoundedSimplesNotFinite;
        } else {
            c.verdict = Verdict::UnboundedSimples;
        }
        res.components.push_back(std::move(c));
    }

    res.reducible = res.components.size() > 1;
    if (res.reducible)
        res.combination_note =
            "derived: simple modules of a component product are the simple modules of "
            "single components, so the verdict is the worst component verdict";
    bool all_semi = true, all_bounded = true;
    for (const auto& c : res.components) {
        if (c.verdict != Verdict::Semisimple) all_semi = false;
        if (c.verdict == Verdict::UnboundedSimples) all_bounded = false;
    }
    res.verdict = all_semi ? Verdict::Semisimple
                           : (all_bounded ? Verdict::BoundedSimplesNotFinite
                                          : Verdict::UnboundedSimples);
    res.finitely_many_simples = res.verdict == Verdict::Semisimple;
    return res;
}

}  // namespace subreg
