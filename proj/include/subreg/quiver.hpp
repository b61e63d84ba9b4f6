#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "subreg/diagram.hpp"
#include "subreg/numeric.hpp"

namespace subreg {

struct Arrow {
    std::string id;
    std::string source;
    std::string target;
    bool operator==(const Arrow& o) const {
        return id == o.id && source == o.source && target == o.target;
    }
};

/// Quiver with a duality involution on arrows and a weight per arrow.
/// Dual arrows point in opposite directions and share their weight; self-dual
/// arrows are loops. Arrow identity is the id string, so parallel arrows are
/// allowed.
struct GDQuiver {
    std::vector<std::string> vertices;
    std::vector<Arrow> arrows;
    std::map<std::string, std::string> dual;
    std::map<std::string, Weight> weight;

    const Arrow& arrow(const std::string& id) const {
        for (const auto& a : arrows)
            if (a.id == id) return a;
        throw DomainError("unknown arrow '" + id + "'");
    }
    bool has_arrow(const std::string& id) const {
        for (const auto& a : arrows)
            if (a.id == id) return true;
        return false;
    }
    bool has_vertex(const std::string& v) const {
        return std::find(vertices.begin(), vertices.end(), v) != vertices.end();
    }

    void validate() const {
        std::set<std::string> vset(vertices.begin(), vertices.end());
        if (vset.size() != vertices.size()) throw DomainError("duplicate vertex in quiver");
        std::set<std::string> ids;
        for (const auto& a : arrows) {
            if (!ids.insert(a.id).second) throw DomainError("duplicate arrow id '" + a.id + "'");
            if (!vset.count(a.source) || !vset.count(a.target))
                throw DomainError("arrow '" + a.id + "' references unknown vertex");
        }
        for (const auto& a : arrows) {
            auto it = dual.find(a.id);
            if (it == dual.end()) throw DomainError("arrow '" + a.id + "' has no dual assigned");
            const Arrow& b = arrow(it->second);
            if (b.source != a.target || b.target != a.source)
                throw DomainError("dual of '" + a.id + "' must reverse source and target");
            if (dual.at(b.id) != a.id)
                throw DomainError("duality is not an involution at '" + a.id + "'");
            if (!(weight.at(a.id) == weight.at(b.id)))
                throw DomainError("dual arrows '" + a.id + "', '" + b.id + "' differ in weight");
            if (b.id == a.id && a.source != a.target)
                throw DomainError("self-dual arrow '" + a.id + "' must be a loop");
        }
        if (dual.size() != arrows.size() || weight.size() != arrows.size())
            throw DomainError("dual/weight maps must cover exactly the arrow set");
    }

    bool operator==(const GDQuiver& o) const {
        return vertices == o.vertices && arrows == o.arrows && dual == o.dual &&
               weight == o.weight;
    }
};

/// Each diagram edge a-b contributes the dual pair a->b, b->a with the edge's
/// weight.
inline GDQuiver double_quiver(const CoxeterDiagram& d) {
    GDQuiver q;
    q.vertices = d.vertices();
    for (const auto& e : d.edges()) {
        std::string fwd = e.u + ">" + e.v;
        std::string bwd = e.v + ">" + e.u;
        q.arrows.push_back({fwd, e.u, e.v});
        q.arrows.push_back({bwd, e.v, e.u});
        q.dual[fwd] = bwd;
        q.dual[bwd] = fwd;
        q.weight[fwd] = e.m;
        q.weight[bwd] = e.m;
    }
    q.validate();
    return q;
}

/// A path: either stationary at `start`, or a composable arrow sequence
/// beginning at `start`.
struct Path {
    std::string start;
    std::vector<std::string> arrows;

    bool stationary() const { return arrows.empty(); }
    std::size_t length() const { return arrows.size(); }

    static Path at(const std::string& v) { return Path{v, {}}; }
    static Path of(const GDQuiver& q, std::vector<std::string> ids) {
        if (ids.empty()) throw DomainError("arrow path must be nonempty; use a stationary path");
        Path p{q.arrow(ids.front()).source, std::move(ids)};
        p.check(q);
        return p;
    }

    void check(const GDQuiver& q) const {
        if (arrows.empty()) {
            if (!q.has_vertex(start)) throw DomainError("stationary path at unknown vertex '" + start + "'");
            return;
        }
        if (q.arrow(arrows.front()).source != start)
            throw DomainError("path start does not match first arrow");
        for (std::size_t i = 0; i + 1 < arrows.size(); ++i)
            if (q.arrow(arrows[i]).target != q.arrow(arrows[i + 1]).source)
                throw DomainError("path is not composable at position " + std::to_string(i));
    }

    std::string source() const { return start; }
    std::string target(const GDQuiver& q) const {
        return arrows.empty() ? start : q.arrow(arrows.back()).target;
    }

    bool operator==(const Path& o) const { return start == o.start && arrows == o.arrows; }
    bool operator<(const Path& o) const {
        if (arrows.size() != o.arrows.size()) return arrows.size() < o.arrows.size();
        if (start != o.start) return start < o.start;
        return arrows < o.arrows;
    }
};

namespace detail {

// The forbidden pattern contributed by an arrow of finite weight: the leading
// path of its defining relation. Dual pair: alternate alpha, dual(alpha) to
// length m-1. Self-dual loop: the loop repeated floor((m-1)/2) times.
inline std::vector<std::string> braid_pattern(const GDQuiver& q, const std::string& id) {
    Weight m = q.weight.at(id);
    if (m.is_infinite()) return {};
    const std::string& d = q.dual.at(id);
    std::vector<std::string> pat;
    if (d == id) {
        long k = (m.value() - 1) / 2;
        for (long i = 0; i < k; ++i) pat.push_back(id);
    } else {
        for (long i = 0; i < m.value() - 1; ++i) pat.push_back(i % 2 == 0 ? id : d);
    }
    return pat;
}

inline bool contains_subsequence(const std::vector<std::string>& hay,
                                 const std::vector<std::string>& needle) {
    if (needle.empty() || needle.size() > hay.size()) return false;
    for (std::size_t i = 0; i + needle.size() <= hay.size(); ++i) {
        bool hit = true;
        for (std::size_t j = 0; j < needle.size(); ++j)
            if (hay[i + j] != needle[j]) {
                hit = false;
                break;
            }
        if (hit) return true;
    }
    return false;
}

}  // namespace detail

/// True iff no arrow's forbidden alternating pattern occurs contiguously in p.
inline bool is_unbraided(const Path& p, const GDQuiver& q) {
    p.check(q);
    for (const auto& a : q.arrows) {
        auto pat = detail::braid_pattern(q, a.id);
        if (!pat.empty() && detail::contains_subsequence(p.arrows, pat)) return false;
    }
    return true;
}

/// All unbraided paths of length <= max_len, stationary paths included,
/// ordered by length then lexicographically by start/arrow ids.
inline std::vector<Path> enumerate_unbraided(const GDQuiver& q, int max_len) {
    if (max_len < 0) throw DomainError("max_len must be >= 0");
    std::vector<Path> out;
    std::vector<Path> level;
    for (const auto& v : q.vertices) level.push_back(Path::at(v));
    std::sort(level.begin(), level.end());
    out = level;

    std::vector<Arrow> sorted_arrows = q.arrows;
    std::sort(sorted_arrows.begin(), sorted_arrows.end(),
              [](const Arrow& a, const Arrow& b) { return a.id < b.id; });

    for (int len = 1; len <= max_len; ++len) {
        std::vector<Path> next;
        for (const auto& p : level) {
            const std::string tgt = p.target(q);
            for (const auto& a : sorted_arrows) {
                if (a.source != tgt) continue;
                Path cand = p;
                cand.arrows.push_back(a.id);
                // a new violation must end at the appended arrow
                bool ok = true;
                for (const auto& b : q.arrows) {
                    auto pat = detail::braid_pattern(q, b.id);
                    if (pat.empty() || pat.size() > cand.arrows.size()) continue;
                    if (pat.back() != a.id) continue;
                    if (std::equal(pat.begin(), pat.end(),
                                   cand.arrows.end() - pat.size())) {
                        ok = false;
                        break;
                    }
                }
                if (ok) next.push_back(std::move(cand));
            }
        }
        if (next.empty()) break;
        out.insert(out.end(), next.begin(), next.end());
        level = std::move(next);
    }
    return out;
}

/// The path along a word's consecutive letters in a double quiver; length-1
/// words give the stationary path at their letter.
inline Path word_to_path(const Word& w, const CoxeterDiagram& d, const GDQuiver& q) {
    check_word(w, d);
    if (w.empty()) throw DomainError("empty word has no path");
    if (w.size() == 1) return Path::at(w[0]);
    std::vector<std::string> ids;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        std::string id = w[i] + ">" + w[i + 1];
        if (!q.has_arrow(id))
            throw DomainError("no arrow between '" + w[i] + "' and '" + w[i + 1] + "'");
        ids.push_back(id);
    }
    return Path::of(q, ids);
}

/// Inverse of word_to_path on double quivers.
inline Word path_to_word(const Path& p, const GDQuiver& q) {
    Word w{p.start};
    for (const auto& id : p.arrows) w.push_back(q.arrow(id).target);
    return w;
}

namespace detail {

inline bool quiver_iso_try(const GDQuiver& a, const GDQuiver& b,
                           const std::map<std::string, std::string>& vmap) {
    // match arrows greedily with backtracking over candidates
    std::vector<const Arrow*> aa;
    for (const auto& ar : a.arrows) aa.push_back(&ar);
    std::map<std::string, std::string> amap;
    std::set<std::string> used;

    std::function<bool(std::size_t)> go = [&](std::size_t i) -> bool {
        if (i == aa.size()) return true;
        const Arrow& x = *aa[i];
        // if dual already matched, the pairing constrains candidates
        for (const auto& y : b.arrows) {
            if (used.count(y.id)) continue;
            if (y.source != vmap.at(x.source) || y.target != vmap.at(x.target)) continue;
            if (!(b.weight.at(y.id) == a.weight.at(x.id))) continue;
            bool self_x = a.dual.at(x.id) == x.id;
            bool self_y = b.dual.at(y.id) == y.id;
            if (self_x != self_y) continue;
            auto itd = amap.find(a.dual.at(x.id));
            if (itd != amap.end() && b.dual.at(y.id) != itd->second) continue;
            amap[x.id] = y.id;
            used.insert(y.id);
            if (go(i + 1)) return true;
            amap.erase(x.id);
            used.erase(y.id);
        }
        return false;
    };
    return go(0);
}

}  // namespace detail

/// Exact isomorphism of small quivers: a vertex bijection and arrow bijection
/// preserving sources, targets, weights, and the duality involution.
inline bool quivers_isomorphic(const GDQuiver& a, const GDQuiver& b) {
    if (a.vertices.size() != b.vertices.size() || a.arrows.size() != b.arrows.size())
        return false;
    std::vector<int> perm(a.vertices.size());
    std::iota(perm.begin(), perm.end(), 0);
    do {
        std::map<std::string, std::string> vmap;
        for (std::size_t i = 0; i < perm.size(); ++i) vmap[a.vertices[i]] = b.vertices[perm[i]];
        if (detail::quiver_iso_try(a, b, vmap)) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

}  // namespace subreg
