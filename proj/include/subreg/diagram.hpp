#pragma once

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "subreg/numeric.hpp"

namespace subreg {

// A word over the generator names.
using Word = std::vector<std::string>;

// Orders words by length first, then lexicographically.
struct LenLexLess {
    bool operator()(const Word& a, const Word& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    }
};

/// Weighted undirected graph over generator names. Absent edges mean the two
/// generators commute (weight 2); stored edges carry weight >= 3 or infinity.
class CoxeterDiagram {
public:
    struct Edge {
        std::string u, v;  // u < v
        Weight m;
        bool operator==(const Edge& o) const { return u == o.u && v == o.v && m == o.m; }
    };

    CoxeterDiagram() = default;

    static CoxeterDiagram create(std::vector<std::string> vertices,
                                 std::vector<Edge> edges) {
        CoxeterDiagram d;
        std::sort(vertices.begin(), vertices.end());
        for (std::size_t i = 0; i + 1 < vertices.size(); ++i)
            if (vertices[i] == vertices[i + 1])
                throw DomainError("duplicate vertex '" + vertices[i] + "'");
        for (const auto& s : vertices)
            if (s.empty()) throw DomainError("empty vertex name");
        d.vertices_ = std::move(vertices);
        for (std::size_t i = 0; i < d.vertices_.size(); ++i) d.index_[d.vertices_[i]] = i;

        for (auto& e : edges) {
            if (!d.index_.count(e.u)) throw DomainError("unknown vertex '" + e.u + "' in edge");
            if (!d.index_.count(e.v)) throw DomainError("unknown vertex '" + e.v + "' in edge");
            if (e.u == e.v) throw DomainError("edge endpoints must differ ('" + e.u + "')");
            if (e.m.is_finite() && e.m.value() < 3)
                throw DomainError("edge weight must be >= 3 or inf (weight-2 pairs are encoded by omitting the edge)");
            if (e.u > e.v) std::swap(e.u, e.v);
        }
        std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
            return std::tie(a.u, a.v) < std::tie(b.u, b.v);
        });
        for (std::size_t i = 0; i + 1 < edges.size(); ++i)
            if (edges[i].u == edges[i + 1].u && edges[i].v == edges[i + 1].v)
                throw DomainError("duplicate edge {" + edges[i].u + "," + edges[i].v + "}");
        d.edges_ = std::move(edges);
        for (const auto& e : d.edges_)
            d.wmap_[{d.index_.at(e.u), d.index_.at(e.v)}] = e.m;
        return d;
    }

    const std::vector<std::string>& vertices() const { return vertices_; }
    const std::vector<Edge>& edges() const { return edges_; }

    bool has_vertex(const std::string& s) const { return index_.count(s) != 0; }

    int vertex_index(const std::string& s) const {
        auto it = index_.find(s);
        if (it == index_.end()) throw DomainError("unknown generator '" + s + "'");
        return it->second;
    }

    // m(a,b): 1 when a == b, 2 when no edge, stored weight otherwise.
    Weight m(const std::string& a, const std::string& b) const {
        int i = vertex_index(a), j = vertex_index(b);
        if (i == j) return Weight::finite(1);
        if (i > j) std::swap(i, j);
        auto it = wmap_.find({i, j});
        if (it == wmap_.end()) return Weight::finite(2);
        return it->second;
    }

    std::vector<std::string> neighbors(const std::string& a) const {
        std::vector<std::string> out;
        for (const auto& e : edges_) {
            if (e.u == a) out.push_back(e.v);
            if (e.v == a) out.push_back(e.u);
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    // Connected components, each as a sorted vertex list.
    std::vector<std::vector<std::string>> components() const {
        std::map<std::string, int> comp;
        int next = 0;
        for (const auto& v : vertices_) {
            if (comp.count(v)) continue;
            int id = next++;
            std::vector<std::string> stack{v};
            comp[v] = id;
            while (!stack.empty()) {
                auto cur = stack.back();
                stack.pop_back();
                for (const auto& n : neighbors(cur)) {
                    if (!comp.count(n)) {
                        comp[n] = id;
                        stack.push_back(n);
                    }
                }
            }
        }
        std::vector<std::vector<std::string>> out(next);
        for (const auto& v : vertices_) out[comp.at(v)].push_back(v);
        return out;
    }

    bool operator==(const CoxeterDiagram& o) const {
        return vertices_ == o.vertices_ && edges_ == o.edges_;
    }

private:
    std::vector<std::string> vertices_;  // sorted
    std::vector<Edge> edges_;            // sorted, u < v
    std::map<std::string, int> index_;
    std::map<std::pair<int, int>, Weight> wmap_;
};

inline void check_word(const Word& w, const CoxeterDiagram& d) {
    for (const auto& s : w) d.vertex_index(s);
}

/// True iff w is nonempty, has no contiguous repeated letter, and contains no
/// contiguous {a,b}-alternation of length m(a,b) for any pair with finite m.
/// Consecutive commuting letters (m = 2) therefore also fail.
inline bool is_rigid(const Word& w, const CoxeterDiagram& d) {
    check_word(w, d);
    if (w.empty()) return false;
    const std::size_t n = w.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const std::string& a = w[i];
        const std::string& b = w[i + 1];
        if (a == b) return false;
        Weight m = d.m(a, b);
        if (m.is_infinite()) continue;
        // length of the maximal {a,b}-alternation starting at i
        std::size_t len = 2;
        std::size_t j = i + 2;
        while (j < n && w[j] == w[j - 2]) {
            ++len;
            ++j;
        }
        if (static_cast<long>(len) >= m.value()) return false;
    }
    return true;
}

namespace detail {

// All rigid words starting with the given letter, grouped by length
// (index 0 holds length-1 words). Extension only needs to examine the
// alternation ending at the appended letter.
inline std::vector<std::vector<Word>> rigid_words_from(const std::string& first,
                                                       const CoxeterDiagram& d,
                                                       int max_len) {
    std::vector<std::vector<Word>> levels;
    levels.push_back({Word{first}});
    for (int len = 2; len <= max_len; ++len) {
        std::vector<Word> next;
        for (const auto& w : levels.back()) {
            for (const auto& g : d.vertices()) {
                const std::string& last = w.back();
                if (g == last) continue;
                Weight m = d.m(last, g);
                if (m.is_finite() && m.value() == 2) continue;
                if (m.is_finite()) {
                    // alternation ending at g
                    long run = 2;
                    std::size_t k = w.size();
                    // w[k-1] = last; preceding letters must alternate g,last,g,...
                    while (k >= 2) {
                        const std::string& expect = (run % 2 == 0) ? g : last;
                        if (w[k - 2] != expect) break;
                        ++run;
                        --k;
                    }
                    if (run >= m.value()) continue;
                }
                Word cand = w;
                cand.push_back(g);
                next.push_back(std::move(cand));
            }
        }
        if (next.empty()) break;
        levels.push_back(std::move(next));
    }
    return levels;
}

inline int enumeration_threads() {
    int cap = 1;
    if (const char* env = std::getenv("JRING_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v >= 1) cap = static_cast<int>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    return std::min<long>(cap, static_cast<long>(hw));
}

}  // namespace detail

/// All rigid words of length <= max_len in length-then-lexicographic order.
/// Subtrees rooted at distinct first letters are independent, so they may be
/// explored by separate threads; the merged order is deterministic.
inline std::vector<Word> enumerate_cell(const CoxeterDiagram& d, int max_len) {
    if (max_len < 1) throw DomainError("max_len must be >= 1");
    const auto& gens = d.vertices();
    std::vector<std::vector<std::vector<Word>>> per_letter(gens.size());

    int nthreads = std::min<int>(detail::enumeration_threads(), std::max<std::size_t>(gens.size(), 1));
    if (nthreads <= 1 || gens.size() <= 1) {
        for (std::size_t i = 0; i < gens.size(); ++i)
            per_letter[i] = detail::rigid_words_from(gens[i], d, max_len);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nthreads; ++t) {
            pool.emplace_back([&, t]() {
                for (std::size_t i = t; i < gens.size(); i += nthreads)
                    per_letter[i] = detail::rigid_words_from(gens[i], d, max_len);
            });
        }
        for (auto& th : pool) th.join();
    }

    std::vector<Word> out;
    for (int len = 1; len <= max_len; ++len) {
        bool any = false;
        for (std::size_t i = 0; i < gens.size(); ++i) {
            if (static_cast<std::size_t>(len) <= per_letter[i].size()) {
                const auto& block = per_letter[i][len - 1];
                out.insert(out.end(), block.begin(), block.end());
                if (!block.empty()) any = true;
            }
        }
        if (!any) break;
    }
    return out;
}

/// Renders a word for display: letters are concatenated when every generator
/// name is a single character, comma-separated otherwise.
inline std::string render_word(const Word& w, const CoxeterDiagram& d) {
    bool single = true;
    for (const auto& g : d.vertices())
        if (g.size() != 1) single = false;
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (!single && i) out += ",";
        out += w[i];
    }
    return out;
}

inline Word parse_word(const std::string& s, const CoxeterDiagram& d) {
    bool single = true;
    for (const auto& g : d.vertices())
        if (g.size() != 1) single = false;
    Word w;
    if (single && s.find(',') == std::string::npos) {
        for (char c : s) w.push_back(std::string(1, c));
    } else {
        std::string cur;
        for (char c : s) {
            if (c == ',') {
                if (!cur.empty()) w.push_back(cur);
                cur.clear();
            } else {
                cur += c;
            }
        }
        if (!cur.empty()) w.push_back(cur);
    }
    check_word(w, d);
    return w;
}

/// Exact isomorphism test for small diagrams (brute-force vertex bijections).
inline bool diagrams_isomorphic(const CoxeterDiagram& a, const CoxeterDiagram& b) {
    if (a.vertices().size() != b.vertices().size()) return false;
    if (a.edges().size() != b.edges().size()) return false;
    std::vector<int> perm(a.vertices().size());
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool ok = true;
        for (const auto& e : a.edges()) {
            const std::string& u = b.vertices()[perm[a.vertex_index(e.u)]];
            const std::string& v = b.vertices()[perm[a.vertex_index(e.v)]];
            if (!(b.m(u, v) == e.m)) {
                ok = false;
                break;
            }
        }
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

}  // namespace subreg
