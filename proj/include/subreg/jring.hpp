#pragma once

#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "subreg/diagram.hpp"
#include "subreg/numeric.hpp"

namespace subreg {

/// Integer linear combination of rigid words (the basis of the cell ring).
/// Zero coefficients are never stored; the empty map is the zero element.
using JElement = std::map<Word, Int, LenLexLess>;

inline void jel_add(JElement& acc, const Word& w, const Int& c) {
    if (c == 0) return;
    auto it = acc.find(w);
    if (it == acc.end()) {
        acc.emplace(w, c);
    } else {
        it->second += c;
        if (it->second == 0) acc.erase(it);
    }
}

inline JElement unit(const CoxeterDiagram& d) {
    JElement e;
    for (const auto& a : d.vertices()) e.emplace(Word{a}, 1);
    return e;
}

/// Least i such that every term has length <= i + 1.
inline int filtration_degree(const JElement& x) {
    if (x.empty()) throw DomainError("filtration degree of the zero element is undefined");
    int deg = 0;
    for (const auto& [w, c] : x) deg = std::max<int>(deg, static_cast<int>(w.size()) - 1);
    return deg;
}

namespace detail {

// Product of two alternating words in a common pair, reduced to the abstract
// form: the result is a multiset of output lengths, every output word starting
// with the first letter of x and ending with the last letter of y.
//
// dmul(p, q): base cases
//   p = 1:  { q }
//   p = 2:  { q-1 (when q > 1) } + { q+1 (when q+1 <= m-1, no bound for m=inf) }
// and for p >= 3 the left factor of length p is expanded into a length-2 times
// length-(p-1) product minus a length-(p-2) term.
inline std::map<long, Int> dihedral_lengths(long p, long q, Weight m) {
    static std::map<std::tuple<long, long, long>, std::map<long, Int>> memo;
    static std::mutex mu;
    long mkey = m.is_infinite() ? 0 : m.value();
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = memo.find({p, q, mkey});
        if (it != memo.end()) return it->second;
    }
    std::map<long, Int> out;
    if (p == 1) {
        out[q] = 1;
    } else if (p == 2) {
        if (q - 1 >= 1) out[q - 1] += 1;
        if (m.is_infinite() || q + 1 <= m.value() - 1) out[q + 1] += 1;
    } else {
        auto left = dihedral_lengths(p - 1, q, m);
        for (const auto& [r, c] : left) {
            auto step = dihedral_lengths(2, r, m);
            for (const auto& [r2, c2] : step) out[r2] += c * c2;
        }
        auto minus = dihedral_lengths(p - 2, q, m);
        for (const auto& [r, c] : minus) out[r] -= c;
        for (auto it = out.begin(); it != out.end();)
            it = (it->second == 0) ? out.erase(it) : std::next(it);
    }
    {
        std::lock_guard<std::mutex> lock(mu);
        memo[{p, q, mkey}] = out;
    }
    return out;
}

// Alternating word of given length over {first, second} starting with first.
inline Word alternating_word(const std::string& first, const std::string& second, long len) {
    Word w;
    for (long i = 0; i < len; ++i) w.push_back(i % 2 == 0 ? first : second);
    return w;
}

inline bool alternates(const Word& w) {
    for (std::size_t i = 2; i < w.size(); ++i)
        if (w[i] != w[i - 2]) return false;
    for (std::size_t i = 1; i < w.size(); ++i)
        if (w[i] == w[i - 1]) return false;
    return true;
}

}  // namespace detail

/// Product of two basis elements indexed by alternating words x, y in a common
/// pair of generators with last(x) = first(y).
inline JElement dihedral_mul(const Word& x, const Word& y, Weight m) {
    if (x.empty() || y.empty()) throw DomainError("dihedral product of empty word");
    if (!detail::alternates(x) || !detail::alternates(y))
        throw DomainError("dihedral product requires alternating words");
    if (x.back() != y.front()) throw DomainError("junction mismatch in dihedral product");
    std::set<std::string> letters(x.begin(), x.end());
    letters.insert(y.begin(), y.end());
    if (letters.size() > 2) throw DomainError("dihedral product requires a common generator pair");
    if (m.is_finite() && m.value() < 3) throw DomainError("dihedral weight must be >= 3 or inf");
    if (m.is_finite()) {
        if (static_cast<long>(x.size()) >= m.value() || static_cast<long>(y.size()) >= m.value())
            throw DomainError("word not rigid for the given weight");
    }

    const std::string first = x.front();
    std::string second;
    if (x.size() >= 2)
        second = x[1];
    else if (y.size() >= 2)
        second = y[1];

    auto lens = detail::dihedral_lengths(static_cast<long>(x.size()),
                                         static_cast<long>(y.size()), m);
    JElement out;
    for (const auto& [r, c] : lens) {
        if (r >= 2 && second.empty())
            throw DomainError("internal: missing second letter in dihedral product");
        jel_add(out, detail::alternating_word(first, second, r), c);
    }
    return out;
}

namespace detail {

// x * y: concatenation deleting one duplicate junction letter.
inline Word splice(const Word& x, const Word& y) {
    Word w = x;
    w.insert(w.end(), y.begin() + 1, y.end());
    return w;
}

inline JElement mul_basis(const Word& x, const Word& y, const CoxeterDiagram& d);

inline JElement mul_elems(const JElement& a, const JElement& b, const CoxeterDiagram& d) {
    JElement out;
    for (const auto& [x, cx] : a)
        for (const auto& [y, cy] : b) {
            JElement p = mul_basis(x, y, d);
            for (const auto& [w, c] : p) jel_add(out, w, c * cx * cy);
        }
    return out;
}

inline JElement mul_basis(const Word& x, const Word& y, const CoxeterDiagram& d) {
    if (x.back() != y.front()) return {};
    if (x.size() == 1) return JElement{{y, 1}};
    if (y.size() == 1) return JElement{{x, 1}};

    const std::string& junction = x.back();
    const std::string& a2 = x[x.size() - 2];
    const std::string& b2 = y[1];
    if (a2 != b2) return JElement{{splice(x, y), 1}};

    // Both factors end/begin with an alternation in {junction, a2}; split off
    // the maximal alternating pieces and resolve their product first.
    std::size_t dx_start = x.size() - 2;
    while (dx_start >= 1 && x[dx_start - 1] == x[dx_start + 1]) --dx_start;
    Word dx(x.begin() + dx_start, x.end());
    Word u(x.begin(), x.begin() + dx_start + 1);  // ends at first letter of dx

    std::size_t dy_end = 1;  // index of last letter of the alternating prefix
    while (dy_end + 1 < y.size() && y[dy_end + 1] == y[dy_end - 1]) ++dy_end;
    Word dy(y.begin(), y.begin() + dy_end + 1);
    Word yp(y.begin() + dy_end, y.end());  // starts at last letter of dy

    JElement mid = dihedral_mul(dx, dy, d.m(junction, a2));
    JElement right = mul_elems(mid, JElement{{yp, 1}}, d);
    return mul_elems(JElement{{u, 1}}, right, d);
}

}  // namespace detail

/// Bilinear product in the cell ring.
inline JElement mul(const JElement& a, const JElement& b, const CoxeterDiagram& d) {
    for (const auto& [w, c] : a)
        if (!is_rigid(w, d)) throw DomainError("word '" + render_word(w, d) + "' is not rigid");
    for (const auto& [w, c] : b)
        if (!is_rigid(w, d)) throw DomainError("word '" + render_word(w, d) + "' is not rigid");
    return detail::mul_elems(a, b, d);
}

inline JElement jel_basis(const Word& w) { return JElement{{w, 1}}; }

inline JElement jel_scale(const JElement& x, const Int& c) {
    JElement out;
    if (c == 0) return out;
    for (const auto& [w, k] : x) out.emplace(w, k * c);
    return out;
}

inline JElement jel_sum(const JElement& a, const JElement& b) {
    JElement out = a;
    for (const auto& [w, c] : b) jel_add(out, w, c);
    return out;
}

}  // namespace subreg
