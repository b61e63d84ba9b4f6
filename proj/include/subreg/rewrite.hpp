#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>
#include <vector>

#include "subreg/jring.hpp"
#include "subreg/poly.hpp"
#include "subreg/quiver.hpp"

namespace subreg {

/// Rational linear combination of paths; the empty map is zero.
using AlgebraElement = std::map<Path, Rat>;

inline void alg_add(AlgebraElement& acc, const Path& p, const Rat& c) {
    if (c == 0) return;
    auto it = acc.find(p);
    if (it == acc.end()) {
        acc.emplace(p, c);
    } else {
        it->second += c;
        if (it->second == 0) acc.erase(it);
    }
}

inline AlgebraElement alg_scale(const AlgebraElement& x, const Rat& c) {
    AlgebraElement out;
    if (c == 0) return out;
    for (const auto& [p, k] : x) out.emplace(p, k * c);
    return out;
}

inline AlgebraElement alg_sum(const AlgebraElement& a, const AlgebraElement& b) {
    AlgebraElement out = a;
    for (const auto& [p, c] : b) alg_add(out, p, c);
    return out;
}

/// Substitutes the alternating sequence alpha, dual(alpha), ... for powers of
/// x; constants become the stationary path at source(alpha). The polynomial
/// must be even or odd so all terms share source and target.
inline AlgebraElement arrow_eval(const Polynomial& f, const std::string& alpha,
                                 const GDQuiver& q) {
    if (!f.is_even() && !f.is_odd())
        throw DomainError("arrow evaluation requires an even or odd polynomial");
    const Arrow& a = q.arrow(alpha);
    const std::string& beta = q.dual.at(alpha);
    AlgebraElement out;
    for (const auto& [e, c] : f.terms()) {
        if (e == 0) {
            alg_add(out, Path::at(a.source), c);
        } else {
            std::vector<std::string> ids;
            for (int i = 0; i < e; ++i) ids.push_back(i % 2 == 0 ? alpha : beta);
            alg_add(out, Path::of(q, std::move(ids)), c);
        }
    }
    return out;
}

/// The defining relation of an arrow: zero for infinite weight, the
/// alternating evaluation of the (m-1)-th family polynomial for a dual pair,
/// and the halved polynomial in the loop itself for a self-dual loop.
inline AlgebraElement relation(const std::string& alpha, FamilyKind fam, const GDQuiver& q) {
    Weight m = q.weight.at(alpha);
    if (m.is_infinite()) return {};
    Polynomial f = family_poly(fam, static_cast<int>(m.value()) - 1);
    if (q.dual.at(alpha) != alpha) return arrow_eval(f, alpha, q);
    // self-dual loop: powers of the loop itself
    Polynomial t = tilde(f);
    const Arrow& a = q.arrow(alpha);
    AlgebraElement out;
    for (const auto& [e, c] : t.terms()) {
        if (e == 0) {
            alg_add(out, Path::at(a.source), c);
        } else {
            alg_add(out, Path::of(q, std::vector<std::string>(e, alpha)), c);
        }
    }
    return out;
}

enum class RewriteStrategy { LeftmostInnermost, RightmostInnermost };

/// Rewriting engine for the quotient by the evaluation ideal of a family.
/// Each finite-weight arrow contributes one rule: the leading path of its
/// relation maps to the (strictly shorter) remainder. Families must be monic,
/// so the leading path has coefficient one.
class RewriteSystem {
public:
    RewriteSystem(GDQuiver q, FamilyKind fam) : q_(std::move(q)), fam_(fam) {
        q_.validate();
        std::set<std::vector<std::string>> seen;
        for (const auto& a : q_.arrows) {
            AlgebraElement r = relation(a.id, fam_, q_);
            if (r.empty()) continue;
            auto lead = std::prev(r.end());  // longest path, unique by parity
            if (lead->second != 1)
                throw DomainError("rewrite rules require a monic family");
            Rule rule;
            rule.redex = lead->first.arrows;
            for (auto it = r.begin(); it != lead; ++it)
                alg_add(rule.replacement, it->first, -it->second);
            if (seen.insert(rule.redex).second) rules_.push_back(std::move(rule));
        }
    }

    const GDQuiver& quiver() const { return q_; }
    FamilyKind family() const { return fam_; }

    AlgebraElement normal_form(const AlgebraElement& x,
                               RewriteStrategy st = RewriteStrategy::LeftmostInnermost) const {
        AlgebraElement out;
        for (const auto& [p, c] : x) {
            AlgebraElement nf = nf_path(p, st);
            for (const auto& [p2, c2] : nf) alg_add(out, p2, c2 * c);
        }
        return out;
    }

    AlgebraElement mul(const AlgebraElement& x, const AlgebraElement& y,
                       RewriteStrategy st = RewriteStrategy::LeftmostInnermost) const {
        AlgebraElement out;
        for (const auto& [p, cp] : x)
            for (const auto& [r, cr] : y) {
                if (p.target(q_) != r.source()) continue;
                Path cat = p.stationary() ? r : p;
                if (!p.stationary() && !r.stationary())
                    cat.arrows.insert(cat.arrows.end(), r.arrows.begin(), r.arrows.end());
                if (p.stationary() && r.stationary()) cat = p;
                AlgebraElement nf = nf_path(cat, st);
                for (const auto& [p2, c2] : nf) alg_add(out, p2, c2 * cp * cr);
            }
        return out;
    }

private:
    struct Rule {
        std::vector<std::string> redex;
        AlgebraElement replacement;  // strictly shorter paths
    };

    AlgebraElement nf_path(const Path& p, RewriteStrategy st) const {
        int slot = st == RewriteStrategy::LeftmostInnermost ? 0 : 1;
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = memo_[slot].find(p);
            if (it != memo_[slot].end()) return it->second;
        }
        AlgebraElement result;
        const Rule* hit = nullptr;
        std::size_t hit_pos = 0;
        const std::size_t n = p.arrows.size();
        if (st == RewriteStrategy::LeftmostInnermost) {
            for (std::size_t pos = 0; pos < n && !hit; ++pos) {
                hit = match_at(p, pos);
                hit_pos = pos;
            }
        } else {
            for (std::size_t pos = n; pos-- > 0 && !hit;) {
                hit = match_at(p, pos);
                hit_pos = pos;
            }
        }
        if (!hit) {
            result.emplace(p, 1);
        } else {
            for (const auto& [rep, c] : hit->replacement) {
                Path glued = splice(p, hit_pos, hit->redex.size(), rep);
                AlgebraElement nf = nf_path(glued, st);
                for (const auto& [p2, c2] : nf) alg_add(result, p2, c2 * c);
            }
        }
        std::lock_guard<std::mutex> lock(mu_);
        memo_[slot][p] = result;
        return result;
    }

    const Rule* match_at(const Path& p, std::size_t pos) const {
        for (const auto& r : rules_) {
            if (pos + r.redex.size() > p.arrows.size()) continue;
            if (std::equal(r.redex.begin(), r.redex.end(), p.arrows.begin() + pos))
                return &r;
        }
        return nullptr;
    }

    // replace arrows [pos, pos+len) by the arrows of rep
    Path splice(const Path& p, std::size_t pos, std::size_t len, const Path& rep) const {
        std::vector<std::string> ids(p.arrows.begin(), p.arrows.begin() + pos);
        ids.insert(ids.end(), rep.arrows.begin(), rep.arrows.end());
        ids.insert(ids.end(), p.arrows.begin() + pos + len, p.arrows.end());
        if (ids.empty()) return Path::at(p.start);
        return Path::of(q_, std::move(ids));
    }

    GDQuiver q_;
    FamilyKind fam_;
    std::vector<Rule> rules_;
    mutable std::map<Path, AlgebraElement> memo_[2];
    mutable std::mutex mu_;
};

namespace detail {

inline std::string quiver_fingerprint(const GDQuiver& q) {
    std::ostringstream os;
    for (const auto& v : q.vertices) os << v << ';';
    os << '|';
    for (const auto& a : q.arrows)
        os << a.id << ':' << a.source << '>' << a.target << ':' << q.dual.at(a.id) << ':'
           << q.weight.at(a.id).str() << ';';
    return os.str();
}

inline std::shared_ptr<const RewriteSystem> rewrite_system(const GDQuiver& q, FamilyKind fam) {
    static std::map<std::string, std::shared_ptr<const RewriteSystem>> cache;
    static std::mutex mu;
    std::string key = family_name(fam) + "#" + quiver_fingerprint(q);
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto rs = std::make_shared<const RewriteSystem>(q, fam);
    cache[key] = rs;
    return rs;
}

}  // namespace detail

/// Image of x in the quotient, supported on unbraided paths only.
inline AlgebraElement normal_form(const AlgebraElement& x, FamilyKind fam, const GDQuiver& q,
                                  RewriteStrategy st = RewriteStrategy::LeftmostInnermost) {
    return detail::rewrite_system(q, fam)->normal_form(x, st);
}

/// Concatenation product followed by reduction to normal form.
inline AlgebraElement algebra_mul(const AlgebraElement& x, const AlgebraElement& y,
                                  FamilyKind fam, const GDQuiver& q) {
    return detail::rewrite_system(q, fam)->mul(x, y);
}

/// Ring homomorphism onto the cell ring: stationary paths map to t_a, arrows
/// a->b map to t_ab, and longer paths to the corresponding product. Defined
/// for double quivers with the Chebyshev family.
inline JElement phi(const AlgebraElement& x, const GDQuiver& q, const CoxeterDiagram& d) {
    if (!(q == double_quiver(d)))
        throw DomainError("phi requires the double quiver of the given diagram");
    JElement out;
    for (const auto& [p, c] : x) {
        if (!is_integral(c))
            throw DomainError("phi requires integer coefficients");
        Word w = path_to_word(p, q);
        JElement img = jel_basis(Word{w[0]});
        for (std::size_t i = 0; i + 1 < w.size(); ++i)
            img = mul(img, jel_basis(Word{w[i], w[i + 1]}), d);
        for (const auto& [t, k] : img) jel_add(out, t, k * rat_num(c));
    }
    return out;
}

}  // namespace subreg
