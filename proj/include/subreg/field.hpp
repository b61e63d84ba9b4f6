#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "subreg/numeric.hpp"
#include "subreg/poly.hpp"

namespace subreg {

namespace detail {

// dense polynomial helpers over Rat, coefficients ascending
using DensePoly = std::vector<Rat>;

inline void dp_trim(DensePoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline DensePoly dp_from(const Polynomial& p) {
    DensePoly out(p.degree() + 1, Rat(0));
    for (const auto& [e, c] : p.terms()) out[e] = c;
    return out;
}

inline DensePoly dp_mul(const DensePoly& a, const DensePoly& b) {
    if (a.empty() || b.empty()) return {};
    DensePoly out(a.size() + b.size() - 1, Rat(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    dp_trim(out);
    return out;
}

inline DensePoly dp_rem(DensePoly a, const DensePoly& m) {
    dp_trim(a);
    while (a.size() >= m.size() && !a.empty()) {
        Rat c = a.back() / m.back();
        std::size_t off = a.size() - m.size();
        for (std::size_t i = 0; i < m.size(); ++i) a[off + i] -= c * m[i];
        dp_trim(a);
    }
    return a;
}

// extended euclid: returns (g, s, t) with s*a + t*b = g, g monic or zero
inline std::tuple<DensePoly, DensePoly, DensePoly> dp_xgcd(DensePoly a, DensePoly b) {
    DensePoly s0{Rat(1)}, s1{}, t0{}, t1{Rat(1)};
    dp_trim(a);
    dp_trim(b);
    while (!b.empty()) {
        // quotient of a by b
        DensePoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rat(0));
        DensePoly r = a;
        while (r.size() >= b.size() && !r.empty()) {
            Rat c = r.back() / b.back();
            std::size_t off = r.size() - b.size();
            q[off] = c;
            for (std::size_t i = 0; i < b.size(); ++i) r[off + i] -= c * b[i];
            dp_trim(r);
        }
        dp_trim(q);
        auto step = [&](DensePoly& x0, DensePoly& x1) {
            DensePoly nx = x0;
            DensePoly qx1 = dp_mul(q, x1);
            if (nx.size() < qx1.size()) nx.resize(qx1.size(), Rat(0));
            for (std::size_t i = 0; i < qx1.size(); ++i) nx[i] -= qx1[i];
            dp_trim(nx);
            x0 = std::move(x1);
            x1 = std::move(nx);
        };
        step(s0, s1);
        step(t0, t1);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty() && a.back() != 1) {
        Rat lead = a.back();
        for (auto& c : a) c /= lead;
        for (auto& c : s0) c /= lead;
        for (auto& c : t0) c /= lead;
    }
    return {a, s0, t0};
}

inline std::optional<Int> int_sqrt_exact(const Int& n) {
    if (n < 0) return std::nullopt;
    Int r = boost::multiprecision::sqrt(n);
    if (r * r == n) return r;
    return std::nullopt;
}

inline std::vector<Int> divisors(Int n) {
    if (n < 0) n = -n;
    std::vector<Int> out;
    if (n == 0) return out;
    for (Int d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            if (d * d != n) out.push_back(n / d);
        }
    }
    return out;
}

// monic rational polynomial -> monic integer polynomial with the same
// factorization behavior, via x -> x / L
inline std::vector<Int> monic_integerize(const Polynomial& f) {
    int n = f.degree();
    Int lcm = 1;
    for (const auto& [e, c] : f.terms())
        lcm = boost::multiprecision::lcm(lcm, rat_den(c));
    std::vector<Int> out(n + 1, Int(0));
    for (const auto& [e, c] : f.terms()) {
        Rat scaled = c;
        for (int i = 0; i < n - e; ++i) scaled *= lcm;
        if (!is_integral(scaled)) throw DomainError("internal: integerization failed");
        out[e] = rat_num(scaled);
    }
    return out;
}

inline bool has_rational_root(const Polynomial& f) {
    // rational root theorem on the primitive integer form
    Polynomial g = f;
    if (g.coeff(0) == 0) return true;
    Int lcm = 1;
    for (const auto& [e, c] : g.terms()) lcm = boost::multiprecision::lcm(lcm, rat_den(c));
    std::vector<Int> ic(g.degree() + 1, Int(0));
    for (const auto& [e, c] : g.terms()) ic[e] = rat_num(c * Rat(lcm));
    for (const Int& p : divisors(ic[0]))
        for (const Int& q : divisors(ic.back()))
            for (int sign : {1, -1}) {
                Rat cand(sign * p, q);
                if (f.eval(cand) == 0) return true;
            }
    return false;
}

// complete for degree <= 5: linear factors via the rational root theorem,
// quadratic factors by monic integer trial division (Gauss lemma)
inline bool is_irreducible_over_q(const Polynomial& f) {
    int n = f.degree();
    if (n <= 0) return false;
    if (n == 1) return true;
    if (has_rational_root(f)) return false;
    if (n <= 3) return true;
    if (n > 5) throw DomainError("irreducibility test supports modulus degree <= 5");
    // search for a monic integer quadratic factor of the monic integer form
    std::vector<Int> g = monic_integerize(f.monic());
    auto divides = [&](const Int& a1, const Int& a0) {
        // synthetic division of g by x^2 + a1 x + a0 over Z
        std::vector<Int> r = g;
        for (std::size_t i = r.size(); i-- > 2;) {
            Int c = r[i];
            if (c == 0) continue;
            r[i] = 0;
            r[i - 1] -= c * a1;
            r[i - 2] -= c * a0;
        }
        return r[0] == 0 && r[1] == 0;
    };
    for (const Int& d : divisors(g[0]))
        for (int sign : {1, -1}) {
            Int a0 = sign * d;
            // bound |a1| via root bound: all roots of a factor are roots of g
            Int bound = 1;
            for (std::size_t i = 0; i + 1 < g.size(); ++i) {
                Int a = g[i] < 0 ? Int(-g[i]) : g[i];
                if (a > bound) bound = a;
            }
            bound = 2 * (bound + 1);
            for (Int a1 = -bound; a1 <= bound; ++a1)
                if (divides(a1, a0)) return false;
        }
    return true;
}

}  // namespace detail

/// A simple extension of the rationals given by a monic irreducible modulus of
/// degree >= 2. Elements are residue polynomials in the generator.
class ExtensionField {
public:
    explicit ExtensionField(Polynomial modulus) : modulus_(std::move(modulus)) {
        if (modulus_.degree() < 2) throw DomainError("extension modulus must have degree >= 2");
        if (modulus_.leading() != 1) throw DomainError("extension modulus must be monic");
        if (!detail::is_irreducible_over_q(modulus_))
            throw DomainError("extension modulus is reducible over the rationals");
        dense_ = detail::dp_from(modulus_);
    }
    const Polynomial& modulus() const { return modulus_; }
    int degree() const { return modulus_.degree(); }
    const detail::DensePoly& dense_modulus() const { return dense_; }
    bool operator==(const ExtensionField& o) const { return modulus_ == o.modulus_; }

private:
    Polynomial modulus_;
    detail::DensePoly dense_;
};

using FieldPtr = std::shared_ptr<const ExtensionField>;

inline FieldPtr rationals() { return nullptr; }

inline FieldPtr make_field(const Polynomial& modulus) {
    return std::make_shared<const ExtensionField>(modulus);
}

inline bool same_field(const FieldPtr& a, const FieldPtr& b) {
    if (!a && !b) return true;
    if (!a || !b) return false;
    return *a == *b;
}

inline std::string field_name(const FieldPtr& f) {
    return f ? "Q[t]/(" + f->modulus().str("t") + ")" : "Q";
}

/// Element of the rationals or of a simple extension; carries its field.
class ExactScalar {
public:
    ExactScalar() : c_{Rat(0)} {}
    explicit ExactScalar(const Rat& r) : c_{r} {}
    ExactScalar(const Rat& r, const FieldPtr& f) : f_(f) {
        c_.assign(f ? f->degree() : 1, Rat(0));
        c_[0] = r;
    }
    static ExactScalar from_coords(std::vector<Rat> coords, const FieldPtr& f) {
        ExactScalar s;
        s.f_ = f;
        std::size_t want = f ? f->degree() : 1;
        if (coords.size() > want) throw DomainError("too many coordinates for field element");
        coords.resize(want, Rat(0));
        s.c_ = std::move(coords);
        return s;
    }
    static ExactScalar generator(const FieldPtr& f) {
        if (!f) throw DomainError("the rationals have no extension generator");
        ExactScalar s(Rat(0), f);
        s.c_[1] = 1;
        return s;
    }

    const FieldPtr& field() const { return f_; }
    const std::vector<Rat>& coords() const { return c_; }
    bool is_zero() const {
        for (const auto& c : c_)
            if (c != 0) return false;
        return true;
    }
    bool is_rational() const {
        for (std::size_t i = 1; i < c_.size(); ++i)
            if (c_[i] != 0) return false;
        return true;
    }
    Rat rational_part() const { return c_[0]; }

    ExactScalar lift(const FieldPtr& f) const {
        if (same_field(f_, f)) return *this;
        if (!f_) return from_coords(c_, f);
        throw DomainError("cannot mix elements of different extension fields");
    }

    friend ExactScalar operator+(const ExactScalar& a, const ExactScalar& b) {
        auto [x, y] = align(a, b);
        for (std::size_t i = 0; i < x.c_.size(); ++i) x.c_[i] += y.c_[i];
        return x;
    }
    friend ExactScalar operator-(const ExactScalar& a, const ExactScalar& b) {
        auto [x, y] = align(a, b);
        for (std::size_t i = 0; i < x.c_.size(); ++i) x.c_[i] -= y.c_[i];
        return x;
    }
    ExactScalar operator-() const {
        ExactScalar r = *this;
        for (auto& c : r.c_) c = -c;
        return r;
    }
    friend ExactScalar operator*(const ExactScalar& a, const ExactScalar& b) {
        auto [x, y] = align(a, b);
        if (!x.f_) {
            x.c_[0] *= y.c_[0];
            return x;
        }
        detail::DensePoly prod = detail::dp_mul(x.c_, y.c_);
        prod = detail::dp_rem(prod, x.f_->dense_modulus());
        prod.resize(x.f_->degree(), Rat(0));
        x.c_ = std::move(prod);
        return x;
    }
    ExactScalar inverse() const {
        if (is_zero()) throw DomainError("division by zero");
        if (!f_) return ExactScalar(Rat(1) / c_[0]);
        detail::DensePoly a = c_;
        detail::dp_trim(a);
        auto [g, s, t] = detail::dp_xgcd(a, f_->dense_modulus());
        if (g.size() != 1) throw DomainError("element is not invertible (modulus not irreducible?)");
        detail::DensePoly inv = s;
        for (auto& c : inv) c /= g[0];
        inv = detail::dp_rem(inv, f_->dense_modulus());
        inv.resize(f_->degree(), Rat(0));
        ExactScalar r;
        r.f_ = f_;
        r.c_ = std::move(inv);
        return r;
    }
    friend ExactScalar operator/(const ExactScalar& a, const ExactScalar& b) {
        return a * b.inverse();
    }
    friend bool operator==(const ExactScalar& a, const ExactScalar& b) {
        auto [x, y] = align(a, b);
        return x.c_ == y.c_;
    }
    friend bool operator!=(const ExactScalar& a, const ExactScalar& b) { return !(a == b); }

    std::string str() const {
        if (!f_ || is_rational()) return rat_str(c_[0]);
        std::string out = "[";
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (i) out += ",";
            out += rat_str(c_[i]);
        }
        return out + "]";
    }

private:
    static std::pair<ExactScalar, ExactScalar> align(const ExactScalar& a, const ExactScalar& b) {
        if (same_field(a.f_, b.f_)) return {a, b};
        if (!a.f_) return {a.lift(b.f_), b};
        if (!b.f_) return {a, b.lift(a.f_)};
        throw DomainError("cannot mix elements of different extension fields");
    }

    FieldPtr f_;
    std::vector<Rat> c_;  // size = extension degree (1 for the rationals)
};

inline std::optional<Rat> rational_sqrt(const Rat& r) {
    if (r < 0) return std::nullopt;
    auto n = detail::int_sqrt_exact(rat_num(r));
    auto d = detail::int_sqrt_exact(rat_den(r));
    if (!n || !d) return std::nullopt;
    return Rat(*n, *d);
}

/// Exact square root in the field, when one exists. Complete for the
/// rationals and for quadratic extensions; higher-degree extensions only
/// admit the rational-part shortcut.
inline std::optional<ExactScalar> sqrt_in_field(const ExactScalar& s) {
    const FieldPtr& F = s.field();
    if (s.is_rational()) {
        auto r = rational_sqrt(s.rational_part());
        if (r) return ExactScalar(*r, F);
    }
    if (!F || F->degree() != 2) return std::nullopt;
    // theta^2 = e0 + e1 theta
    Rat m0 = F->modulus().coeff(0), m1 = F->modulus().coeff(1);
    Rat e0 = -m0, e1 = -m1;
    Rat d0 = s.coords()[0], d1 = s.coords()[1];
    // (u + v theta)^2 = (u^2 + e0 v^2) + (2uv + e1 v^2) theta
    // with w = v^2:  (e1^2 + 4 e0) w^2 + (-2 d1 e1 - 4 d0) w + d1^2 = 0
    Rat A = e1 * e1 + 4 * e0;
    Rat B = -2 * d1 * e1 - 4 * d0;
    Rat C = d1 * d1;
    std::vector<Rat> ws;
    if (A == 0) {
        if (B != 0) ws.push_back(-C / B);
    } else {
        Rat disc = B * B - 4 * A * C;
        auto rd = rational_sqrt(disc);
        if (rd) {
            ws.push_back((-B + *rd) / (2 * A));
            ws.push_back((-B - *rd) / (2 * A));
        }
    }
    for (const Rat& w : ws) {
        if (w < 0) continue;
        auto v = rational_sqrt(w);
        if (!v) continue;
        if (*v == 0) continue;
        Rat u = (d1 - e1 * w) / (2 * *v);
        ExactScalar cand = ExactScalar::from_coords({u, *v}, F);
        if (cand * cand == s) return cand;
    }
    return std::nullopt;
}

namespace detail {

// synthetic division of a field polynomial (ascending coords) by (x - root)
inline std::vector<ExactScalar> deflate(const std::vector<ExactScalar>& p,
                                        const ExactScalar& root) {
    std::vector<ExactScalar> q(p.size() - 1, ExactScalar(Rat(0)));
    ExactScalar carry = p.back();
    for (std::size_t i = p.size() - 1; i-- > 0;) {
        q[i] = carry;
        carry = p[i] + root * carry;
    }
    if (!carry.is_zero()) throw DomainError("internal: deflation by a non-root");
    return q;
}

inline ExactScalar eval_kpoly(const std::vector<ExactScalar>& p, const ExactScalar& x) {
    ExactScalar acc(Rat(0));
    for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
    return acc;
}

}  // namespace detail

/// All roots of a rational polynomial that can be located in the given field:
/// every rational root, plus extension roots reachable through deflation by
/// the field generator and the quadratic formula. Callers that need the full
/// root set compare the count against the degree.
inline std::vector<ExactScalar> roots_in_field(const Polynomial& poly, const FieldPtr& F) {
    if (poly.is_zero()) throw DomainError("zero polynomial has no root set");
    std::vector<ExactScalar> roots;
    Polynomial g = poly;
    while (g.degree() >= 1 && g.coeff(0) == 0) {
        roots.push_back(ExactScalar(Rat(0), F));
        g = g.divmod(Polynomial::x()).first;
    }
    // rational roots via divisor candidates
    if (g.degree() >= 1) {
        Int lcm = 1;
        for (const auto& [e, c] : g.terms()) lcm = boost::multiprecision::lcm(lcm, rat_den(c));
        std::vector<Int> ic(g.degree() + 1, Int(0));
        for (const auto& [e, c] : g.terms()) ic[e] = rat_num(c * Rat(lcm));
        std::vector<Rat> cands;
        for (const Int& p : detail::divisors(ic[0]))
            for (const Int& q : detail::divisors(ic.back()))
                for (int sign : {1, -1}) cands.push_back(Rat(sign * p, q));
        std::sort(cands.begin(), cands.end());
        cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
        for (const Rat& cand : cands) {
            while (g.degree() >= 1 && g.eval(cand) == 0) {
                roots.push_back(ExactScalar(cand, F));
                auto [q2, r2] = g.divmod(Polynomial::x() - Polynomial(cand));
                g = q2;
            }
        }
    }
    if (g.degree() >= 1 && F) {
        std::vector<ExactScalar> kp;
        for (int e = 0; e <= g.degree(); ++e) kp.push_back(ExactScalar(g.coeff(e), F));
        ExactScalar theta = ExactScalar::generator(F);
        bool progress = true;
        while (progress && kp.size() >= 2) {
            progress = false;
            if (kp.size() == 2) {  // linear
                roots.push_back(-(kp[0] / kp[1]));
                kp = {ExactScalar(Rat(1), F)};
                progress = true;
            } else if (kp.size() == 3) {  // quadratic formula
                ExactScalar a = kp[2], b = kp[1], c = kp[0];
                ExactScalar disc = b * b - ExactScalar(Rat(4), F) * a * c;
                auto sq = sqrt_in_field(disc);
                if (sq) {
                    ExactScalar twoa = ExactScalar(Rat(2), F) * a;
                    roots.push_back((-b + *sq) / twoa);
                    roots.push_back((-b - *sq) / twoa);
                    kp = {ExactScalar(Rat(1), F)};
                    progress = true;
                }
            } else if (detail::eval_kpoly(kp, theta).is_zero()) {
                roots.push_back(theta);
                kp = detail::deflate(kp, theta);
                progress = true;
            }
        }
    }
    std::sort(roots.begin(), roots.end(), [](const ExactScalar& a, const ExactScalar& b) {
        return a.coords() < b.coords();
    });
    return roots;
}

}  // namespace subreg
