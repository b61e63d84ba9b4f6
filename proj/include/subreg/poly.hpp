#pragma once

#include <map>
#include <string>
#include <vector>

#include "subreg/numeric.hpp"

namespace subreg {

/// Sparse univariate polynomial with exact rational coefficients.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(const Rat& c) {
        if (c != 0) c_[0] = c;
    }
    static Polynomial x(int n = 1) {
        Polynomial p;
        if (n < 0) throw DomainError("negative exponent");
        p.c_[n] = 1;
        return p;
    }
    static Polynomial from_terms(std::map<int, Rat> terms) {
        Polynomial p;
        for (auto& [e, c] : terms)
            if (c != 0) p.c_[e] = c;
        return p;
    }

    const std::map<int, Rat>& terms() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return c_.empty() ? -1 : c_.rbegin()->first; }
    Rat coeff(int e) const {
        auto it = c_.find(e);
        return it == c_.end() ? Rat(0) : it->second;
    }
    Rat leading() const { return c_.empty() ? Rat(0) : c_.rbegin()->second; }

    bool is_even() const {
        for (const auto& [e, c] : c_)
            if (e % 2 != 0) return false;
        return true;
    }
    bool is_odd() const {
        for (const auto& [e, c] : c_)
            if (e % 2 != 1) return false;
        return true;
    }

    Polynomial operator+(const Polynomial& o) const {
        Polynomial r = *this;
        for (const auto& [e, c] : o.c_) r.add(e, c);
        return r;
    }
    Polynomial operator-(const Polynomial& o) const {
        Polynomial r = *this;
        for (const auto& [e, c] : o.c_) r.add(e, -c);
        return r;
    }
    Polynomial operator*(const Polynomial& o) const {
        Polynomial r;
        for (const auto& [e1, c1] : c_)
            for (const auto& [e2, c2] : o.c_) r.add(e1 + e2, c1 * c2);
        return r;
    }
    Polynomial operator*(const Rat& s) const {
        Polynomial r;
        for (const auto& [e, c] : c_) r.add(e, c * s);
        return r;
    }
    bool operator==(const Polynomial& o) const { return c_ == o.c_; }

    Polynomial derivative() const {
        Polynomial r;
        for (const auto& [e, c] : c_)
            if (e > 0) r.add(e - 1, c * e);
        return r;
    }

    Rat eval(const Rat& v) const {
        Rat acc = 0, pw = 1;
        int last = 0;
        for (const auto& [e, c] : c_) {
            for (int i = last; i < e; ++i) pw *= v;
            last = e;
            acc += c * pw;
        }
        return acc;
    }

    // quotient and remainder; divisor must be nonzero
    std::pair<Polynomial, Polynomial> divmod(const Polynomial& d) const {
        if (d.is_zero()) throw DomainError("polynomial division by zero");
        Polynomial q, r = *this;
        while (!r.is_zero() && r.degree() >= d.degree()) {
            int e = r.degree() - d.degree();
            Rat c = r.leading() / d.leading();
            Polynomial t;
            t.add(e, c);
            q.add(e, c);
            r = r - t * d;
        }
        return {q, r};
    }

    Polynomial monic() const {
        if (is_zero()) return *this;
        return *this * (Rat(1) / leading());
    }

    std::string str(const std::string& var = "x") const {
        if (c_.empty()) return "0";
        std::string out;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
            Rat c = it->second;
            int e = it->first;
            bool neg = c < 0;
            Rat ac = neg ? Rat(-c) : c;
            if (out.empty())
                out += neg ? "-" : "";
            else
                out += neg ? " - " : " + ";
            std::string cs = rat_str(ac);
            if (e == 0) {
                out += cs;
            } else {
                if (cs != "1") out += cs + "*";
                out += var;
                if (e != 1) out += "^" + std::to_string(e);
            }
        }
        return out;
    }

private:
    void add(int e, const Rat& c) {
        if (c == 0) return;
        auto it = c_.find(e);
        if (it == c_.end())
            c_[e] = c;
        else {
            it->second += c;
            if (it->second == 0) c_.erase(it);
        }
    }
    std::map<int, Rat> c_;
};

inline Polynomial poly_gcd(Polynomial a, Polynomial b) {
    while (!b.is_zero()) {
        Polynomial r = a.divmod(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

inline bool is_squarefree(const Polynomial& p) {
    if (p.degree() <= 0) return true;
    return poly_gcd(p, p.derivative()).degree() == 0;
}

/// Exponent halving: even polynomials map x^{2i} -> x^i; odd polynomials drop
/// the shared factor x first.
inline Polynomial tilde(const Polynomial& f) {
    std::map<int, Rat> out;
    if (f.is_even()) {
        for (const auto& [e, c] : f.terms()) out[e / 2] = c;
    } else if (f.is_odd()) {
        for (const auto& [e, c] : f.terms()) out[(e - 1) / 2] = c;
    } else {
        throw DomainError("polynomial is neither even nor odd");
    }
    return Polynomial::from_terms(out);
}

enum class FamilyKind { Chebyshev, Power };

inline FamilyKind family_from_name(const std::string& s) {
    if (s == "chebyshev") return FamilyKind::Chebyshev;
    if (s == "power") return FamilyKind::Power;
    throw DomainError("unknown polynomial family '" + s + "'");
}

inline std::string family_name(FamilyKind k) {
    return k == FamilyKind::Chebyshev ? "chebyshev" : "power";
}

namespace detail {

inline Polynomial chebyshev_u(int n) {
    Polynomial prev(Rat(1));         // u_0
    Polynomial cur = Polynomial::x();  // u_1
    if (n == 0) return prev;
    for (int i = 2; i <= n; ++i) {
        Polynomial next = Polynomial::x() * cur - prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

}  // namespace detail

/// n-th member of the named family (n >= 2): monic, integer coefficients,
/// parity matching n.
inline Polynomial family_poly(FamilyKind kind, int n) {
    if (n < 2) throw DomainError("family polynomial requires n >= 2");
    if (kind == FamilyKind::Chebyshev) return detail::chebyshev_u(n);
    std::map<int, Rat> t;
    t[n] = 1;
    if (n % 2 == 0)
        t[0] = -1;
    else
        t[1] = -1;
    return Polynomial::from_terms(t);
}

/// Degree/parity conditions plus: the halved polynomial has nonzero constant
/// term and no repeated root.
inline bool is_uniform_member(FamilyKind kind, int n) {
    Polynomial f = family_poly(kind, n);
    if (f.degree() != n) return false;
    if (n % 2 == 0 && !f.is_even()) return false;
    if (n % 2 == 1 && !f.is_odd()) return false;
    Polynomial t = tilde(f);
    if (t.coeff(0) == 0) return false;
    return is_squarefree(t);
}

}  // namespace subreg
