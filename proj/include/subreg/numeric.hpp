#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace subreg {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Raised when an operation's mathematical preconditions fail (bad input data,
// unsupported weight, element outside the domain, ...). The CLI maps it to
// exit code 2.
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Int rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline bool is_integral(const Rat& r) { return rat_den(r) == 1; }

inline std::string rat_str(const Rat& r) { return r.str(); }

inline Rat rat_parse(const std::string& s) {
    try {
        return Rat(s);
    } catch (const std::exception&) {
        throw DomainError("malformed rational: '" + s + "'");
    }
}

// Edge/arrow weight: an integer >= 1 or infinity.
class Weight {
public:
    Weight() : v_(2) {}
    static Weight finite(long m) {
        if (m < 1) throw DomainError("weight must be >= 1");
        Weight w;
        w.v_ = m;
        return w;
    }
    static Weight infinity() {
        Weight w;
        w.v_ = kInf;
        return w;
    }
    bool is_infinite() const { return v_ == kInf; }
    bool is_finite() const { return v_ != kInf; }
    long value() const {
        if (is_infinite()) throw DomainError("infinite weight has no finite value");
        return v_;
    }
    bool operator==(const Weight& o) const { return v_ == o.v_; }
    bool operator!=(const Weight& o) const { return v_ != o.v_; }
    // finite < infinite; finite weights by value
    bool operator<(const Weight& o) const {
        if (is_infinite()) return false;
        if (o.is_infinite()) return true;
        return v_ < o.v_;
    }
    std::string str() const { return is_infinite() ? "inf" : std::to_string(v_); }

private:
    static constexpr long kInf = -1;
    long v_;
};

}  // namespace subreg
