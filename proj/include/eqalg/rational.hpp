#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "eqalg/error.hpp"

namespace eqalg {

/// Exact arbitrary-precision rational. Always stored normalized
/// (coprime numerator/denominator, positive denominator).
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

inline Rational rat(long long num, long long den = 1) {
    return Rational(num, den);
}

/// Serializes as "num/den"; integral values as plain "num".
inline std::string rat_to_string(const Rational& q) {
    std::string s = numerator(q).str();
    if (denominator(q) != 1) {
        s += "/";
        s += denominator(q).str();
    }
    return s;
}

/// Parses "num" or "num/den". Rejects zero denominators and junk.
inline Rational rat_from_string(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Integer(s));
        Integer num(s.substr(0, slash));
        Integer den(s.substr(slash + 1));
        require(den != 0, "BadRational", "zero denominator in '" + s + "'");
        return Rational(num, den);
    } catch (const std::runtime_error& e) {
        throw;
    } catch (const std::exception&) {
        fail("BadRational", "cannot parse rational '" + s + "'");
    }
}

} // namespace eqalg
