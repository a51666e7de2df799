#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>

#include "cubicvpe/errors.hpp"

namespace cubicvpe {

/// Exact rational number, always normalized (lowest terms, positive denominator).
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline Rational make_rational(std::int64_t num, std::int64_t den = 1)
{
    if (den == 0) {
        throw ContractViolation("rational with zero denominator");
    }
    return den < 0 ? Rational(-BigInt(num), -BigInt(den)) : Rational(BigInt(num), BigInt(den));
}

inline BigInt numerator_of(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt denominator_of(const Rational& r) { return boost::multiprecision::denominator(r); }

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// "p/q", or "p" when the denominator is one.
inline std::string to_string(const Rational& r)
{
    const BigInt den = denominator_of(r);
    if (den == 1) {
        return numerator_of(r).str();
    }
    return numerator_of(r).str() + "/" + den.str();
}

/// Parses "p", "-p" or "p/q" with decimal integers of arbitrary length.
inline Rational parse_rational(std::string_view text)
{
    auto parse_int = [&](std::string_view s) {
        if (s.empty()) {
            throw ContractViolation("empty integer in rational '" + std::string(text) + "'");
        }
        std::size_t i = (s.front() == '-' || s.front() == '+') ? 1 : 0;
        if (i == s.size()) {
            throw ContractViolation("malformed rational '" + std::string(text) + "'");
        }
        for (; i < s.size(); ++i) {
            if (s[i] < '0' || s[i] > '9') {
                throw ContractViolation("malformed rational '" + std::string(text) + "'");
            }
        }
        return BigInt(std::string(s.front() == '+' ? s.substr(1) : s));
    };
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        return Rational(parse_int(text));
    }
    const BigInt den = parse_int(text.substr(slash + 1));
    if (den == 0) {
        throw ContractViolation("zero denominator in '" + std::string(text) + "'");
    }
    const BigInt num = parse_int(text.substr(0, slash));
    return den < 0 ? Rational(-num, -den) : Rational(num, den);
}

} // namespace cubicvpe
