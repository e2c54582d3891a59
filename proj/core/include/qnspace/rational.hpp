#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

#include "qnspace/errors.hpp"

namespace qns {

/// Exact arbitrary-precision rational. All coefficient arithmetic in the
/// library is exact; doubles appear only after an explicit evaluation step.
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// base^k with signed k; inverts the base for negative exponents.
inline Rational rational_pow(const Rational& base, long long k) {
    if (k < 0) {
        if (base == 0) throw Error(Errc::pole_at_zero, "0 raised to a negative power");
        return rational_pow(Rational(1) / base, -k);
    }
    Rational result(1);
    Rational b = base;
    unsigned long long e = static_cast<unsigned long long>(k);
    while (e != 0) {
        if (e & 1) result *= b;
        b *= b;
        e >>= 1;
    }
    return result;
}

/// Renders "3", "-3" or "3/4" (denominator omitted when 1).
inline std::string rational_str(const Rational& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) s += "/" + denominator(r).str();
    return s;
}

/// Parses "3", "-3", "3/4" or a decimal literal such as "0.25" into an exact
/// rational. Throws BadQValue on anything else.
Rational parse_rational(std::string_view text);

}  // namespace qns
