#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace cvn {

// All metric quantities are exact rationals; the rigidity statements are
// exact-equality statements and would be untestable in floating point.
using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Canonical text form: "p" when the denominator is 1, else "p/q".
std::string rational_to_string(const Rational& r);

/// Accepts "p" and "p/q" (optionally signed). Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

double to_double(const Rational& r);

}  // namespace cvn
