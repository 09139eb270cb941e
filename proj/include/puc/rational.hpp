#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace puc {

using Rational = boost::multiprecision::cpp_rational;

// Parses "0.3048", "1609.344", "1e-9", "-2.5E3" or "463/900" exactly.
// Throws InvalidArgument on anything else.
Rational parse_rational(std::string_view text);

Rational pow(const Rational& base, int exponent);

double to_double(const Rational& r);

std::string to_string(const Rational& r);

}  // namespace puc
