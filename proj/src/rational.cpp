#include "puc/rational.hpp"

#include <cctype>

#include "puc/error.hpp"

namespace puc {

namespace {

using boost::multiprecision::cpp_int;

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

cpp_int pow10(unsigned n) {
  cpp_int r = 1;
  for (unsigned i = 0; i < n; ++i) r *= 10;
  return r;
}

// Base-10 digits only; cpp_int's string constructor would read a leading 0
// as an octal prefix.
cpp_int decimal_digits(std::string_view s) {
  cpp_int r = 0;
  for (char c : s) r = r * 10 + (c - '0');
  return r;
}

[[noreturn]] void bad(std::string_view text) {
  throw InvalidArgument("not an exact decimal: '" + std::string(text) + "'");
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) bad(text);

  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = s.substr(0, slash);
    auto den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) bad(text);
    cpp_int d = decimal_digits(den);
    if (d == 0) bad(text);
    Rational r(decimal_digits(num), d);
    return negative ? Rational(-r) : r;
  }

  int exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    auto exp_text = s.substr(e + 1);
    bool exp_negative = false;
    if (!exp_text.empty() && (exp_text.front() == '+' || exp_text.front() == '-')) {
      exp_negative = exp_text.front() == '-';
      exp_text.remove_prefix(1);
    }
    if (!all_digits(exp_text) || exp_text.size() > 4) bad(text);
    exponent = std::stoi(std::string(exp_text));
    if (exp_negative) exponent = -exponent;
    s = s.substr(0, e);
  }

  std::string_view int_part = s;
  std::string_view frac_part;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    int_part = s.substr(0, dot);
    frac_part = s.substr(dot + 1);
  }
  if (int_part.empty() && frac_part.empty()) bad(text);
  if (!int_part.empty() && !all_digits(int_part)) bad(text);
  if (!frac_part.empty() && !all_digits(frac_part)) bad(text);

  cpp_int digits = decimal_digits(std::string(int_part) + std::string(frac_part));
  Rational r(digits, pow10(static_cast<unsigned>(frac_part.size())));
  if (exponent > 0) r *= Rational(pow10(static_cast<unsigned>(exponent)));
  if (exponent < 0) r /= Rational(pow10(static_cast<unsigned>(-exponent)));
  return negative ? Rational(-r) : r;
}

Rational pow(const Rational& base, int exponent) {
  Rational result = 1;
  const int n = exponent < 0 ? -exponent : exponent;
  for (int i = 0; i < n; ++i) result *= base;
  if (exponent < 0) {
    if (result == 0) throw InvalidArgument("zero raised to a negative power");
    result = Rational(1) / result;
  }
  return result;
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

std::string to_string(const Rational& r) { return r.str(); }

}  // namespace puc
