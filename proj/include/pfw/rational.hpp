#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <string>
#include <string_view>

#include "pfw/error.hpp"

namespace pfw {

// Expression templates off: values behave like plain arithmetic types (std::min/max, auto).
using Integer = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend, boost::multiprecision::et_off>;

inline Rational rat(long long num, long long den = 1) {
  return Rational(Integer(num), Integer(den));
}

/// Renders as `p/q`, or as a bare integer when the denominator is 1.
inline std::string to_string(const Rational& q) {
  const Integer& den = boost::multiprecision::denominator(q);
  if (den == 1) return boost::multiprecision::numerator(q).str();
  return boost::multiprecision::numerator(q).str() + "/" + den.str();
}

namespace detail {

inline bool parse_integer(std::string_view text, Integer& out) {
  if (text.empty()) return false;
  std::size_t i = 0;
  bool negative = false;
  if (text[0] == '-' || text[0] == '+') {
    negative = text[0] == '-';
    i = 1;
  }
  if (i == text.size()) return false;
  Integer value = 0;
  for (; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) return false;
    value = value * 10 + (text[i] - '0');
  }
  out = negative ? Integer(-value) : value;
  return true;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace detail

/// Accepts `p/q` or an integer; decimals are rejected so every value stays exact.
inline Rational parse_rational(std::string_view text) {
  text = detail::trim(text);
  Integer num, den = 1;
  const auto slash = text.find('/');
  const bool ok = slash == std::string_view::npos
                      ? detail::parse_integer(text, num)
                      : detail::parse_integer(text.substr(0, slash), num) &&
                            detail::parse_integer(text.substr(slash + 1), den);
  if (!ok) throw Error("BadRational", "cannot read '" + std::string(text) + "' as p/q");
  if (den == 0) throw Error("BadRational", "zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

}  // namespace pfw
