#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>

#include "wproj/error.hpp"

namespace wproj {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Small exact rational used for prime exponents (multiples of 1/r).
using Exponent = boost::rational<std::int64_t>;

inline Integer abs(const Integer& x) { return x < 0 ? Integer(-x) : x; }

inline Integer gcd(const Integer& a, const Integer& b) {
  return boost::multiprecision::gcd(a, b);
}

inline Integer pow(const Integer& base, std::uint64_t e) {
  Integer result = 1;
  Integer b = base;
  while (e != 0) {
    if (e & 1U) result *= b;
    e >>= 1U;
    if (e != 0) b *= b;
  }
  return result;
}

// The two-integer constructor of cpp_rational rejects a negative
// denominator on some Boost versions, so move the sign up first.
inline Rational make_rational(Integer num, Integer den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return Rational(num, den);
}

inline Rational pow(const Rational& base, std::int64_t e) {
  if (e < 0) return pow(make_rational(boost::multiprecision::denominator(base), boost::multiprecision::numerator(base)), -e);
  return Rational(pow(boost::multiprecision::numerator(base), static_cast<std::uint64_t>(e)),
                  pow(boost::multiprecision::denominator(base), static_cast<std::uint64_t>(e)));
}

inline std::uint64_t lcm(std::uint64_t a, std::uint64_t b) { return std::lcm(a, b); }

/// Parses an optionally signed decimal integer with no separators.
inline Integer parse_integer(std::string_view text) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    negative = text[i] == '-';
    ++i;
  }
  if (i == text.size()) throw error(errc::parse, "empty integer literal '" + std::string(text) + "'");
  Integer value = 0;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (c < '0' || c > '9') throw error(errc::parse, "invalid integer literal '" + std::string(text) + "'");
    value *= 10;
    value += c - '0';
  }
  return negative ? Integer(-value) : value;
}

inline std::string to_decimal(const Integer& x) { return x.str(); }

/// Parses "a" or "a/b" into a reduced rational with positive denominator.
inline Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  const Integer num = parse_integer(text.substr(0, slash));
  const Integer den = parse_integer(text.substr(slash + 1));
  if (den == 0) throw error(errc::parse, "zero denominator in '" + std::string(text) + "'");
  return make_rational(num, den);
}

inline std::string to_string(const Rational& r) {
  const auto& den = boost::multiprecision::denominator(r);
  if (den == 1) return boost::multiprecision::numerator(r).str();
  return boost::multiprecision::numerator(r).str() + "/" + den.str();
}

inline std::string to_string(const Exponent& e) {
  if (e.denominator() == 1) return std::to_string(e.numerator());
  return std::to_string(e.numerator()) + "/" + std::to_string(e.denominator());
}

/// Natural logarithm of a positive integer, accurate to double precision
/// regardless of magnitude.
inline long double log_abs(const Integer& x) {
  const Integer a = abs(x);
  const std::size_t bits = boost::multiprecision::msb(a) + 1;
  if (bits <= 1000) return std::log(a.convert_to<long double>());
  const std::size_t shift = bits - 64;
  const Integer top = a >> shift;
  return std::log(top.convert_to<long double>()) + static_cast<long double>(shift) * std::log(2.0L);
}

}  // namespace wproj
