#pragma once

// Big-integer and rational scalars plus the handful of exact integer
// primitives the rest of the library needs (floor/ceil division, integer
// roots, conversions that stay accurate for very large values).

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/rational_adaptor.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>

#include "ehrhart/error.hpp"

namespace ehrhart {

using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<
    boost::multiprecision::rational_adaptor<boost::multiprecision::cpp_int_backend<>>, boost::multiprecision::et_off>;

inline BigInt gcd(const BigInt& a, const BigInt& b) { return boost::multiprecision::gcd(a, b); }

inline BigInt lcm(const BigInt& a, const BigInt& b) {
  if (a == 0 || b == 0) return 0;
  return boost::multiprecision::abs(a / gcd(a, b) * b);
}

inline std::int64_t gcd64(std::int64_t a, std::int64_t b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    std::int64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline std::int64_t lcm64(std::int64_t a, std::int64_t b) {
  if (a == 0 || b == 0) return 0;
  return a / gcd64(a, b) * b;
}

inline BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline BigInt ceil_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if ((a % b != 0) && ((a < 0) == (b < 0))) ++q;
  return q;
}

inline std::int64_t floor_div64(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline std::int64_t ceil_div64(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) == (b < 0))) ++q;
  return q;
}

inline BigInt numerator(const Rational& q) { return boost::multiprecision::numerator(q); }
inline BigInt denominator(const Rational& q) { return boost::multiprecision::denominator(q); }

inline BigInt floor(const Rational& q) { return floor_div(numerator(q), denominator(q)); }
inline BigInt ceil(const Rational& q) { return ceil_div(numerator(q), denominator(q)); }

inline std::int64_t to_int64(const BigInt& v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
    throw Error("integer " + v.str() + " does not fit in 64 bits");
  return v.convert_to<std::int64_t>();
}

// floor(a^(1/n)) for a >= 0.
inline BigInt iroot_floor(const BigInt& a, unsigned n) {
  if (a < 0) throw Error("iroot_floor of a negative number");
  if (a < 2 || n == 1) return a;
  const unsigned bits = static_cast<unsigned>(boost::multiprecision::msb(a)) + 1;
  BigInt x = BigInt(1) << ((bits + n - 1) / n);  // x >= root
  for (;;) {
    BigInt y = ((n - 1) * x + a / boost::multiprecision::pow(x, n - 1)) / n;
    if (y >= x) return x;
    x = std::move(y);
  }
}

inline std::optional<BigInt> exact_root(const BigInt& a, unsigned n) {
  BigInt r = iroot_floor(a, n);
  if (boost::multiprecision::pow(r, n) == a) return r;
  return std::nullopt;
}

// Natural log of a positive big integer without overflowing double.
inline double log_big(const BigInt& a) {
  if (a <= 0) throw Error("log of a non-positive integer");
  const auto bits = static_cast<long>(boost::multiprecision::msb(a)) + 1;
  if (bits <= 1000) return std::log(a.convert_to<double>());
  const long shift = bits - 60;
  const BigInt top = a >> shift;
  return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}

inline double log_big(const Rational& q) { return log_big(numerator(q)) - log_big(denominator(q)); }

// Nearest double to q, accurate even when numerator and denominator overflow.
inline double to_double(const Rational& q) {
  const BigInt& num = numerator(q);
  const BigInt& den = denominator(q);
  if (num == 0) return 0.0;
  const long nb = static_cast<long>(boost::multiprecision::msb(boost::multiprecision::abs(num)));
  const long db = static_cast<long>(boost::multiprecision::msb(den));
  // Scale so the integer quotient carries ~64 significant bits.
  const long shift = 64 - (nb - db);
  BigInt scaled = shift >= 0 ? (num << shift) / den : num / (den << -shift);
  return std::ldexp(scaled.convert_to<double>(), static_cast<int>(-shift));
}

inline std::string to_string(const Rational& q) { return q.str(); }

inline Rational pow(const Rational& q, unsigned n) {
  return Rational(boost::multiprecision::pow(numerator(q), n), boost::multiprecision::pow(denominator(q), n));
}

// Parses "p", "p/q", or a decimal like "0.25".
inline Rational parse_rational(const std::string& text) {
  try {
    auto slash = text.find('/');
    if (slash != std::string::npos) {
      BigInt p(text.substr(0, slash));
      BigInt q(text.substr(slash + 1));
      if (q == 0) throw Error("zero denominator in '" + text + "'");
      return Rational(p, q);
    }
    auto dot = text.find('.');
    if (dot != std::string::npos) {
      std::string digits = text.substr(0, dot) + text.substr(dot + 1);
      if (digits.empty() || digits == "-") throw Error("bad number '" + text + "'");
      BigInt p(digits);
      BigInt q = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(text.size() - dot - 1));
      return Rational(p, q);
    }
    return Rational(BigInt(text));
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    throw Error("cannot parse '" + text + "' as a rational number");
  }
}

}  // namespace ehrhart
