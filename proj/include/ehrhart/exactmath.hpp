#pragma once

// Polynomials in t^(1/r) with big-integer coefficients, the round-up (psi)
// and fractional-part (theta) exponent maps, evaluation with rigorous
// rational enclosures, reflection, moments, and the rounding-power bound
// chain.

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ehrhart/numeric.hpp"

namespace ehrhart {

class IntPoly;

// Sum of c_k t^(k/r). Always canonical: no zero coefficients, nonnegative
// exponents, and r minimal (gcd(r, all k) == 1; the constants use r == 1).
class FracPoly {
 public:
  using Terms = std::map<std::int64_t, BigInt>;

  FracPoly() = default;

  FracPoly(std::int64_t denominator, Terms terms) : denominator_(denominator), terms_(std::move(terms)) {
    if (denominator_ <= 0) throw Error("FracPoly denominator must be positive");
    canonicalize();
  }

  static FracPoly constant(const BigInt& c) { return FracPoly(1, Terms{{0, c}}); }

  static FracPoly monomial(const BigInt& c, const Rational& exponent) {
    if (exponent < 0) throw Error("negative exponent " + exponent.str());
    const BigInt den = ehrhart::denominator(exponent);
    return FracPoly(to_int64(den), Terms{{to_int64(ehrhart::numerator(exponent)), c}});
  }

  std::int64_t denominator() const noexcept { return denominator_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  BigInt coefficient(const Rational& exponent) const {
    const BigInt scaled = ehrhart::numerator(exponent) * denominator_;
    if (scaled % ehrhart::denominator(exponent) != 0) return 0;
    auto it = terms_.find(to_int64(scaled / ehrhart::denominator(exponent)));
    return it == terms_.end() ? BigInt(0) : it->second;
  }

  Rational degree() const {
    if (terms_.empty()) return 0;
    return Rational(terms_.rbegin()->first, denominator_);
  }

  // Exponent numerators over an arbitrary multiple of the canonical denominator.
  Terms terms_over(std::int64_t r) const {
    if (r % denominator_ != 0) throw Error("denominator " + std::to_string(r) + " is not a multiple of " +
                                           std::to_string(denominator_));
    const std::int64_t scale = r / denominator_;
    Terms out;
    for (const auto& [k, c] : terms_) out.emplace(k * scale, c);
    return out;
  }

  FracPoly pow(unsigned n) const {
    FracPoly result = constant(1);
    FracPoly base = *this;
    while (n > 0) {
      if (n & 1U) result = result * base;
      n >>= 1U;
      if (n > 0) base = base * base;
    }
    return result;
  }

  friend bool operator==(const FracPoly& a, const FracPoly& b) {
    return a.denominator_ == b.denominator_ && a.terms_ == b.terms_;
  }

  friend FracPoly operator+(const FracPoly& a, const FracPoly& b) {
    const std::int64_t r = lcm64(a.denominator_, b.denominator_);
    Terms out = a.terms_over(r);
    for (auto& [k, c] : b.terms_over(r)) out[k] += c;
    return FracPoly(r, std::move(out));
  }

  friend FracPoly operator*(const FracPoly& a, const FracPoly& b) {
    if (a.is_zero() || b.is_zero()) return FracPoly();
    const std::int64_t r = lcm64(a.denominator_, b.denominator_);
    const std::int64_t sa = r / a.denominator_;
    const std::int64_t sb = r / b.denominator_;
    const std::int64_t span = a.terms_.rbegin()->first * sa + b.terms_.rbegin()->first * sb + 1;
    const auto pairs = static_cast<double>(a.terms_.size()) * static_cast<double>(b.terms_.size());
    if (static_cast<double>(span) <= 4.0 * pairs && span < (std::int64_t{1} << 24)) {
      // Dense accumulation: the usual case for powers of a single polynomial.
      std::vector<BigInt> acc(static_cast<std::size_t>(span));
      for (const auto& [ka, ca] : a.terms_)
        for (const auto& [kb, cb] : b.terms_) acc[static_cast<std::size_t>(ka * sa + kb * sb)] += ca * cb;
      Terms out;
      for (std::int64_t k = 0; k < span; ++k)
        if (acc[static_cast<std::size_t>(k)] != 0) out.emplace_hint(out.end(), k, std::move(acc[static_cast<std::size_t>(k)]));
      return FracPoly(r, std::move(out));
    }
    Terms out;
    for (const auto& [ka, ca] : a.terms_)
      for (const auto& [kb, cb] : b.terms_) out[ka * sa + kb * sb] += ca * cb;
    return FracPoly(r, std::move(out));
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms_) {
      const Rational e(k, denominator_);
      BigInt mag = c;
      if (first) {
        if (c < 0) {
          os << "-";
          mag = -c;
        }
      } else {
        os << (c < 0 ? " - " : " + ");
        if (c < 0) mag = -c;
      }
      first = false;
      if (e == 0) {
        os << mag;
        continue;
      }
      if (mag != 1) os << mag;
      os << "t";
      if (e != 1) {
        if (ehrhart::denominator(e) == 1)
          os << "^" << e;
        else
          os << "^(" << e << ")";
      }
    }
    return os.str();
  }

 private:
  void canonicalize() {
    std::int64_t g = denominator_;
    for (auto it = terms_.begin(); it != terms_.end();) {
      if (it->first < 0) throw Error("negative exponent in FracPoly");
      if (it->second == 0) {
        it = terms_.erase(it);
        continue;
      }
      g = gcd64(g, it->first);
      ++it;
    }
    if (g > 1) {
      Terms reduced;
      for (auto& [k, c] : terms_) reduced.emplace_hint(reduced.end(), k / g, std::move(c));
      terms_ = std::move(reduced);
      denominator_ /= g;
    }
  }

  std::int64_t denominator_ = 1;
  Terms terms_;
};

// Polynomial in t with integer exponents; coefficient i at index i.
class IntPoly {
 public:
  IntPoly() = default;

  explicit IntPoly(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  IntPoly(std::initializer_list<long long> coeffs) {
    for (long long c : coeffs) coeffs_.emplace_back(c);
    trim();
  }

  explicit IntPoly(const FracPoly& f) {
    if (f.denominator() != 1) throw Error("FracPoly with fractional exponents is not an IntPoly");
    for (const auto& [k, c] : f.terms()) {
      if (static_cast<std::size_t>(k) >= coeffs_.size()) coeffs_.resize(static_cast<std::size_t>(k) + 1);
      coeffs_[static_cast<std::size_t>(k)] = c;
    }
  }

  const std::vector<BigInt>& coefficients() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  // -1 for the zero polynomial.
  long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }

  BigInt operator[](std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : BigInt(0); }

  FracPoly to_frac() const {
    FracPoly::Terms t;
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
      if (coeffs_[i] != 0) t.emplace(static_cast<std::int64_t>(i), coeffs_[i]);
    return FracPoly(1, std::move(t));
  }

  BigInt sum() const {
    BigInt s = 0;
    for (const auto& c : coeffs_) s += c;
    return s;
  }

  Rational eval(const Rational& x) const {
    Rational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + Rational(*it);
    return acc;
  }

  friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.coeffs_ == b.coeffs_; }

  friend IntPoly operator+(const IntPoly& a, const IntPoly& b) {
    std::vector<BigInt> out(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) out[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) out[i] += b.coeffs_[i];
    return IntPoly(std::move(out));
  }

  friend IntPoly operator*(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero()) return IntPoly();
    std::vector<BigInt> out(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return IntPoly(std::move(out));
  }

  std::string to_string() const { return to_frac().to_string(); }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  std::vector<BigInt> coeffs_;
};

inline FracPoly mul(const FracPoly& f, const FracPoly& g) { return f * g; }
inline FracPoly add(const FracPoly& f, const FracPoly& g) { return f + g; }

// t^j -> t^ceil(j).
inline IntPoly psi(const FracPoly& f) {
  const std::int64_t r = f.denominator();
  std::vector<BigInt> out;
  for (const auto& [k, c] : f.terms()) {
    const auto m = static_cast<std::size_t>(ceil_div64(k, r));
    if (m >= out.size()) out.resize(m + 1);
    out[m] += c;
  }
  return IntPoly(std::move(out));
}

// t^j -> t^(j - floor(j)).
inline FracPoly theta(const FracPoly& f) {
  const std::int64_t r = f.denominator();
  FracPoly::Terms out;
  for (const auto& [k, c] : f.terms()) out[k % r] += c;
  return FracPoly(r, std::move(out));
}

// Terms with integer exponents.
inline IntPoly integer_part(const FracPoly& f) {
  const std::int64_t r = f.denominator();
  std::vector<BigInt> out;
  for (const auto& [k, c] : f.terms()) {
    if (k % r != 0) continue;
    const auto m = static_cast<std::size_t>(k / r);
    if (m >= out.size()) out.resize(m + 1);
    out[m] = c;
  }
  return IntPoly(std::move(out));
}

// t^d * f(1/t).
inline FracPoly reflect(const FracPoly& f, std::int64_t d) {
  if (d < 0) throw Error("reflect needs a nonnegative degree bound");
  if (f.degree() > d) throw Error("degree of " + f.to_string() + " exceeds " + std::to_string(d));
  const std::int64_t r = f.denominator();
  FracPoly::Terms out;
  for (const auto& [k, c] : f.terms()) out.emplace(d * r - k, c);
  return FracPoly(r, std::move(out));
}

// A rigorous enclosure lower <= value <= upper; lower == upper when exact.
struct Evaluation {
  Rational lower;
  Rational upper;

  bool exact() const { return lower == upper; }
  Rational midpoint() const { return (lower + upper) / 2; }
  double to_double() const { return ehrhart::to_double(midpoint()); }
};

// Enclosure of x^(1/r) for x > 0; exact when x is an r-th power of a rational.
inline Evaluation root_enclosure(const Rational& x, std::int64_t r, unsigned precision_bits) {
  if (x <= 0) throw Error("root of a non-positive number");
  if (r == 1) return {x, x};
  const auto n = static_cast<unsigned>(r);
  const BigInt p = ehrhart::numerator(x);
  const BigInt q = ehrhart::denominator(x);
  auto rp = exact_root(p, n);
  auto rq = exact_root(q, n);
  if (rp && rq) {
    Rational y(*rp, *rq);
    return {y, y};
  }
  if (static_cast<double>(precision_bits) * static_cast<double>(r) > 1e8)
    throw Error("root enclosure of degree " + std::to_string(r) + " at " + std::to_string(precision_bits) +
                " bits is too large");
  // floor((p/q * 2^(bits*r))^(1/r)) / 2^bits <= x^(1/r) < (that + 1) / 2^bits
  const BigInt scale = BigInt(1) << precision_bits;
  const BigInt lo = iroot_floor((p << (precision_bits * n)) / q, n);
  return {Rational(lo, scale), Rational(lo + 1, scale)};
}

inline Evaluation eval(const FracPoly& f, const Rational& x, unsigned precision_bits = 64) {
  if (x <= 0) throw Error("evaluation point must be positive, got " + x.str());
  const Evaluation y = root_enclosure(x, f.denominator(), precision_bits);
  Rational lo = 0, hi = 0;
  Rational ylo_pow = 1, yhi_pow = 1;
  std::int64_t at = 0;
  for (const auto& [k, c] : f.terms()) {
    if (k > at) {
      const auto gap = static_cast<unsigned>(k - at);
      ylo_pow *= ehrhart::pow(y.lower, gap);
      yhi_pow = y.exact() ? ylo_pow : yhi_pow * ehrhart::pow(y.upper, gap);
      at = k;
    }
    // y^k is increasing in y > 0.
    if (c >= 0) {
      lo += Rational(c) * ylo_pow;
      hi += Rational(c) * yhi_pow;
    } else {
      lo += Rational(c) * yhi_pow;
      hi += Rational(c) * ylo_pow;
    }
  }
  return {lo, hi};
}

struct Moments {
  Rational mean;
  Rational variance;
};

// Mean and variance of the exponent distribution weighted by the coefficients.
inline Moments moments(const FracPoly& f) {
  if (f.is_zero()) throw Error("moments of the zero polynomial");
  BigInt mass = 0, first = 0, second = 0;
  for (const auto& [k, c] : f.terms()) {
    if (c < 0) throw Error("moments need nonnegative coefficients");
    mass += c;
    first += c * k;
    second += c * k * k;
  }
  const BigInt r = f.denominator();
  Rational mean(first, mass * r);
  Rational square(second, mass * r * r);
  return {mean, square - mean * mean};
}

inline Moments moments(const IntPoly& f) { return moments(f.to_frac()); }

// One link lo <= hi of an inequality chain evaluated on enclosures.
enum class Verdict { holds, fails, undecided };

inline Verdict compare_le(const Evaluation& a, const Evaluation& b) {
  if (a.upper <= b.lower) return Verdict::holds;
  if (a.lower > b.upper) return Verdict::fails;
  return Verdict::undecided;
}

// lhs <= mid <= rhs, one of the two rounding-power chains:
//   x >= 1:     f(x)^n   <= f*_n(x) <= x^(1-1/r) f(x)^n
//   0 < x <= 1: f*_n(x)  <= f(x)^n  <= x^(1/r-1) f*_n(x)
// where f*_n = psi(f^n).
struct HarrisChain {
  bool x_at_least_one = true;
  Evaluation lhs;
  Evaluation mid;
  Evaluation rhs;
  bool holds = false;
  // False when the enclosures could not separate the terms at the maximum
  // precision; the chain is then reported as holding up to that precision.
  bool decided = true;
  unsigned precision_bits = 0;
};

namespace detail {

inline Evaluation interval_mul(const Evaluation& a, const Evaluation& b) {
  // Nonnegative operands only.
  return {a.lower * b.lower, a.upper * b.upper};
}

inline Evaluation interval_pow(const Evaluation& a, unsigned n) {
  Evaluation out{1, 1};
  for (unsigned i = 0; i < n; ++i) out = interval_mul(out, a);
  return out;
}

}  // namespace detail

inline HarrisChain harris_chain(const FracPoly& f, unsigned n, const Rational& x, std::int64_t r,
                                unsigned precision_bits = 64) {
  if (n == 0) throw Error("power must be positive");
  if (x <= 0) throw Error("evaluation point must be positive");
  if (r <= 0 || r % f.denominator() != 0)
    throw Error("r must be a positive multiple of the polynomial's denominator");
  for (const auto& [k, c] : f.terms())
    if (c < 0) throw Error("rounding bounds need nonnegative coefficients");

  const Rational star(psi(f.pow(n)).eval(x));
  const Evaluation star_e{star, star};
  constexpr unsigned kMaxBits = 4096;
  HarrisChain chain;
  chain.x_at_least_one = x >= 1;
  for (unsigned bits = precision_bits;; bits *= 2) {
    const Evaluation fx_n = detail::interval_pow(eval(f, x, bits), n);
    const Evaluation root = root_enclosure(x, r, bits);
    if (chain.x_at_least_one) {
      // x^(1 - 1/r) = x / x^(1/r)
      const Evaluation factor{x / root.upper, x / root.lower};
      chain.lhs = fx_n;
      chain.mid = star_e;
      chain.rhs = detail::interval_mul(factor, fx_n);
    } else {
      const Evaluation factor{root.lower / x, root.upper / x};
      chain.lhs = star_e;
      chain.mid = fx_n;
      chain.rhs = detail::interval_mul(factor, star_e);
    }
    chain.precision_bits = bits;
    const Verdict a = compare_le(chain.lhs, chain.mid);
    const Verdict b = compare_le(chain.mid, chain.rhs);
    if (a == Verdict::fails || b == Verdict::fails) {
      chain.holds = false;
      return chain;
    }
    if (a == Verdict::holds && b == Verdict::holds) {
      chain.holds = true;
      return chain;
    }
    if (bits >= kMaxBits) {
      chain.holds = true;
      chain.decided = false;
      return chain;
    }
  }
}

inline HarrisChain psi_power_bounds(const FracPoly& f, unsigned n, const Rational& x,
                                    unsigned precision_bits = 64) {
  return harris_chain(f, n, x, f.denominator(), precision_bits);
}

}  // namespace ehrhart
