#pragma once

// Named polytopes: the two intervals of the worked example, standard
// simplices, Payne simplices with their closed-form weighted h*, and
// cyclotomic polytopes in power-basis coordinates.

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ehrhart/exactmath.hpp"
#include "ehrhart/intlattice.hpp"
#include "ehrhart/polytope.hpp"

namespace ehrhart {

inline LatticePolytope interval(long long lo, long long hi) {
  return LatticePolytope::from_vertices(1, {make_vector({lo}), make_vector({hi})});
}

// conv{0, e_1, ..., e_d}
inline LatticePolytope standard_simplex(std::size_t d) {
  std::vector<IntVector> pts{IntVector(d, 0)};
  for (std::size_t i = 0; i < d; ++i) {
    IntVector e(d, 0);
    e[i] = 1;
    pts.push_back(std::move(e));
  }
  return LatticePolytope::from_vertices(d, std::move(pts));
}

inline LatticePolytope unit_cube(std::size_t d) {
  std::vector<IntVector> pts;
  for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
    IntVector v(d, 0);
    for (std::size_t i = 0; i < d; ++i) v[i] = (mask >> i) & 1U;
    pts.push_back(std::move(v));
  }
  return LatticePolytope::from_vertices(d, std::move(pts));
}

inline std::map<std::string, LatticePolytope> paper_examples() {
  std::map<std::string, LatticePolytope> out;
  out.emplace("P", interval(-2, 2));
  out.emplace("Q", interval(-1, 3));
  for (std::size_t d = 1; d <= 4; ++d) out.emplace("simplex" + std::to_string(d), standard_simplex(d));
  out.emplace("cube2", unit_cube(2));
  return out;
}

// Positive weights with no common factor, kept in non-increasing order.
class PayneWeights {
 public:
  explicit PayneWeights(std::vector<std::int64_t> alpha) : alpha_(std::move(alpha)) {
    if (alpha_.size() < 2) throw Error("Payne weights need at least two entries");
    std::int64_t g = 0;
    for (auto a : alpha_) {
      if (a <= 0) throw Error("Payne weights must be positive");
      g = gcd64(g, a);
    }
    if (g != 1) throw Error("Payne weights must have no common factor");
    std::sort(alpha_.begin(), alpha_.end(), std::greater<>());
  }

  const std::vector<std::int64_t>& values() const noexcept { return alpha_; }
  std::size_t dim() const noexcept { return alpha_.size() - 1; }

  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < alpha_.size(); ++i) s += (i ? "," : "") + std::to_string(alpha_[i]);
    return s;
  }

 private:
  std::vector<std::int64_t> alpha_;
};

// Convex hull of the images of e_0..e_d in Z^(d+1) / (sum alpha_i e_i).
inline LatticePolytope payne_simplex(const PayneWeights& w) {
  IntVector rel;
  for (auto a : w.values()) rel.emplace_back(a);
  QuotientBasis q = quotient_basis(rel);
  return LatticePolytope::from_vertices(w.dim(), q.images);
}

// sum_i sum_{j < alpha_i} t^e(i,j) with
//   e(i,j) = sum_{k != i} frac(j alpha_k / alpha_i) + #{k > i : alpha_i | j alpha_k}.
inline FracPoly payne_formula(const PayneWeights& w) {
  const auto& a = w.values();
  const std::size_t n = a.size();
  FracPoly out;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::int64_t j = 0; j < a[i]; ++j) {
      Rational e = 0;
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i) continue;
        const Rational x(j * a[k], a[i]);
        e += x - Rational(floor(x));
        if (k > i && ehrhart::denominator(x) == 1) e += 1;
      }
      out = out + FracPoly::monomial(1, e);
    }
  }
  return out;
}

inline std::int64_t squarefree_part(std::int64_t n) {
  if (n < 1) throw Error("squarefree_part needs n >= 1");
  std::int64_t out = 1;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    out *= p;
    while (n % p == 0) n /= p;
  }
  return n > 1 ? out * n : out;
}

inline std::int64_t euler_phi(std::int64_t n) {
  if (n < 1) throw Error("euler_phi needs n >= 1");
  std::int64_t out = n;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    out -= out / p;
    while (n % p == 0) n /= p;
  }
  return n > 1 ? out - out / n : out;
}

namespace detail {

// Quotient and remainder of a by a monic b.
inline std::pair<IntPoly, IntPoly> divmod_monic(const IntPoly& a, const IntPoly& b) {
  if (b.is_zero() || b.coefficients().back() != 1) throw Error("divisor must be monic");
  std::vector<BigInt> rem = a.coefficients();
  const auto db = static_cast<std::size_t>(b.degree());
  if (rem.size() <= db) return {IntPoly(), a};
  std::vector<BigInt> quo(rem.size() - db);
  for (std::size_t i = rem.size(); i-- > db;) {
    const BigInt c = rem[i];
    if (c == 0) continue;
    quo[i - db] = c;
    for (std::size_t k = 0; k <= db; ++k) rem[i - db + k] -= c * b.coefficients()[k];
  }
  return {IntPoly(std::move(quo)), IntPoly(std::move(rem))};
}

}  // namespace detail

inline IntPoly cyclotomic_polynomial(std::int64_t n) {
  if (n < 1) throw Error("cyclotomic_polynomial needs n >= 1");
  std::vector<BigInt> xn(static_cast<std::size_t>(n) + 1, 0);
  xn.front() = -1;
  xn.back() = 1;
  IntPoly acc(std::move(xn));
  for (std::int64_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    auto [q, r] = detail::divmod_monic(acc, cyclotomic_polynomial(d));
    if (!r.is_zero()) throw ConsistencyError("inexact cyclotomic division");
    acc = std::move(q);
  }
  return acc;
}

inline constexpr std::int64_t kMaxCyclotomicRank = 8;

// Convex hull of the n-th roots of unity in Z[zeta_n], in the power basis
// 1, zeta, ..., zeta^(phi(n)-1).
inline LatticePolytope cyclotomic_polytope(std::int64_t n) {
  if (n < 2) throw Error("cyclotomic polytopes are defined here for n >= 2");
  const std::int64_t rank = euler_phi(n);
  if (rank > kMaxCyclotomicRank)
    throw Error("cyclotomic polytope of rank " + std::to_string(rank) + " exceeds the supported maximum of " +
                std::to_string(kMaxCyclotomicRank));
  const IntPoly phi = cyclotomic_polynomial(n);
  std::vector<IntVector> pts;
  for (std::int64_t k = 0; k < n; ++k) {
    std::vector<BigInt> xk(static_cast<std::size_t>(k) + 1, 0);
    xk.back() = 1;
    const IntPoly rem = detail::divmod_monic(IntPoly(std::move(xk)), phi).second;
    IntVector v(static_cast<std::size_t>(rank));
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = rem[i];
    pts.push_back(std::move(v));
  }
  return LatticePolytope::from_vertices(static_cast<std::size_t>(rank), std::move(pts));
}

}  // namespace ehrhart
