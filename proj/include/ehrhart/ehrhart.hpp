#pragma once

// Lattice-point counting in rational dilates and the polynomials built from
// the counts: the h*-polynomial from integer dilates and the weighted
// h*-polynomial from the boundary counts of rational dilates.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ehrhart/exactmath.hpp"
#include "ehrhart/polytope.hpp"

namespace ehrhart {

// Sparse histogram of min_dilate over lattice points: keys[i] / grid is a
// dilation factor attained by boundary[i] points, keys ascending, for
// factors up to max_index / grid. cumulative[i] counts points up to keys[i].
struct CountTable {
  std::int64_t grid = 1;
  std::int64_t max_index = 0;
  std::vector<std::int64_t> keys;
  std::vector<BigInt> boundary;
  std::vector<BigInt> cumulative;

  Rational max_lambda() const { return Rational(max_index, grid); }

  BigInt count_at(const Rational& lambda) const {
    if (lambda < 0) throw Error("negative dilation factor");
    const BigInt j = floor(lambda * grid);
    if (j > max_index) throw Error("dilation " + lambda.str() + " is beyond the count table");
    const auto it = std::upper_bound(keys.begin(), keys.end(), to_int64(j));
    return it == keys.begin() ? BigInt(0) : cumulative[static_cast<std::size_t>(it - keys.begin() - 1)];
  }

  BigInt boundary_at(const Rational& lambda) const {
    if (lambda < 0) throw Error("negative dilation factor");
    const Rational scaled = lambda * grid;
    if (ehrhart::denominator(scaled) != 1) return 0;
    const BigInt j = ehrhart::numerator(scaled);
    if (j > max_index) throw Error("dilation " + lambda.str() + " is beyond the count table");
    const auto it = std::lower_bound(keys.begin(), keys.end(), to_int64(j));
    if (it == keys.end() || *it != j) return 0;
    return boundary[static_cast<std::size_t>(it - keys.begin())];
  }
};

namespace detail {

// Visits every integer point x in a box with <a_f, x> >= b_f for all f,
// tightening the range of each coordinate from the remaining box extent.
class BoxScan {
 public:
  struct Constraint {
    std::vector<std::int64_t> a;
    std::int64_t b;
  };

  BoxScan(std::vector<std::int64_t> lo, std::vector<std::int64_t> hi, std::vector<Constraint> cons)
      : lo_(std::move(lo)), hi_(std::move(hi)), cons_(std::move(cons)), d_(lo_.size()) {
    constexpr std::int64_t kLimit = std::int64_t{1} << 61;
    rest_.assign(cons_.size(), std::vector<std::int64_t>(d_ + 1, 0));
    for (std::size_t f = 0; f < cons_.size(); ++f) {
      __int128 mag = cons_[f].b < 0 ? -static_cast<__int128>(cons_[f].b) : cons_[f].b;
      for (std::size_t k = d_; k-- > 0;) {
        const __int128 a = cons_[f].a[k];
        const __int128 best = std::max(a * lo_[k], a * hi_[k]);
        rest_[f][k] = static_cast<std::int64_t>(rest_[f][k + 1] + best);
        mag += (a < 0 ? -a : a) * std::max(std::abs(lo_[k]), std::abs(hi_[k]));
      }
      if (mag >= kLimit) throw Error("lattice-point enumeration exceeds 64-bit range");
    }
    x_.assign(d_, 0);
    sums_.assign(cons_.size(), 0);
  }

  template <class Visit>
  void run(Visit&& visit) {
    if (d_ == 0) return;
    descend(0, visit);
  }

 private:
  template <class Visit>
  void descend(std::size_t k, Visit& visit) {
    std::int64_t from = lo_[k], to = hi_[k];
    for (std::size_t f = 0; f < cons_.size() && from <= to; ++f) {
      const std::int64_t a = cons_[f].a[k];
      const std::int64_t t = cons_[f].b - sums_[f] - rest_[f][k + 1];
      if (a > 0)
        from = std::max(from, ceil_div64(t, a));
      else if (a < 0)
        to = std::min(to, floor_div64(t, a));
      else if (t > 0)
        return;
    }
    for (std::int64_t v = from; v <= to; ++v) {
      x_[k] = v;
      for (std::size_t f = 0; f < cons_.size(); ++f) sums_[f] += cons_[f].a[k] * v;
      if (k + 1 == d_)
        visit(x_, sums_);
      else
        descend(k + 1, visit);
      for (std::size_t f = 0; f < cons_.size(); ++f) sums_[f] -= cons_[f].a[k] * v;
    }
  }

  std::vector<std::int64_t> lo_, hi_;
  std::vector<Constraint> cons_;
  std::size_t d_;
  std::vector<std::vector<std::int64_t>> rest_;
  std::vector<std::int64_t> x_;
  std::vector<std::int64_t> sums_;
};

// Scan of the dilate (p/q)P: constraints q<u,x> >= -p m + shift.
inline BoxScan dilate_scan(const LatticePolytope& poly, const BigInt& p, const BigInt& q, std::int64_t shift = 0) {
  const std::size_t d = poly.rank();
  std::vector<std::int64_t> lo(d), hi(d);
  for (std::size_t i = 0; i < d; ++i) {
    BigInt mn = poly.vertices()[0][i], mx = mn;
    for (const auto& v : poly.vertices()) {
      mn = std::min(mn, v[i]);
      mx = std::max(mx, v[i]);
    }
    lo[i] = to_int64(floor_div(mn * p, q));
    hi[i] = to_int64(ceil_div(mx * p, q));
  }
  std::vector<BoxScan::Constraint> cons;
  for (const auto& f : poly.facets()) {
    BoxScan::Constraint c;
    for (const auto& u : f.normal) c.a.push_back(to_int64(u * q));
    c.b = to_int64(-f.distance * p) + shift;
    cons.push_back(std::move(c));
  }
  return BoxScan(std::move(lo), std::move(hi), std::move(cons));
}

inline void check_dilation(const Rational& lambda) {
  if (lambda < 0) throw Error("dilation factor must be nonnegative, got " + lambda.str());
}

// #(lambda P ∩ Z^d) for any lattice polytope.
inline BigInt count_dilate(const LatticePolytope& poly, const Rational& lambda) {
  check_dilation(lambda);
  if (lambda == 0) return 1;  // 0P = {0}
  std::uint64_t n = 0;
  dilate_scan(poly, ehrhart::numerator(lambda), ehrhart::denominator(lambda)).run([&](const auto&, const auto&) { ++n; });
  return n;
}

inline CountTable build_count_table(const LatticePolytope& poly, std::int64_t grid, std::int64_t max_lambda) {
  CountTable t;
  t.grid = grid;
  t.max_index = max_lambda * grid;
  std::unordered_map<std::int64_t, std::uint64_t> hist;
  std::vector<std::int64_t> weight;  // grid / m for facets off the origin
  for (const auto& f : poly.facets()) weight.push_back(f.distance > 0 ? to_int64(grid / f.distance) : 0);
  auto scan = dilate_scan(poly, max_lambda, 1);
  scan.run([&](const auto&, const std::vector<std::int64_t>& sums) {
    std::int64_t key = 0;
    for (std::size_t f = 0; f < sums.size(); ++f)
      if (weight[f] != 0) key = std::max(key, -sums[f] * weight[f]);
    ++hist[key];
  });
  std::vector<std::pair<std::int64_t, std::uint64_t>> sorted(hist.begin(), hist.end());
  std::sort(sorted.begin(), sorted.end());
  BigInt running = 0;
  for (const auto& [key, n] : sorted) {
    t.keys.push_back(key);
    t.boundary.emplace_back(n);
    running += n;
    t.cumulative.push_back(running);
  }
  return t;
}

}  // namespace detail

// Histogram of min_dilate over lattice points, on the grid (1/r_P)Z, for
// dilates up to max_lambda. Cached per polytope value.
inline std::shared_ptr<const CountTable> count_table(const LatticePolytope& poly, std::int64_t max_lambda) {
  require_origin(poly, "count_table");
  const std::int64_t r = gorenstein_denominator(poly);
  auto& memo = poly.memo();
  std::lock_guard<std::mutex> lock(memo.mutex);
  if (memo.table && memo.table->max_index >= max_lambda * r) return memo.table;
  memo.table = std::make_shared<const CountTable>(detail::build_count_table(poly, r, max_lambda));
  return memo.table;
}

// #(lambda P ∩ N_P) by a direct scan of the dilate.
inline BigInt count_points(const LatticePolytope& poly, const Rational& lambda) {
  require_origin(poly, "count_points");
  return detail::count_dilate(poly, lambda);
}

// Lattice points with min_dilate exactly lambda: points of lambda P lying on
// a dilated facet that misses the origin; the origin alone at lambda = 0.
inline BigInt boundary_count(const LatticePolytope& poly, const Rational& lambda) {
  require_origin(poly, "boundary_count");
  detail::check_dilation(lambda);
  if (lambda == 0) return 1;
  std::vector<bool> off_origin;
  for (const auto& f : poly.facets()) off_origin.push_back(f.distance > 0);
  auto scan = detail::dilate_scan(poly, ehrhart::numerator(lambda), ehrhart::denominator(lambda));
  std::vector<std::int64_t> bounds;
  for (const auto& f : poly.facets()) bounds.push_back(to_int64(-f.distance * ehrhart::numerator(lambda)));
  std::uint64_t n = 0;
  scan.run([&](const auto&, const std::vector<std::int64_t>& sums) {
    for (std::size_t f = 0; f < sums.size(); ++f)
      if (off_origin[f] && sums[f] == bounds[f]) {
        ++n;
        return;
      }
  });
  return n;
}

// Lattice points strictly inside P.
inline BigInt interior_count(const LatticePolytope& poly) {
  std::uint64_t n = 0;
  detail::dilate_scan(poly, 1, 1, 1).run([&](const auto&, const auto&) { ++n; });
  return n;
}

namespace detail {

inline BigInt binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0;
  BigInt r = 1;
  for (std::int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline std::vector<BigInt> integer_dilate_counts(const LatticePolytope& poly, std::int64_t up_to) {
  std::vector<BigInt> f;
  if (poly.contains_origin()) {
    auto table = count_table(poly, up_to);
    for (std::int64_t m = 0; m <= up_to; ++m) f.push_back(table->count_at(m));
  } else {
    for (std::int64_t m = 0; m <= up_to; ++m) f.push_back(count_dilate(poly, m));
  }
  return f;
}

}  // namespace detail

// Numerator of sum_m f(P;m) t^m over (1 - t)^(d+1).
inline IntPoly hstar(const LatticePolytope& poly) {
  const auto d = static_cast<std::int64_t>(poly.dim());
  const auto f = detail::integer_dilate_counts(poly, d);
  std::vector<BigInt> h(static_cast<std::size_t>(d) + 1);
  for (std::int64_t i = 0; i <= d; ++i)
    for (std::int64_t k = 0; k <= i; ++k) {
      BigInt term = detail::binomial(d + 1, k) * f[static_cast<std::size_t>(i - k)];
      h[static_cast<std::size_t>(i)] += (k % 2 == 0) ? term : BigInt(-term);
    }
  for (const auto& c : h)
    if (c < 0) throw ConsistencyError("negative h* coefficient; lattice-point counts are inconsistent");
  if (h[0] != 1) throw ConsistencyError("h*_0 != 1; lattice-point counts are inconsistent");
  return IntPoly(std::move(h));
}

// Numerator of sum over rational lambda of the boundary counts t^lambda over
// (1 - t)^d, on the grid (1/r_P)Z.
inline FracPoly weighted_hstar(const LatticePolytope& poly) {
  require_origin(poly, "weighted_hstar");
  const auto d = static_cast<std::int64_t>(poly.dim());
  const std::int64_t r = gorenstein_denominator(poly);
  auto table = count_table(poly, d);
  // Multiply the boundary series by (1 - t)^d, truncated at degree d.
  std::map<std::int64_t, BigInt> acc;
  for (std::size_t k = 0; k < table->keys.size(); ++k)
    for (std::int64_t i = 0; i <= d; ++i) {
      const std::int64_t j = table->keys[k] + i * r;
      if (j > d * r) break;
      BigInt term = detail::binomial(d, i) * table->boundary[k];
      acc[j] += (i % 2 == 0) ? term : BigInt(-term);
    }
  FracPoly::Terms terms;
  for (auto& [j, c] : acc) {
    if (c < 0) throw ConsistencyError("negative weighted h* coefficient; boundary counts are inconsistent");
    if (c != 0) terms.emplace(j, std::move(c));
  }
  FracPoly h(r, std::move(terms));
  if (h.coefficient(0) != 1) throw ConsistencyError("weighted h* has constant term != 1");
  if (r % h.denominator() != 0) throw ConsistencyError("weighted h* denominator does not divide r_P");
  return h;
}

// Coefficients (in m, ascending) of the Ehrhart polynomial, interpolated from
// the counts at m = 0..d in the binomial basis.
inline std::vector<Rational> ehrhart_poly(const LatticePolytope& poly) {
  const auto d = static_cast<std::int64_t>(poly.dim());
  std::vector<BigInt> diff = detail::integer_dilate_counts(poly, d);
  std::vector<Rational> coeffs(static_cast<std::size_t>(d) + 1, Rational(0));
  std::vector<Rational> falling{Rational(1)};  // m (m-1) ... (m-k+1) / k!
  for (std::int64_t k = 0; k <= d; ++k) {
    for (std::size_t i = 0; i < falling.size(); ++i) coeffs[i] += Rational(diff[0]) * falling[i];
    for (std::size_t i = 0; i + 1 < diff.size(); ++i) diff[i] = diff[i + 1] - diff[i];
    diff.pop_back();
    std::vector<Rational> next(falling.size() + 1, Rational(0));
    for (std::size_t i = 0; i < falling.size(); ++i) {
      next[i + 1] += falling[i] / (k + 1);
      next[i] -= falling[i] * k / (k + 1);
    }
    falling = std::move(next);
  }
  while (coeffs.size() > 1 && coeffs.back() == 0) coeffs.pop_back();
  return coeffs;
}

namespace detail {

inline std::vector<BigInt> grid_counts(const LatticePolytope& poly, std::int64_t k, std::int64_t up_to) {
  auto table = count_table(poly, static_cast<std::int64_t>(poly.dim()) + 1);
  std::vector<BigInt> f;
  for (std::int64_t j = 0; j <= up_to; ++j) f.push_back(table->count_at(Rational(j, k)));
  return f;
}

}  // namespace detail

// h* of the rational polytope (1/k)P in the form
//   sum_m #(m/k P ∩ Z^d) t^m = h(t) / ((1 - t)(1 - t^k)^d),
// which for k = r_P is the weighted h*-polynomial with t^(1/r_P) -> t.
// Sparse: exponent -> nonzero coefficient.
inline std::map<std::int64_t, BigInt> rational_hstar_terms(const LatticePolytope& poly, std::int64_t k) {
  require_origin(poly, "rational_hstar");
  if (k < 1) throw Error("rational_hstar needs k >= 1");
  const auto d = static_cast<std::int64_t>(poly.dim());
  const std::int64_t top = k * (d + 1) - 1;
  auto table = count_table(poly, d + 1);
  // (1 - t) sum_m f(m) t^m jumps at the first m whose dilate m/k reaches a
  // new key of the table.
  std::map<std::int64_t, BigInt> jumps;
  for (std::size_t i = 0; i < table->keys.size(); ++i) {
    const BigInt m = ceil(Rational(BigInt(table->keys[i]) * k, table->grid));
    if (m > top) break;
    jumps[to_int64(m)] += table->boundary[i];
  }
  std::map<std::int64_t, BigInt> h;
  for (const auto& [m, c] : jumps)
    for (std::int64_t s = 0; s <= d && m + s * k <= top; ++s) {
      BigInt term = detail::binomial(d, s) * c;
      h[m + s * k] += (s % 2 == 0) ? term : BigInt(-term);
    }
  std::map<std::int64_t, BigInt> out;
  for (auto& [i, c] : h) {
    if (c < 0) throw ConsistencyError("negative rational h* coefficient");
    if (c == 0) continue;
    if (i > k * d) throw ConsistencyError("rational h* exceeds degree k * dim P");
    out.emplace(i, std::move(c));
  }
  return out;
}

inline IntPoly rational_hstar(const LatticePolytope& poly, std::int64_t k) {
  const auto terms = rational_hstar_terms(poly, k);
  std::vector<BigInt> h(terms.empty() ? 0 : static_cast<std::size_t>(terms.rbegin()->first) + 1);
  for (const auto& [i, c] : terms) h[static_cast<std::size_t>(i)] = c;
  return IntPoly(std::move(h));
}

// The same counts over Stanley's denominator (1 - t^k)^(d+1).
inline IntPoly stanley_rational_hstar(const LatticePolytope& poly, std::int64_t k) {
  require_origin(poly, "stanley_rational_hstar");
  if (k < 1) throw Error("stanley_rational_hstar needs k >= 1");
  const auto d = static_cast<std::int64_t>(poly.dim());
  const std::int64_t top = k * (d + 1) - 1;
  const auto f = detail::grid_counts(poly, k, top);
  std::vector<BigInt> h(static_cast<std::size_t>(top) + 1);
  for (std::int64_t i = 0; i <= top; ++i)
    for (std::int64_t s = 0; s <= d + 1 && i - s * k >= 0; ++s) {
      BigInt term = detail::binomial(d + 1, s) * f[static_cast<std::size_t>(i - s * k)];
      h[static_cast<std::size_t>(i)] += (s % 2 == 0) ? term : BigInt(-term);
    }
  return IntPoly(std::move(h));
}

}  // namespace ehrhart
