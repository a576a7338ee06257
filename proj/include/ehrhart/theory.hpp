#pragma once

// Free-sum shortcuts and the checks built on them: the product formula for
// weighted h*, the round-up formula for h* of a free sum, the equality
// criterion for h*(P ⊕ Q) = h*(P) h*(Q), the fractional-part facet formula,
// the asymptotic bound chains for iterated free sums, and central-limit
// statistics of the h* coefficient distribution of P^{⊕n}.

#include <algorithm>
#include <cmath>
#include <tuple>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "ehrhart/ehrhart.hpp"
#include "ehrhart/exactmath.hpp"
#include "ehrhart/intlattice.hpp"
#include "ehrhart/polytope.hpp"

namespace ehrhart {

inline FracPoly freesum_weighted_hstar(const LatticePolytope& p, const LatticePolytope& q) {
  return weighted_hstar(p) * weighted_hstar(q);
}

inline IntPoly freesum_hstar(const LatticePolytope& p, const LatticePolytope& q) {
  return psi(freesum_weighted_hstar(p, q));
}

struct BjmVerdict {
  bool predicted = false;  // r_P == 1 or r_Q == 1
  bool actual = false;     // h*(P ⊕ Q) == h*(P) h*(Q)
};

inline BjmVerdict bjm_equality(const LatticePolytope& p, const LatticePolytope& q) {
  BjmVerdict v;
  v.predicted = gorenstein_denominator(p) == 1 || gorenstein_denominator(q) == 1;
  v.actual = freesum_hstar(p, q) == hstar(p) * hstar(q);
  return v;
}

// Vol(F) = Vol(conv(F ∪ {0})) / m_F for a facet with m_F > 0.
inline BigInt facet_volume(const LatticePolytope& p, const Facet& f) {
  if (f.distance <= 0) throw Error("facet_volume needs a facet missing the origin");
  std::vector<IntVector> pyramid{IntVector(p.rank(), 0)};
  for (const auto& v : p.vertices())
    if (dot(f.normal, v) == -f.distance) pyramid.push_back(v);
  const BigInt vol = normalized_volume(LatticePolytope::from_vertices(p.rank(), std::move(pyramid)));
  if (vol % f.distance != 0) throw ConsistencyError("pyramid volume is not a multiple of the facet distance");
  return vol / f.distance;
}

// sum over facets F missing the origin of Vol(F) * sum_{i < m_F} t^(i/m_F).
inline FracPoly theta_facet_formula(const LatticePolytope& p) {
  require_origin(p, "theta_facet_formula");
  FracPoly out;
  for (const auto& f : p.facets()) {
    if (f.distance <= 0) continue;
    const std::int64_t m = to_int64(f.distance);
    FracPoly::Terms t;
    const BigInt vol = facet_volume(p, f);
    for (std::int64_t i = 0; i < m; ++i) t.emplace(i, vol);
    out = out + FracPoly(m, std::move(t));
  }
  return out;
}

// The bound chain comparing h̃(P;x)^n with h*(P^{⊕n};x), where h*(P^{⊕n}) is
// psi(h̃(P)^n).
inline HarrisChain asymptotic_check(const LatticePolytope& p, unsigned n, const Rational& x,
                                    unsigned precision_bits = 64) {
  require_origin(p, "asymptotic_check");
  return harris_chain(weighted_hstar(p), n, x, gorenstein_denominator(p), precision_bits);
}

struct DistributionSummary {
  Rational mean;
  Rational variance;
  FracPoly source;
  BigInt total_mass;
};

inline DistributionSummary clt_statistics(const LatticePolytope& p) {
  require_origin(p, "clt_statistics");
  DistributionSummary s;
  s.source = weighted_hstar(p);
  const Moments m = moments(s.source);
  s.mean = m.mean;
  s.variance = m.variance;
  s.total_mass = psi(s.source).sum();
  if (p.origin_position() == OriginPosition::interior && s.mean * 2 != static_cast<long>(p.dim()))
    throw ConsistencyError("interior-origin polytope whose weighted h* mean is not dim/2");
  return s;
}

// Normal CDF with standard deviation sigma; std::erfc is accurate to a few
// ulps, well inside 1e-12 absolute.
inline double normal_cdf(double x, double sigma) { return 0.5 * std::erfc(-x / (sigma * std::sqrt(2.0))); }

// The coefficient distribution of h*(P^{⊕n}) = psi(h̃(P)^n), centered at
// n·mean and scaled by sqrt(n).
class CoefficientDistribution {
 public:
  CoefficientDistribution(const FracPoly& weighted, unsigned n) : n_(n) {
    if (n == 0) throw Error("n must be positive");
    hstar_ = psi(weighted.pow(n));
    mean_ = moments(weighted).mean;
    total_ = hstar_.sum();
    BigInt running = 0;
    for (const auto& c : hstar_.coefficients()) {
      running += c;
      cdf_.push_back(to_double(Rational(running, total_)));
    }
  }

  unsigned n() const noexcept { return n_; }
  const IntPoly& hstar() const noexcept { return hstar_; }

  // Position of coefficient index i on the scaled axis.
  double jump(std::size_t i) const {
    return (static_cast<double>(i) - to_double(mean_ * n_)) / std::sqrt(static_cast<double>(n_));
  }

  // F_n(x) = (sum of coefficients with i <= sqrt(n) x + n mean) / Vol(P)^n
  double cdf(double x) const {
    const double bound = std::sqrt(static_cast<double>(n_)) * x + to_double(mean_ * n_);
    // Knots sit at integers; absorb the rounding of jump() so F_n is
    // right-continuous there.
    const double nearest = std::round(bound);
    const double idx = std::abs(bound - nearest) <= 1e-9 * std::max(1.0, std::abs(bound)) ? nearest : std::floor(bound);
    if (idx < 0) return 0.0;
    if (idx >= static_cast<double>(cdf_.size() - 1)) return 1.0;
    return cdf_[static_cast<std::size_t>(idx)];
  }

  // sup_x |F_n(x) - Phi_sigma(x)|, attained at a jump from one side or the other.
  double sup_distance(double sigma) const {
    double best = 0.0;
    double before = 0.0;
    for (std::size_t i = 0; i < cdf_.size(); ++i) {
      if (hstar_[i] == 0) continue;
      const double phi = normal_cdf(jump(i), sigma);
      best = std::max(best, std::max(std::abs(cdf_[i] - phi), std::abs(before - phi)));
      before = cdf_[i];
    }
    return best;
  }

  // Mean and variance of Z*_n = (X*_{P^{⊕n}} - n mean) / sqrt(n).
  std::pair<double, double> scaled_moments() const {
    const Moments m = moments(hstar_);
    const double mean = to_double(m.mean - mean_ * n_) / std::sqrt(static_cast<double>(n_));
    const double var = to_double(m.variance) / static_cast<double>(n_);
    return {mean, var};
  }

 private:
  unsigned n_;
  IntPoly hstar_;
  Rational mean_;
  BigInt total_;
  std::vector<double> cdf_;
};

inline double clt_cdf(const LatticePolytope& p, unsigned n, double x) {
  require_origin(p, "clt_cdf");
  return CoefficientDistribution(weighted_hstar(p), n).cdf(x);
}

struct CltEntry {
  unsigned n = 0;
  double sup_dist = 0.0;
  double mean = 0.0;
  double variance = 0.0;
};

struct CltReport {
  Rational sigma_tilde_sq;
  std::vector<CltEntry> entries;
};

inline CltReport clt_report(const LatticePolytope& p, const std::vector<unsigned>& n_list) {
  const DistributionSummary s = clt_statistics(p);
  if (s.variance == 0) throw Error("weighted h* has zero variance; no normal limit to compare against");
  CltReport report;
  report.sigma_tilde_sq = s.variance;
  const double sigma = std::sqrt(to_double(s.variance));
  for (unsigned n : n_list) {
    CoefficientDistribution dist(s.source, n);
    CltEntry e;
    e.n = n;
    e.sup_dist = dist.sup_distance(sigma);
    std::tie(e.mean, e.variance) = dist.scaled_moments();
    report.entries.push_back(e);
  }
  return report;
}

struct SubsequencePoint {
  unsigned n = 0;
  double root = 0.0;  // h*(P^{⊕n}; x)^(1/n)
  double gap = 0.0;   // |root - h̃(P; x)|
};

struct SubsequenceRecord {
  Rational x;
  double target = 0.0;  // h̃(P; x)
  std::vector<SubsequencePoint> points;
  bool shrinking = false;  // gap at the largest n below the gap at the smallest, or both zero
};

// Finite evidence that h*(P^{⊕n}; x)^(1/n) -> h̃(P; x) along n in S.
inline SubsequenceRecord reconstruct_from_subsequence(const LatticePolytope& p, std::vector<unsigned> s,
                                                      const Rational& x) {
  require_origin(p, "reconstruct_from_subsequence");
  if (s.empty()) throw Error("empty subsequence");
  if (x <= 0) throw Error("evaluation point must be positive");
  std::sort(s.begin(), s.end());
  const FracPoly h = weighted_hstar(p);
  SubsequenceRecord rec;
  rec.x = x;
  const Evaluation target = eval(h, x, 128);
  rec.target = target.to_double();
  const double log_target = log_big(target.midpoint());
  for (unsigned n : s) {
    const Rational value = psi(h.pow(n)).eval(x);
    SubsequencePoint pt;
    pt.n = n;
    pt.root = std::exp(log_big(value) / n);
    // |a - b| = b |exp(log a - log b) - 1| keeps precision for large n.
    pt.gap = rec.target * std::abs(std::expm1(log_big(value) / n - log_target));
    if (target.exact() && value == ehrhart::pow(target.lower, n)) pt.gap = 0.0;
    rec.points.push_back(pt);
  }
  const double first = rec.points.front().gap, last = rec.points.back().gap;
  rec.shrinking = (first == 0.0 && last == 0.0) || last < first;
  return rec;
}

}  // namespace ehrhart
