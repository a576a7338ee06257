#pragma once

// Seeded random instances and the property suites run by `ehrhart verify`.
// Every property compares two independently computed quantities; a suite
// reports each property with the number of cases checked and the first
// counterexample, if any.

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "ehrhart/ehrhart.hpp"
#include "ehrhart/exactmath.hpp"
#include "ehrhart/gallery.hpp"
#include "ehrhart/intlattice.hpp"
#include "ehrhart/polytope.hpp"
#include "ehrhart/theory.hpp"

namespace ehrhart {

// mt19937_64 is fully specified by the standard; the distributions are not,
// so draws are mapped to ranges here to keep instances identical everywhere.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : rng_(seed) {}

  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % span;
    std::uint64_t x;
    do x = rng_();
    while (x >= limit);
    return lo + static_cast<std::int64_t>(x % span);
  }

  bool coin() { return uniform(0, 1) == 1; }

  // Full-dimensional, origin-containing, coordinates in [-bound, bound].
  LatticePolytope polytope(std::size_t max_dim, std::int64_t bound = 4, std::size_t extra_points = 2) {
    for (;;) {
      const auto d = static_cast<std::size_t>(uniform(1, static_cast<std::int64_t>(max_dim)));
      const auto n = d + 1 + static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(extra_points)));
      std::vector<IntVector> pts;
      for (std::size_t i = 0; i < n; ++i) {
        IntVector v;
        for (std::size_t k = 0; k < d; ++k) v.emplace_back(uniform(-bound, bound));
        pts.push_back(std::move(v));
      }
      try {
        auto p = LatticePolytope::from_vertices(d, pts);
        if (p.contains_origin()) return p;
        pts.push_back(IntVector(d, 0));
        return LatticePolytope::from_vertices(d, std::move(pts));
      } catch (const NotFullDimensional&) {
        continue;
      }
    }
  }

  // Nonnegative polynomial with nonzero constant term.
  FracPoly frac_poly(std::int64_t max_denominator = 4, std::int64_t max_degree = 3) {
    const std::int64_t r = uniform(1, max_denominator);
    FracPoly::Terms t{{0, BigInt(uniform(1, 4))}};
    const auto extra = uniform(0, 4);
    for (std::int64_t i = 0; i < extra; ++i) t[uniform(0, r * max_degree)] += uniform(1, 5);
    return FracPoly(r, std::move(t));
  }

  // Unimodular matrix built from elementary operations, entries within bound.
  IntMatrix unimodular(std::size_t d, long bound = 3) {
    IntMatrix u(d, IntVector(d, 0));
    for (std::size_t i = 0; i < d; ++i) u[i][i] = 1;
    if (d < 2) {
      if (coin()) u[0][0] = -1;
      return u;
    }
    const auto steps = uniform(1, 3 * static_cast<std::int64_t>(d));
    for (std::int64_t s = 0; s < steps; ++s) {
      const auto i = static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(d) - 1));
      auto j = static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(d) - 2));
      if (j >= i) ++j;
      IntMatrix next = u;
      const long c = coin() ? 1 : -1;
      for (std::size_t k = 0; k < d; ++k) next[i][k] += c * u[j][k];
      bool ok = true;
      for (const auto& row : next)
        for (const auto& x : row)
          if (boost::multiprecision::abs(x) > bound) ok = false;
      if (ok) u = std::move(next);
    }
    return u;
  }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(i) - 1))]);
  }

 private:
  std::mt19937_64 rng_;
};

inline LatticePolytope transform(const IntMatrix& u, const LatticePolytope& p) {
  std::vector<IntVector> pts;
  for (const auto& v : p.vertices()) {
    IntVector w;
    for (const auto& row : u) w.push_back(dot(row, v));
    pts.push_back(std::move(w));
  }
  return LatticePolytope::from_vertices(p.rank(), std::move(pts));
}

// Membership via barycentric coordinates in some simplex spanned by
// vertices (Carathéodory), independent of the facet description.
inline bool in_hull_by_simplices(const std::vector<IntVector>& verts, const IntVector& v) {
  const std::size_t d = v.size();
  const std::size_t n = verts.size();
  std::vector<std::size_t> pick(d + 1);
  std::function<bool(std::size_t, std::size_t)> rec = [&](std::size_t depth, std::size_t start) -> bool {
    if (depth == d + 1) {
      const IntVector& w0 = verts[pick[0]];
      IntMatrix a(d, IntVector(d));
      for (std::size_t c = 0; c < d; ++c)
        for (std::size_t r = 0; r < d; ++r) a[r][c] = verts[pick[c + 1]][r] - w0[r];
      const BigInt det = determinant(a);
      if (det == 0) return false;
      BigInt total = 0;
      for (std::size_t c = 0; c < d; ++c) {
        IntMatrix ac = a;
        for (std::size_t r = 0; r < d; ++r) ac[r][c] = v[r] - w0[r];
        BigInt dc = determinant(ac);
        if (det < 0) dc = -dc;
        if (dc < 0) return false;
        total += dc;
      }
      return total <= boost::multiprecision::abs(det);
    }
    for (std::size_t i = start; i < n; ++i) {
      pick[depth] = i;
      if (rec(depth + 1, i + 1)) return true;
    }
    return false;
  };
  return rec(0, 0);
}

struct PropertyResult {
  std::string suite;
  std::string name;
  bool passed = true;
  std::size_t cases = 0;
  std::string detail;  // first counterexample
};

class PropertyLog {
 public:
  void check(const std::string& suite, const std::string& name, const std::function<bool()>& body,
             const std::function<std::string()>& describe) {
    PropertyResult& r = slot(suite, name);
    ++r.cases;
    bool ok = false;
    std::string why;
    try {
      ok = body();
      if (!ok) why = describe();
    } catch (const std::exception& e) {
      why = describe() + ": " + e.what();
    }
    if (!ok && r.passed) {
      r.passed = false;
      r.detail = why;
    }
  }

  const std::vector<PropertyResult>& results() const noexcept { return results_; }

  bool all_passed() const {
    for (const auto& r : results_)
      if (!r.passed) return false;
    return true;
  }

 private:
  PropertyResult& slot(const std::string& suite, const std::string& name) {
    const std::string key = suite + "/" + name;
    auto it = index_.find(key);
    if (it == index_.end()) {
      it = index_.emplace(key, results_.size()).first;
      results_.push_back(PropertyResult{suite, name, true, 0, {}});
    }
    return results_[it->second];
  }

  std::vector<PropertyResult> results_;
  std::map<std::string, std::size_t> index_;
};

inline std::string describe(const LatticePolytope& p) {
  std::string s = "conv{";
  for (std::size_t i = 0; i < p.vertices().size(); ++i) {
    s += i ? " (" : "(";
    for (std::size_t k = 0; k < p.rank(); ++k) s += (k ? "," : "") + p.vertices()[i][k].str();
    s += ")";
  }
  return s + "}";
}

// Nill's reindexing: coefficient i of rational_hstar(P, k) sits at t^(i/k).
inline FracPoly reindex(const IntPoly& h, std::int64_t k) {
  FracPoly::Terms t;
  for (std::size_t i = 0; i < h.coefficients().size(); ++i)
    if (h.coefficients()[i] != 0) t.emplace(static_cast<std::int64_t>(i), h.coefficients()[i]);
  return FracPoly(k, std::move(t));
}

inline FracPoly reindex(std::map<std::int64_t, BigInt> terms, std::int64_t k) { return FracPoly(k, std::move(terms)); }

// The invariants every weighted h* must satisfy.
inline bool weighted_structure_ok(const LatticePolytope& p, const FracPoly& h) {
  for (const auto& [k, c] : h.terms())
    if (c <= 0) return false;
  if (h.degree() > static_cast<long>(p.dim())) return false;
  if (h.coefficient(0) != 1) return false;
  if (h.denominator() != gorenstein_denominator(p)) return false;
  return psi(h).sum() == normalized_volume(p);
}

namespace detail {

inline void core_cases(PropertyLog& log, RandomSource& rng, std::size_t cases) {
  const std::string s = "core";
  for (std::size_t c = 0; c < cases; ++c) {
    const LatticePolytope p = rng.polytope(3);
    const auto d = static_cast<std::int64_t>(p.dim());
    const auto what = [&] { return describe(p); };
    const FracPoly h = weighted_hstar(p);
    const IntPoly hs = hstar(p);
    const std::int64_t r = gorenstein_denominator(p);

    log.check(s, "psi_recovers_hstar", [&] { return psi(h) == hs; }, what);
    log.check(s, "weighted_hstar_structure", [&] { return weighted_structure_ok(p, h); }, what);
    log.check(
        s, "hstar_structure",
        [&] {
          for (const auto& x : hs.coefficients())
            if (x < 0) return false;
          return hs[0] == 1 && hs.degree() <= d && hs.sum() == normalized_volume(p);
        },
        what);
    log.check(s, "theta_facet_formula", [&] { return theta_facet_formula(p) == theta(h); }, what);
    if (p.origin_position() == OriginPosition::interior)
      log.check(s, "symmetry_interior_origin", [&] { return reflect(h, d) == h; }, what);
    log.check(s, "nill_reindexing", [&] { return reindex(rational_hstar_terms(p, r), r) == h; }, what);
    log.check(
        s, "ehrhart_poly_matches_counts",
        [&] {
          const auto coeffs = ehrhart_poly(p);
          for (std::int64_t m = 0; m <= d + 1; ++m) {
            Rational v = 0, pw = 1;
            for (const auto& a : coeffs) {
              v += a * pw;
              pw *= m;
            }
            if (v != Rational(count_points(p, m))) return false;
          }
          return true;
        },
        what);
    log.check(
        s, "series_consistency",
        [&] {
          BigInt running = 0;
          const std::int64_t top = std::min<std::int64_t>(2 * d * r, 24);
          for (std::int64_t j = 0; j <= top; ++j) {
            running += boundary_count(p, Rational(j, r));
            if (running != count_points(p, Rational(j, r))) return false;
          }
          return true;
        },
        what);
    log.check(
        s, "facets_supporting",
        [&] {
          for (const auto& f : p.facets()) {
            if (content(f.normal) != 1) return false;
            std::vector<IntVector> tight;
            for (const auto& v : p.vertices()) {
              const BigInt x = dot(f.normal, v);
              if (x < -f.distance) return false;
              if (x == -f.distance) tight.push_back(v);
            }
            if (affine_rank(tight) + 1 != p.rank()) return false;
          }
          return true;
        },
        what);
    log.check(
        s, "membership_matches_hull",
        [&] {
          for (int k = 0; k < 12; ++k) {
            IntVector v;
            for (std::int64_t i = 0; i < d; ++i) v.emplace_back(rng.uniform(-5, 5));
            if (p.contains(v) != in_hull_by_simplices(p.vertices(), v)) return false;
          }
          return true;
        },
        what);
    log.check(
        s, "dual_denominator",
        [&] {
          BigInt den = 1;
          for (const auto& q : dual_vertices(p))
            for (const auto& x : q) den = lcm(den, ehrhart::denominator(x));
          return den == r;
        },
        what);
    log.check(
        s, "unimodular_invariance",
        [&] {
          const LatticePolytope q = transform(rng.unimodular(p.rank()), p);
          std::vector<IntVector> shuffled = q.vertices();
          rng.shuffle(shuffled);
          const auto q2 = LatticePolytope::from_vertices(q.rank(), shuffled);
          return normalized_volume(q2) == normalized_volume(p) && weighted_hstar(q2) == h &&
                 hstar(q2) == hs;
        },
        what);
  }
}

inline void freesum_cases(PropertyLog& log, RandomSource& rng, std::size_t cases) {
  const std::string s = "freesum";
  for (std::size_t c = 0; c < cases; ++c) {
    const LatticePolytope p = rng.polytope(2);
    const LatticePolytope q = rng.polytope(2);
    const auto what = [&] { return describe(p) + " + " + describe(q); };
    const LatticePolytope pq = free_sum(p, q);
    const FracPoly counted = weighted_hstar(pq);
    log.check(s, "weighted_hstar_multiplicative", [&] { return counted == freesum_weighted_hstar(p, q); }, what);
    log.check(s, "hstar_by_rounding", [&] { return hstar(pq) == freesum_hstar(p, q); }, what);
    log.check(
        s, "bjm_criterion",
        [&] {
          const BjmVerdict v = bjm_equality(p, q);
          return v.predicted == v.actual;
        },
        what);
    log.check(
        s, "denominator_lcm",
        [&] { return gorenstein_denominator(pq) == lcm64(gorenstein_denominator(p), gorenstein_denominator(q)); },
        what);
    log.check(
        s, "volume_multiplicative",
        [&] { return normalized_volume(pq) == normalized_volume(p) * normalized_volume(q); }, what);
    log.check(s, "weighted_hstar_structure", [&] { return weighted_structure_ok(pq, counted); }, what);
  }
}

inline std::vector<PayneWeights> payne_tuples(std::size_t max_dim, std::int64_t max_alpha) {
  std::vector<PayneWeights> out;
  std::vector<std::int64_t> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t len) {
    if (cur.size() == len) {
      std::int64_t g = 0;
      for (auto a : cur) g = gcd64(g, a);
      if (g == 1) out.emplace_back(cur);
      return;
    }
    const std::int64_t top = cur.empty() ? max_alpha : cur.back();
    for (std::int64_t a = top; a >= 1; --a) {
      cur.push_back(a);
      rec(len);
      cur.pop_back();
    }
  };
  for (std::size_t d = 1; d <= max_dim; ++d) rec(d + 1);
  return out;
}

inline void gallery_cases(PropertyLog& log) {
  const std::string s = "gallery";
  const auto ex = paper_examples();
  const auto& p = ex.at("P");
  const auto& q = ex.at("Q");
  const auto none = [] { return std::string("worked example"); };
  log.check(s, "worked_example", [&] {
    const FracPoly hp(2, {{0, 1}, {1, 2}, {2, 1}});
    const FracPoly hq(3, {{0, 1}, {1, 1}, {2, 1}, {3, 1}});
    const FracPoly hpp(2, {{0, 1}, {1, 4}, {2, 6}, {3, 4}, {4, 1}});
    return weighted_hstar(p) == hp && weighted_hstar(q) == hq && hstar(p) == IntPoly{1, 3} &&
           hstar(q) == IntPoly{1, 3} && weighted_hstar(free_sum(p, p)) == hpp &&
           hstar(free_sum(p, p)) == IntPoly{1, 10, 5} && hstar(free_sum(p, q)) == IntPoly{1, 8, 7};
  }, none);

  for (const auto& [name, poly] : ex) {
    const auto what = [&, name = name] { return "paper:" + name; };
    const FracPoly h = weighted_hstar(poly);
    log.check(s, "psi_recovers_hstar", [&] { return psi(h) == hstar(poly); }, what);
    log.check(s, "theta_facet_formula", [&] { return theta_facet_formula(poly) == theta(h); }, what);
    log.check(s, "weighted_hstar_structure", [&] { return weighted_structure_ok(poly, h); }, what);
  }

  for (const auto& w : payne_tuples(3, 6)) {
    const auto what = [&] { return "payne:" + w.to_string(); };
    const LatticePolytope simplex = payne_simplex(w);
    const FracPoly h = weighted_hstar(simplex);
    log.check(s, "payne_formula", [&] { return payne_formula(w) == h; }, what);
    log.check(
        s, "payne_interior_origin_mean",
        [&] {
          return simplex.origin_position() == OriginPosition::interior &&
                 moments(h).mean * 2 == static_cast<long>(w.dim());
        },
        what);
  }

  for (std::int64_t n : {2, 3, 4, 6, 8, 9, 12}) {
    const auto what = [n] { return "cyclotomic:" + std::to_string(n); };
    const LatticePolytope c = cyclotomic_polytope(n);
    log.check(
        s, "cyclotomic_reflexive",
        [&] {
          return c.origin_position() == OriginPosition::interior && gorenstein_denominator(c) == 1 &&
                 interior_count(c) == 1;
        },
        what);
    log.check(s, "cyclotomic_lattice_points", [&] { return count_points(c, 1) == n + 1; }, what);
    log.check(
        s, "cyclotomic_hstar_from_squarefree",
        [&] {
          const std::int64_t sq = squarefree_part(n);
          const FracPoly base = weighted_hstar(cyclotomic_polytope(sq));
          return hstar(c) == psi(base.pow(static_cast<unsigned>(n / sq)));
        },
        what);
  }
}

inline void asymptotic_cases(PropertyLog& log, RandomSource& rng, std::size_t cases) {
  const std::string s = "asymptotics";
  for (std::size_t c = 0; c < cases; ++c) {
    const FracPoly f = rng.frac_poly();
    const auto n = static_cast<unsigned>(rng.uniform(1, 10));
    const Rational small(rng.uniform(1, 9), 10), large(rng.uniform(11, 40), 10);
    for (const Rational& x : {small, large}) {
      const auto what = [&] { return f.to_string() + ", n=" + std::to_string(n) + ", x=" + x.str(); };
      log.check(s, "rounding_power_bounds", [&] { return psi_power_bounds(f, n, x).holds; }, what);
    }
  }

  const auto ex = paper_examples();
  const std::vector<std::pair<std::string, LatticePolytope>> named{
      {"paper:P", ex.at("P")}, {"paper:Q", ex.at("Q")}, {"payne:2,1,1", payne_simplex(PayneWeights({2, 1, 1}))}};
  for (const auto& [name, p] : named) {
    const std::int64_t r = gorenstein_denominator(p);
    const Rational two_r = ehrhart::pow(Rational(2), static_cast<unsigned>(r));
    for (const Rational& x : {Rational(1, 4), Rational(1), Rational(4), two_r, 1 / two_r}) {
      for (unsigned n = 1; n <= 20; ++n) {
        const auto what = [&, name = name] { return name + ", n=" + std::to_string(n) + ", x=" + x.str(); };
        log.check(s, "asymptotic_chain", [&] { return asymptotic_check(p, n, x).holds; }, what);
      }
      const auto what = [&, name = name] { return name + ", x=" + x.str(); };
      log.check(
          s, "subsequence_gap_shrinks",
          [&] { return reconstruct_from_subsequence(p, {2, 8, 32}, x).shrinking; }, what);
    }
  }

  for (std::size_t c = 0; c < cases; ++c) {
    const LatticePolytope p = rng.polytope(2);
    const auto what = [&] { return describe(p); };
    log.check(
        s, "clt_mass_and_mean",
        [&] {
          const DistributionSummary st = clt_statistics(p);
          if (st.total_mass != normalized_volume(p)) return false;
          if (p.origin_position() == OriginPosition::interior && st.mean * 2 != static_cast<long>(p.dim()))
            return false;
          CoefficientDistribution dist(st.source, 3);
          return dist.hstar().sum() == boost::multiprecision::pow(st.total_mass, 3) && dist.cdf(1e9) == 1.0 &&
                 dist.cdf(-1e9) == 0.0;
        },
        what);
  }

  const auto none = [] { return std::string("paper:P"); };
  log.check(s, "clt_convergence", [&] {
    const CltReport rep = clt_report(ex.at("P"), {25, 400});
    return rep.sigma_tilde_sq == Rational(1, 8) && rep.entries[1].sup_dist <= 0.08 &&
           rep.entries[1].sup_dist < rep.entries[0].sup_dist;
  }, none);
}

}  // namespace detail

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"core", "freesum", "gallery", "asymptotics"};
  return names;
}

// Runs one suite or "all"; the random instances depend only on (suite, seed).
inline PropertyLog run_suite(const std::string& suite, std::uint64_t seed) {
  PropertyLog log;
  const bool all = suite == "all";
  bool known = all;
  for (const auto& n : suite_names()) known = known || n == suite;
  if (!known) throw Error("unknown suite '" + suite + "'");
  if (all || suite == "core") {
    RandomSource rng(seed);
    detail::core_cases(log, rng, 25);
  }
  if (all || suite == "freesum") {
    RandomSource rng(seed ^ 0x9e3779b97f4a7c15ULL);
    detail::freesum_cases(log, rng, 25);
  }
  if (all || suite == "gallery") detail::gallery_cases(log);
  if (all || suite == "asymptotics") {
    RandomSource rng(seed ^ 0xc2b2ae3d27d4eb4fULL);
    detail::asymptotic_cases(log, rng, 20);
  }
  return log;
}

}  // namespace ehrhart
