#pragma once

// Full-dimensional lattice polytopes given by vertices, with exact facet
// data computed at construction. Facets are stored as halfspaces
// <u, v> >= -m with u primitive, so m is the lattice distance of the facet
// from the origin (negative only when the origin lies outside).

#include <algorithm>
#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ehrhart/intlattice.hpp"
#include "ehrhart/numeric.hpp"

namespace ehrhart {

inline constexpr std::size_t kMaxAmbientRank = 12;

struct Facet {
  IntVector normal;
  BigInt distance;

  friend bool operator==(const Facet&, const Facet&) = default;
};

using RationalPoint = std::vector<Rational>;

enum class OriginPosition { interior, boundary, outside };

inline const char* to_string(OriginPosition p) {
  switch (p) {
    case OriginPosition::interior:
      return "interior";
    case OriginPosition::boundary:
      return "boundary";
    case OriginPosition::outside:
      return "outside";
  }
  return "?";
}

struct CountTable;

namespace detail {

// Session cache of lattice-point histograms, shared between copies of one
// polytope value.
struct CountMemo {
  std::mutex mutex;
  std::shared_ptr<const CountTable> table;
};

}  // namespace detail

class LatticePolytope {
 public:
  static LatticePolytope from_vertices(std::size_t ambient_rank, std::vector<IntVector> points) {
    if (ambient_rank == 0) throw Error("ambient rank must be positive");
    if (ambient_rank > kMaxAmbientRank)
      throw Error("ambient rank " + std::to_string(ambient_rank) + " exceeds the supported maximum of " +
                  std::to_string(kMaxAmbientRank));
    for (const auto& p : points)
      if (p.size() != ambient_rank)
        throw Error("point of length " + std::to_string(p.size()) + " in a rank-" + std::to_string(ambient_rank) +
                    " lattice");
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    if (points.size() < ambient_rank + 1) throw NotFullDimensional(affine_rank(points), ambient_rank);
    if (const auto ar = affine_rank(points); ar != ambient_rank) throw NotFullDimensional(ar, ambient_rank);

    LatticePolytope p;
    p.rank_ = ambient_rank;
    p.facets_ = enumerate_facets(points, ambient_rank);

    for (const auto& v : points) {
      IntMatrix tight;
      for (const auto& f : p.facets_)
        if (dot(f.normal, v) == -f.distance) tight.push_back(f.normal);
      if (matrix_rank(std::move(tight)) == ambient_rank) p.vertices_.push_back(v);
    }

    bool interior = true;
    bool inside = true;
    for (const auto& f : p.facets_) {
      if (f.distance < 0) inside = false;
      if (f.distance <= 0) interior = false;
    }
    p.origin_ = !inside ? OriginPosition::outside : interior ? OriginPosition::interior : OriginPosition::boundary;
    return p;
  }

  std::size_t rank() const noexcept { return rank_; }
  std::size_t dim() const noexcept { return rank_; }
  const std::vector<IntVector>& vertices() const noexcept { return vertices_; }
  const std::vector<Facet>& facets() const noexcept { return facets_; }
  OriginPosition origin_position() const noexcept { return origin_; }
  bool contains_origin() const noexcept { return origin_ != OriginPosition::outside; }

  bool contains(const IntVector& v) const {
    for (const auto& f : facets_)
      if (dot(f.normal, v) < -f.distance) return false;
    return true;
  }

  friend bool operator==(const LatticePolytope& a, const LatticePolytope& b) {
    return a.rank_ == b.rank_ && a.vertices_ == b.vertices_;
  }

  detail::CountMemo& memo() const { return *memo_; }

 private:
  LatticePolytope() = default;

  static std::vector<Facet> enumerate_facets(const std::vector<IntVector>& pts, std::size_t d) {
    std::set<IntVector> seen;
    std::vector<Facet> out;
    std::vector<std::size_t> idx(d);
    for (std::size_t i = 0; i < d; ++i) idx[i] = i;
    const std::size_t n = pts.size();
    std::vector<IntVector> chosen(d);
    for (;;) {
      for (std::size_t i = 0; i < d; ++i) chosen[i] = pts[idx[i]];
      IntVector normal = hyperplane_normal(chosen);
      if (content(normal) != 0) {
        normal = primitive(std::move(normal));
        const BigInt level = dot(normal, chosen[0]);
        bool above = true, below = true;
        for (const auto& q : pts) {
          const BigInt v = dot(normal, q);
          if (v < level) above = false;
          if (v > level) below = false;
          if (!above && !below) break;
        }
        if (above || below) {
          BigInt distance = -level;
          if (!above) {
            for (auto& x : normal) x = -x;
            distance = level;
          }
          if (seen.insert(normal).second) out.push_back({std::move(normal), std::move(distance)});
        }
      }
      // next combination
      std::size_t i = d;
      while (i > 0 && idx[i - 1] == n - d + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < d; ++j) idx[j] = idx[j - 1] + 1;
    }
    std::sort(out.begin(), out.end(), [](const Facet& a, const Facet& b) { return a.normal < b.normal; });
    return out;
  }

  std::size_t rank_ = 0;
  std::vector<IntVector> vertices_;
  std::vector<Facet> facets_;
  OriginPosition origin_ = OriginPosition::outside;
  std::shared_ptr<detail::CountMemo> memo_ = std::make_shared<detail::CountMemo>();
};

inline const std::vector<Facet>& facets(const LatticePolytope& p) { return p.facets(); }

inline void require_origin(const LatticePolytope& p, const char* what) {
  if (!p.contains_origin()) throw Error(std::string(what) + " requires a polytope containing the origin");
}

// Least r such that r times the dual polyhedron is a lattice polyhedron:
// the lcm of the lattice distances of facets missing the origin.
inline std::int64_t gorenstein_denominator(const LatticePolytope& p) {
  require_origin(p, "gorenstein_denominator");
  BigInt r = 1;
  for (const auto& f : p.facets())
    if (f.distance > 0) r = lcm(r, f.distance);
  return to_int64(r);
}

inline std::vector<RationalPoint> dual_vertices(const LatticePolytope& p) {
  require_origin(p, "dual_vertices");
  std::vector<RationalPoint> out;
  for (const auto& f : p.facets()) {
    if (f.distance <= 0) continue;
    RationalPoint q;
    for (const auto& u : f.normal) q.emplace_back(u, f.distance);
    out.push_back(std::move(q));
  }
  return out;
}

inline LatticePolytope free_sum(const LatticePolytope& p, const LatticePolytope& q) {
  require_origin(p, "free_sum");
  require_origin(q, "free_sum");
  const std::size_t dp = p.rank(), dq = q.rank();
  std::vector<IntVector> pts;
  for (const auto& v : p.vertices()) {
    IntVector w = v;
    w.resize(dp + dq, 0);
    pts.push_back(std::move(w));
  }
  for (const auto& v : q.vertices()) {
    IntVector w(dp, 0);
    w.insert(w.end(), v.begin(), v.end());
    pts.push_back(std::move(w));
  }
  return LatticePolytope::from_vertices(dp + dq, std::move(pts));
}

// min { lambda >= 0 : v in lambda P }, or nullopt if v lies in no dilate.
inline std::optional<Rational> min_dilate(const LatticePolytope& p, const IntVector& v) {
  require_origin(p, "min_dilate");
  Rational best = 0;
  for (const auto& f : p.facets()) {
    const BigInt s = dot(f.normal, v);
    if (f.distance == 0) {
      if (s < 0) return std::nullopt;
      continue;
    }
    const Rational lam(-s, f.distance);
    if (lam > best) best = lam;
  }
  return best;
}

// Adjoins the origin, restricts to span ∩ Z^n, and re-coordinatizes in a
// basis of that lattice, yielding a full-dimensional origin-containing
// polytope.
inline LatticePolytope normalize(std::vector<IntVector> points, std::size_t ambient_rank) {
  if (points.empty()) throw Error("normalize needs at least one point");
  bool nonzero = false;
  for (const auto& p : points) {
    if (p.size() != ambient_rank) throw Error("point length does not match the ambient rank");
    for (const auto& x : p)
      if (x != 0) nonzero = true;
  }
  if (!nonzero) throw Error("all points are the origin; nothing to normalize");
  points.push_back(IntVector(ambient_rank, 0));
  const SpanLattice span = span_lattice(points, ambient_rank);
  std::vector<IntVector> coords = span.coordinates;
  return LatticePolytope::from_vertices(span.basis.size(), std::move(coords));
}

}  // namespace ehrhart
