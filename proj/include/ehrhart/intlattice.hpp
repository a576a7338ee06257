#pragma once

// Exact integer linear algebra over Z: primitive vectors, fraction-free
// determinants and ranks, unimodular column reduction, quotient-lattice
// bases, and normalized volume by a recursive pulling triangulation.

#include <algorithm>
#include <cstddef>
#include <set>
#include <utility>
#include <vector>

#include "ehrhart/numeric.hpp"

namespace ehrhart {

using IntVector = std::vector<BigInt>;
using IntMatrix = std::vector<IntVector>;  // row-major

inline IntVector make_vector(std::initializer_list<long long> xs) {
  IntVector v;
  for (long long x : xs) v.emplace_back(x);
  return v;
}

inline BigInt dot(const IntVector& a, const IntVector& b) {
  BigInt s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline IntVector operator-(const IntVector& a, const IntVector& b) {
  IntVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

inline BigInt content(const IntVector& v) {
  BigInt g = 0;
  for (const auto& x : v) g = gcd(g, x);
  return g;
}

inline IntVector primitive(IntVector v) {
  const BigInt g = content(v);
  if (g == 0) throw Error("primitive vector of the zero vector");
  for (auto& x : v) x /= g;
  return v;
}

// Fraction-free Gaussian elimination; returns the rank and, for square
// input, the determinant (zero when singular).
struct BareissResult {
  std::size_t rank = 0;
  BigInt determinant = 0;
};

inline BareissResult bareiss(IntMatrix m) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows == 0 ? 0 : m[0].size();
  BigInt prev = 1;
  int sign = 1;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && m[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != rank) {
      std::swap(m[pivot], m[rank]);
      sign = -sign;
    }
    for (std::size_t i = rank + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j)
        m[i][j] = (m[i][j] * m[rank][c] - m[i][c] * m[rank][j]) / prev;
      m[i][c] = 0;
    }
    prev = m[rank][c];
    ++rank;
  }
  BareissResult out;
  out.rank = rank;
  if (rows == cols) out.determinant = rank == rows ? (rows == 0 ? BigInt(1) : BigInt(sign * prev)) : BigInt(0);
  return out;
}

inline BigInt determinant(IntMatrix m) {
  if (!m.empty() && m.size() != m[0].size()) throw Error("determinant of a non-square matrix");
  return bareiss(std::move(m)).determinant;
}

inline std::size_t matrix_rank(IntMatrix m) { return bareiss(std::move(m)).rank; }

// Dimension of the affine hull of a point set (-1 as size_t max for empty).
inline std::size_t affine_rank(const std::vector<IntVector>& pts) {
  if (pts.size() <= 1) return 0;
  IntMatrix diffs;
  diffs.reserve(pts.size() - 1);
  for (std::size_t i = 1; i < pts.size(); ++i) diffs.push_back(pts[i] - pts[0]);
  return matrix_rank(std::move(diffs));
}

// Normal to the hyperplane through d affinely independent points in Z^d by
// signed maximal minors of the difference matrix; zero if dependent.
inline IntVector hyperplane_normal(const std::vector<IntVector>& pts) {
  const std::size_t d = pts.front().size();
  IntMatrix diffs;
  for (std::size_t i = 1; i < pts.size(); ++i) diffs.push_back(pts[i] - pts[0]);
  IntVector normal(d);
  for (std::size_t j = 0; j < d; ++j) {
    IntMatrix minor;
    minor.reserve(diffs.size());
    for (const auto& row : diffs) {
      IntVector r;
      r.reserve(d - 1);
      for (std::size_t k = 0; k < d; ++k)
        if (k != j) r.push_back(row[k]);
      minor.push_back(std::move(r));
    }
    BigInt det = determinant(std::move(minor));
    normal[j] = (j % 2 == 0) ? det : BigInt(-det);
  }
  return normal;
}

enum class EliminationOrder { forward, reverse };

// M·U = E with U unimodular and E in column echelon form: the first `rank`
// columns carry the pivots, the rest are zero. inverse = U^-1.
struct ColumnEchelon {
  IntMatrix reduced;
  IntMatrix transform;
  IntMatrix inverse;
  std::size_t rank = 0;
};

inline ColumnEchelon column_echelon(const IntMatrix& m, std::size_t cols,
                                    EliminationOrder order = EliminationOrder::forward) {
  ColumnEchelon e;
  e.reduced = m;
  e.transform.assign(cols, IntVector(cols, 0));
  e.inverse.assign(cols, IntVector(cols, 0));
  for (std::size_t i = 0; i < cols; ++i) e.transform[i][i] = e.inverse[i][i] = 1;

  auto& a = e.reduced;
  auto& u = e.transform;
  auto& w = e.inverse;
  auto swap_cols = [&](std::size_t p, std::size_t q) {
    if (p == q) return;
    for (auto& row : a) std::swap(row[p], row[q]);
    for (auto& row : u) std::swap(row[p], row[q]);
    std::swap(w[p], w[q]);
  };
  // col_q -= k * col_p ; on the inverse: row_p += k * row_q
  auto sub_col = [&](std::size_t q, std::size_t p, const BigInt& k) {
    if (k == 0) return;
    for (auto& row : a) row[q] -= k * row[p];
    for (auto& row : u) row[q] -= k * row[p];
    for (std::size_t j = 0; j < cols; ++j) w[p][j] += k * w[q][j];
  };

  std::size_t pivot = 0;
  for (std::size_t i = 0; i < a.size() && pivot < cols; ++i) {
    for (;;) {
      // Smallest nonzero magnitude among columns >= pivot in row i.
      std::size_t best = cols;
      for (std::size_t step = 0; step < cols - pivot; ++step) {
        std::size_t c = order == EliminationOrder::forward ? pivot + step : cols - 1 - step;
        if (a[i][c] == 0) continue;
        if (best == cols || boost::multiprecision::abs(a[i][c]) < boost::multiprecision::abs(a[i][best])) best = c;
      }
      if (best == cols) break;
      swap_cols(pivot, best);
      bool done = true;
      for (std::size_t c = pivot + 1; c < cols; ++c) {
        if (a[i][c] == 0) continue;
        sub_col(c, pivot, floor_div(a[i][c], a[i][pivot]));
        if (a[i][c] != 0) done = false;
      }
      if (done) {
        ++pivot;
        break;
      }
    }
  }
  e.rank = pivot;
  return e;
}

// Images of e_0..e_d under a surjection Z^(d+1) -> Z^d whose kernel is the
// line spanned by the relation vector.
struct QuotientBasis {
  IntVector relation;
  std::vector<IntVector> images;
};

inline QuotientBasis quotient_basis(const IntVector& relation,
                                    EliminationOrder order = EliminationOrder::forward) {
  if (relation.size() < 2) throw Error("quotient_basis needs at least two weights");
  for (const auto& a : relation)
    if (a <= 0) throw Error("quotient weights must be positive");
  if (content(relation) != 1) throw Error("quotient weights must have no common factor");

  const std::size_t n = relation.size();
  // relation^T U = (1, 0, ..., 0); then U^T maps the relation to e_1 and rows
  // 2.. of U^T give the quotient coordinates.
  ColumnEchelon e = column_echelon(IntMatrix{relation}, n, order);
  if (e.reduced[0][0] < 0) {
    for (auto& row : e.transform) row[0] = -row[0];
  }
  QuotientBasis q;
  q.relation = relation;
  for (std::size_t i = 0; i < n; ++i) q.images.emplace_back(e.transform[i].begin() + 1, e.transform[i].end());
  return q;
}

// Basis (as columns of the returned rows-of-vectors) of the saturated lattice
// span(points) ∩ Z^n, plus coordinates of every point in that basis.
struct SpanLattice {
  std::vector<IntVector> basis;        // s vectors of length n
  std::vector<IntVector> coordinates;  // one length-s vector per input point
};

inline SpanLattice span_lattice(const std::vector<IntVector>& pts, std::size_t n) {
  // Integer kernel K of the point matrix: vectors orthogonal to all points.
  ColumnEchelon first = column_echelon(pts, n);
  IntMatrix orth;  // rows = kernel vectors (length n)
  for (std::size_t c = first.rank; c < n; ++c) {
    IntVector v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = first.transform[i][c];
    orth.push_back(std::move(v));
  }
  SpanLattice out;
  if (orth.empty()) {
    for (std::size_t i = 0; i < n; ++i) {
      IntVector v(n, 0);
      v[i] = 1;
      out.basis.push_back(std::move(v));
    }
    out.coordinates = pts;
    return out;
  }
  // The integer kernel of `orth` is saturated and equals span ∩ Z^n.
  ColumnEchelon second = column_echelon(orth, n);
  const std::size_t s = n - second.rank;
  for (std::size_t c = second.rank; c < n; ++c) {
    IntVector v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = second.transform[i][c];
    out.basis.push_back(std::move(v));
  }
  for (const auto& p : pts) {
    IntVector coords(s);
    for (std::size_t k = 0; k < s; ++k) coords[k] = dot(second.inverse[second.rank + k], p);
    out.coordinates.push_back(std::move(coords));
  }
  return out;
}

namespace detail {

using Face = std::vector<std::size_t>;  // sorted vertex indices

// Pulling triangulation of the face spanned by `face` (affine dimension k)
// from its lexicographically smallest vertex. facet_sets are the vertex index
// sets of the facets of the ambient polytope.
inline void triangulate_face(const std::vector<IntVector>& verts, const std::vector<Face>& facet_sets,
                             const Face& face, std::size_t k, std::vector<Face>& simplices) {
  if (k == 0) {
    simplices.push_back(face);
    return;
  }
  const std::size_t apex = *std::min_element(face.begin(), face.end(), [&](std::size_t a, std::size_t b) {
    return verts[a] < verts[b];
  });
  std::set<Face> subfaces;
  for (const auto& g : facet_sets) {
    Face sub;
    std::set_intersection(face.begin(), face.end(), g.begin(), g.end(), std::back_inserter(sub));
    if (sub.size() < k || sub.size() == face.size()) continue;
    if (std::binary_search(sub.begin(), sub.end(), apex)) continue;
    std::vector<IntVector> pts;
    for (auto i : sub) pts.push_back(verts[i]);
    if (affine_rank(pts) != k - 1) continue;
    subfaces.insert(std::move(sub));
  }
  for (const auto& sub : subfaces) {
    std::vector<Face> inner;
    triangulate_face(verts, facet_sets, sub, k - 1, inner);
    for (auto& s : inner) {
      s.push_back(apex);
      simplices.push_back(std::move(s));
    }
  }
}

}  // namespace detail

// (dim P)! times the Euclidean volume of a full-dimensional polytope, summed
// over a pulling triangulation. Works for any type exposing rank(),
// vertices(), and facets() with facet normal/distance fields.
template <class Polytope>
BigInt normalized_volume(const Polytope& p) {
  const std::size_t d = p.rank();
  const auto& verts = p.vertices();
  if (affine_rank(verts) != d) throw NotFullDimensional(affine_rank(verts), d);
  std::vector<detail::Face> facet_sets;
  for (const auto& f : p.facets()) {
    detail::Face s;
    for (std::size_t i = 0; i < verts.size(); ++i)
      if (dot(f.normal, verts[i]) == -f.distance) s.push_back(i);
    facet_sets.push_back(std::move(s));
  }
  detail::Face all(verts.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  std::vector<detail::Face> simplices;
  detail::triangulate_face(verts, facet_sets, all, d, simplices);
  BigInt vol = 0;
  for (const auto& s : simplices) {
    IntMatrix m;
    for (std::size_t i = 1; i < s.size(); ++i) m.push_back(verts[s[i]] - verts[s[0]]);
    vol += boost::multiprecision::abs(determinant(std::move(m)));
  }
  return vol;
}

}  // namespace ehrhart
