#include <gtest/gtest.h>

#include "ehrhart/ehrhart.hpp"
#include "ehrhart/gallery.hpp"
#include "ehrhart/polytope.hpp"
#include "ehrhart/verify.hpp"

using namespace ehrhart;

namespace {

LatticePolytope pq() {
  return LatticePolytope::from_vertices(
      2, {make_vector({2, 0}), make_vector({-2, 0}), make_vector({0, -1}), make_vector({0, 3})});
}

}  // namespace

TEST(FromVertices, DropsNonVertices) {
  const auto p = LatticePolytope::from_vertices(1, {make_vector({-2}), make_vector({2}), make_vector({0})});
  EXPECT_EQ(p.vertices(), (std::vector<IntVector>{make_vector({-2}), make_vector({2})}));
  EXPECT_EQ(p.origin_position(), OriginPosition::interior);

  const auto sq = LatticePolytope::from_vertices(
      2, {make_vector({0, 0}), make_vector({1, 0}), make_vector({0, 1}), make_vector({1, 1}), make_vector({1, 0}),
          make_vector({0, 0})});
  EXPECT_EQ(sq.vertices().size(), 4u);
  EXPECT_EQ(sq.origin_position(), OriginPosition::boundary);
}

TEST(FromVertices, RejectsDegenerateInput) {
  try {
    LatticePolytope::from_vertices(2, {make_vector({0, 0}), make_vector({1, 0})});
    FAIL() << "expected NotFullDimensional";
  } catch (const NotFullDimensional& e) {
    EXPECT_EQ(e.affine_rank(), 1u);
  }
  try {
    LatticePolytope::from_vertices(2, {make_vector({0, 0}), make_vector({1, 1}), make_vector({3, 3})});
    FAIL() << "expected NotFullDimensional";
  } catch (const NotFullDimensional& e) {
    EXPECT_EQ(e.affine_rank(), 1u);
  }
  EXPECT_THROW(LatticePolytope::from_vertices(2, {make_vector({0, 0, 1})}), Error);
  EXPECT_THROW(LatticePolytope::from_vertices(13, {}), Error);
  EXPECT_THROW(LatticePolytope::from_vertices(0, {}), Error);
}

TEST(Facets, IntervalsAndFreeSum) {
  const auto p = interval(-2, 2);
  ASSERT_EQ(p.facets().size(), 2u);
  EXPECT_EQ(p.facets()[0].normal, make_vector({-1}));
  EXPECT_EQ(p.facets()[0].distance, 2);
  EXPECT_EQ(p.facets()[1].normal, make_vector({1}));
  EXPECT_EQ(p.facets()[1].distance, 2);

  const auto q = interval(-1, 3);
  EXPECT_EQ(q.facets()[0].distance, 3);
  EXPECT_EQ(q.facets()[1].distance, 1);

  std::vector<std::pair<IntVector, BigInt>> got;
  const auto quad = pq();
  for (const auto& f : facets(quad)) got.emplace_back(f.normal, f.distance);
  const std::vector<std::pair<IntVector, BigInt>> expected{
      {make_vector({-3, -2}), 6}, {make_vector({-1, 2}), 2}, {make_vector({1, 2}), 2}, {make_vector({3, -2}), 6}};
  EXPECT_EQ(got, expected);
}

TEST(GorensteinDenominator, Examples) {
  EXPECT_EQ(gorenstein_denominator(interval(-2, 2)), 2);
  EXPECT_EQ(gorenstein_denominator(interval(-1, 3)), 3);
  EXPECT_EQ(gorenstein_denominator(pq()), 6);
  EXPECT_EQ(gorenstein_denominator(standard_simplex(3)), 1);
  EXPECT_THROW(gorenstein_denominator(interval(1, 3)), Error);
}

TEST(DualVertices, Examples) {
  auto d = dual_vertices(interval(-2, 2));
  std::sort(d.begin(), d.end());
  EXPECT_EQ(d, (std::vector<RationalPoint>{{Rational(-1, 2)}, {Rational(1, 2)}}));
  d = dual_vertices(interval(-1, 3));
  std::sort(d.begin(), d.end());
  EXPECT_EQ(d, (std::vector<RationalPoint>{{Rational(-1, 3)}, {Rational(1)}}));
  d = dual_vertices(standard_simplex(2));
  EXPECT_EQ(d, (std::vector<RationalPoint>{{Rational(-1), Rational(-1)}}));
}

TEST(FreeSum, Examples) {
  EXPECT_EQ(free_sum(interval(-2, 2), interval(-1, 3)), pq());
  const auto cross = free_sum(interval(-1, 1), interval(-1, 1));
  EXPECT_EQ(cross.vertices(), (std::vector<IntVector>{make_vector({-1, 0}), make_vector({0, -1}),
                                                      make_vector({0, 1}), make_vector({1, 0})}));
  EXPECT_EQ(free_sum(standard_simplex(2), standard_simplex(1)), standard_simplex(3));
  EXPECT_THROW(free_sum(interval(1, 2), interval(-1, 1)), Error);
}

TEST(MinDilate, Examples) {
  EXPECT_EQ(*min_dilate(interval(-2, 2), make_vector({3})), Rational(3, 2));
  EXPECT_EQ(*min_dilate(pq(), make_vector({0, 0})), 0);
  EXPECT_EQ(*min_dilate(interval(-1, 3), make_vector({1})), Rational(1, 3));
  EXPECT_FALSE(min_dilate(standard_simplex(2), make_vector({-1, 0})).has_value());
}

TEST(Normalize, Examples) {
  const auto a = normalize({make_vector({2, 0}), make_vector({4, 0})}, 2);
  EXPECT_EQ(a.rank(), 1u);
  EXPECT_EQ(normalized_volume(a), 4);
  const bool nonneg = a.vertices() == std::vector<IntVector>{make_vector({0}), make_vector({4})};
  const bool nonpos = a.vertices() == std::vector<IntVector>{make_vector({-4}), make_vector({0})};
  EXPECT_TRUE(nonneg || nonpos);

  const auto b = normalize({make_vector({-2}), make_vector({2})}, 1);
  EXPECT_EQ(b, interval(-2, 2));

  const auto c = normalize({make_vector({0, 2}), make_vector({2, 0})}, 2);
  EXPECT_EQ(c.vertices(), (std::vector<IntVector>{make_vector({0, 0}), make_vector({0, 2}), make_vector({2, 0})}));

  const auto d = normalize({make_vector({1, 1, 1}), make_vector({-1, 0, 1})}, 3);
  EXPECT_EQ(d.rank(), 2u);
  EXPECT_EQ(normalized_volume(d), 1);

  EXPECT_THROW(normalize({make_vector({0, 0})}, 2), Error);
  EXPECT_THROW(normalize({}, 2), Error);
}

class PolytopeProperties : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(PolytopeProperties, FacetsAndMembership) {
  RandomSource rng(GetParam());
  for (int i = 0; i < 30; ++i) {
    const auto p = rng.polytope(3);
    for (const auto& f : p.facets()) {
      ASSERT_EQ(content(f.normal), 1);
      std::vector<IntVector> tight;
      for (const auto& v : p.vertices()) {
        ASSERT_GE(dot(f.normal, v), -f.distance);
        if (dot(f.normal, v) == -f.distance) tight.push_back(v);
      }
      ASSERT_EQ(affine_rank(tight), p.rank() - 1) << describe(p);
    }
    for (int k = 0; k < 30; ++k) {
      IntVector v;
      for (std::size_t j = 0; j < p.rank(); ++j) v.emplace_back(rng.uniform(-5, 5));
      ASSERT_EQ(p.contains(v), in_hull_by_simplices(p.vertices(), v)) << describe(p);
    }
  }
}

TEST_P(PolytopeProperties, FreeSumStructure) {
  RandomSource rng(GetParam());
  for (int i = 0; i < 20; ++i) {
    const auto p = rng.polytope(2), q = rng.polytope(2);
    const auto s = free_sum(p, q);
    ASSERT_EQ(gorenstein_denominator(s), lcm64(gorenstein_denominator(p), gorenstein_denominator(q)));
    auto dp = dual_vertices(p), dq = dual_vertices(q);
    std::sort(dp.begin(), dp.end());
    std::sort(dq.begin(), dq.end());
    for (const auto& u : dual_vertices(s)) {
      RationalPoint a(u.begin(), u.begin() + static_cast<long>(p.rank()));
      RationalPoint b(u.begin() + static_cast<long>(p.rank()), u.end());
      // Faces of the dual product: each coordinate block lies in the
      // corresponding dual polyhedron, and every dual vertex of the sum is
      // a pair of dual vertices when both origins are interior.
      if (p.origin_position() == OriginPosition::interior && q.origin_position() == OriginPosition::interior) {
        ASSERT_TRUE(std::binary_search(dp.begin(), dp.end(), a)) << describe(p) << " " << describe(q);
        ASSERT_TRUE(std::binary_search(dq.begin(), dq.end(), b)) << describe(p) << " " << describe(q);
      }
    }
    const auto x = rng.polytope(1);
    ASSERT_EQ(hstar(free_sum(free_sum(p, q), x)), hstar(free_sum(p, free_sum(q, x))));
    ASSERT_EQ(hstar(free_sum(p, q)), hstar(free_sum(q, p)));
  }
}

TEST_P(PolytopeProperties, MinDilateOnTheGrid) {
  RandomSource rng(GetParam());
  for (int i = 0; i < 20; ++i) {
    const auto p = rng.polytope(3);
    const std::int64_t r = gorenstein_denominator(p);
    for (int k = 0; k < 20; ++k) {
      IntVector v;
      for (std::size_t j = 0; j < p.rank(); ++j) v.emplace_back(rng.uniform(-6, 6));
      const auto mu = min_dilate(p, v);
      if (!mu) continue;
      ASSERT_EQ(r % ehrhart::denominator(*mu), 0) << describe(p);
      ASSERT_EQ(*mu <= 1, p.contains(v));
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, PolytopeProperties, ::testing::Values(11, 12, 13));
