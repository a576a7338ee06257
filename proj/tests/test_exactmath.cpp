#include <gtest/gtest.h>

#include "ehrhart/exactmath.hpp"
#include "ehrhart/verify.hpp"
#include "support.hpp"

using namespace ehrhart;
using ehrhart::testing::frac;

namespace {

const FracPoly kP = frac({{"0", 1}, {"1/2", 2}, {"1", 1}});
const FracPoly kQ = frac({{"0", 1}, {"1/3", 1}, {"2/3", 1}, {"1", 1}});

}  // namespace

TEST(FracPoly, CanonicalFormReducesDenominator) {
  const FracPoly f(4, {{0, 1}, {2, 2}, {4, 1}});
  EXPECT_EQ(f.denominator(), 2);
  EXPECT_EQ(f, kP);
  EXPECT_EQ(FracPoly(6, {{0, 3}, {6, 0}}).denominator(), 1);
  EXPECT_TRUE(FracPoly(5, {{3, 0}}).is_zero());
  EXPECT_EQ(FracPoly(5, {{3, 0}}), FracPoly());
}

TEST(FracPoly, RejectsNegativeExponentsAndDenominators) {
  EXPECT_THROW(FracPoly(2, {{-1, 1}}), Error);
  EXPECT_THROW(FracPoly(0, {{1, 1}}), Error);
  EXPECT_THROW(FracPoly::monomial(1, Rational(-1, 2)), Error);
}

TEST(FracPoly, CoefficientLookup) {
  EXPECT_EQ(kP.coefficient(Rational(1, 2)), 2);
  EXPECT_EQ(kP.coefficient(Rational(1, 3)), 0);
  EXPECT_EQ(kP.degree(), 1);
  EXPECT_EQ(kQ.coefficient(Rational(2, 3)), 1);
}

TEST(FracPoly, WorkedProduct) {
  const FracPoly expected = frac({{"0", 1}, {"1/3", 1}, {"1/2", 2}, {"2/3", 1}, {"5/6", 2}, {"1", 2},
                                  {"7/6", 2}, {"4/3", 1}, {"3/2", 2}, {"5/3", 1}, {"2", 1}});
  EXPECT_EQ(mul(kP, kQ), expected);
  EXPECT_EQ(kP * FracPoly::constant(1), kP);
}

TEST(FracPoly, SquareHasFourTimesThreeHalves) {
  const FracPoly expected = frac({{"0", 1}, {"1/2", 4}, {"1", 6}, {"3/2", 4}, {"2", 1}});
  EXPECT_EQ(kP * kP, expected);
  EXPECT_EQ(kP.pow(2), expected);
  EXPECT_EQ(kP.pow(0), FracPoly::constant(1));
}

TEST(FracPoly, ToString) {
  EXPECT_EQ(kP.to_string(), "1 + 2t^(1/2) + t");
  EXPECT_EQ(FracPoly().to_string(), "0");
  EXPECT_EQ(FracPoly(1, {{0, -1}, {2, -3}}).to_string(), "-1 - 3t^2");
}

TEST(IntPoly, TrimsAndConverts) {
  const IntPoly p{1, 3, 0, 0};
  EXPECT_EQ(p.degree(), 1);
  EXPECT_EQ(IntPoly(p.to_frac()), p);
  EXPECT_EQ(IntPoly().degree(), -1);
  EXPECT_THROW(static_cast<void>(IntPoly(kP)), Error);
  EXPECT_EQ((IntPoly{1, 1} * IntPoly{1, 1}), (IntPoly{1, 2, 1}));
  EXPECT_EQ((IntPoly{1, 3}.eval(Rational(1, 4))), Rational(7, 4));
}

TEST(Psi, RoundsExponentsUp) {
  EXPECT_EQ(psi(kP), (IntPoly{1, 3}));
  EXPECT_EQ(psi(kQ), (IntPoly{1, 3}));
  EXPECT_EQ(psi(kP * kQ), (IntPoly{1, 8, 7}));
  EXPECT_EQ(psi(kP * kP), (IntPoly{1, 10, 5}));
  EXPECT_EQ(psi(IntPoly{2, 0, 5}.to_frac()), (IntPoly{2, 0, 5}));
}

TEST(Theta, TakesFractionalParts) {
  EXPECT_EQ(theta(kP), frac({{"0", 2}, {"1/2", 2}}));
  EXPECT_EQ(theta(kQ), frac({{"0", 2}, {"1/3", 1}, {"2/3", 1}}));
  EXPECT_EQ(theta(IntPoly{1, 4, 6}.to_frac()), FracPoly::constant(11));
}

TEST(IntegerPart, KeepsIntegerExponents) {
  EXPECT_EQ(integer_part(kP * kQ), (IntPoly{1, 2, 1}));
  EXPECT_EQ(integer_part(kP), (IntPoly{1, 1}));
  EXPECT_EQ(integer_part(IntPoly{3, 1}.to_frac()), (IntPoly{3, 1}));
}

TEST(Eval, ExactAtPerfectPowers) {
  const Evaluation one = eval(kP, 1);
  EXPECT_TRUE(one.exact());
  EXPECT_EQ(one.lower, 4);
  EXPECT_EQ(eval(kP, 4).lower, 9);
  EXPECT_EQ(eval(kQ, Rational(8, 27)).lower, Rational(1) + Rational(2, 3) + Rational(4, 9) + Rational(8, 27));
  EXPECT_THROW(eval(kP, 0), Error);
  EXPECT_THROW(eval(kP, -1), Error);
}

TEST(Eval, EnclosesIrrationalValues) {
  const Evaluation e = eval(kP, 2, 80);
  EXPECT_FALSE(e.exact());
  EXPECT_LT(e.lower, e.upper);
  EXPECT_LT(e.upper - e.lower, Rational(1, BigInt(1) << 70));
  EXPECT_NEAR(e.to_double(), 3.0 + 2.0 * std::sqrt(2.0), 1e-14);
  const Evaluation finer = eval(kP, 2, 200);
  EXPECT_GE(finer.lower, e.lower);
  EXPECT_LE(finer.upper, e.upper);
}

TEST(Reflect, SymmetricExamples) {
  EXPECT_EQ(reflect(kP, 1), kP);
  EXPECT_EQ(reflect(kQ, 1), kQ);
  EXPECT_EQ(reflect(FracPoly::constant(1), 2), FracPoly::monomial(1, 2));
  EXPECT_THROW(reflect(kP * kP, 1), Error);
}

TEST(Moments, ExactMeanAndVariance) {
  EXPECT_EQ(moments(kP).mean, Rational(1, 2));
  EXPECT_EQ(moments(kP).variance, Rational(1, 8));
  EXPECT_EQ(moments(kQ).mean, Rational(1, 2));
  EXPECT_EQ(moments(kQ).variance, Rational(5, 36));
  EXPECT_EQ(moments(FracPoly::constant(3)).variance, 0);
  EXPECT_THROW(moments(FracPoly()), Error);
  EXPECT_THROW(moments(FracPoly(1, {{0, 1}, {1, -1}})), Error);
}

TEST(HarrisBounds, WorkedChains) {
  const FracPoly f = frac({{"0", 1}, {"1/2", 1}});
  const HarrisChain c = psi_power_bounds(f, 2, 4);
  EXPECT_TRUE(c.holds);
  EXPECT_TRUE(c.decided);
  EXPECT_EQ(c.lhs.lower, 9);
  EXPECT_EQ(c.mid.lower, 13);
  EXPECT_EQ(c.rhs.lower, 18);

  const HarrisChain small = psi_power_bounds(kP, 1, Rational(1, 4));
  EXPECT_FALSE(small.x_at_least_one);
  EXPECT_EQ(small.lhs.lower, Rational(7, 4));
  EXPECT_EQ(small.mid.lower, Rational(9, 4));
  EXPECT_EQ(small.rhs.lower, Rational(7, 2));
  EXPECT_TRUE(small.holds);

  const HarrisChain tight = psi_power_bounds(IntPoly{1, 2, 1}.to_frac(), 5, 3);
  EXPECT_TRUE(tight.holds);
  EXPECT_EQ(tight.lhs.lower, tight.mid.lower);
  EXPECT_EQ(tight.mid.lower, tight.rhs.lower);
  EXPECT_THROW(psi_power_bounds(FracPoly(2, {{0, 1}, {1, -1}}), 2, 4), Error);
  EXPECT_THROW(psi_power_bounds(kP, 0, 4), Error);
}

TEST(HarrisBounds, SeparatesIrrationalEnclosures) {
  const HarrisChain c = psi_power_bounds(kQ, 7, 5);
  EXPECT_TRUE(c.holds);
  EXPECT_TRUE(c.decided);
  EXPECT_FALSE(c.lhs.exact());
}

// Ring laws and map identities on seeded random polynomials.
class ExactMathProperties : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(ExactMathProperties, RingLawsAndMaps) {
  RandomSource rng(GetParam());
  for (int i = 0; i < 40; ++i) {
    const FracPoly f = rng.frac_poly(), g = rng.frac_poly(), h = rng.frac_poly();
    ASSERT_EQ(f * g, g * f);
    ASSERT_EQ((f * g) * h, f * (g * h));
    ASSERT_EQ(f * (g + h), f * g + f * h);
    ASSERT_EQ(psi(f).sum(), eval(f, 1).lower);
    ASSERT_EQ(psi(psi(f).to_frac()), psi(f));
    ASSERT_EQ(theta(theta(f)), theta(f));
    const auto d = static_cast<std::int64_t>(ehrhart::ceil(f.degree()));
    ASSERT_EQ(reflect(reflect(f, d), d), f);
    const FracPoly integral = psi(g).to_frac();
    ASSERT_EQ(psi(f * integral), psi(f) * psi(integral));
  }
}

TEST_P(ExactMathProperties, HarrisChainsHoldInBothRegimes) {
  RandomSource rng(GetParam());
  for (int i = 0; i < 30; ++i) {
    const FracPoly f = rng.frac_poly();
    const auto n = static_cast<unsigned>(rng.uniform(1, 10));
    // r-th powers of rationals keep everything exact.
    const auto r = static_cast<unsigned>(f.denominator());
    const Rational small = ehrhart::pow(Rational(rng.uniform(1, 4), 5), r);
    const Rational large = ehrhart::pow(Rational(rng.uniform(6, 12), 5), r);
    const HarrisChain a = psi_power_bounds(f, n, small), b = psi_power_bounds(f, n, large);
    ASSERT_TRUE(a.holds && a.decided && a.mid.exact()) << f.to_string() << " n=" << n;
    ASSERT_TRUE(b.holds && b.decided && b.lhs.exact()) << f.to_string() << " n=" << n;
    ASSERT_TRUE(psi_power_bounds(f, n, Rational(rng.uniform(11, 40), 10)).holds);
  }
}

TEST_P(ExactMathProperties, RootsApproachTheValue) {
  RandomSource rng(GetParam());
  for (int i = 0; i < 10; ++i) {
    const FracPoly f = rng.frac_poly();
    const Rational x(rng.uniform(1, 30), 10);
    const double target = eval(f, x).to_double();
    auto gap = [&](unsigned n) {
      return std::abs(std::exp(log_big(psi(f.pow(n)).eval(x)) / n) - target);
    };
    ASSERT_LE(gap(64), gap(1) + 1e-12) << f.to_string() << " at " << x;
    ASSERT_LT(gap(64), 0.1 * target + 1e-12);
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, ExactMathProperties, ::testing::Values(1, 2, 3, 17));
