#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "test_support.hpp"

using namespace hvd;
using hvd::testing::random_point;

namespace {

const Curvature kUnit(-1.0);

void expect_coords(const Vec<double>& got, const Vec<double>& want, double tol) {
  ASSERT_EQ(got.size(), want.size());
  for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], want[i], tol) << "coordinate " << i;
}

}  // namespace

TEST(Convert, KleinImagesOfAPoint) {
  const ModelPoint k{ModelTag::Klein, {0.6, 0.0}, kUnit};
  expect_coords(convert(k, ModelTag::Hyperboloid).coords, {1.25, 0.75, 0.0}, 1e-15);
  expect_coords(convert(k, ModelTag::Poincare).coords, {1.0 / 3.0, 0.0}, 1e-15);
  expect_coords(convert(k, ModelTag::Hemisphere).coords, {0.8, 0.6, 0.0}, 1e-15);
  expect_coords(convert(k, ModelTag::UpperHalfSpace).coords, {0.6, 0.8}, 1e-15);
  expect_coords(convert({ModelTag::Klein, {0.0, 0.0}, kUnit}, ModelTag::UpperHalfSpace).coords, {0.0, 1.0}, 0.0);
}

TEST(Convert, UpperHalfSpaceHeightIsTheLastCoordinate) {
  // Moving toward +x_d in Klein moves toward infinity in the upper half-space.
  const auto lo = convert({ModelTag::Klein, {0.0, 0.0, 0.2}, kUnit}, ModelTag::UpperHalfSpace).coords;
  const auto hi = convert({ModelTag::Klein, {0.0, 0.0, 0.7}, kUnit}, ModelTag::UpperHalfSpace).coords;
  EXPECT_GT(hi[2], lo[2]);
  EXPECT_NEAR(hi[0], 0.0, 0.0);
}

TEST(Convert, AllOrderedPairsAreIsometries) {
  std::mt19937_64 rng(5);
  for (const double kappa : {-1.0, -0.3}) {
    const Curvature c(kappa);
    for (ModelTag from : kAllModels)
      for (ModelTag to : kAllModels) {
        if (from == to) continue;
        for (int k = 0; k < 100; ++k) {
          const ModelPoint p = random_point(rng, from, 3, c), q = random_point(rng, from, 3, c);
          const double before = distance(p, q);
          const double after = distance(convert(p, to), convert(q, to));
          EXPECT_NEAR(after, before, 1e-9) << to_string(from) << " -> " << to_string(to);
        }
      }
  }
}

TEST(Convert, RoundTripsAreComponentwiseExactToRounding) {
  std::mt19937_64 rng(9);
  for (ModelTag from : kAllModels)
    for (ModelTag to : kAllModels)
      for (int k = 0; k < 100; ++k) {
        const ModelPoint p = random_point(rng, from, 2, kUnit, 0.9);
        const ModelPoint back = convert(convert(p, to), from);
        expect_coords(back.coords, p.coords, 1e-12 * std::max(1.0, std::sqrt(norm2(p.coords))));
      }
}

TEST(Convert, ResultsAreValidAndKeepCurvature) {
  std::mt19937_64 rng(13);
  const Curvature c(-2.0);
  for (ModelTag from : kAllModels)
    for (ModelTag to : kAllModels) {
      const ModelPoint q = convert(random_point(rng, from, 4, c), to);
      EXPECT_EQ(q.model, to);
      EXPECT_EQ(q.curvature, c);
      EXPECT_NO_THROW(validate_point(q));
    }
}

TEST(Convert, IdentityIsBitExact) {
  const ModelPoint p{ModelTag::Poincare, {0.1234567890123, -0.3}, kUnit};
  EXPECT_EQ(convert(p, ModelTag::Poincare).coords, p.coords);
}

TEST(Convert, NearBoundaryKleinPointsUnderflow) {
  const ModelPoint p{ModelTag::Klein, {std::nextafter(1.0, 0.0), 0.0}, kUnit};
  try {
    convert(p, ModelTag::Poincare);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NumericalUnderflow);
  }
}

TEST(Convert, RejectsInvalidInput) {
  try {
    convert({ModelTag::Poincare, {0.9, 0.9}, kUnit}, ModelTag::Klein);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DomainViolation);
  }
}

TEST(ExactConvert, SquareRootFreePathsStayRational) {
  EXPECT_TRUE(unit::square_root_free(ModelTag::Poincare, ModelTag::Klein));
  EXPECT_TRUE(unit::square_root_free(ModelTag::Hyperboloid, ModelTag::Klein));
  EXPECT_FALSE(unit::square_root_free(ModelTag::Klein, ModelTag::Poincare));
  const Vec<Rational> p{Rational(1, 3), Rational(0)};
  EXPECT_EQ(unit::poincare_to_klein<Rational>(p), (Vec<Rational>{Rational(3, 5), Rational(0)}));
  const Vec<Rational> l{Rational(5, 4), Rational(3, 4), Rational(0)};
  EXPECT_EQ(unit::hyperboloid_to_klein<Rational>(l), (Vec<Rational>{Rational(3, 5), Rational(0)}));
  const Vec<Rational> u{Rational(3, 5), Rational(4, 5)};
  EXPECT_EQ(unit::upper_to_klein<Rational>(u), (Vec<Rational>{Rational(3, 5), Rational(0)}));
}

TEST(ExactConvert, PerfectSquaresSucceedOthersRaise) {
  const Vec<Rational> k{Rational(3, 5), Rational(0)};
  EXPECT_EQ(unit::klein_to_hemisphere<Rational>(k), (Vec<Rational>{Rational(4, 5), Rational(3, 5), Rational(0)}));
  const Vec<Rational> bad{Rational(1, 2), Rational(0)};
  try {
    unit::klein_to_poincare<Rational>(bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotSquareRootFree);
  }
}

TEST(Hemisphere, LiftAndDropAreVerticalProjections) {
  const ModelPoint k{ModelTag::Klein, {0.3, -0.4}, kUnit};
  const ModelPoint b = lift_to_hemisphere(k);
  EXPECT_NEAR(b.coords[0], std::sqrt(0.75), 1e-15);
  EXPECT_EQ(b.coords[1], 0.3);
  EXPECT_EQ(b.coords[2], -0.4);
  expect_coords(drop_to_klein(b).coords, k.coords, 0.0);
  EXPECT_THROW(lift_to_hemisphere(b), Error);
}
