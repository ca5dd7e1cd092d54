#include <gtest/gtest.h>

#include "hvd/scalar.hpp"

using hvd::ErrorCode;
using hvd::Rational;
using hvd::ScalarTraits;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const hvd::Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(ExactSqrt, PerfectSquaresOnly) {
  EXPECT_EQ(*hvd::exact_sqrt(Rational(9, 4)), Rational(3, 2));
  EXPECT_EQ(*hvd::exact_sqrt(Rational(0)), Rational(0));
  EXPECT_FALSE(hvd::exact_sqrt(Rational(2)));
  EXPECT_FALSE(hvd::exact_sqrt(Rational(4, 3)));
  EXPECT_FALSE(hvd::exact_sqrt(Rational(-4)));
}

TEST(ExactSqrt, TraitsRaiseNotSquareRootFree) {
  EXPECT_EQ(ScalarTraits<Rational>::sqrt(Rational(25, 49)), Rational(5, 7));
  EXPECT_EQ(code_of([] { ScalarTraits<Rational>::sqrt(Rational(2)); }), ErrorCode::NotSquareRootFree);
}

TEST(FromDouble, IsTheExactBinaryValue) {
  const Rational tenth = ScalarTraits<Rational>::from_double(0.1);
  EXPECT_NE(tenth, Rational(1, 10));
  EXPECT_EQ(ScalarTraits<Rational>::to_double(tenth), 0.1);
  const auto den = boost::multiprecision::denominator(tenth);
  EXPECT_EQ(den & (den - 1), 0);  // power of two
  EXPECT_EQ(ScalarTraits<Rational>::from_double(-0.75), Rational(-3, 4));
  EXPECT_EQ(ScalarTraits<Rational>::from_double(0.0), Rational(0));
  for (double x : {1e300, -3.5e-200, 4.9406564584124654e-324, 123456.789})
    EXPECT_EQ(ScalarTraits<Rational>::to_double(ScalarTraits<Rational>::from_double(x)), x);
}

TEST(RationalText, RoundTrips) {
  for (const Rational& x : {Rational(3, 4), Rational(-5), Rational(0), Rational(-7, 12)}) {
    EXPECT_EQ(hvd::parse_rational(hvd::format_rational(x)), x);
  }
  EXPECT_EQ(hvd::format_rational(Rational(-5)), "-5/1");
  EXPECT_EQ(hvd::format_rational(Rational(6, 8)), "3/4");
}

TEST(RationalText, AcceptsDecimals) {
  EXPECT_EQ(hvd::parse_rational("0.125"), Rational(1, 8));
  EXPECT_EQ(hvd::parse_rational("1e-3"), Rational(1, 1000));
  EXPECT_EQ(hvd::parse_rational("-2.5e1"), Rational(-25));
  EXPECT_EQ(hvd::parse_rational("7"), Rational(7));
  EXPECT_EQ(hvd::parse_rational("010/012"), Rational(10, 12));
  EXPECT_EQ(hvd::parse_rational("0.000"), Rational(0));
  EXPECT_EQ(hvd::parse_rational("+3/9"), Rational(1, 3));
}

TEST(RationalText, RejectsMalformed) {
  for (const char* bad : {"", "abc", "1/0", "1/", "/2", "1.2.3", "--1"})
    EXPECT_EQ(code_of([&] { hvd::parse_rational(bad); }), ErrorCode::ParseError) << bad;
}

TEST(ScalarKind, Names) {
  EXPECT_EQ(hvd::parse_scalar_kind("float64"), hvd::ScalarKind::Float64);
  EXPECT_EQ(hvd::parse_scalar_kind("exact-rational"), hvd::ScalarKind::ExactRational);
  EXPECT_FALSE(hvd::parse_scalar_kind("int"));
  EXPECT_EQ(hvd::to_string(hvd::ScalarKind::ExactRational), "exact-rational");
}

TEST(Sign, DeadBandForFloatsExactForRationals) {
  EXPECT_EQ(ScalarTraits<double>::sign(1e-13, 1e-12), 0);
  EXPECT_EQ(ScalarTraits<double>::sign(-2e-12, 1e-12), -1);
  EXPECT_EQ(ScalarTraits<Rational>::sign(Rational(1, 1000000000), 1.0), 1);
}
