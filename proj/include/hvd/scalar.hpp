#pragma once

// Scalar policies. The kernel is written once and instantiated for
// float64 and for exact rationals; every operation that needs a square
// root goes through ScalarTraits<T>::sqrt, which is only exact for
// rationals that happen to be perfect squares.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "hvd/error.hpp"

namespace hvd {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

enum class ScalarKind { Float64, ExactRational };

constexpr std::string_view to_string(ScalarKind kind) {
  return kind == ScalarKind::Float64 ? "float64" : "exact-rational";
}

inline std::optional<ScalarKind> parse_scalar_kind(std::string_view s) {
  if (s == "float64" || s == "double" || s == "float") return ScalarKind::Float64;
  if (s == "exact-rational" || s == "exact" || s == "rational") return ScalarKind::ExactRational;
  return std::nullopt;
}

/// Square root of a non-negative rational when it is itself rational.
inline std::optional<Rational> exact_sqrt(const Rational& x) {
  if (x < 0) return std::nullopt;
  const BigInt num = boost::multiprecision::numerator(x);
  const BigInt den = boost::multiprecision::denominator(x);
  const BigInt rn = boost::multiprecision::sqrt(num);
  const BigInt rd = boost::multiprecision::sqrt(den);
  if (rn * rn != num || rd * rd != den) return std::nullopt;
  return Rational(rn, rd);
}

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr ScalarKind kind = ScalarKind::Float64;
  static constexpr bool exact = false;

  static double sqrt(double x) { return std::sqrt(x); }
  static double to_double(double x) { return x; }
  static double from_double(double x) { return x; }

  /// Sign with a dead band of width eps around zero.
  static int sign(double x, double eps) { return x > eps ? 1 : (x < -eps ? -1 : 0); }
  static bool equal(double a, double b, double eps) { return std::abs(a - b) <= eps; }
};

template <>
struct ScalarTraits<Rational> {
  static constexpr ScalarKind kind = ScalarKind::ExactRational;
  static constexpr bool exact = true;

  static Rational sqrt(const Rational& x) {
    auto r = exact_sqrt(x);
    if (!r) fail(ErrorCode::NotSquareRootFree, "square root of " + x.str() + " is not rational");
    return *r;
  }
  static double to_double(const Rational& x) { return x.convert_to<double>(); }
  /// Exact binary value of a double.
  static Rational from_double(double x) {
    if (!std::isfinite(x)) fail(ErrorCode::InvalidArgument, "non-finite value");
    int exp = 0;
    double mant = std::frexp(x, &exp);
    // 53 significant bits fit an int64 after scaling.
    const auto m = static_cast<std::int64_t>(std::ldexp(mant, 53));
    exp -= 53;
    Rational r(m);
    if (exp > 0) r *= Rational(BigInt(1) << exp);
    if (exp < 0) r /= Rational(BigInt(1) << -exp);
    return r;
  }
  static int sign(const Rational& x, double) { return x.sign(); }
  static bool equal(const Rational& a, const Rational& b, double) { return a == b; }
};

/// "num/den" encoding; integers are written as "n/1" so every entry has the
/// same shape.
inline std::string format_rational(const Rational& x) {
  return boost::multiprecision::numerator(x).str() + "/" + boost::multiprecision::denominator(x).str();
}

/// Digit string without leading zeros; Boost reads a leading 0 as octal.
inline std::string decimal_digits(std::string_view s) {
  const auto first = s.find_first_not_of('0');
  return first == std::string_view::npos ? std::string("0") : std::string(s.substr(first));
}

/// Accepts "n", "n/d" and finite decimals such as "-0.125" or "1e-3".
inline Rational parse_rational(std::string_view text) {
  auto bad = [&]() -> Rational { fail(ErrorCode::ParseError, "malformed rational '" + std::string(text) + "'"); };
  if (text.empty()) return bad();
  auto parse_int = [&](std::string_view s) -> BigInt {
    if (s.empty()) bad();
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) bad();
    for (std::size_t k = i; k < s.size(); ++k)
      if (s[k] < '0' || s[k] > '9') bad();
    BigInt v(decimal_digits(s.substr(i)));
    return s[0] == '-' ? BigInt(-v) : v;
  };
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    BigInt num = parse_int(text.substr(0, slash));
    BigInt den = parse_int(text.substr(slash + 1));
    if (den == 0) bad();
    return Rational(num, den);
  }
  // Decimal with optional exponent.
  std::string_view mant = text;
  long long exp10 = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    mant = text.substr(0, e);
    exp10 = static_cast<long long>(parse_int(text.substr(e + 1)).convert_to<long long>());
  }
  bool neg = false;
  if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) {
    neg = mant[0] == '-';
    mant.remove_prefix(1);
  }
  std::string digits;
  bool seen_dot = false;
  for (char c : mant) {
    if (c == '.') {
      if (seen_dot) bad();
      seen_dot = true;
    } else if (c >= '0' && c <= '9') {
      digits.push_back(c);
      if (seen_dot) --exp10;
    } else {
      bad();
    }
  }
  if (digits.empty()) bad();
  Rational r{BigInt(decimal_digits(digits))};
  const BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(exp10 < 0 ? -exp10 : exp10));
  if (exp10 > 0) r *= Rational(scale);
  if (exp10 < 0) r /= Rational(scale);
  return neg ? Rational(-r) : r;
}

}  // namespace hvd
