#pragma once

// Power (Laguerre) machinery: weighted sites, radical hyperplanes, the two
// site mappings that turn a hyperbolic Voronoi diagram into a power
// diagram, and point location.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "hvd/error.hpp"
#include "hvd/scalar.hpp"
#include "hvd/vec.hpp"

namespace hvd {

/// A ball Ball(center, weight) where weight is the squared radius; it may be
/// negative (imaginary radius).
template <class T>
struct WeightedSite {
  Vec<T> center;
  T weight{};
  std::size_t origin_index = 0;
};

/// { x : <normal, x> + offset <= 0 }. A zero normal encodes a constant
/// constraint (sites with equal centers).
template <class T>
struct Halfspace {
  Vec<T> normal;
  T offset{};

  bool is_constant() const {
    return std::all_of(normal.begin(), normal.end(), [](const T& v) { return v == 0; });
  }

  T evaluate(std::span<const T> x) const { return dot(std::span<const T>(normal), x) + offset; }
  T evaluate(const Vec<T>& x) const { return evaluate(std::span<const T>(x)); }

  friend bool operator==(const Halfspace&, const Halfspace&) = default;
};

/// |c - x|^2 - w
template <class T>
T power_distance(const WeightedSite<T>& s, std::span<const T> x) {
  return dist2(std::span<const T>(s.center), x) - s.weight;
}

template <class T>
T power_distance(const WeightedSite<T>& s, const Vec<T>& x) {
  return power_distance(s, std::span<const T>(x));
}

/// Scale to a canonical representative: unit normal for floats, primitive
/// integer coefficients for rationals. Constant halfspaces keep only the
/// sign of their offset.
inline Halfspace<double> canonicalize(Halfspace<double> h) {
  double n = std::sqrt(norm2(h.normal));
  if (n == 0.0) n = std::abs(h.offset);
  if (n == 0.0) return h;
  for (auto& v : h.normal) v /= n;
  h.offset /= n;
  return h;
}

inline Halfspace<Rational> canonicalize(Halfspace<Rational> h) {
  BigInt l = 1;
  auto acc_lcm = [&](const Rational& v) { l = boost::multiprecision::lcm(l, boost::multiprecision::denominator(v)); };
  for (const auto& v : h.normal) acc_lcm(v);
  acc_lcm(h.offset);
  BigInt g = 0;
  auto acc_gcd = [&](const Rational& v) {
    const BigInt num = boost::multiprecision::numerator(v * Rational(l));
    g = boost::multiprecision::gcd(g, num < 0 ? BigInt(-num) : num);
  };
  for (const auto& v : h.normal) acc_gcd(v);
  acc_gcd(h.offset);
  if (g == 0) return h;
  const Rational s(l, g);
  for (auto& v : h.normal) v *= s;
  h.offset *= s;
  return h;
}

/// Locus where the two power distances agree, oriented so that s_i's side
/// is the <= side:  2<x, c_j - c_i> + |c_i|^2 - |c_j|^2 + w_j - w_i <= 0.
template <class T>
Halfspace<T> radical_hyperplane(const WeightedSite<T>& si, const WeightedSite<T>& sj) {
  require_same_arity(si.center.size(), sj.center.size(), "radical_hyperplane");
  if (si.center == sj.center && si.weight == sj.weight)
    fail(ErrorCode::CoincidentSites, "sites " + std::to_string(si.origin_index) + " and " +
                                         std::to_string(sj.origin_index) + " have equal center and weight");
  Halfspace<T> h;
  h.normal.resize(si.center.size());
  for (std::size_t k = 0; k < si.center.size(); ++k) h.normal[k] = T(2) * (sj.center[k] - si.center[k]);
  h.offset = norm2(si.center) - norm2(sj.center) + sj.weight - si.weight;
  return canonicalize(h);
}

/// Klein point (unit model) -> ball with c = p / (2 s), w = |p|^2 / (4 s^2) - 1 / s,
/// s = sqrt(1 - |p|^2). Radical hyperplanes of mapped sites are the Klein
/// bisectors.
template <class T>
WeightedSite<T> klein_site_map(std::span<const T> p, std::size_t index = 0) {
  const T n2 = norm2(p);
  if (!(n2 < T(1))) fail(ErrorCode::DomainViolation, "klein_site_map: point outside the unit ball");
  const T s = ScalarTraits<T>::sqrt(T(1) - n2);
  WeightedSite<T> site;
  site.center = scaled(p, T(1) / (T(2) * s));
  site.weight = n2 / (T(4) * (T(1) - n2)) - T(1) / s;
  site.origin_index = index;
  return site;
}

/// Sign in front of the 1/p0 term of the hemisphere weight. The equidistance
/// oracle (tests/power_test.cpp) selects -1: with +1 the radical-hyperplane
/// constant comes out as 1/q0 - 1/p0, the opposite of the hemisphere
/// bisector's 1/p0 - 1/q0.
inline constexpr int kHemisphereWeightSign = -1;

/// Hemisphere point (x0, x_1..x_d) on the sphere of squared radius
/// radius_sq -> ball with c = x / (2 x0), w = |c|^2 + sign * radius_sq / x0.
/// Square-root free.
template <class T>
WeightedSite<T> hemisphere_site_map(std::span<const T> p, std::size_t index = 0, const T& radius_sq = T(1),
                                    int sign = kHemisphereWeightSign) {
  if (p.size() < 2) fail(ErrorCode::ArityMismatch, "hemisphere point needs d+1 >= 3 coordinates");
  if (!(p[0] > T(0))) fail(ErrorCode::DomainViolation, "hemisphere_site_map: x0 must be positive");
  WeightedSite<T> site;
  site.center.resize(p.size() - 1);
  for (std::size_t i = 1; i < p.size(); ++i) site.center[i - 1] = p[i] / (T(2) * p[0]);
  site.weight = norm2(site.center) + T(sign) * radius_sq / p[0];
  site.origin_index = index;
  return site;
}

template <class T>
WeightedSite<T> klein_site_map(const Vec<T>& p, std::size_t index = 0) {
  return klein_site_map(std::span<const T>(p), index);
}

template <class T>
WeightedSite<T> hemisphere_site_map(const Vec<T>& p, std::size_t index = 0, const T& radius_sq = T(1),
                                    int sign = kHemisphereWeightSign) {
  return hemisphere_site_map(std::span<const T>(p), index, radius_sq, sign);
}

struct Location {
  std::size_t index = 0;
  std::vector<std::size_t> ties;  // all sites within tolerance of the minimum, ascending
};

/// Default absolute tie tolerance on power values (float mode).
inline constexpr double kPowerTieTolerance = 1e-12;

/// Linear-scan argmin of the power distance. Ties (exact for rationals)
/// are reported; the lowest tied index is returned.
template <class T>
Location locate(std::span<const T> x, std::span<const WeightedSite<T>> sites, double tol = kPowerTieTolerance) {
  if (sites.empty()) fail(ErrorCode::EmptySites, "locate on an empty site list");
  std::vector<T> values(sites.size());
  T best = power_distance(sites[0], x);
  values[0] = best;
  for (std::size_t i = 1; i < sites.size(); ++i) {
    values[i] = power_distance(sites[i], x);
    if (values[i] < best) best = values[i];
  }
  Location loc;
  for (std::size_t i = 0; i < sites.size(); ++i)
    if (ScalarTraits<T>::sign(values[i] - best, tol) == 0) loc.ties.push_back(i);
  loc.index = loc.ties.front();
  return loc;
}

template <class T>
Location locate(const Vec<T>& x, const std::vector<WeightedSite<T>>& sites, double tol = kPowerTieTolerance) {
  return locate(std::span<const T>(x), std::span<const WeightedSite<T>>(sites), tol);
}

}  // namespace hvd
