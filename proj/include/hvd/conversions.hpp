#pragma once

// Maps between the five models. Klein coordinates are the hub: every
// conversion goes source -> Klein -> target. The primitives below act on
// unit-model coordinates and are templated on the scalar so that the
// square-root-free directions (anything -> Klein) stay exact for rationals.
//
// Upper half-space points keep the height in the last coordinate.

#include <cmath>
#include <span>
#include <string>

#include "hvd/error.hpp"
#include "hvd/models.hpp"
#include "hvd/scalar.hpp"
#include "hvd/vec.hpp"

namespace hvd {

/// Klein points closer than this to the unit sphere are rejected: the
/// Poincare/upper/hyperboloid denominators vanish there.
inline constexpr double kBoundaryMargin = 1e-14;

namespace unit {

// Klein -> Poincare ball: x / (1 + sqrt(1 - |x|^2))
template <class T>
Vec<T> klein_to_poincare(std::span<const T> x) {
  const T s = ScalarTraits<T>::sqrt(T(1) - norm2(x));
  return scaled(x, T(1) / (T(1) + s));
}

// Poincare ball -> Klein: 2x / (1 + |x|^2)
template <class T>
Vec<T> poincare_to_klein(std::span<const T> x) {
  return scaled(x, T(2) / (T(1) + norm2(x)));
}

// Klein -> upper half-space. Stereographic projection of the lifted
// hemisphere point from the boundary pole e_d; height last.
template <class T>
Vec<T> klein_to_upper(std::span<const T> x) {
  const std::size_t d = x.size();
  const T s = ScalarTraits<T>::sqrt(T(1) - norm2(x));
  const T den = T(1) - x[d - 1];
  Vec<T> u(d);
  for (std::size_t i = 0; i + 1 < d; ++i) u[i] = x[i] / den;
  u[d - 1] = s / den;
  return u;
}

// Upper half-space (height last) -> Klein:
// (2u_1, ..., 2u_{d-1}, |u|^2 - 1) / (1 + |u|^2)
template <class T>
Vec<T> upper_to_klein(std::span<const T> u) {
  const std::size_t d = u.size();
  const T n2 = norm2(u);
  const T den = T(1) + n2;
  Vec<T> x(d);
  for (std::size_t i = 0; i + 1 < d; ++i) x[i] = T(2) * u[i] / den;
  x[d - 1] = (n2 - T(1)) / den;
  return x;
}

// Klein -> hyperboloid: (1, x) / sqrt(1 - |x|^2)
template <class T>
Vec<T> klein_to_hyperboloid(std::span<const T> x) {
  const T inv = T(1) / ScalarTraits<T>::sqrt(T(1) - norm2(x));
  Vec<T> l(x.size() + 1);
  l[0] = inv;
  for (std::size_t i = 0; i < x.size(); ++i) l[i + 1] = x[i] * inv;
  return l;
}

// Hyperboloid -> Klein: central projection (x_1, ..., x_d) / x0
template <class T>
Vec<T> hyperboloid_to_klein(std::span<const T> l) {
  Vec<T> x(l.size() - 1);
  for (std::size_t i = 1; i < l.size(); ++i) x[i - 1] = l[i] / l[0];
  return x;
}

// Klein -> hemisphere: vertical lift (sqrt(1 - |x|^2), x)
template <class T>
Vec<T> klein_to_hemisphere(std::span<const T> x) {
  Vec<T> b(x.size() + 1);
  b[0] = ScalarTraits<T>::sqrt(T(1) - norm2(x));
  for (std::size_t i = 0; i < x.size(); ++i) b[i + 1] = x[i];
  return b;
}

// Hemisphere -> Klein: vertical projection, drop x0
template <class T>
Vec<T> hemisphere_to_klein(std::span<const T> b) {
  return Vec<T>(b.begin() + 1, b.end());
}

template <class T>
Vec<T> to_klein(ModelTag from, std::span<const T> p) {
  switch (from) {
    case ModelTag::Klein: return Vec<T>(p.begin(), p.end());
    case ModelTag::Poincare: return poincare_to_klein(p);
    case ModelTag::UpperHalfSpace: return upper_to_klein(p);
    case ModelTag::Hemisphere: return hemisphere_to_klein(p);
    case ModelTag::Hyperboloid: return hyperboloid_to_klein(p);
  }
  return {};
}

template <class T>
Vec<T> from_klein(ModelTag to, std::span<const T> x) {
  switch (to) {
    case ModelTag::Klein: return Vec<T>(x.begin(), x.end());
    case ModelTag::Poincare: return klein_to_poincare(x);
    case ModelTag::UpperHalfSpace: return klein_to_upper(x);
    case ModelTag::Hemisphere: return klein_to_hemisphere(x);
    case ModelTag::Hyperboloid: return klein_to_hyperboloid(x);
  }
  return {};
}

template <class T>
Vec<T> convert(ModelTag from, ModelTag to, std::span<const T> p) {
  if (from == to) return Vec<T>(p.begin(), p.end());
  const Vec<T> k = to_klein<T>(from, p);
  return from_klein<T>(to, std::span<const T>(k));
}

template <class T>
Vec<T> to_klein(ModelTag from, const Vec<T>& p) { return to_klein<T>(from, std::span<const T>(p)); }
template <class T>
Vec<T> from_klein(ModelTag to, const Vec<T>& x) { return from_klein<T>(to, std::span<const T>(x)); }
template <class T>
Vec<T> convert(ModelTag from, ModelTag to, const Vec<T>& p) { return convert<T>(from, to, std::span<const T>(p)); }

/// True when from -> to never needs a square root (the target is Klein,
/// or nothing changes).
constexpr bool square_root_free(ModelTag from, ModelTag to) { return from == to || to == ModelTag::Klein; }

}  // namespace unit

/// Rejects unit-Klein points within kBoundaryMargin of the boundary.
inline void require_interior_klein(const Vec<double>& k) {
  const double n = std::sqrt(norm2(k));
  if (!(1.0 - n >= kBoundaryMargin))
    fail(ErrorCode::NumericalUnderflow,
         "point lies within 1e-14 of the ideal boundary (Klein norm " + std::to_string(n) + ")");
}

/// Unit-Klein chart coordinates of a valid point.
inline Vec<double> klein_chart(const ModelPoint& p) {
  validate_point(p);
  Vec<double> k = unit::to_klein<double>(p.model, p.unit_coords());
  require_interior_klein(k);
  return k;
}

/// Isometric change of model; the curvature is unchanged.
inline ModelPoint convert(const ModelPoint& p, ModelTag to) {
  validate_point(p);
  if (p.model == to) return p;
  const Vec<double> k = klein_chart(p);
  return ModelPoint::from_unit(to, unit::from_klein<double>(to, k), p.curvature);
}

/// Vertical lift of a Klein point onto the hemisphere.
inline ModelPoint lift_to_hemisphere(const ModelPoint& klein) {
  if (klein.model != ModelTag::Klein) fail(ErrorCode::ModelMismatch, "lift_to_hemisphere expects a Klein point");
  return convert(klein, ModelTag::Hemisphere);
}

/// Vertical projection of a hemisphere point to the Klein ball.
inline ModelPoint drop_to_klein(const ModelPoint& hemisphere) {
  if (hemisphere.model != ModelTag::Hemisphere)
    fail(ErrorCode::ModelMismatch, "drop_to_klein expects a hemisphere point");
  validate_point(hemisphere);
  return {ModelTag::Klein, Vec<double>(hemisphere.coords.begin() + 1, hemisphere.coords.end()),
          hemisphere.curvature};
}

}  // namespace hvd
