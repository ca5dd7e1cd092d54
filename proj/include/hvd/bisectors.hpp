#pragma once

// Bisectors and geodesics. Every bisector in every model is the zero set
// of one quadric  lambda |x|^2 + <a, x> + b = 0  (ambient coordinates for
// the hemisphere and hyperboloid), oriented so that the first site lies on
// the negative side.

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <string_view>

#include "hvd/conversions.hpp"
#include "hvd/error.hpp"
#include "hvd/models.hpp"
#include "hvd/vec.hpp"

namespace hvd {

struct ImplicitSurface {
  double lambda = 0.0;
  Vec<double> a;
  double b = 0.0;
  ModelTag model = ModelTag::Klein;
  Curvature curvature{};

  std::size_t arity() const { return a.size(); }
};

enum class SurfaceClass { Hyperplane, HyperplaneThroughOrigin, Sphere, VerticalSphere };

constexpr std::string_view to_string(SurfaceClass c) {
  switch (c) {
    case SurfaceClass::Hyperplane: return "Hyperplane";
    case SurfaceClass::HyperplaneThroughOrigin: return "HyperplaneThroughOrigin";
    case SurfaceClass::Sphere: return "Sphere";
    case SurfaceClass::VerticalSphere: return "VerticalSphere";
  }
  return "?";
}

constexpr bool is_hyperplane(SurfaceClass c) {
  return c == SurfaceClass::Hyperplane || c == SurfaceClass::HyperplaneThroughOrigin;
}

inline double evaluate(const ImplicitSurface& s, std::span<const double> x) {
  require_same_arity(s.a.size(), x.size(), "evaluate");
  return s.lambda * norm2(x) + dot(std::span<const double>(s.a), x) + s.b;
}

inline double evaluate(const ImplicitSurface& s, const Vec<double>& x) { return evaluate(s, std::span<const double>(x)); }

inline double coefficient_norm(const ImplicitSurface& s) {
  return std::sqrt(s.lambda * s.lambda + norm2(s.a) + s.b * s.b);
}

inline double max_coefficient(const ImplicitSurface& s) {
  double m = std::max(std::abs(s.lambda), std::abs(s.b));
  for (double v : s.a) m = std::max(m, std::abs(v));
  return m;
}

/// Positive rescaling to unit coefficient norm; keeps the orientation.
inline ImplicitSurface normalized(ImplicitSurface s) {
  const double n = coefficient_norm(s);
  if (n == 0.0) fail(ErrorCode::DegenerateSurface, "all coefficients vanish");
  s.lambda /= n;
  for (auto& v : s.a) v /= n;
  s.b /= n;
  return s;
}

/// Projective canonical form: unit norm and first nonzero coefficient
/// (in the order lambda, a..., b) positive.
inline ImplicitSurface projective_canonical(ImplicitSurface s) {
  s = normalized(s);
  double first = s.lambda;
  if (first == 0.0)
    for (double v : s.a)
      if (v != 0.0) {
        first = v;
        break;
      }
  if (first == 0.0) first = s.b;
  if (first < 0.0) {
    s.lambda = -s.lambda;
    for (auto& v : s.a) v = -v;
    s.b = -s.b;
  }
  return s;
}

/// Largest coefficient gap between the projective canonical forms.
inline double projective_distance(const ImplicitSurface& s, const ImplicitSurface& t) {
  require_same_arity(s.a.size(), t.a.size(), "projective_distance");
  const auto cs = projective_canonical(s);
  const auto ct = projective_canonical(t);
  double m = std::max(std::abs(cs.lambda - ct.lambda), std::abs(cs.b - ct.b));
  for (std::size_t i = 0; i < cs.a.size(); ++i) m = std::max(m, std::abs(cs.a[i] - ct.a[i]));
  return m;
}

namespace detail {

/// Unit-model coefficients -> coefficients in coordinates x = r u.
inline ImplicitSurface from_unit_surface(double lambda, Vec<double> a, double b, ModelTag m, Curvature c) {
  const double r = c.radius();
  ImplicitSurface s{lambda / (r * r), std::move(a), b, m, c};
  for (auto& v : s.a) v /= r;
  return normalized(s);
}

/// Coefficients in coordinates x = r u -> unit-model coefficients.
inline ImplicitSurface to_unit_surface(ImplicitSurface s) {
  const double r = s.curvature.radius();
  s.lambda *= r * r;
  for (auto& v : s.a) v *= r;
  return s;
}

}  // namespace detail

/// Closed-form bisector of two distinct sites, negative on p's side.
inline ImplicitSurface bisector(const ModelPoint& p, const ModelPoint& q) {
  require_compatible(p, q);
  validate_point(p);
  validate_point(q);
  if (p.coords == q.coords) fail(ErrorCode::CoincidentSites, "bisector of a point with itself");
  const Vec<double> pu = p.unit_coords();
  const Vec<double> qu = q.unit_coords();
  const std::size_t n = pu.size();
  Vec<double> a(n);
  double lambda = 0.0, b = 0.0;

  switch (p.model) {
    case ModelTag::Klein: {
      // <x, q s_p - p s_q> + s_q - s_p,  s_z = sqrt(1 - |z|^2)
      const double sp = std::sqrt(1.0 - norm2(pu));
      const double sq = std::sqrt(1.0 - norm2(qu));
      for (std::size_t i = 0; i < n; ++i) a[i] = qu[i] * sp - pu[i] * sq;
      b = sq - sp;
      break;
    }
    case ModelTag::Poincare: {
      // |x-p|^2 / (1-|p|^2) - |x-q|^2 / (1-|q|^2)
      const double ap = 1.0 - norm2(pu), aq = 1.0 - norm2(qu);
      lambda = 1.0 / ap - 1.0 / aq;
      for (std::size_t i = 0; i < n; ++i) a[i] = 2.0 * (qu[i] / aq - pu[i] / ap);
      b = norm2(pu) / ap - norm2(qu) / aq;
      break;
    }
    case ModelTag::UpperHalfSpace: {
      // |x-p|^2 / p_d - |x-q|^2 / q_d
      const double hp = pu.back(), hq = qu.back();
      lambda = 1.0 / hp - 1.0 / hq;
      for (std::size_t i = 0; i < n; ++i) a[i] = 2.0 * (qu[i] / hq - pu[i] / hp);
      b = norm2(pu) / hp - norm2(qu) / hq;
      break;
    }
    case ModelTag::Hemisphere: {
      // (1 - <p,x>)/p0 - (1 - <q,x>)/q0 ; the x0 terms cancel identically.
      a[0] = 0.0;
      for (std::size_t i = 1; i < n; ++i) a[i] = qu[i] / qu[0] - pu[i] / pu[0];
      b = 1.0 / pu[0] - 1.0 / qu[0];
      break;
    }
    case ModelTag::Hyperboloid: {
      // <x, q - p>_L : (p0 - q0) x0 + sum (q_i - p_i) x_i, through the origin.
      a[0] = pu[0] - qu[0];
      for (std::size_t i = 1; i < n; ++i) a[i] = qu[i] - pu[i];
      b = 0.0;
      break;
    }
  }
  return detail::from_unit_surface(lambda, std::move(a), b, p.model, p.curvature);
}

struct SphereGeometry {
  Vec<double> center;
  double radius = 0.0;
};

/// Center and radius of a quadric with lambda != 0.
inline SphereGeometry sphere_geometry(const ImplicitSurface& s) {
  if (s.lambda == 0.0) fail(ErrorCode::DegenerateSurface, "surface is a hyperplane");
  SphereGeometry g;
  g.center = scaled(s.a, -0.5 / s.lambda);
  const double r2 = norm2(s.a) / (4.0 * s.lambda * s.lambda) - s.b / s.lambda;
  if (!(r2 > 0.0)) fail(ErrorCode::DegenerateSurface, "non-positive squared radius " + std::to_string(r2));
  g.radius = std::sqrt(r2);
  return g;
}

inline SurfaceClass classify(const ImplicitSurface& s, double rel_tol = 1e-12) {
  const double scale = max_coefficient(s);
  if (scale == 0.0) fail(ErrorCode::DegenerateSurface, "all coefficients vanish");
  const double tol = rel_tol * scale;
  const bool flat = std::abs(s.lambda) <= tol;
  if (s.model == ModelTag::Hemisphere) {
    // Restricted to the sphere |x|^2 = r^2 the quadratic term is a constant,
    // so the zero set is a hyperplane section; vertical when x0 drops out.
    if (std::abs(s.a[0]) <= tol) return SurfaceClass::VerticalSphere;
    return SurfaceClass::Sphere;
  }
  if (flat) return std::abs(s.b) <= tol ? SurfaceClass::HyperplaneThroughOrigin : SurfaceClass::Hyperplane;
  sphere_geometry(s);
  return SurfaceClass::Sphere;
}

/// Constant-speed geodesic from p (t = 0) to q (t = 1), computed on the
/// hyperboloid and mapped back to the native model.
inline ModelPoint geodesic(const ModelPoint& p, const ModelPoint& q, double t) {
  require_compatible(p, q);
  if (p.coords == q.coords) fail(ErrorCode::CoincidentSites, "geodesic between coincident sites");
  const Vec<double> kp = klein_chart(p);
  const Vec<double> kq = klein_chart(q);
  const Vec<double> lp = unit::klein_to_hyperboloid<double>(kp);
  const Vec<double> lq = unit::klein_to_hyperboloid<double>(kq);
  const double dist = unit::distance(ModelTag::Hyperboloid, lp, lq);
  Vec<double> k;
  if (dist < 1e-6) {
    k = lerp(kp, kq, t);
  } else {
    const double wp = std::sinh((1.0 - t) * dist) / std::sinh(dist);
    const double wq = std::sinh(t * dist) / std::sinh(dist);
    Vec<double> l(lp.size());
    for (std::size_t i = 0; i < l.size(); ++i) l[i] = wp * lp[i] + wq * lq[i];
    k = unit::hyperboloid_to_klein<double>(l);
  }
  return ModelPoint::from_unit(p.model, unit::from_klein<double>(p.model, k), p.curvature);
}

namespace detail {

/// Unit-model surface of `model` -> unit Klein surface (lambda = 0).
inline ImplicitSurface unit_surface_to_klein(const ImplicitSurface& s) {
  const double tol = 1e-9 * max_coefficient(s);
  auto unsupported = [&](const char* why) -> ImplicitSurface {
    fail(ErrorCode::UnsupportedPath,
         std::string("cannot transport this ") + std::string(to_string(s.model)) + " surface to Klein: " + why);
  };
  ImplicitSurface k{0.0, {}, 0.0, ModelTag::Klein, s.curvature};
  switch (s.model) {
    case ModelTag::Klein:
      if (std::abs(s.lambda) > tol) return unsupported("not a hyperplane");
      k.a = s.a;
      k.b = s.b;
      break;
    case ModelTag::Poincare:
      // Images of Klein hyperplanes satisfy lambda = b.
      if (std::abs(s.lambda - s.b) > tol) return unsupported("sphere is not orthogonal to the boundary");
      k.a = s.a;
      k.b = s.lambda + s.b;
      break;
    case ModelTag::UpperHalfSpace: {
      if (std::abs(s.a.back()) > tol) return unsupported("sphere center is off the boundary hyperplane");
      const std::size_t d = s.a.size();
      k.a.resize(d);
      for (std::size_t i = 0; i + 1 < d; ++i) k.a[i] = 0.5 * s.a[i];
      k.a[d - 1] = 0.5 * (s.lambda - s.b);
      k.b = 0.5 * (s.lambda + s.b);
      break;
    }
    case ModelTag::Hemisphere:
      if (std::abs(s.a[0]) > tol) return unsupported("not a vertical section");
      k.a.assign(s.a.begin() + 1, s.a.end());
      k.b = s.b + s.lambda;  // |x|^2 = 1 on the unit sphere
      break;
    case ModelTag::Hyperboloid:
      if (std::abs(s.lambda) > tol || std::abs(s.b) > tol) return unsupported("not a hyperplane through the origin");
      k.a.assign(s.a.begin() + 1, s.a.end());
      k.b = s.a[0];
      break;
  }
  return k;
}

/// Unit Klein hyperplane -> unit-model surface of `to`. Every multiplier
/// used is positive, so orientation is preserved.
inline ImplicitSurface unit_klein_to_model(const ImplicitSurface& k, ModelTag to) {
  ImplicitSurface s{0.0, {}, 0.0, to, k.curvature};
  const std::size_t d = k.a.size();
  switch (to) {
    case ModelTag::Klein:
      s.a = k.a;
      s.b = k.b;
      break;
    case ModelTag::Poincare:
      // substitute x = 2y / (1 + |y|^2)
      s.lambda = k.b;
      s.a = scaled(k.a, 2.0);
      s.b = k.b;
      break;
    case ModelTag::UpperHalfSpace:
      // substitute the inverse stereographic map
      s.lambda = k.a[d - 1] + k.b;
      s.a.assign(d, 0.0);
      for (std::size_t i = 0; i + 1 < d; ++i) s.a[i] = 2.0 * k.a[i];
      s.b = k.b - k.a[d - 1];
      break;
    case ModelTag::Hemisphere:
      s.a.assign(d + 1, 0.0);
      for (std::size_t i = 0; i < d; ++i) s.a[i + 1] = k.a[i];
      s.b = k.b;
      break;
    case ModelTag::Hyperboloid:
      s.a.assign(d + 1, 0.0);
      s.a[0] = k.b;
      for (std::size_t i = 0; i < d; ++i) s.a[i + 1] = k.a[i];
      s.b = 0.0;
      break;
  }
  return s;
}

}  // namespace detail

/// Image of a bisector surface under the change of model, through the
/// Klein hub. Surfaces that are not images of Klein hyperplanes are
/// rejected with UnsupportedPath.
inline ImplicitSurface transport_surface(const ImplicitSurface& s, ModelTag to) {
  const ImplicitSurface k = detail::unit_surface_to_klein(detail::to_unit_surface(s));
  const ImplicitSurface out = detail::unit_klein_to_model(k, to);
  return detail::from_unit_surface(out.lambda, out.a, out.b, to, s.curvature);
}

}  // namespace hvd
