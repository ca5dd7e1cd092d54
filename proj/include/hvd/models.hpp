#pragma once

// The five models of real hyperbolic space H^d(kappa): domains, point
// validation, distances, the Lorentzian form and point-wise metric tensors.
//
// Coordinates are stored in the model's natural radius r = sqrt(-1/kappa).
// Every formula is evaluated on the unit model (coordinates divided by r)
// and lengths are multiplied back by r.

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "hvd/error.hpp"
#include "hvd/vec.hpp"

namespace hvd {

enum class ModelTag { Klein, Poincare, UpperHalfSpace, Hemisphere, Hyperboloid };

inline constexpr std::array<ModelTag, 5> kAllModels = {ModelTag::Klein, ModelTag::Poincare,
                                                       ModelTag::UpperHalfSpace, ModelTag::Hemisphere,
                                                       ModelTag::Hyperboloid};

constexpr std::string_view to_string(ModelTag m) {
  switch (m) {
    case ModelTag::Klein: return "Klein";
    case ModelTag::Poincare: return "Poincare";
    case ModelTag::UpperHalfSpace: return "UpperHalfSpace";
    case ModelTag::Hemisphere: return "Hemisphere";
    case ModelTag::Hyperboloid: return "Hyperboloid";
  }
  return "?";
}

/// Accepts full names, lower-case names and the one-letter mnemonics K/P/U/B/L.
inline std::optional<ModelTag> parse_model(std::string_view s) {
  std::string t(s);
  for (auto& c : t) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (t == "klein" || t == "k") return ModelTag::Klein;
  if (t == "poincare" || t == "p" || t == "poincareball") return ModelTag::Poincare;
  if (t == "upperhalfspace" || t == "upper" || t == "u" || t == "halfspace") return ModelTag::UpperHalfSpace;
  if (t == "hemisphere" || t == "b" || t == "beltrami") return ModelTag::Hemisphere;
  if (t == "hyperboloid" || t == "l" || t == "lorentz") return ModelTag::Hyperboloid;
  return std::nullopt;
}

/// Hemisphere and hyperboloid points carry the extra coordinate x0 first.
constexpr bool is_ambient(ModelTag m) { return m == ModelTag::Hemisphere || m == ModelTag::Hyperboloid; }

constexpr std::size_t arity(ModelTag m, std::size_t dimension) { return is_ambient(m) ? dimension + 1 : dimension; }

class Curvature {
 public:
  explicit Curvature(double kappa = -1.0) : kappa_(kappa) {
    if (!(kappa < 0.0) || !std::isfinite(kappa))
      fail(ErrorCode::InvalidArgument, "curvature must be finite and negative, got " + std::to_string(kappa));
  }

  double kappa() const noexcept { return kappa_; }
  double radius() const noexcept { return std::sqrt(-1.0 / kappa_); }

  friend bool operator==(const Curvature&, const Curvature&) = default;

 private:
  double kappa_;
};

struct ModelPoint {
  ModelTag model = ModelTag::Klein;
  Vec<double> coords;
  Curvature curvature{};

  std::size_t dimension() const { return is_ambient(model) ? coords.size() - 1 : coords.size(); }

  /// Coordinates rescaled to the unit model.
  Vec<double> unit_coords() const { return scaled(coords, 1.0 / curvature.radius()); }

  static ModelPoint from_unit(ModelTag m, const Vec<double>& unit, Curvature c) {
    return {m, scaled(unit, c.radius()), c};
  }
};

namespace detail {

inline std::string describe(const ModelPoint& p) {
  std::ostringstream os;
  os << to_string(p.model) << "(";
  for (std::size_t i = 0; i < p.coords.size(); ++i) os << (i ? ", " : "") << p.coords[i];
  os << ")";
  return os.str();
}

}  // namespace detail

/// Checks the arity and the model's domain constraint. Equality
/// constraints (sphere, hyperboloid) use a relative tolerance; open
/// inequalities are checked strictly.
inline void validate_point(const ModelPoint& p, double tol = 1e-9) {
  const std::size_t min_arity = is_ambient(p.model) ? 3 : 2;
  if (p.coords.size() < min_arity)
    fail(ErrorCode::ArityMismatch, detail::describe(p) + " needs at least " + std::to_string(min_arity) +
                                       " coordinates (d >= 2)");
  for (double v : p.coords)
    if (!std::isfinite(v)) fail(ErrorCode::DomainViolation, detail::describe(p) + " has a non-finite coordinate");

  const double r = p.curvature.radius();
  const double r2 = r * r;
  const auto& x = p.coords;
  auto violation = [&](const std::string& what, double by) {
    std::ostringstream os;
    os << detail::describe(p) << ": " << what << " (off by " << by << ")";
    fail(ErrorCode::DomainViolation, os.str());
  };

  switch (p.model) {
    case ModelTag::Klein:
    case ModelTag::Poincare: {
      const double n2 = norm2(x);
      if (!(n2 < r2)) violation("outside the open ball of radius r", n2 - r2);
      break;
    }
    case ModelTag::UpperHalfSpace:
      if (!(x.back() > 0.0)) violation("height x_d must be positive", -x.back());
      break;
    case ModelTag::Hemisphere: {
      const double n2 = norm2(x);
      if (std::abs(n2 - r2) > tol * r2) violation("not on the sphere of radius r", n2 - r2);
      if (!(x[0] > 0.0)) violation("x0 must be positive", -x[0]);
      break;
    }
    case ModelTag::Hyperboloid: {
      double spatial = 0.0;
      for (std::size_t i = 1; i < x.size(); ++i) spatial += x[i] * x[i];
      const double residual = spatial - x[0] * x[0] + r2;
      if (std::abs(residual) > tol * std::max(r2, x[0] * x[0])) violation("not on the hyperboloid sheet", residual);
      if (!(x[0] > 0.0)) violation("x0 must be positive", -x[0]);
      break;
    }
  }
}

/// -x0 y0 + sum_i x_i y_i
inline double lorentz_inner(std::span<const double> x, std::span<const double> y) {
  require_same_arity(x.size(), y.size(), "lorentz_inner");
  if (x.size() < 2) fail(ErrorCode::ArityMismatch, "lorentz_inner needs at least 2 coordinates");
  double s = -x[0] * y[0];
  for (std::size_t i = 1; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

/// arccosh(1 + delta) = log(1 + delta + sqrt(delta (2 + delta))), written in
/// terms of delta so nearby points keep their significant digits. Rounding
/// residue below 1e-12 is clamped to 0.
inline double arccosh1p(double delta) {
  if (delta < 0.0) delta = 0.0;
  return std::log1p(delta + std::sqrt(delta * (2.0 + delta)));
}

/// Plain arccosh with clamping of [1 - 1e-12, 1) to 1.
inline double arccosh(double x) {
  if (x < 1.0 && x >= 1.0 - 1e-12) x = 1.0;
  if (x < 1.0) fail(ErrorCode::DomainViolation, "arccosh argument below 1: " + std::to_string(x));
  return std::log(x + std::sqrt(x * x - 1.0));
}

namespace unit {

/// cosh(d) - 1 between two points of the unit model, evaluated in
/// cancellation-free form.
inline double cosh_minus_one(ModelTag m, std::span<const double> p, std::span<const double> q) {
  require_same_arity(p.size(), q.size(), "distance");
  switch (m) {
    case ModelTag::Klein: {
      // (1 - <p,q>)^2 - (1-|p|^2)(1-|q|^2) = |p-q|^2 - |p ^ q|^2
      const double pp = norm2(p), qq = norm2(q), pq = dot(p, q);
      double wedge = 0.0;
      for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j) {
          const double w = p[i] * q[j] - p[j] * q[i];
          wedge += w * w;
        }
      const double s = std::sqrt((1.0 - pp) * (1.0 - qq));
      return (dist2(p, q) - wedge) / (s * (1.0 - pq + s));
    }
    case ModelTag::Poincare:
      return 2.0 * dist2(p, q) / ((1.0 - norm2(p)) * (1.0 - norm2(q)));
    case ModelTag::UpperHalfSpace:
      return dist2(p, q) / (2.0 * p.back() * q.back());
    case ModelTag::Hemisphere:
      // 1 - <p,q> = |p-q|^2 / 2 on the unit sphere.
      return 0.5 * dist2(p, q) / (p[0] * q[0]);
    case ModelTag::Hyperboloid: {
      // -<p,q>_L - 1 = <p-q,p-q>_L / 2, with p0 - q0 rewritten through the
      // sheet equation to avoid cancelling large x0 values.
      double spatial = 0.0, cross = 0.0;
      for (std::size_t i = 1; i < p.size(); ++i) {
        spatial += (p[i] - q[i]) * (p[i] - q[i]);
        cross += (p[i] - q[i]) * (p[i] + q[i]);
      }
      const double dt = cross / (p[0] + q[0]);
      return 0.5 * (spatial - dt * dt);
    }
  }
  return 0.0;
}

inline double distance(ModelTag m, std::span<const double> p, std::span<const double> q) {
  return arccosh1p(cosh_minus_one(m, p, q));
}

}  // namespace unit

inline void require_compatible(const ModelPoint& p, const ModelPoint& q) {
  if (p.model != q.model)
    fail(ErrorCode::ModelMismatch, std::string(to_string(p.model)) + " vs " + std::string(to_string(q.model)));
  if (!(p.curvature == q.curvature)) fail(ErrorCode::ModelMismatch, "points have different curvature");
  require_same_arity(p.coords.size(), q.coords.size(), "point arity");
}

/// Hyperbolic distance. Length unit: r * arccosh(...) with r = sqrt(-1/kappa).
inline double distance(const ModelPoint& p, const ModelPoint& q) {
  require_compatible(p, q);
  validate_point(p);
  validate_point(q);
  const auto pu = p.unit_coords();
  const auto qu = q.unit_coords();
  return p.curvature.radius() * unit::distance(p.model, pu, qu);
}

/// Dense row-major square matrix, only used for metric tensors.
struct SquareMatrix {
  std::size_t n = 0;
  std::vector<double> data;

  explicit SquareMatrix(std::size_t size = 0) : n(size), data(size * size, 0.0) {}
  double& operator()(std::size_t i, std::size_t j) { return data[i * n + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * n + j]; }

  static SquareMatrix scaled_identity(std::size_t size, double s) {
    SquareMatrix m(size);
    for (std::size_t i = 0; i < size; ++i) m(i, i) = s;
    return m;
  }
};

/// Riemannian metric tensor at p, in the model's own coordinates. With
/// coordinates of radius r the tensor is g(x) = g_unit(x / r). Hemisphere
/// and hyperboloid tensors are the ambient (d+1)x(d+1) forms.
inline SquareMatrix metric_tensor(const ModelPoint& p) {
  validate_point(p);
  const auto x = p.unit_coords();
  const std::size_t n = x.size();
  switch (p.model) {
    case ModelTag::Klein: {
      const double den = 1.0 - norm2(x);
      SquareMatrix g = SquareMatrix::scaled_identity(n, 1.0 / den);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) g(i, j) += x[i] * x[j] / (den * den);
      return g;
    }
    case ModelTag::Poincare: {
      const double den = 1.0 - norm2(x);
      return SquareMatrix::scaled_identity(n, 4.0 / (den * den));
    }
    case ModelTag::UpperHalfSpace:
      return SquareMatrix::scaled_identity(n, 1.0 / (x.back() * x.back()));
    case ModelTag::Hemisphere:
      return SquareMatrix::scaled_identity(n, 1.0 / (x[0] * x[0]));
    case ModelTag::Hyperboloid: {
      SquareMatrix g = SquareMatrix::scaled_identity(n, 1.0);
      g(0, 0) = -1.0;
      return g;
    }
  }
  return SquareMatrix(n);
}

}  // namespace hvd
