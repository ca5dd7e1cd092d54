#pragma once

// SVG 1.1 rendering of planar diagram documents in the Klein disk, the
// Poincare disk or the upper half-plane. Rendering reads the document only:
// boundary pieces come from the stored chart segments and chart bisectors.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hvd/bisectors.hpp"
#include "hvd/conversions.hpp"
#include "hvd/io.hpp"

namespace hvd {

struct RenderOptions {
  ModelTag model = ModelTag::Klein;
  int width = 512;
  int samples_per_arc = 0;  // 0: native arc segments; N > 0: polylines with N pieces
};

namespace svg_detail {

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  std::string s(buf);
  if (s == "-0.000") s = "0.000";
  return s;
}

struct Point2 {
  double x = 0.0, y = 0.0;
};

/// Unit-model point -> pixels.
class Viewport {
 public:
  Viewport(ModelTag model, int width, const std::vector<Vec<double>>& model_sites) : model_(model), width_(width) {
    if (model == ModelTag::UpperHalfSpace) {
      height_ = static_cast<int>(std::lround(width * 0.625));
      double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, hmax = 0.0;
      for (const auto& p : model_sites) {
        xmin = std::min(xmin, p[0]);
        xmax = std::max(xmax, p[0]);
        hmax = std::max(hmax, p[1]);
      }
      if (model_sites.empty()) xmin = xmax = 0.0, hmax = 1.0;
      center_x_ = 0.5 * (xmin + xmax);
      const double span = std::max({xmax - xmin, 2.0 * hmax, 1e-6}) * 1.3;
      baseline_ = height_ * 0.92;
      scale_ = std::min(width_ * 0.9 / span, baseline_ * 0.8 / std::max(hmax, 1e-6));
    } else {
      height_ = width;
      scale_ = 0.45 * std::min(width_, height_);
    }
  }

  int width() const { return width_; }
  int height() const { return height_; }
  double scale() const { return scale_; }
  double baseline() const { return baseline_; }
  Point2 center() const { return {0.5 * width_, 0.5 * height_}; }

  Point2 operator()(const Vec<double>& p) const {
    if (model_ == ModelTag::UpperHalfSpace) return {0.5 * width_ + (p[0] - center_x_) * scale_, baseline_ - p[1] * scale_};
    return {0.5 * width_ + p[0] * scale_, 0.5 * height_ - p[1] * scale_};
  }

 private:
  ModelTag model_;
  int width_;
  int height_ = 0;
  double scale_ = 1.0;
  double center_x_ = 0.0;
  double baseline_ = 0.0;
};

/// Unit Klein point (possibly on the ideal boundary) -> unit model point.
/// Upper half-plane images of the point at infinity are non-finite.
inline Vec<double> chart_to_model(ModelTag model, Vec<double> k) {
  const double n2 = norm2(k);
  if (n2 > 1.0) k = scaled(k, 1.0 / std::sqrt(n2));
  if (model == ModelTag::UpperHalfSpace) {
    const double s = std::sqrt(std::max(0.0, 1.0 - norm2(k)));
    const double den = 1.0 - k[1];
    if (den <= 0.0) return {std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    return {k[0] / den, s / den};
  }
  return unit::from_klein<double>(model, k);
}

inline bool finite(const Point2& p) { return std::isfinite(p.x) && std::isfinite(p.y) && std::abs(p.x) < 1e7 && std::abs(p.y) < 1e7; }

inline double orient(const Point2& a, const Point2& b, const Point2& c) {
  return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

}  // namespace svg_detail

inline std::string render_svg(const json& diagram, const RenderOptions& opt = {}) {
  using namespace svg_detail;
  if (!is_diagram_document(diagram)) fail(ErrorCode::ParseError, "not a diagram document");
  const std::size_t d = diagram.at("input").at("dimension").get<std::size_t>();
  if (d != 2) fail(ErrorCode::DimensionUnsupported, "rendering needs d = 2, got d = " + std::to_string(d));
  if (opt.model != ModelTag::Klein && opt.model != ModelTag::Poincare && opt.model != ModelTag::UpperHalfSpace)
    fail(ErrorCode::UnsupportedPath, "rendering supports the Klein, Poincare and UpperHalfSpace models");
  if (opt.width < 16) fail(ErrorCode::InvalidArgument, "width must be at least 16 px");

  std::vector<Vec<double>> chart_sites;
  for (const auto& p : diagram.at("chart_sites")) chart_sites.push_back(double_vec_from_json(p));
  std::vector<Vec<double>> model_sites;
  for (const auto& k : chart_sites) model_sites.push_back(chart_to_model(opt.model, k));
  const Viewport view(opt.model, opt.width, model_sites);

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << view.width() << "\" height=\""
     << view.height() << "\" viewBox=\"0 0 " << view.width() << ' ' << view.height() << "\" data-model=\""
     << to_string(opt.model) << "\">\n";
  const Point2 c = view.center();
  os << "  <defs>\n    <clipPath id=\"domain\">\n";
  if (opt.model == ModelTag::UpperHalfSpace)
    os << "      <rect x=\"0\" y=\"0\" width=\"" << view.width() << "\" height=\"" << num(view.baseline()) << "\"/>\n";
  else
    os << "      <circle cx=\"" << num(c.x) << "\" cy=\"" << num(c.y) << "\" r=\"" << num(view.scale()) << "\"/>\n";
  os << "    </clipPath>\n  </defs>\n";
  os << "  <rect x=\"0\" y=\"0\" width=\"" << view.width() << "\" height=\"" << view.height() << "\" fill=\"white\"/>\n";
  if (opt.model == ModelTag::UpperHalfSpace)
    os << "  <line class=\"ideal-boundary\" x1=\"0\" y1=\"" << num(view.baseline()) << "\" x2=\"" << view.width()
       << "\" y2=\"" << num(view.baseline()) << "\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
  else
    os << "  <circle class=\"ideal-boundary\" cx=\"" << num(c.x) << "\" cy=\"" << num(c.y) << "\" r=\""
       << num(view.scale()) << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"/>\n";

  os << "  <g class=\"boundaries\" clip-path=\"url(#domain)\" fill=\"none\" stroke=\"#1f5fa8\" stroke-width=\"1.2\">\n";
  const Curvature unit_curvature(-1.0);
  for (const auto& b : diagram.at("boundaries")) {
    const auto& seg = b.at("chart_segment");
    if (seg.size() != 2) continue;
    const Vec<double> ka = double_vec_from_json(seg[0]), kb = double_vec_from_json(seg[1]);
    std::string path;
    auto screen = [&](const Vec<double>& k) { return view(chart_to_model(opt.model, k)); };
    auto top_clamp = [&](Point2 p, const Point2& other) {
      if (!finite(p)) p = {other.x, 0.0};
      return p;
    };
    if (opt.samples_per_arc > 0) {
      std::ostringstream ps;
      bool first = true;
      for (int k = 0; k <= opt.samples_per_arc; ++k) {
        const Point2 p = screen(lerp(ka, kb, static_cast<double>(k) / opt.samples_per_arc));
        if (!finite(p)) continue;
        ps << (first ? "M " : " L ") << num(p.x) << ' ' << num(p.y);
        first = false;
      }
      path = ps.str();
    } else {
      Point2 pa = screen(ka), pb = screen(kb);
      const Point2 pm = screen(lerp(ka, kb, 0.5));
      pa = top_clamp(pa, pb);
      pb = top_clamp(pb, pa);
      bool straight = opt.model == ModelTag::Klein;
      double radius_px = 0.0;
      Point2 center_px;
      if (!straight) {
        ImplicitSurface s = transport_surface(surface_from_json(b.at("chart_surface"), unit_curvature), opt.model);
        straight = is_hyperplane(classify(s));
        if (!straight) {
          const SphereGeometry g = sphere_geometry(s);
          radius_px = g.radius * view.scale();
          center_px = view(g.center);
        }
      }
      std::ostringstream ps;
      ps << "M " << num(pa.x) << ' ' << num(pa.y);
      if (straight) {
        ps << " L " << num(pb.x) << ' ' << num(pb.y);
      } else {
        const double side_m = orient(pa, pb, pm), side_c = orient(pa, pb, center_px);
        const int large = (side_m > 0) == (side_c > 0) && std::abs(side_c) > 0 ? 1 : 0;
        const int sweep = orient(pa, pm, pb) > 0 ? 1 : 0;
        ps << " A " << num(radius_px) << ' ' << num(radius_px) << " 0 " << large << ' ' << sweep << ' ' << num(pb.x)
           << ' ' << num(pb.y);
      }
      path = ps.str();
    }
    if (path.empty()) continue;
    os << "    <path class=\"boundary\" data-cells=\"" << b.at("cells").at(0).get<std::size_t>() << ' '
       << b.at("cells").at(1).get<std::size_t>() << "\" d=\"" << path << "\"/>\n";
  }
  os << "  </g>\n";

  os << "  <g class=\"sites\" fill=\"#c0392b\">\n";
  for (std::size_t i = 0; i < model_sites.size(); ++i) {
    const Point2 p = view(model_sites[i]);
    os << "    <circle class=\"site\" data-site=\"" << i << "\" cx=\"" << num(p.x) << "\" cy=\"" << num(p.y)
       << "\" r=\"3\"/>\n";
  }
  os << "  </g>\n</svg>\n";
  return os.str();
}

}  // namespace hvd
