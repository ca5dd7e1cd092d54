#pragma once

// Hyperbolic Voronoi diagrams end to end: sites in any model are mapped to
// the Klein chart (or onto the hemisphere and projected to x0 = 0, which is
// the same chart), turned into weighted sites, and the clipped power
// complex is built there. Boundaries are reported back in any model.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "hvd/bisectors.hpp"
#include "hvd/complex.hpp"
#include "hvd/conversions.hpp"
#include "hvd/error.hpp"
#include "hvd/models.hpp"
#include "hvd/power.hpp"
#include "hvd/sampling.hpp"

namespace hvd {

enum class Route { Klein, Hemisphere };

constexpr std::string_view to_string(Route r) { return r == Route::Klein ? "klein" : "hemisphere"; }

inline std::optional<Route> parse_route(std::string_view s) {
  if (s == "klein" || s == "Klein" || s == "K") return Route::Klein;
  if (s == "hemisphere" || s == "Hemisphere" || s == "B") return Route::Hemisphere;
  return std::nullopt;
}

/// The Voronoi edge/face between cells i < j.
struct Boundary {
  std::size_t i = 0, j = 0;
  ImplicitSurface surface;        // in the diagram's boundary model
  ImplicitSurface chart_surface;  // unit Klein chart
  std::vector<Vec<double>> chart_segment;  // d = 2: the edge clipped to the unit disk
};

struct VoronoiOptions {
  Route route = Route::Klein;
  std::optional<ModelTag> boundary_model;  // default: the input model
  std::optional<bool> explicit_geometry;   // default: d in {2, 3}
};

struct VoronoiDiagram {
  ModelTag model = ModelTag::Klein;
  Curvature curvature{};
  std::vector<ModelPoint> sites;
  Route route = Route::Klein;
  std::vector<Vec<double>> chart_sites;  // unit Klein chart coordinates
  PowerComplex<double> complex;
  ModelTag boundary_model = ModelTag::Klein;
  std::vector<Boundary> boundaries;

  std::size_t dimension() const { return complex.dimension; }
};

namespace detail {

inline void check_site_list(const std::vector<ModelPoint>& points) {
  if (points.empty()) fail(ErrorCode::EmptySites, "no sites");
  for (const auto& p : points) {
    require_compatible(points.front(), p);
    validate_point(p);
  }
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if (points[i].coords == points[j].coords)
        fail(ErrorCode::DuplicateSites, "sites " + std::to_string(i) + " and " + std::to_string(j) + " coincide");
}

/// Portion of segment [a, b] inside the closed unit ball.
inline std::vector<Vec<double>> clip_segment_to_unit_ball(const Vec<double>& a, const Vec<double>& b) {
  const Vec<double> ab = sub(b, a);
  const double qa = norm2(ab), qb = dot(a, ab), qc = norm2(a) - 1.0;
  if (qa == 0.0) return {};
  const double disc = qb * qb - qa * qc;
  if (disc <= 0.0) return {};
  const double root = std::sqrt(disc);
  const double t0 = std::max(0.0, (-qb - root) / qa);
  const double t1 = std::min(1.0, (-qb + root) / qa);
  if (!(t0 < t1)) return {};
  return {lerp(a, b, t0), lerp(a, b, t1)};
}

}  // namespace detail

/// Boundary records for every adjacent pair of a complex whose chart is the
/// Klein ball scaled by chart_radius (1 for the unit chart).
template <class T>
std::vector<Boundary> diagram_boundaries(const PowerComplex<T>& cx, const std::vector<Vec<double>>& chart_sites,
                                         Curvature curvature, ModelTag boundary_model, double chart_radius = 1.0) {
  std::vector<Boundary> out;
  const Curvature unit_curvature(-1.0);
  for (const auto& [i, j] : cx.adjacency) {
    Boundary bd;
    bd.i = i;
    bd.j = j;
    bd.chart_surface = bisector(ModelPoint{ModelTag::Klein, chart_sites[i], unit_curvature},
                                ModelPoint{ModelTag::Klein, chart_sites[j], unit_curvature});
    const ModelPoint ri = ModelPoint::from_unit(ModelTag::Klein, chart_sites[i], curvature);
    const ModelPoint rj = ModelPoint::from_unit(ModelTag::Klein, chart_sites[j], curvature);
    bd.surface = transport_surface(bisector(ri, rj), boundary_model);
    if (cx.dimension == 2 && cx.explicit_geometry) {
      auto find = [&](std::size_t c, std::size_t other) -> const Facet<T>* {
        for (const auto& f : cx.cells[c].facets)
          if (f.label == static_cast<int>(other)) return &f;
        return nullptr;
      };
      const Facet<T>* f = find(i, j);
      if (!f) f = find(j, i);
      if (f && f->vertices.size() == 2) {
        std::array<Vec<double>, 2> ends;
        for (std::size_t e = 0; e < 2; ++e)
          for (const auto& v : f->vertices[e]) ends[e].push_back(ScalarTraits<T>::to_double(v) / chart_radius);
        bd.chart_segment = detail::clip_segment_to_unit_ball(ends[0], ends[1]);
      }
    }
    out.push_back(std::move(bd));
  }
  return out;
}

inline VoronoiDiagram voronoi(const std::vector<ModelPoint>& points, const VoronoiOptions& options = {}) {
  detail::check_site_list(points);
  VoronoiDiagram vd;
  vd.model = points.front().model;
  vd.curvature = points.front().curvature;
  vd.sites = points;
  vd.route = options.route;
  vd.boundary_model = options.boundary_model.value_or(vd.model);

  const std::size_t d = points.front().dimension();
  std::vector<WeightedSite<double>> ws;
  for (std::size_t i = 0; i < points.size(); ++i) {
    vd.chart_sites.push_back(klein_chart(points[i]));
    if (options.route == Route::Klein) {
      ws.push_back(klein_site_map(vd.chart_sites.back(), i));
    } else {
      const Vec<double> h = points[i].model == ModelTag::Hemisphere
                                ? points[i].unit_coords()
                                : unit::klein_to_hemisphere<double>(vd.chart_sites.back());
      ws.push_back(hemisphere_site_map(h, i));
    }
  }

  BuildOptions bo;
  bo.explicit_geometry = options.explicit_geometry.value_or(d == 2 || d == 3);
  vd.complex = build_complex(ws, std::optional<Ball<double>>(Ball<double>{Vec<double>(d, 0.0), 1.0}), bo);

  vd.boundaries = diagram_boundaries(vd.complex, vd.chart_sites, vd.curvature, vd.boundary_model);
  return vd;
}

/// Exact hemisphere route: sites given on the sphere of squared radius
/// radius_sq with rational coordinates (x0 first). No square roots are
/// taken; the chart is x0 = 0 at radius r.
inline PowerComplex<Rational> exact_hemisphere_complex(const std::vector<Vec<Rational>>& hemisphere_points,
                                                       const Rational& radius_sq, bool explicit_geometry = true) {
  if (hemisphere_points.empty()) fail(ErrorCode::EmptySites, "no sites");
  std::vector<WeightedSite<Rational>> ws;
  for (std::size_t i = 0; i < hemisphere_points.size(); ++i) {
    const auto& p = hemisphere_points[i];
    require_same_arity(p.size(), hemisphere_points.front().size(), "site arity");
    if (p.size() < 3) fail(ErrorCode::ArityMismatch, "hemisphere points need d + 1 >= 3 coordinates");
    if (norm2(p) != radius_sq)
      fail(ErrorCode::DomainViolation, "site " + std::to_string(i) + " is not exactly on the hemisphere");
    if (!(p[0] > 0)) fail(ErrorCode::DomainViolation, "site " + std::to_string(i) + " has x0 <= 0");
    ws.push_back(hemisphere_site_map(p, i, radius_sq));
  }
  const std::size_t d = hemisphere_points.front().size() - 1;
  BuildOptions bo;
  bo.explicit_geometry = explicit_geometry;
  return build_complex(ws, std::optional<Ball<Rational>>(Ball<Rational>{Vec<Rational>(d, Rational(0)), radius_sq}),
                       bo);
}

struct NearestSite {
  std::size_t index = 0;
  std::vector<std::size_t> ties;
  double distance = 0.0;
};

/// Exhaustive argmin of the hyperbolic distance; ties within tol.
inline NearestSite nearest_site(const ModelPoint& x, const std::vector<ModelPoint>& points, double tol = 1e-12) {
  if (points.empty()) fail(ErrorCode::EmptySites, "nearest_site on an empty site list");
  std::vector<double> dist(points.size());
  double best = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    dist[i] = distance(x, points[i]);
    if (i == 0 || dist[i] < best) best = dist[i];
  }
  NearestSite r;
  r.distance = best;
  for (std::size_t i = 0; i < points.size(); ++i)
    if (dist[i] - best <= tol) r.ties.push_back(i);
  r.index = r.ties.front();
  return r;
}

struct DelaunayComplex {
  std::vector<std::vector<std::size_t>> faces;  // size d+1 simplices, larger for degenerate faces
  std::vector<Vec<double>> centers;             // dual power vertex of each face (chart)
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  bool is_triangulation = true;
};

/// Dual of the clipped complex: a face per power vertex strictly inside the
/// clip ball, an edge per adjacent pair. It is a triangulation when every
/// face is a simplex and every edge lies on some face.
template <class T>
DelaunayComplex delaunay(const PowerComplex<T>& cx) {
  if (!cx.explicit_geometry) fail(ErrorCode::NoExplicitGeometry, "Delaunay extraction needs explicit cell geometry");
  const std::size_t d = cx.dimension;
  DelaunayComplex dc;
  dc.edges = cx.adjacency;
  for (const auto& pv : cx.power_vertices) {
    if (!pv.inside_clip) continue;
    dc.faces.push_back(pv.sites);
    Vec<double> c;
    for (const auto& v : pv.point) c.push_back(ScalarTraits<T>::to_double(v));
    dc.centers.push_back(std::move(c));
  }
  bool simplicial = std::all_of(dc.faces.begin(), dc.faces.end(), [&](const auto& f) { return f.size() == d + 1; });
  bool covered = true;
  if (cx.sites.size() > d) {
    covered = !dc.faces.empty();
    for (const auto& [a, b] : dc.edges) {
      const bool in_face = std::any_of(dc.faces.begin(), dc.faces.end(), [&](const auto& f) {
        return std::binary_search(f.begin(), f.end(), a) && std::binary_search(f.begin(), f.end(), b);
      });
      covered = covered && in_face;
    }
  }
  dc.is_triangulation = simplicial && covered;
  return dc;
}

inline DelaunayComplex delaunay(const VoronoiDiagram& vd) { return delaunay(vd.complex); }

struct DegeneracyReport {
  double tolerance = 1e-9;
  std::vector<std::vector<std::size_t>> cocircular_groups;
  std::vector<std::vector<std::size_t>> collinear_groups;
  std::vector<std::vector<std::size_t>> equal_norm_groups;
  std::vector<std::vector<std::size_t>> equal_height_groups;
  std::vector<std::string> notes;

  bool empty() const {
    return cocircular_groups.empty() && collinear_groups.empty() && equal_norm_groups.empty() &&
           equal_height_groups.empty();
  }
};

namespace detail {

/// Maximal runs of values agreeing within rel_tol (chained), of size >= min_size.
inline std::vector<std::vector<std::size_t>> value_groups(const std::vector<double>& values, double rel_tol,
                                                         std::size_t min_size) {
  std::vector<std::size_t> order(values.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return values[a] < values[b]; });
  std::vector<std::vector<std::size_t>> groups;
  std::vector<std::size_t> run;
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (!run.empty()) {
      const double prev = values[run.back()], cur = values[order[k]];
      if (cur - prev > rel_tol * std::max(1.0, std::abs(cur))) {
        if (run.size() >= min_size) groups.push_back(run);
        run.clear();
      }
    }
    run.push_back(order[k]);
  }
  if (run.size() >= min_size) groups.push_back(run);
  for (auto& g : groups) std::sort(g.begin(), g.end());
  return groups;
}

}  // namespace detail

inline DegeneracyReport detect_degeneracies(const std::vector<ModelPoint>& points, double tol = 1e-9) {
  detail::check_site_list(points);
  DegeneracyReport rep;
  rep.tolerance = tol;
  const std::size_t d = points.front().dimension();
  std::vector<Vec<double>> chart;
  for (const auto& p : points) chart.push_back(klein_chart(p));

  if (points.front().model == ModelTag::UpperHalfSpace) {
    std::vector<double> heights;
    for (const auto& p : points) heights.push_back(p.coords.back());
    rep.equal_height_groups = detail::value_groups(heights, tol, d + 2);
  } else {
    std::vector<double> norms;
    for (const auto& c : chart) norms.push_back(std::sqrt(norm2(c)));
    rep.equal_norm_groups = detail::value_groups(norms, tol, d + 2);
  }

  // Three or more sites on one Klein line (a hyperbolic geodesic).
  std::set<std::vector<std::size_t>> lines;
  for (std::size_t i = 0; i < chart.size(); ++i)
    for (std::size_t j = i + 1; j < chart.size(); ++j) {
      const Vec<double> u = sub(chart[j], chart[i]);
      std::vector<std::size_t> group{i, j};
      for (std::size_t k = 0; k < chart.size(); ++k) {
        if (k == i || k == j) continue;
        const Vec<double> v = sub(chart[k], chart[i]);
        const double uu = norm2(u), vv = norm2(v), uv = dot(u, v);
        if (uu * vv - uv * uv <= tol * tol * uu * vv) group.push_back(k);
      }
      if (group.size() >= 3) {
        std::sort(group.begin(), group.end());
        lines.insert(group);
      }
    }
  rep.collinear_groups.assign(lines.begin(), lines.end());

  if (d == 2 || d == 3) {
    std::vector<WeightedSite<double>> ws;
    for (std::size_t i = 0; i < chart.size(); ++i) ws.push_back(klein_site_map(chart[i], i));
    BuildOptions bo;
    bo.vertex_tolerance = tol;
    const auto cx = build_complex(ws, std::optional<Ball<double>>(Ball<double>{Vec<double>(d, 0.0), 1.0}), bo);
    for (const auto& pv : cx.power_vertices)
      if (pv.inside_clip && pv.sites.size() > d + 1) rep.cocircular_groups.push_back(pv.sites);
  } else {
    rep.notes.push_back("co-spherical groups are only detected for d = 2 and d = 3");
  }
  if (!rep.equal_norm_groups.empty())
    rep.notes.push_back("equal-norm groups have bisectors through the origin (wheel configuration)");
  if (!rep.equal_height_groups.empty()) rep.notes.push_back("equal-height groups have vertical hyperplane bisectors");
  return rep;
}

struct VerificationReport {
  std::size_t samples = 0;
  std::size_t band_excluded = 0;
  std::size_t evaluated = 0;
  std::size_t agreements = 0;
  double agreement_rate = 1.0;
  double max_gap = 0.0;  // largest d(site_label, x) - d(site_oracle, x) over disagreements
  std::optional<Vec<double>> witness;  // unit chart coordinates of the worst disagreement
  std::size_t witness_label = 0, witness_oracle = 0;

  bool passed() const { return agreements == evaluated; }
};

/// Labels uniform chart samples by power point location and compares them
/// with the exhaustive distance oracle in the sites' own model. Samples
/// closer than `band` (unit-normal hyperplane value) to any wall of their
/// cell are excluded.
inline VerificationReport verify_labels(const std::vector<ModelPoint>& sites,
                                        const std::vector<WeightedSite<double>>& weighted, std::size_t samples,
                                        std::uint64_t seed, double band = 1e-7, unsigned workers = 1) {
  detail::check_site_list(sites);
  if (weighted.size() != sites.size()) fail(ErrorCode::ArityMismatch, "weighted site count differs from site count");
  const std::size_t n = sites.size();
  const std::size_t d = sites.front().dimension();
  const ModelTag model = sites.front().model;
  const Curvature curvature = sites.front().curvature;

  std::vector<std::vector<Halfspace<double>>> walls(n, std::vector<Halfspace<double>>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && !(weighted[i].center == weighted[j].center && weighted[i].weight == weighted[j].weight))
        walls[i][j] = radical_hyperplane(weighted[i], weighted[j]);

  auto run = [&](std::size_t begin, std::size_t end) {
    VerificationReport r;
    for (std::size_t k = begin; k < end; ++k) {
      ++r.samples;
      const Vec<double> x = uniform_ball_sample(seed, k, d);
      const Location loc = locate(x, weighted);
      const std::size_t label = loc.index;
      bool in_band = loc.ties.size() > 1;
      for (std::size_t j = 0; j < n && !in_band; ++j) {
        if (j == label || walls[label][j].normal.empty()) continue;
        if (walls[label][j].is_constant()) continue;
        in_band = std::abs(walls[label][j].evaluate(x)) < band;
      }
      if (in_band) {
        ++r.band_excluded;
        continue;
      }
      ++r.evaluated;
      const ModelPoint q = ModelPoint::from_unit(model, unit::from_klein<double>(model, x), curvature);
      const NearestSite ns = nearest_site(q, sites);
      if (std::find(ns.ties.begin(), ns.ties.end(), label) != ns.ties.end()) {
        ++r.agreements;
      } else {
        const double gap = distance(q, sites[label]) - ns.distance;
        if (!r.witness || gap > r.max_gap) {
          r.max_gap = gap;
          r.witness = x;
          r.witness_label = label;
          r.witness_oracle = ns.index;
        }
      }
    }
    return r;
  };

  workers = std::max(1u, workers);
  std::vector<VerificationReport> parts(workers);
  if (workers == 1) {
    parts[0] = run(0, samples);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (samples + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::size_t b = std::min(samples, w * chunk), e = std::min(samples, (w + 1) * chunk);
      pool.emplace_back([&, w, b, e] { parts[w] = run(b, e); });
    }
    for (auto& t : pool) t.join();
  }
  VerificationReport total;
  for (const auto& p : parts) {
    total.samples += p.samples;
    total.band_excluded += p.band_excluded;
    total.evaluated += p.evaluated;
    total.agreements += p.agreements;
    if (p.witness && (!total.witness || p.max_gap > total.max_gap)) {
      total.max_gap = p.max_gap;
      total.witness = p.witness;
      total.witness_label = p.witness_label;
      total.witness_oracle = p.witness_oracle;
    }
  }
  total.agreement_rate =
      total.evaluated == 0 ? 1.0 : static_cast<double>(total.agreements) / static_cast<double>(total.evaluated);
  return total;
}

inline VerificationReport verify(const VoronoiDiagram& vd, std::size_t samples, std::uint64_t seed,
                                 unsigned workers = 1, double band = 1e-7) {
  return verify_labels(vd.sites, vd.complex.sites, samples, seed, band, workers);
}

}  // namespace hvd
