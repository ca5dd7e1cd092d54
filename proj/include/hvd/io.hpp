#pragma once

// JSON documents: point sets in, diagrams out. Exact documents encode every
// rational as a "num/den" string; float documents use JSON numbers, which
// round-trip doubles exactly.

#include <json.hpp>

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hvd/complex.hpp"
#include "hvd/conversions.hpp"
#include "hvd/error.hpp"
#include "hvd/models.hpp"
#include "hvd/power.hpp"
#include "hvd/scalar.hpp"
#include "hvd/voronoi.hpp"

namespace hvd {

using json = nlohmann::ordered_json;

inline constexpr const char* kDiagramFormat = "hvd-diagram";
inline constexpr int kDiagramVersion = 1;

struct PointSetDocument {
  std::size_t dimension = 2;
  ModelTag model = ModelTag::Klein;
  ScalarKind scalar = ScalarKind::Float64;
  Rational curvature = -1;
  std::vector<Vec<double>> points;
  std::vector<Vec<Rational>> exact_points;  // filled in exact mode only

  Curvature float_curvature() const { return Curvature(ScalarTraits<Rational>::to_double(curvature)); }
};

inline json to_json_number(double x) { return x; }
inline json to_json_number(const Rational& x) { return format_rational(x); }

template <class T>
json to_json_vec(const Vec<T>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_json_number(x));
  return a;
}

inline Rational rational_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_number_unsigned()) return Rational(j.get<unsigned long long>());
  if (j.is_number_float()) return ScalarTraits<Rational>::from_double(j.get<double>());
  fail(ErrorCode::ParseError, "expected a number or a \"num/den\" string, got " + j.dump());
}

inline double double_from_json(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return ScalarTraits<Rational>::to_double(parse_rational(j.get<std::string>()));
  fail(ErrorCode::ParseError, "expected a number, got " + j.dump());
}

inline Vec<double> double_vec_from_json(const json& j) {
  if (!j.is_array()) fail(ErrorCode::ParseError, "expected an array of numbers, got " + j.dump());
  Vec<double> v;
  for (const auto& x : j) v.push_back(double_from_json(x));
  return v;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IoError, "cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return json::parse(ss.str());
  } catch (const json::exception& e) {
    fail(ErrorCode::ParseError, "'" + path + "' is not valid JSON: " + e.what());
  }
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::IoError, "cannot write '" + path + "'");
  out << text;
  if (!out) fail(ErrorCode::IoError, "write to '" + path + "' failed");
}

inline std::string dump_document(const json& j) { return j.dump(2) + "\n"; }

inline PointSetDocument parse_point_set(const json& j) {
  if (!j.is_object()) fail(ErrorCode::ParseError, "point set document must be a JSON object");
  for (const char* key : {"dimension", "model", "points"})
    if (!j.contains(key)) fail(ErrorCode::ParseError, std::string("point set document lacks '") + key + "'");
  PointSetDocument doc;
  if (!j["dimension"].is_number_integer() || j["dimension"].get<long long>() < 2)
    fail(ErrorCode::ParseError, "'dimension' must be an integer >= 2");
  doc.dimension = j["dimension"].get<std::size_t>();
  const auto model = parse_model(j["model"].get<std::string>());
  if (!model) fail(ErrorCode::ParseError, "unknown model '" + j["model"].get<std::string>() + "'");
  doc.model = *model;
  if (j.contains("scalar")) {
    const auto kind = parse_scalar_kind(j["scalar"].get<std::string>());
    if (!kind) fail(ErrorCode::ParseError, "unknown scalar kind '" + j["scalar"].get<std::string>() + "'");
    doc.scalar = *kind;
  }
  if (j.contains("curvature")) doc.curvature = rational_from_json(j["curvature"]);
  if (!(doc.curvature < 0)) fail(ErrorCode::InvalidArgument, "curvature must be negative");
  if (!j["points"].is_array()) fail(ErrorCode::ParseError, "'points' must be an array");
  const std::size_t n = arity(doc.model, doc.dimension);
  for (std::size_t i = 0; i < j["points"].size(); ++i) {
    const json& row = j["points"][i];
    if (!row.is_array()) fail(ErrorCode::ParseError, "point " + std::to_string(i) + " is not an array");
    if (row.size() != n)
      fail(ErrorCode::ArityMismatch, "point " + std::to_string(i) + " has " + std::to_string(row.size()) +
                                         " coordinates, model " + std::string(to_string(doc.model)) + " needs " +
                                         std::to_string(n));
    if (doc.scalar == ScalarKind::ExactRational) {
      Vec<Rational> e;
      for (const auto& x : row) e.push_back(rational_from_json(x));
      Vec<double> f;
      for (const auto& x : e) f.push_back(ScalarTraits<Rational>::to_double(x));
      doc.exact_points.push_back(std::move(e));
      doc.points.push_back(std::move(f));
    } else {
      doc.points.push_back(double_vec_from_json(row));
    }
  }
  return doc;
}

inline json to_json(const PointSetDocument& doc) {
  json j;
  j["dimension"] = doc.dimension;
  if (doc.scalar == ScalarKind::ExactRational)
    j["curvature"] = format_rational(doc.curvature);
  else
    j["curvature"] = ScalarTraits<Rational>::to_double(doc.curvature);
  j["model"] = to_string(doc.model);
  j["scalar"] = to_string(doc.scalar);
  json pts = json::array();
  if (doc.scalar == ScalarKind::ExactRational)
    for (const auto& p : doc.exact_points) pts.push_back(to_json_vec(p));
  else
    for (const auto& p : doc.points) pts.push_back(to_json_vec(p));
  j["points"] = std::move(pts);
  return j;
}

inline PointSetDocument make_point_set(ModelTag model, const std::vector<Vec<double>>& points, double kappa = -1.0) {
  if (points.empty()) fail(ErrorCode::EmptySites, "no points");
  PointSetDocument doc;
  doc.model = model;
  doc.dimension = is_ambient(model) ? points.front().size() - 1 : points.front().size();
  doc.curvature = ScalarTraits<Rational>::from_double(kappa);
  doc.points = points;
  return doc;
}

inline std::vector<ModelPoint> model_points(const PointSetDocument& doc) {
  const Curvature c = doc.float_curvature();
  std::vector<ModelPoint> out;
  for (const auto& p : doc.points) out.push_back(ModelPoint{doc.model, p, c});
  return out;
}

/// Batch model change. Exact documents may only take square-root-free paths.
inline PointSetDocument convert_point_set(const PointSetDocument& doc, ModelTag to) {
  PointSetDocument out = doc;
  out.model = to;
  if (to == doc.model) return out;
  out.points.clear();
  out.exact_points.clear();
  if (doc.scalar == ScalarKind::ExactRational) {
    if (!unit::square_root_free(doc.model, to))
      fail(ErrorCode::NotSquareRootFree, std::string(to_string(doc.model)) + " -> " + std::string(to_string(to)) +
                                             " needs square roots; exact conversion is only available toward Klein");
    const auto r = exact_sqrt(-1 / doc.curvature);
    if (!r) fail(ErrorCode::NotSquareRootFree, "curvature radius sqrt(-1/kappa) is irrational");
    for (std::size_t i = 0; i < doc.exact_points.size(); ++i) {
      validate_point(ModelPoint{doc.model, doc.points[i], doc.float_curvature()});
      Vec<Rational> unit_p;
      for (const auto& x : doc.exact_points[i]) unit_p.push_back(x / *r);
      Vec<Rational> k = unit::convert<Rational>(doc.model, to, unit_p);
      for (auto& x : k) x *= *r;
      Vec<double> f;
      for (const auto& x : k) f.push_back(ScalarTraits<Rational>::to_double(x));
      out.exact_points.push_back(std::move(k));
      out.points.push_back(std::move(f));
    }
  } else {
    for (const auto& p : model_points(doc)) out.points.push_back(convert(p, to).coords);
  }
  out.dimension = doc.dimension;
  return out;
}

struct ComputeOptions {
  Route route = Route::Klein;
  std::optional<ModelTag> boundary_model;
  std::optional<bool> explicit_geometry;
  std::size_t verify_samples = 0;
  std::uint64_t seed = 42;
  unsigned workers = 1;
};

template <class T>
json complex_to_json(const PowerComplex<T>& cx) {
  json j;
  json sites = json::array();
  for (const auto& s : cx.sites) sites.push_back({{"center", to_json_vec(s.center)}, {"weight", to_json_number(s.weight)}});
  j["power_sites"] = std::move(sites);
  if (cx.clip) j["clip"] = {{"center", to_json_vec(cx.clip->center)}, {"radius_sq", to_json_number(cx.clip->radius_sq)}};
  j["box_half_width"] = to_json_number(cx.box_half_width);
  json cells = json::array();
  for (const auto& c : cx.cells) {
    json cj;
    cj["site"] = c.site_index;
    cj["empty"] = c.empty;
    cj["touches_box"] = c.touches_box;
    json hs = json::array();
    for (const auto& h : c.halfspaces)
      hs.push_back({{"neighbor", h.neighbor}, {"normal", to_json_vec(h.plane.normal)}, {"offset", to_json_number(h.plane.offset)}});
    cj["halfspaces"] = std::move(hs);
    if (cx.explicit_geometry) {
      json vs = json::array();
      for (const auto& v : c.vertices) vs.push_back(to_json_vec(v));
      cj["vertices"] = std::move(vs);
      json fs = json::array();
      for (const auto& f : c.facets) {
        json fv = json::array();
        for (const auto& v : f.vertices) fv.push_back(to_json_vec(v));
        fs.push_back({{"neighbor", f.label}, {"vertices", std::move(fv)}});
      }
      cj["facets"] = std::move(fs);
    }
    cells.push_back(std::move(cj));
  }
  j["cells"] = std::move(cells);
  json adj = json::array();
  for (const auto& [a, b] : cx.adjacency) adj.push_back({a, b});
  j["adjacency"] = std::move(adj);
  json pv = json::array();
  for (const auto& v : cx.power_vertices)
    pv.push_back({{"point", to_json_vec(v.point)}, {"sites", v.sites}, {"inside", v.inside_clip}});
  j["power_vertices"] = std::move(pv);
  return j;
}

inline json surface_to_json(const ImplicitSurface& s) {
  return {{"model", to_string(s.model)}, {"lambda", s.lambda}, {"a", s.a}, {"b", s.b}};
}

inline ImplicitSurface surface_from_json(const json& j, Curvature c) {
  ImplicitSurface s;
  const auto m = parse_model(j.at("model").get<std::string>());
  if (!m) fail(ErrorCode::ParseError, "unknown surface model");
  s.model = *m;
  s.lambda = double_from_json(j.at("lambda"));
  s.a = double_vec_from_json(j.at("a"));
  s.b = double_from_json(j.at("b"));
  s.curvature = c;
  return s;
}

inline json boundary_to_json(const Boundary& bd) {
  json j;
  j["cells"] = {bd.i, bd.j};
  j["surface"] = surface_to_json(bd.surface);
  const SurfaceClass cls = classify(bd.surface);
  j["class"] = to_string(cls);
  j["hyperplane"] = is_hyperplane(cls);
  j["chart_surface"] = surface_to_json(bd.chart_surface);
  json seg = json::array();
  for (const auto& p : bd.chart_segment) seg.push_back(p);
  j["chart_segment"] = std::move(seg);
  return j;
}

inline json delaunay_to_json(const DelaunayComplex& dc) {
  json edges = json::array();
  for (const auto& [a, b] : dc.edges) edges.push_back({a, b});
  return {{"faces", dc.faces}, {"centers", dc.centers}, {"edges", std::move(edges)},
          {"is_triangulation", dc.is_triangulation}};
}

inline json degeneracies_to_json(const DegeneracyReport& r) {
  return {{"tolerance", r.tolerance},
          {"cocircular_groups", r.cocircular_groups},
          {"collinear_groups", r.collinear_groups},
          {"equal_norm_groups", r.equal_norm_groups},
          {"equal_height_groups", r.equal_height_groups},
          {"notes", r.notes}};
}

inline json verification_to_json(const VerificationReport& r) {
  json j = {{"samples", r.samples},       {"evaluated", r.evaluated},   {"agreements", r.agreements},
            {"band_excluded", r.band_excluded}, {"agreement_rate", r.agreement_rate}, {"max_gap", r.max_gap}};
  if (r.witness) {
    j["witness"] = *r.witness;
    j["witness_label"] = r.witness_label;
    j["witness_oracle"] = r.witness_oracle;
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

namespace detail {

struct ExactSetup {
  std::vector<WeightedSite<Rational>> sites;
  Rational clip_radius_sq = 1;
  double chart_radius = 1.0;
};

inline ExactSetup exact_setup(const PointSetDocument& doc, Route route) {
  ExactSetup setup;
  const Rational r2 = -1 / doc.curvature;
  const auto r = exact_sqrt(r2);
  const std::size_t n = doc.exact_points.size();
  if (route == Route::Hemisphere) {
    setup.clip_radius_sq = r2;
    setup.chart_radius = std::sqrt(ScalarTraits<Rational>::to_double(r2));
    for (std::size_t i = 0; i < n; ++i) {
      Vec<Rational> h;
      if (doc.model == ModelTag::Hemisphere) {
        h = doc.exact_points[i];
        if (norm2(h) != r2)
          fail(ErrorCode::DomainViolation,
               "point " + std::to_string(i) + " is not exactly on the hemisphere x0^2 + |x|^2 = r^2");
      } else {
        if (!r) fail(ErrorCode::NotSquareRootFree, "curvature radius sqrt(-1/kappa) is irrational");
        Vec<Rational> unit_p;
        for (const auto& x : doc.exact_points[i]) unit_p.push_back(x / *r);
        h = unit::convert<Rational>(doc.model, ModelTag::Hemisphere, unit_p);
        for (auto& x : h) x *= *r;
      }
      setup.sites.push_back(hemisphere_site_map(h, i, r2));
    }
  } else {
    if (!r) fail(ErrorCode::NotSquareRootFree, "curvature radius sqrt(-1/kappa) is irrational");
    for (std::size_t i = 0; i < n; ++i) {
      Vec<Rational> unit_p;
      for (const auto& x : doc.exact_points[i]) unit_p.push_back(x / *r);
      setup.sites.push_back(klein_site_map(unit::to_klein<Rational>(doc.model, unit_p), i));
    }
  }
  return setup;
}

}  // namespace detail

/// The full diagram document for a point set. Geometry in exact mode is
/// built with rationals; boundary surfaces and chart data are always
/// reported in float64.
inline json compute_document(const PointSetDocument& doc, const ComputeOptions& opt = {}) {
  const std::vector<ModelPoint> sites = model_points(doc);
  detail::check_site_list(sites);
  const bool exact = doc.scalar == ScalarKind::ExactRational;
  if (exact)
    for (std::size_t i = 0; i < doc.exact_points.size(); ++i)
      for (std::size_t k = i + 1; k < doc.exact_points.size(); ++k)
        if (doc.exact_points[i] == doc.exact_points[k])
          fail(ErrorCode::DuplicateSites, "sites " + std::to_string(i) + " and " + std::to_string(k) + " coincide");

  const std::size_t d = doc.dimension;
  const ModelTag boundary_model = opt.boundary_model.value_or(doc.model);
  const bool explicit_geometry = opt.explicit_geometry.value_or(d == 2 || d == 3);

  json out;
  out["format"] = kDiagramFormat;
  out["version"] = kDiagramVersion;
  out["input"] = to_json(doc);
  out["route"] = to_string(opt.route);
  out["scalar"] = to_string(doc.scalar);
  out["explicit_geometry"] = explicit_geometry;
  out["boundary_model"] = to_string(boundary_model);

  std::vector<Vec<double>> chart_sites;
  for (const auto& p : sites) chart_sites.push_back(klein_chart(p));
  out["chart_sites"] = chart_sites;

  std::vector<Boundary> boundaries;
  std::optional<DelaunayComplex> dual;
  std::vector<WeightedSite<double>> unit_sites;
  if (exact) {
    const auto setup = detail::exact_setup(doc, opt.route);
    BuildOptions bo;
    bo.explicit_geometry = explicit_geometry;
    const auto cx = build_complex(
        setup.sites, std::optional<Ball<Rational>>(Ball<Rational>{Vec<Rational>(d, Rational(0)), setup.clip_radius_sq}),
        bo);
    out["chart_radius_sq"] = format_rational(setup.clip_radius_sq);
    out["complex"] = complex_to_json(cx);
    boundaries = diagram_boundaries(cx, chart_sites, doc.float_curvature(), boundary_model, setup.chart_radius);
    if (explicit_geometry) dual = delaunay(cx);
    for (const auto& s : setup.sites) {
      WeightedSite<double> w;
      for (const auto& c : s.center) w.center.push_back(ScalarTraits<Rational>::to_double(c) / setup.chart_radius);
      w.weight = ScalarTraits<Rational>::to_double(s.weight / setup.clip_radius_sq);
      w.origin_index = s.origin_index;
      unit_sites.push_back(std::move(w));
    }
  } else {
    VoronoiOptions vo;
    vo.route = opt.route;
    vo.boundary_model = boundary_model;
    vo.explicit_geometry = explicit_geometry;
    const VoronoiDiagram vd = voronoi(sites, vo);
    out["chart_radius_sq"] = 1.0;
    out["complex"] = complex_to_json(vd.complex);
    boundaries = vd.boundaries;
    if (explicit_geometry) dual = delaunay(vd.complex);
    unit_sites = vd.complex.sites;
  }

  json bj = json::array();
  for (const auto& b : boundaries) bj.push_back(boundary_to_json(b));
  out["boundaries"] = std::move(bj);
  out["delaunay"] = dual ? delaunay_to_json(*dual) : json(nullptr);
  out["degeneracies"] = degeneracies_to_json(detect_degeneracies(sites));
  if (opt.verify_samples > 0)
    out["verification"] = verification_to_json(verify_labels(sites, unit_sites, opt.verify_samples, opt.seed,
                                                             1e-7, opt.workers));
  return out;
}

inline bool is_diagram_document(const json& j) {
  return j.is_object() && j.contains("format") && j["format"] == kDiagramFormat;
}

/// Power sites of a diagram document, rescaled to the unit chart.
inline std::vector<WeightedSite<double>> unit_power_sites(const json& diagram) {
  const double r2 = double_from_json(diagram.at("chart_radius_sq"));
  const double r = std::sqrt(r2);
  std::vector<WeightedSite<double>> out;
  const json& ps = diagram.at("complex").at("power_sites");
  for (std::size_t i = 0; i < ps.size(); ++i) {
    WeightedSite<double> w;
    for (double c : double_vec_from_json(ps[i].at("center"))) w.center.push_back(c / r);
    w.weight = double_from_json(ps[i].at("weight")) / r2;
    w.origin_index = i;
    out.push_back(std::move(w));
  }
  return out;
}

inline std::vector<std::pair<std::size_t, std::size_t>> document_adjacency(const json& diagram) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (const auto& e : diagram.at("complex").at("adjacency"))
    out.emplace_back(e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>());
  return out;
}

}  // namespace hvd
