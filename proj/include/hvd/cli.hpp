#pragma once

// Command-line front end. Every failure prints one line
// "hvd: error: <Code>: <detail>" on stderr and exits with the code's
// distinct status (see exit_code).

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <unistd.h>

#include "hvd/error.hpp"
#include "hvd/io.hpp"
#include "hvd/svg.hpp"
#include "hvd/voronoi.hpp"

namespace hvd::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kParse = 2,
  kDomain = 3,
  kDimension = 4,
  kNotSquareRootFree = 5,
  kDuplicate = 6,
  kArity = 7,
  kModelMismatch = 8,
  kUnderflow = 9,
  kCoincident = 10,
  kDegenerateSurface = 11,
  kUnsupportedPath = 12,
  kEmpty = 13,
  kNoExplicitGeometry = 14,
  kInvalidArgument = 15,
  kIo = 16,
  kInternal = 70,
};

constexpr int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return kParse;
    case ErrorCode::DomainViolation: return kDomain;
    case ErrorCode::DimensionUnsupported: return kDimension;
    case ErrorCode::NotSquareRootFree: return kNotSquareRootFree;
    case ErrorCode::DuplicateSites: return kDuplicate;
    case ErrorCode::ArityMismatch: return kArity;
    case ErrorCode::ModelMismatch: return kModelMismatch;
    case ErrorCode::NumericalUnderflow: return kUnderflow;
    case ErrorCode::CoincidentSites: return kCoincident;
    case ErrorCode::DegenerateSurface: return kDegenerateSurface;
    case ErrorCode::UnsupportedPath: return kUnsupportedPath;
    case ErrorCode::EmptySites: return kEmpty;
    case ErrorCode::NoExplicitGeometry: return kNoExplicitGeometry;
    case ErrorCode::InvalidArgument: return kInvalidArgument;
    case ErrorCode::IoError: return kIo;
  }
  return kInternal;
}

namespace detail {

inline std::string one_line(std::string s) {
  for (auto& ch : s)
    if (ch == '\n' || ch == '\r') ch = ' ';
  return s;
}

inline bool use_color(std::ostream& out) {
  if (std::getenv("NO_COLOR") != nullptr) return false;
  return &out == &std::cout && ::isatty(STDOUT_FILENO);
}

inline ModelTag model_arg(const std::string& s) {
  const auto m = parse_model(s);
  if (!m) fail(ErrorCode::ParseError, "unknown model '" + s + "'");
  return *m;
}

inline Route route_arg(const std::string& s) {
  const auto r = parse_route(s);
  if (!r) fail(ErrorCode::ParseError, "unknown route '" + s + "' (expected klein or hemisphere)");
  return *r;
}

inline void emit(const std::string& text, const std::string& output, std::ostream& out) {
  if (output.empty() || output == "-")
    out << text;
  else
    write_text_file(output, text);
}

inline PointSetDocument load_points(const std::string& path, const std::string& curvature, bool exact) {
  PointSetDocument doc = parse_point_set(read_json_file(path));
  if (!curvature.empty()) {
    doc.curvature = parse_rational(curvature);
    if (!(doc.curvature < 0)) fail(ErrorCode::InvalidArgument, "curvature must be negative");
  }
  if (exact && doc.scalar != ScalarKind::ExactRational) {
    doc.scalar = ScalarKind::ExactRational;
    doc.exact_points.clear();
    for (const auto& p : doc.points) {
      Vec<Rational> e;
      for (double x : p) e.push_back(ScalarTraits<Rational>::from_double(x));
      doc.exact_points.push_back(std::move(e));
    }
  }
  return doc;
}

}  // namespace detail

inline int run(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Hyperbolic Voronoi diagrams via power diagrams in the Klein ball", "hvd"};
  app.set_version_flag("--version", std::string("hvd ") + kVersion);
  app.require_subcommand(1);

  std::string input, output, model, curvature, route = "klein", to;
  bool exact = false, implicit = false;
  std::size_t samples = 10000, verify_samples = 0;
  std::uint64_t seed = 42;
  unsigned workers = 1;
  int width = 512, samples_per_arc = 0;

  auto* compute = app.add_subcommand("compute", "Compute the diagram document of a point set");
  compute->add_option("input", input, "Point set document (JSON)")->required();
  compute->add_option("--model", model, "Model for reported boundary surfaces (default: input model)");
  compute->add_option("--curvature", curvature, "Override the curvature (negative; rational text allowed)");
  compute->add_option("--route", route, "klein or hemisphere")->capture_default_str();
  compute->add_flag("--exact", exact, "Use exact rational arithmetic");
  compute->add_flag("--implicit", implicit, "Only halfspace lists, no explicit cell geometry");
  compute->add_option("--verify", verify_samples, "Append a verification summary with N samples");
  compute->add_option("--seed", seed, "Verification seed")->capture_default_str();
  compute->add_option("--workers", workers, "Verification worker threads")->capture_default_str();
  compute->add_option("-o,--output", output, "Output path (default: stdout)");

  auto* convert_cmd = app.add_subcommand("convert", "Convert a point set to another model");
  convert_cmd->add_option("input", input, "Point set document (JSON)")->required();
  convert_cmd->add_option("--to", to, "Target model")->required();
  convert_cmd->add_option("-o,--output", output, "Output path (default: stdout)");

  auto* delaunay_cmd = app.add_subcommand("delaunay", "Extract the Delaunay dual complex");
  delaunay_cmd->add_option("input", input, "Point set or diagram document (JSON)")->required();
  delaunay_cmd->add_option("--route", route, "klein or hemisphere")->capture_default_str();
  delaunay_cmd->add_flag("--exact", exact, "Use exact rational arithmetic");
  delaunay_cmd->add_option("-o,--output", output, "Output path (default: stdout)");

  auto* render = app.add_subcommand("render", "Render a planar diagram document as SVG");
  render->add_option("input", input, "Diagram document (JSON)")->required();
  render->add_option("--model", model, "Klein, Poincare or UpperHalfSpace (default: Klein)");
  render->add_option("--width", width, "Image width in pixels")->capture_default_str();
  render->add_option("--samples-per-arc", samples_per_arc, "Draw polylines with N pieces instead of arcs");
  render->add_option("-o,--output", output, "Output path (default: stdout)");

  auto* check = app.add_subcommand("check", "Verify cell labels against the nearest-site oracle");
  check->add_option("input", input, "Point set or diagram document (JSON)")->required();
  check->add_option("--samples", samples, "Number of samples")->capture_default_str();
  check->add_option("--seed", seed, "Sample seed")->capture_default_str();
  check->add_option("--route", route, "klein or hemisphere")->capture_default_str();
  check->add_option("--workers", workers, "Worker threads")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "hvd: error: ParseError: " << detail::one_line(e.what()) << "\n";
    return kParse;
  }

  try {
    if (compute->parsed()) {
      const PointSetDocument doc = detail::load_points(input, curvature, exact);
      ComputeOptions opt;
      opt.route = detail::route_arg(route);
      if (!model.empty()) opt.boundary_model = detail::model_arg(model);
      if (implicit) opt.explicit_geometry = false;
      opt.verify_samples = verify_samples;
      opt.seed = seed;
      opt.workers = workers;
      detail::emit(dump_document(compute_document(doc, opt)), output, out);
      return kOk;
    }
    if (convert_cmd->parsed()) {
      const PointSetDocument doc = detail::load_points(input, "", false);
      detail::emit(dump_document(to_json(convert_point_set(doc, detail::model_arg(to)))), output, out);
      return kOk;
    }
    if (delaunay_cmd->parsed()) {
      const json j = read_json_file(input);
      json diagram;
      if (is_diagram_document(j)) {
        diagram = j;
      } else {
        PointSetDocument doc = detail::load_points(input, "", exact);
        ComputeOptions opt;
        opt.route = detail::route_arg(route);
        diagram = compute_document(doc, opt);
      }
      if (diagram.at("delaunay").is_null())
        fail(ErrorCode::NoExplicitGeometry, "diagram was computed without explicit geometry");
      json result;
      result["format"] = "hvd-delaunay";
      result["version"] = kDiagramVersion;
      result["delaunay"] = diagram["delaunay"];
      result["degeneracies"] = diagram["degeneracies"];
      detail::emit(dump_document(result), output, out);
      return kOk;
    }
    if (render->parsed()) {
      const json diagram = read_json_file(input);
      if (!is_diagram_document(diagram)) fail(ErrorCode::ParseError, "'" + input + "' is not a diagram document");
      RenderOptions ro;
      ro.model = model.empty() ? ModelTag::Klein : detail::model_arg(model);
      ro.width = width;
      ro.samples_per_arc = samples_per_arc;
      detail::emit(render_svg(diagram, ro), output, out);
      return kOk;
    }
    if (check->parsed()) {
      const json j = read_json_file(input);
      VerificationReport rep;
      if (is_diagram_document(j)) {
        const PointSetDocument doc = parse_point_set(j.at("input"));
        rep = verify_labels(model_points(doc), unit_power_sites(j), samples, seed, 1e-7, workers);
      } else {
        const PointSetDocument doc = parse_point_set(j);
        VoronoiOptions vo;
        vo.route = detail::route_arg(route);
        vo.explicit_geometry = false;
        rep = verify(voronoi(model_points(doc), vo), samples, seed, workers);
      }
      const bool color = detail::use_color(out);
      out << "samples " << rep.samples << "\n";
      out << "evaluated " << rep.evaluated << "\n";
      out << "band_excluded " << rep.band_excluded << "\n";
      out << "agreement_rate " << rep.agreement_rate << "\n";
      out << "max_gap " << rep.max_gap << "\n";
      if (rep.witness) {
        out << "witness";
        for (double x : *rep.witness) out << ' ' << x;
        out << " label " << rep.witness_label << " oracle " << rep.witness_oracle << "\n";
      }
      const bool ok = rep.passed();
      if (color)
        out << (ok ? "\033[32mPASS\033[0m" : "\033[31mFAIL\033[0m") << "\n";
      else
        out << (ok ? "PASS" : "FAIL") << "\n";
      return ok ? kOk : kCheckFailed;
    }
  } catch (const Error& e) {
    err << "hvd: error: " << detail::one_line(e.what()) << "\n";
    return exit_code(e.code());
  } catch (const json::exception& e) {
    err << "hvd: error: ParseError: " << detail::one_line(e.what()) << "\n";
    return kParse;
  } catch (const std::exception& e) {
    err << "hvd: error: Internal: " << detail::one_line(e.what()) << "\n";
    return kInternal;
  }
  return kOk;
}

}  // namespace hvd::cli
