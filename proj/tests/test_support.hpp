#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "hvd/hvd.hpp"

namespace hvd::testing {

inline std::string fixture(const std::string& name) { return std::string(HVD_FIXTURE_DIR) + "/" + name; }

/// Random unit-Klein point of norm <= max_radius.
inline Vec<double> random_klein(std::mt19937_64& rng, std::size_t d, double max_radius = 0.95) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Vec<double> x(d);
  do {
    for (auto& v : x) v = u(rng);
  } while (norm2(x) >= 1.0);
  return scaled(x, max_radius);
}

/// Random valid point of model m with curvature c.
inline ModelPoint random_point(std::mt19937_64& rng, ModelTag m, std::size_t d, Curvature c = Curvature(-1.0),
                               double max_radius = 0.95) {
  return ModelPoint::from_unit(m, unit::from_klein<double>(m, random_klein(rng, d, max_radius)), c);
}

inline ModelPoint klein(Vec<double> x, double kappa = -1.0) { return {ModelTag::Klein, std::move(x), Curvature(kappa)}; }

inline std::vector<ModelPoint> klein_sites(const std::vector<Vec<double>>& pts, double kappa = -1.0) {
  std::vector<ModelPoint> out;
  for (const auto& p : pts) out.push_back(klein(p, kappa));
  return out;
}

}  // namespace hvd::testing
