#pragma once

// Deterministic samplers. Sample k of a stream depends only on (seed, k),
// so a stream can be split across workers without changing its content.

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "hvd/vec.hpp"

namespace hvd {

/// Uniform point of the open Euclidean ball of radius max_radius in R^d.
inline Vec<double> uniform_ball_sample(std::uint64_t seed, std::uint64_t index, std::size_t d,
                                       double max_radius = 1.0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> u(-max_radius, max_radius);
  Vec<double> x(d);
  const double r2 = max_radius * max_radius;
  do {
    for (auto& v : x) v = u(rng);
  } while (!(norm2(x) < r2));
  return x;
}

/// n sites uniform in the Klein ball of radius max_radius (unit model).
inline std::vector<Vec<double>> random_klein_points(std::size_t n, std::size_t d, std::uint64_t seed,
                                                    double max_radius = 0.9) {
  std::vector<Vec<double>> pts;
  pts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) pts.push_back(uniform_ball_sample(seed, i, d, max_radius));
  return pts;
}

}  // namespace hvd
