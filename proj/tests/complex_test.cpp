#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "test_support.hpp"

using namespace hvd;

namespace {

std::vector<WeightedSite<double>> random_sites(std::mt19937_64& rng, std::size_t n, std::size_t d) {
  std::uniform_real_distribution<double> u(-0.8, 0.8), w(-0.3, 0.3);
  std::vector<WeightedSite<double>> s;
  for (std::size_t i = 0; i < n; ++i) {
    Vec<double> c(d);
    for (auto& x : c) x = u(rng);
    s.push_back({c, w(rng), i});
  }
  return s;
}

const std::optional<Ball<double>> kUnitDisk2{Ball<double>{{0.0, 0.0}, 1.0}};

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(Complex, ThreeUnweightedSitesMeetAtTheCircumcenter) {
  const std::vector<WeightedSite<double>> s{{{0.0, 0.0}, 0.0, 0}, {{0.4, 0.0}, 0.0, 1}, {{0.0, 0.4}, 0.0, 2}};
  const auto cx = build_complex(s, kUnitDisk2);
  EXPECT_EQ(cx.adjacency, (std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {0, 2}, {1, 2}}));
  ASSERT_EQ(cx.power_vertices.size(), 1u);
  EXPECT_EQ(cx.power_vertices[0].sites, (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_NEAR(cx.power_vertices[0].point[0], 0.2, 1e-14);
  EXPECT_NEAR(cx.power_vertices[0].point[1], 0.2, 1e-14);
  EXPECT_TRUE(cx.power_vertices[0].inside_clip);
  for (const auto& c : cx.cells) {
    EXPECT_FALSE(c.empty);
    EXPECT_TRUE(c.touches_box);
  }
}

// Membership by clipped geometry agrees with the power argmin.
TEST(Complex, CellsAgreeWithPowerLocation) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (std::size_t d : {2u, 3u})
    for (int trial = 0; trial < 10; ++trial) {
      const auto s = random_sites(rng, 12, d);
      const auto cx = build_complex(s, std::optional<Ball<double>>{}, BuildOptions{true, 2.0});
      for (int k = 0; k < 500; ++k) {
        Vec<double> x(d);
        for (auto& v : x) v = u(rng);
        const auto loc = locate(x, s);
        if (loc.ties.size() > 1) continue;
        for (std::size_t i = 0; i < s.size(); ++i) {
          if (cx.cells[i].empty) continue;
          // Skip samples within a hair of a wall.
          double margin = 1.0;
          for (const auto& h : cx.cells[i].halfspaces) margin = std::min(margin, std::abs(h.plane.evaluate(x)));
          if (margin < 1e-9) continue;
          EXPECT_EQ(geom::strictly_inside(cx.cells[i], x, 0.0), i == loc.index) << "d=" << d;
        }
      }
    }
}

TEST(Complex, PowerVerticesAreEquipotent) {
  std::mt19937_64 rng(2);
  for (std::size_t d : {2u, 3u}) {
    const auto s = random_sites(rng, 15, d);
    const auto cx = build_complex(s, std::optional<Ball<double>>{Ball<double>{Vec<double>(d, 0.0), 1.0}});
    ASSERT_FALSE(cx.power_vertices.empty());
    for (const auto& pv : cx.power_vertices) {
      EXPECT_EQ(pv.sites.size(), d + 1);
      const double p0 = power_distance(s[pv.sites[0]], pv.point);
      for (std::size_t id : pv.sites) EXPECT_NEAR(power_distance(s[id], pv.point), p0, 1e-10);
      for (std::size_t j = 0; j < s.size(); ++j) EXPECT_GE(power_distance(s[j], pv.point), p0 - 1e-10);
    }
  }
}

TEST(Complex, AdjacencyIsSymmetricAndMatchesFacets) {
  std::mt19937_64 rng(3);
  const auto s = random_sites(rng, 20, 2);
  const auto cx = build_complex(s, kUnitDisk2);
  for (const auto& [i, j] : cx.adjacency) {
    EXPECT_LT(i, j);
    bool found = false;
    for (const auto& f : cx.cells[i].facets) found = found || f.label == static_cast<int>(j);
    EXPECT_TRUE(found);
    EXPECT_TRUE(cx.adjacent(j, i));
  }
}

TEST(Complex, DominatedSitesHaveEmptyCells) {
  const std::vector<WeightedSite<double>> s{{{0.0, 0.0}, 0.0, 0}, {{0.1, 0.0}, -1.0, 1}, {{0.5, 0.5}, 0.0, 2}};
  const auto cx = build_complex(s, kUnitDisk2);
  EXPECT_TRUE(cx.cells[1].empty);
  EXPECT_FALSE(cx.cells[0].empty);
  for (const auto& [i, j] : cx.adjacency) EXPECT_TRUE(i != 1 && j != 1);
}

TEST(Complex, ClipBallRemovesOutsideStructure) {
  // Two far apart sites whose bisector misses the unit disk.
  const std::vector<WeightedSite<double>> s{{{0.0, 0.0}, 0.0, 0}, {{4.0, 0.0}, 0.0, 1}};
  const auto cx = build_complex(s, kUnitDisk2);
  EXPECT_TRUE(cx.adjacency.empty());
  EXPECT_TRUE(cx.cells[1].empty);
}

TEST(Complex, ExactAndFloatAgreeOnCombinatorics) {
  std::mt19937_64 rng(4);
  for (std::size_t d : {2u, 3u}) {
    const auto fs = random_sites(rng, 10, d);
    std::vector<WeightedSite<Rational>> es;
    for (const auto& s : fs) {
      WeightedSite<Rational> e;
      for (double c : s.center) e.center.push_back(ScalarTraits<Rational>::from_double(c));
      e.weight = ScalarTraits<Rational>::from_double(s.weight);
      e.origin_index = s.origin_index;
      es.push_back(e);
    }
    const auto fc = build_complex(fs, std::optional<Ball<double>>{Ball<double>{Vec<double>(d, 0.0), 1.0}});
    const auto ec = build_complex(es, std::optional<Ball<Rational>>{Ball<Rational>{Vec<Rational>(d, Rational(0)), 1}});
    EXPECT_EQ(fc.adjacency, ec.adjacency) << "d=" << d;
    ASSERT_EQ(fc.power_vertices.size(), ec.power_vertices.size());
    for (std::size_t k = 0; k < fc.power_vertices.size(); ++k) {
      EXPECT_EQ(fc.power_vertices[k].sites, ec.power_vertices[k].sites);
      for (std::size_t c = 0; c < d; ++c)
        EXPECT_NEAR(fc.power_vertices[k].point[c], ScalarTraits<Rational>::to_double(ec.power_vertices[k].point[c]),
                    1e-9);
    }
  }
}

TEST(Complex, ExactRunsAreIdentical) {
  const std::vector<WeightedSite<Rational>> s{{{Rational(1, 3), Rational(0)}, Rational(-1, 2), 0},
                                              {{Rational(-1, 4), Rational(1, 5)}, Rational(1, 9), 1},
                                              {{Rational(0), Rational(-2, 7)}, Rational(0), 2},
                                              {{Rational(1, 6), Rational(1, 2)}, Rational(-1, 3), 3}};
  const std::optional<Ball<Rational>> ball{Ball<Rational>{{Rational(0), Rational(0)}, 1}};
  const auto a = build_complex(s, ball), b = build_complex(s, ball);
  ASSERT_EQ(a.cells.size(), b.cells.size());
  for (std::size_t i = 0; i < a.cells.size(); ++i) {
    ASSERT_EQ(a.cells[i].halfspaces.size(), b.cells[i].halfspaces.size());
    for (std::size_t k = 0; k < a.cells[i].halfspaces.size(); ++k) {
      EXPECT_EQ(a.cells[i].halfspaces[k].neighbor, b.cells[i].halfspaces[k].neighbor);
      EXPECT_EQ(a.cells[i].halfspaces[k].plane, b.cells[i].halfspaces[k].plane);
    }
    EXPECT_EQ(a.cells[i].vertices, b.cells[i].vertices);
  }
}

TEST(Complex, DegenerateVerticesAreMerged) {
  // Four unweighted sites on a circle: one vertex with four incident cells.
  const std::vector<WeightedSite<double>> s{
      {{0.4, 0.0}, 0.0, 0}, {{0.0, 0.4}, 0.0, 1}, {{-0.4, 0.0}, 0.0, 2}, {{0.0, -0.4}, 0.0, 3}};
  const auto cx = build_complex(s, kUnitDisk2);
  ASSERT_EQ(cx.power_vertices.size(), 1u);
  EXPECT_EQ(cx.power_vertices[0].sites, (std::vector<std::size_t>{0, 1, 2, 3}));
  EXPECT_EQ(cx.adjacency.size(), 4u);
  EXPECT_FALSE(cx.adjacent(0, 2));
}

TEST(Complex, ModesAndErrors) {
  std::mt19937_64 rng(5);
  const auto s5 = random_sites(rng, 6, 5);
  EXPECT_EQ(code_of([&] { build_complex(s5, std::optional<Ball<double>>{}); }), ErrorCode::DimensionUnsupported);
  BuildOptions implicit;
  implicit.explicit_geometry = false;
  const auto cx = build_complex(s5, std::optional<Ball<double>>{}, implicit);
  EXPECT_EQ(cx.cells.size(), 6u);
  for (const auto& c : cx.cells) {
    EXPECT_EQ(c.halfspaces.size(), 5u);
    EXPECT_TRUE(c.vertices.empty());
  }
  EXPECT_TRUE(cx.adjacency.empty());
  auto dup = random_sites(rng, 3, 2);
  dup.push_back(dup[0]);
  EXPECT_EQ(code_of([&] { build_complex(dup, kUnitDisk2); }), ErrorCode::DuplicateSites);
  EXPECT_EQ(code_of([&] { build_complex(std::vector<WeightedSite<double>>{}, kUnitDisk2); }), ErrorCode::EmptySites);
}
