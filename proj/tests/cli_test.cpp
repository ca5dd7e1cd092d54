#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "hvd/cli.hpp"
#include "test_support.hpp"

using hvd::json;
using hvd::testing::fixture;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::initializer_list<std::string> args) {
  std::vector<std::string> storage{"hvd"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());
  std::ostringstream out, err;
  const int code = hvd::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    path_ = std::filesystem::temp_directory_path() /
            ("hvd_cli_test_" + std::to_string(::getpid()) + "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void expect_error_line(const Outcome& o, const std::string& code) {
  EXPECT_EQ(o.err.rfind("hvd: error: " + code + ": ", 0), 0u) << o.err;
  EXPECT_EQ(std::count(o.err.begin(), o.err.end(), '\n'), 1) << o.err;
  EXPECT_TRUE(o.out.empty());
}

}  // namespace

TEST(Cli, VersionAndHelp) {
  const auto v = run({"--version"});
  EXPECT_EQ(v.code, 0);
  EXPECT_NE(v.out.find("hvd 0.1.0"), std::string::npos);
  const auto h = run({"--help"});
  EXPECT_EQ(h.code, 0);
  for (const char* sub : {"compute", "convert", "delaunay", "render", "check"})
    EXPECT_NE(h.out.find(sub), std::string::npos) << sub;
  EXPECT_EQ(run({"compute", "--help"}).code, 0);
}

TEST(Cli, UsageErrorsAreParseErrors) {
  expect_error_line(run({}), "ParseError");
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"compute"}).code, 2);
  EXPECT_EQ(run({"compute", fixture("two_sites.json"), "--route", "sideways"}).code, 2);
  EXPECT_EQ(run({"convert", fixture("two_sites.json"), "--to", "Q"}).code, 2);
}

TEST(Cli, ComputeSymmetricPair) {
  const auto o = run({"compute", fixture("two_sites.json")});
  ASSERT_EQ(o.code, 0) << o.err;
  const json doc = json::parse(o.out);
  EXPECT_EQ(doc["format"], "hvd-diagram");
  ASSERT_EQ(doc["boundaries"].size(), 1u);
  EXPECT_TRUE(doc["boundaries"][0]["hyperplane"].get<bool>());
  EXPECT_EQ(doc["boundaries"][0]["surface"]["b"].get<double>(), 0.0);
}

TEST(Cli, ErrorExitCodes) {
  auto o = run({"compute", fixture("malformed.json")});
  EXPECT_EQ(o.code, 2);
  expect_error_line(o, "ParseError");
  o = run({"compute", fixture("bad_domain.json")});
  EXPECT_EQ(o.code, 3);
  expect_error_line(o, "DomainViolation");
  o = run({"compute", fixture("duplicate.json")});
  EXPECT_EQ(o.code, 6);
  expect_error_line(o, "DuplicateSites");
  o = run({"compute", fixture("two_sites.json"), "--exact"});
  EXPECT_EQ(o.code, 5);
  expect_error_line(o, "NotSquareRootFree");
  o = run({"convert", fixture("hemisphere_exact.json"), "--to", "P"});
  EXPECT_EQ(o.code, 5);
  o = run({"compute", fixture("no_such_file.json")});
  EXPECT_EQ(o.code, 16);
  expect_error_line(o, "IoError");
  o = run({"compute", fixture("two_sites.json"), "--curvature", "1"});
  EXPECT_EQ(o.code, 15);
}

TEST(Cli, RenderRejectsThreeDimensionalDiagrams) {
  TempDir tmp;
  ASSERT_EQ(run({"compute", fixture("three_d.json"), "-o", tmp.file("d.json")}).code, 0);
  const auto o = run({"render", tmp.file("d.json")});
  EXPECT_EQ(o.code, 4);
  expect_error_line(o, "DimensionUnsupported");
  EXPECT_EQ(run({"render", fixture("two_sites.json")}).code, 2);
}

TEST(Cli, RenderWritesSvg) {
  TempDir tmp;
  ASSERT_EQ(run({"compute", fixture("star_tree.json"), "-o", tmp.file("d.json")}).code, 0);
  for (const char* m : {"K", "P", "U"}) {
    const auto o = run({"render", tmp.file("d.json"), "--model", m});
    ASSERT_EQ(o.code, 0) << o.err;
    EXPECT_EQ(o.out.rfind("<?xml", 0), 0u);
    EXPECT_EQ(std::count(o.out.begin(), o.out.end(), '\n') > 10, true);
  }
  EXPECT_EQ(run({"render", tmp.file("d.json"), "--model", "L"}).code, 12);
}

TEST(Cli, CheckPassesOnPointSetsAndDiagrams) {
  auto o = run({"check", fixture("seed42_16.json"), "--samples", "10000", "--seed", "42"});
  EXPECT_EQ(o.code, 0) << o.err;
  EXPECT_NE(o.out.find("agreement_rate 1\n"), std::string::npos) << o.out;
  EXPECT_NE(o.out.find("PASS\n"), std::string::npos);
  EXPECT_EQ(o.out.find('\033'), std::string::npos);
  EXPECT_EQ(run({"check", fixture("single.json")}).code, 0);

  TempDir tmp;
  ASSERT_EQ(run({"compute", fixture("seed42_16.json"), "-o", tmp.file("d.json")}).code, 0);
  EXPECT_EQ(run({"check", tmp.file("d.json"), "--samples", "2000", "--workers", "3"}).code, 0);
}

TEST(Cli, CheckFailsOnCorruptedDiagram) {
  TempDir tmp;
  ASSERT_EQ(run({"compute", fixture("seed42_16.json"), "-o", tmp.file("d.json")}).code, 0);
  json doc = json::parse(slurp(tmp.file("d.json")));
  auto& w = doc["complex"]["power_sites"][3]["weight"];
  w = w.get<double>() - 0.5;
  std::ofstream(tmp.file("bad.json")) << doc.dump(2);
  const auto o = run({"check", tmp.file("bad.json"), "--samples", "5000"});
  EXPECT_EQ(o.code, 1);
  EXPECT_NE(o.out.find("witness"), std::string::npos);
  EXPECT_NE(o.out.find("FAIL\n"), std::string::npos);
}

TEST(Cli, ConvertToHyperboloid) {
  const auto o = run({"convert", fixture("point_06.json"), "--to", "L"});
  ASSERT_EQ(o.code, 0) << o.err;
  const json doc = json::parse(o.out);
  EXPECT_EQ(doc["model"], "Hyperboloid");
  EXPECT_NEAR(doc["points"][0][0].get<double>(), 1.25, 1e-15);
  EXPECT_NEAR(doc["points"][0][1].get<double>(), 0.75, 1e-15);
  const auto same = run({"convert", fixture("seed42_16.json"), "--to", "K"});
  EXPECT_EQ(json::parse(same.out)["points"], json::parse(slurp(fixture("seed42_16.json")))["points"]);
}

TEST(Cli, DelaunayOfTheTreeFixture) {
  const auto o = run({"delaunay", fixture("star_tree.json")});
  ASSERT_EQ(o.code, 0) << o.err;
  const json doc = json::parse(o.out);
  EXPECT_EQ(doc["format"], "hvd-delaunay");
  EXPECT_FALSE(doc["delaunay"]["is_triangulation"].get<bool>());
  EXPECT_EQ(doc["delaunay"]["edges"].size(), 8u);
  const auto tri = json::parse(run({"delaunay", fixture("three_sites.json")}).out);
  EXPECT_TRUE(tri["delaunay"]["is_triangulation"].get<bool>());
  EXPECT_EQ(tri["delaunay"]["faces"].size(), 1u);

  TempDir tmp;
  ASSERT_EQ(run({"compute", fixture("seed42_16.json"), "--implicit", "-o", tmp.file("i.json")}).code, 0);
  EXPECT_EQ(run({"delaunay", tmp.file("i.json")}).code, 14);
}

TEST(Cli, OutputBytesAreDeterministic) {
  for (const auto& args : {std::initializer_list<std::string>{"compute", fixture("seed42_16.json"), "--verify", "1000"},
                           {"compute", fixture("hemisphere_exact.json"), "--route", "hemisphere"},
                           {"compute", fixture("hemisphere_exact.json"), "--exact"}}) {
    const auto a = run(args), b = run(args);
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
  }
  TempDir tmp;
  ASSERT_EQ(run({"compute", fixture("wheel.json"), "-o", tmp.file("w.json")}).code, 0);
  EXPECT_EQ(run({"render", tmp.file("w.json"), "--model", "P"}).out,
            run({"render", tmp.file("w.json"), "--model", "P"}).out);
}
