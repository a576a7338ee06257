#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ehrhart/cli.hpp"
#include "support.hpp"

using namespace ehrhart;
using ehrhart::testing::frac;

namespace {

struct Result {
  int code;
  std::string out;
  Json json() const { return Json::parse(out); }
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("ehrhart_test_" + name)).string();
}

}  // namespace

TEST(Cli, Hstar) {
  const auto r = run({"hstar", "paper:P"});
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(int_poly_from_json(r.json()["hstar"]), (IntPoly{1, 3}));
  EXPECT_EQ(r.json()["hstar"]["text"], "1 + 3t");
}

TEST(Cli, Weighted) {
  const auto r = run({"weighted", "paper:Q"});
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(frac_poly_from_json(r.json()["weighted_hstar"]), frac({{"0", 1}, {"1/3", 1}, {"2/3", 1}, {"1", 1}}));
  EXPECT_EQ(r.json()["r_P"], 3);
}

TEST(Cli, FreeSum) {
  const auto r = run({"freesum", "paper:P", "paper:Q", "--check-by-counting"});
  ASSERT_EQ(r.code, 0) << r.out;
  const Json j = r.json();
  EXPECT_EQ(int_poly_from_json(j["hstar"]), (IntPoly{1, 8, 7}));
  EXPECT_EQ(frac_poly_from_json(j["weighted_hstar"]).terms().size(), 11u);
  EXPECT_FALSE(j["bjm"]["predicted"].get<bool>());
  EXPECT_FALSE(j["bjm"]["actual"].get<bool>());
  EXPECT_TRUE(j["check_by_counting"]["agrees"].get<bool>());
  EXPECT_FALSE(run({"freesum", "paper:P", "paper:Q"}).json().contains("check_by_counting"));
}

TEST(Cli, PayneAndCyclotomic) {
  const auto p = run({"payne", "1,2,1"});
  ASSERT_EQ(p.code, 0) << p.out;
  EXPECT_EQ(p.json()["weights"], Json::parse("[2,1,1]"));
  EXPECT_EQ(int_poly_from_json(p.json()["hstar"]), (IntPoly{1, 2, 1}));
  const auto c = run({"cyclotomic", "12"});
  ASSERT_EQ(c.code, 0) << c.out;
  EXPECT_EQ(int_poly_from_json(c.json()["hstar"]), (IntPoly{1, 8, 18, 8, 1}));
  EXPECT_TRUE(c.json()["reflexive"].get<bool>());
  EXPECT_EQ(c.json()["lattice_points"], "13");
}

TEST(Cli, PolytopeFiles) {
  const std::string path = temp_path("kite.json");
  std::ofstream(path) << R"({"ambient_rank": 2, "vertices": [[-1, 0], [0, -1], [3, 0], [0, 2]]})";
  const auto r = run({"hstar", path});
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(int_poly_from_json(r.json()["hstar"]), (IntPoly{1, 6, 5}));
  std::ofstream(path) << R"({"ambient_rank": 2, "vertices": [[1, 1], [2, 2]]})";
  const auto bad = run({"hstar", path});
  EXPECT_EQ(bad.code, 1);
  EXPECT_TRUE(bad.json().contains("error"));
  std::remove(path.c_str());
}

TEST(Cli, Clt) {
  const auto r = run({"clt", "paper:P", "--n", "25,100,400"});
  ASSERT_EQ(r.code, 0) << r.out;
  const Json j = r.json();
  EXPECT_EQ(j["sigma_tilde_sq"], "1/8");
  ASSERT_EQ(j["entries"].size(), 3u);
  EXPECT_LE(j["entries"][2]["sup_dist"].get<double>(), 0.08);
  EXPECT_TRUE(j["entries"][0]["moments"].contains("variance"));

  const std::string path = temp_path("clt.json");
  const auto w = run({"clt", "paper:Q", "--n", "4..6", "--out", path});
  ASSERT_EQ(w.code, 0) << w.out;
  std::ifstream in(path);
  const Json saved = Json::parse(in);
  EXPECT_EQ(saved["entries"].size(), 3u);
  EXPECT_EQ(saved["entries"][0]["n"], 4);
  std::remove(path.c_str());
}

TEST(Cli, Asymptotics) {
  const auto r = run({"asymptotics", "paper:P", "--n", "1..4", "--x", "1/4,1,4,2"});
  ASSERT_EQ(r.code, 0) << r.out;
  const Json j = r.json();
  EXPECT_EQ(j["chains"].size(), 16u);
  for (const auto& c : j["chains"]) EXPECT_TRUE(c["holds"].get<bool>());
  EXPECT_EQ(j["chains"][9]["mid"]["lower"], "121");
  EXPECT_EQ(j["subsequences"].size(), 4u);
}

TEST(Cli, PrecisionFromEnvironment) {
  ::setenv("EHRHART_PRECISION", "200", 1);
  const auto r = run({"asymptotics", "paper:Q", "--n", "2", "--x", "2"});
  ::unsetenv("EHRHART_PRECISION");
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_GE(r.json()["chains"][0]["precision_bits"].get<unsigned>(), 200u);
  ::setenv("EHRHART_PRECISION", "lots", 1);
  const auto bad = run({"asymptotics", "paper:Q", "--n", "2", "--x", "2"});
  ::unsetenv("EHRHART_PRECISION");
  EXPECT_EQ(bad.code, 1);
}

TEST(Cli, VerifyIsDeterministic) {
  const auto a = run({"verify", "--suite", "gallery", "--seed", "3"});
  ASSERT_EQ(a.code, 0) << a.out;
  EXPECT_TRUE(a.json()["passed"].get<bool>());
  EXPECT_EQ(a.json()["seed"], 3);
  const auto b = run({"verify", "--suite", "core", "--seed", "99"});
  const auto c = run({"verify", "--suite", "core", "--seed", "99"});
  ASSERT_EQ(b.code, 0) << b.out;
  EXPECT_EQ(b.out, c.out);
  for (const auto& p : b.json()["properties"]) EXPECT_GT(p["cases"].get<int>(), 0);
}

TEST(Cli, ValidationErrors) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {},
           {"hstar"},
           {"hstar", "paper:P", "--bogus"},
           {"frobnicate"},
           {"hstar", "paper:Nope"},
           {"payne", "2,4"},
           {"cyclotomic", "1"},
           {"clt", "simplex:2", "--n", "5"},
           {"clt", "paper:P", "--n", "0"},
           {"asymptotics", "paper:P", "--n", "2", "--x", "-1"},
           {"verify", "--suite", "nope", "--seed", "1"},
           {"hstar", "/no/such/file.json"},
       }) {
    const auto r = run(args);
    EXPECT_EQ(r.code, 1) << r.out;
    EXPECT_TRUE(r.json().contains("error")) << r.out;
  }
}
