#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "orthokit/cli.hpp"
#include "orthokit/serialization.hpp"

using namespace orthokit;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "orthokit");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text) {
  const std::string path = testing::TempDir() + name;
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST(Cli, EvalExitCodes) {
  auto r = run({"eval", "hh_exact", "--norm", "lp:1", "--x", "[1,0]", "--y", "[0,1]"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(verdict_from_json(parse_json(r.out)).holds);

  r = run({"eval", "hh_relative", "--eps", "0.15", "--x", "[2,0]", "--y", "[0.45,0.8930285549745876]"});
  EXPECT_EQ(r.code, 3) << r.err;
  EXPECT_NEAR(verdict_from_json(parse_json(r.out)).margin, -0.1, 1e-9);

  r = run({"eval", "birkhoff", "--norm", "lp:inf", "--x", "[1,1]", "--y", "[0,1]"});
  EXPECT_EQ(r.code, 0) << r.err;
}

TEST(Cli, InvalidInputExitsWithTwo) {
  EXPECT_EQ(run({"eval", "hh_relative", "--eps", "1.0", "--x", "[1,0]", "--y", "[0,1]"}).code, 2);
  EXPECT_EQ(run({"eval", "hh_relative", "--eps", "-0.1", "--x", "[1,0]", "--y", "[0,1]"}).code, 2);
  EXPECT_EQ(run({"eval", "hh_relative", "--x", "[1,0]", "--y", "[0,1]"}).code, 2);
  EXPECT_EQ(run({"eval", "hh_exact", "--x", "[1,0]", "--y", "[0,1,2]"}).code, 2);
  EXPECT_EQ(run({"eval", "nope", "--x", "[1,0]", "--y", "[0,1]"}).code, 2);
  EXPECT_EQ(run({"eval", "hh_exact", "--norm", "lp:0.5", "--x", "[1,0]", "--y", "[0,1]"}).code, 2);
  EXPECT_EQ(run({"eval", "classic", "--norm", "lp:1", "--x", "[1,0]", "--y", "[0,1]"}).code, 2);
  const auto bad = run({"frobnicate"});
  EXPECT_EQ(bad.code, 2);
  EXPECT_EQ(run({"claims", "run", "C99"}).code, 2);
  EXPECT_EQ(run({"claims", "run"}).code, 2);
  EXPECT_EQ(run({"map", "--matrix", "[[1,0],[0,1]]", "--seed", "abc"}).code, 2);
}

TEST(Cli, HelpMentionsWeightedSupNorm) {
  const auto r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("max w_i |v_i|"), std::string::npos);
}

TEST(Cli, EvalFromFile) {
  const auto path = write_temp("pair.json", R"({"x":[1,2],"y":[3,-1]})");
  const auto r = run({"eval", "hh_exact", "--file", path});
  EXPECT_EQ(r.code, 3);
}

TEST(Cli, HhPrintsIntegrals) {
  const auto r = run({"hh", "--norm", "lp:inf", "--x", "[1,0]", "--y", "[0,1]"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto hv = hh_values_from_json(parse_json(r.out));
  EXPECT_NEAR(hv.i_plus, 7.0 / 12.0, 1e-10);
  EXPECT_EQ(to_json(hv).dump(2) + "\n", r.out);
}

TEST(Cli, MapReports) {
  const auto path = write_temp("diag.csv", "2,0\n0,1\n");
  auto r = run({"map", "--matrix", path});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = parse_json(r.out);
  EXPECT_NEAR(map_profile_from_json(j.at("profile")).eps_star, 0.6, 1e-12);

  r = run({"map", "--matrix", "[[1,0],[0,1]]"});
  j = parse_json(r.out);
  EXPECT_NEAR(map_profile_from_json(j.at("profile")).eps_star, 0.0, 1e-12);

  r = run({"map", "--matrix", path, "--eps", "0.3", "--with-11"});
  ASSERT_EQ(r.code, 0) << r.err;
  j = parse_json(r.out);
  const auto b = bounds_report_from_json(j.at("bounds"));
  EXPECT_FALSE(b.passes);
  EXPECT_EQ(b.witness_low.size(), 2u);
  EXPECT_NE(r.err.find("FAIL"), std::string::npos);
  EXPECT_NEAR(condition11_from_json(j.at("condition_11")).eps_min, 0.3, 1e-3);
  EXPECT_FALSE(condition17_from_json(j.at("condition_17")).passes);
}

TEST(Cli, SolveCommands) {
  auto r = run({"solve", "pencil", "--x", "[1,0]", "--y", "[1,1]"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(root_result_from_json(parse_json(r.out)).location, -1.0, 1e-8);
  r = run({"solve", "beta", "--x", "[3,0]", "--y", "[0,2]"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_DOUBLE_EQ(beta_minimum_from_json(parse_json(r.out).at("analytic")).value, 12.0);
  r = run({"solve", "line-min", "--x", "[1,0]", "--y", "[1,1]"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(line_minimum_from_json(parse_json(r.out)).value, 1.0 / std::sqrt(2.0), 1e-12);
}

TEST(Cli, ClaimsRunListAndVerify) {
  const auto list = run({"claims", "list"});
  EXPECT_EQ(list.code, 0);
  EXPECT_NE(list.out.find("\"C11-forward\""), std::string::npos);

  const auto a = run({"claims", "run", "C5", "C10", "--trials", "300", "--seed", "3"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_NE(a.err.find("| claim |"), std::string::npos);
  std::istringstream lines(a.out);
  std::string line;
  int n = 0;
  while (std::getline(lines, line)) {
    const auto rep = claim_report_from_json(parse_json(line));
    EXPECT_EQ(rep.seed, 3u);
    EXPECT_EQ(to_json(rep).dump(), line);
    ++n;
  }
  EXPECT_EQ(n, 2);

  const auto path = write_temp("reports.jsonl", a.out);
  const auto v = run({"claims", "verify", path});
  EXPECT_EQ(v.code, 0) << v.out << v.err;

  const auto md = run({"claims", "run", "C10", "--trials", "10", "--format", "markdown"});
  EXPECT_EQ(md.out.rfind("| claim |", 0), 0u);
  const auto csv = run({"claims", "run", "C10", "--trials", "10", "--format", "csv"});
  EXPECT_EQ(csv.out.rfind("id,status", 0), 0u);
}

TEST(Cli, SeedComesFromEnvironment) {
  ::setenv("ORTHO_SEED", "11", 1);
  const auto r = run({"claims", "run", "C10", "--trials", "5"});
  ::unsetenv("ORTHO_SEED");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(claim_report_from_json(parse_json(r.out)).seed, 11u);
}
