#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "axidiff/driver.hpp"

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(AXIDIFF_BIN) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

TEST(Cli, EvalGaussianQuadrature) {
  const auto r = run("eval --ic gaussian --c 1 --kappa 1 --method quadrature --r 0 --t 0.25");
  ASSERT_EQ(r.code, 0);
  const auto rows = axidiff::parse_csv(r.out);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_NEAR(rows[0].value, 0.5, 1e-12);
}

TEST(Cli, EvalJ0Series) {
  const auto r = run("eval --ic j0 --a 1 --kappa 1 --method series --r 0 --t 0.25");
  ASSERT_EQ(r.code, 0);
  EXPECT_NEAR(axidiff::parse_csv(r.out)[0].value, 0.7788007831, 1e-10);
}

TEST(Cli, IntegerOrderIsParameterError) {
  EXPECT_EQ(run("eval --ic ivkv --a 1 --v 1.0 --method series --r 0.5 --t 0.25").code, 3);
}

TEST(Cli, ContourAtAxisIsParameterError) {
  EXPECT_EQ(run("eval --ic j0 --method contour --r 0 --t 0.25").code, 3);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run("eval --ic j0 --method nope").code, 1);
  EXPECT_EQ(run("eval --ic square").code, 1);
  EXPECT_EQ(run("eval --ic j0 --r 1:0").code, 1);
  EXPECT_EQ(run("").code, 1);
  EXPECT_EQ(run("frobnicate").code, 1);
}

TEST(Cli, RangeGridAndJson) {
  const auto r = run("eval --ic j0sq --method series --r 0:1:0.5 --t 0.25 --format json");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["rows"].size(), 3u);
  EXPECT_TRUE(j.contains("ledger_version"));
}

TEST(Cli, OutputFile) {
  const std::string path = testing::TempDir() + "axidiff_out.csv";
  ASSERT_EQ(run("eval --ic gaussian --r 0.5 --t 0.5 --out " + path).code, 0);
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  EXPECT_EQ(axidiff::parse_csv(ss.str()).size(), 1u);
}

TEST(Cli, BitIdenticalRuns) {
  const std::string args = "eval --ic ivkv --v 0.3 --method contour --r 0.3,1 --t 0.5";
  const auto a = run(args), b = run(args);
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, CompareSeriesQuadrature) {
  const auto r = run("compare --ic j0sq --methods series,quadrature --r 0,0.5,1 --t 0.25,0.5");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.find("mismatch"), std::string::npos);
}

TEST(Cli, CompareContourSeries) {
  EXPECT_EQ(run("compare --ic j0 --methods contour,series --r 0.5 --t 0.25").code, 0);
}

TEST(Cli, CompareSingleMethod) {
  const auto r = run("compare --ic j0 --methods series --r 0.5 --t 0.25");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.find("diff_"), std::string::npos);
}

TEST(Cli, CompareAllAnalyticAndFd) {
  EXPECT_EQ(run("compare --ic gaussian --methods quadrature,contour,fd --r 0.5,1.5 --t 0.5").code, 0);
}

TEST(Cli, ConvergenceTable) {
  const auto r = run("convergence --ic j0sq --a 1 --kappa 1 --t 0.25 --r 0.5");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "n,partial,abs_err");
  EXPECT_EQ(run("convergence --ic gaussian --t 0.25 --r 0.5").code, 3);
  EXPECT_EQ(run("convergence --ic j0 --t 0.25,0.5 --r 0.5").code, 1);
}

TEST(Cli, SelftestFilteredModulesPass) {
  for (const char* m : {"quadrature", "series", "contour", "log", "fd"}) {
    const auto r = run(std::string("selftest --filter ") + m);
    EXPECT_EQ(r.code, 0) << m << "\n" << r.out;
    EXPECT_NE(r.out.find("PASS"), std::string::npos);
  }
}

TEST(Cli, SelftestFullSuite) {
  const auto r = run("selftest");
  EXPECT_EQ(r.code, 0) << r.out;
}

TEST(Cli, SelftestDetectsHalfPrefactorMutation) {
  const auto r = run("selftest --filter series --mutate j0sq-half");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("FAIL series/j0sq_vs_quadrature"), std::string::npos);
}

TEST(Cli, SelftestUnknownModule) {
  EXPECT_EQ(run("selftest --filter nosuch").code, 3);
  EXPECT_EQ(run("selftest --mutate nosuch").code, 1);
}
