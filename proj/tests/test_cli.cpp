// SPDX-License-Identifier: Apache-2.0
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "mawtap/cli.hpp"

using namespace mawtap;
namespace fs = std::filesystem;

namespace {

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "mawtap_test_cli";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST(Sdof, Examples) {
  std::ostringstream out, err;
  EXPECT_EQ(cli::cmd_sdof({2, 2, 4, 1}, out, err), 0);
  EXPECT_EQ(first_line(out.str()), "D_s = 3, case C1, bounds (4, 3, 3.5)");

  out.str("");
  EXPECT_EQ(cli::cmd_sdof({2, 2, 3, 1}, out, err), 0);
  EXPECT_EQ(out.str().rfind("D_s = 5/2", 0), 0u);

  out.str("");
  EXPECT_EQ(cli::cmd_sdof({2, 2, 3, 4}, out, err), 0);
  EXPECT_EQ(out.str().rfind("D_s = 0 (degenerate: N_E ≥ M)", 0), 0u);
}

TEST(Sdof, InvalidInput) {
  std::ostringstream out, err;
  EXPECT_EQ(cli::cmd_sdof({0, 2, 3, 1}, out, err), 1);
  EXPECT_TRUE(out.str().empty());
  EXPECT_FALSE(err.str().empty());
}

TEST(GridVerify, RowCountMatchesCountingOracle) {
  for (int max = 0; max <= 6; ++max) {
    // sum over m2 <= m1 of (m1 + m2) choices of ne, times max choices of n
    int expected = 0;
    for (int m1 = 1; m1 <= max; ++m1) expected += max * (m1 * m1 + m1 * (m1 + 1) / 2);
    std::ostringstream csv, summary;
    EXPECT_EQ(cli::cmd_grid_verify(max, csv, summary), 0);
    const auto rows = lines(csv.str());
    ASSERT_FALSE(rows.empty());
    EXPECT_EQ(rows.front(), "m1,m2,n,ne,case,ds_num,ds_den,bound1,bound2,bound3,plan_ok");
    EXPECT_EQ(static_cast<int>(rows.size()) - 1, expected) << max;
    EXPECT_EQ(summary.str(), "all " + std::to_string(expected) + " configs consistent\n");
  }
}

TEST(GridVerify, RowContent) {
  std::ostringstream csv, summary;
  cli::cmd_grid_verify(3, csv, summary);
  const auto rows = lines(csv.str());
  EXPECT_NE(std::find(rows.begin(), rows.end(), "2,2,3,1,C2_M1ltN,5,2,3,3,2.5,1"), rows.end());
}

TEST(GridVerify, RejectsLargeGrid) {
  std::ostringstream csv, summary;
  EXPECT_EQ(cli::cmd_grid_verify(11, csv, summary), 1);
}

TEST(ParseExperiment, Schema) {
  const auto e = cli::parse_experiment(nlohmann::json::parse(
      R"({"m1":2,"m2":2,"n":3,"ne":1,"eve_counts":[1],"alpha":0.4,"p_grid":[1e3,1e5],"trials":3,"seed":9,"output_path":"x.csv"})"));
  EXPECT_EQ(e.cfg, (AntennaConfig{2, 2, 3, 1}));
  EXPECT_EQ(e.alpha, 0.4);
  EXPECT_EQ(e.p_grid.size(), 2u);
  EXPECT_EQ(e.seed, 9u);
  EXPECT_TRUE(e.jamming);
}

TEST(ParseExperiment, Rejects) {
  const auto bad = [](const char* text) {
    try {
      cli::parse_experiment(nlohmann::json::parse(text));
    } catch (const Error&) {
      return true;
    }
    return false;
  };
  EXPECT_TRUE(bad(R"({"m1":2,"m2":2,"n":3,"ne":1,"colour":"red"})"));
  EXPECT_TRUE(bad(R"({"m1":2,"m2":2,"n":3})"));
  EXPECT_TRUE(bad(R"({"m1":2,"m2":2,"n":3,"ne":1,"p_grid":[1e5,1e3]})"));
  EXPECT_TRUE(bad(R"({"m1":2,"m2":2,"n":3,"ne":1,"eve_counts":[2]})"));
  EXPECT_TRUE(bad(R"({"m1":2,"m2":2,"n":3,"ne":1,"alpha":1.0})"));
  EXPECT_TRUE(bad(R"({"m1":"two","m2":2,"n":3,"ne":1})"));
  EXPECT_TRUE(bad(R"([1,2,3])"));
}

TEST(SummaryPath, ReplacesExtension) {
  EXPECT_EQ(cli::summary_path("out/run.csv"), fs::path("out/run.json"));
  EXPECT_EQ(cli::summary_path("run"), fs::path("run.json"));
}

TEST(Simulate, WritesCsvAndSummary) {
  cli::ExperimentConfig e;
  e.cfg = {2, 2, 4, 1};
  e.trials = 5;
  e.seed = 3;
  e.output_path = scratch("sim.csv").string();
  std::ostringstream out, err;
  ASSERT_EQ(cli::cmd_simulate(e, out, err), 0) << err.str();
  const auto rows = lines(slurp(e.output_path));
  ASSERT_EQ(rows.size(), 8u);
  EXPECT_EQ(rows.front(), "p,rate_rx,leak_max,secrecy");
  EXPECT_EQ(rows[1].rfind("1000,", 0), 0u);
  const auto summary = nlohmann::json::parse(slurp(cli::summary_path(e.output_path)));
  for (const char* k : {"slope", "ds_theory", "abs_error", "leakage_delta"}) EXPECT_TRUE(summary.contains(k)) << k;
  EXPECT_EQ(summary["ds_theory"].get<double>(), 3.0);
  EXPECT_NEAR(summary["slope"].get<double>(), 3.0, 0.1);
}

TEST(Simulate, ByteIdenticalReruns) {
  cli::ExperimentConfig e;
  e.cfg = {3, 1, 2, 2};
  e.trials = 4;
  e.seed = 21;
  std::ostringstream out, err;
  e.output_path = scratch("a.csv").string();
  ASSERT_EQ(cli::cmd_simulate(e, out, err), 0);
  e.output_path = scratch("b.csv").string();
  ASSERT_EQ(cli::cmd_simulate(e, out, err), 0);
  EXPECT_EQ(slurp(scratch("a.csv")), slurp(scratch("b.csv")));
  EXPECT_EQ(slurp(scratch("a.json")), slurp(scratch("b.json")));
}

TEST(Simulate, NoJammingIsReportedNotVerified) {
  cli::ExperimentConfig e;
  e.cfg = {2, 2, 3, 1};
  e.trials = 5;
  e.jamming = false;
  e.output_path = scratch("nj.csv").string();
  std::ostringstream out, err;
  EXPECT_EQ(cli::cmd_simulate(e, out, err), 0);
  const auto summary = nlohmann::json::parse(slurp(scratch("nj.json")));
  EXPECT_GT(summary["leakage_delta"].get<double>(), 10.0);
}

TEST(Binning, Extremes) {
  for (double delta : {0.0, 1.0}) {
    cli::BinningConfig b;
    b.n_list = {4, 8};
    b.params.delta = delta;
    b.seeds = 3;
    std::ostringstream csv, err;
    ASSERT_EQ(cli::cmd_binning(b, csv, err), 0);
    const auto rows = lines(csv.str());
    ASSERT_EQ(rows.size(), 9u);
    EXPECT_EQ(rows.front(), "n,seed,equivocation,normalized");
    for (std::size_t i = 1; i < rows.size(); ++i) {
      const auto tail = rows[i].substr(rows[i].rfind(',') + 1);
      EXPECT_EQ(tail, delta == 1.0 ? "1" : "0") << rows[i];
    }
  }
}

TEST(Binning, BudgetExceeded) {
  cli::BinningConfig b;
  b.n_list = {13};
  std::ostringstream csv, err;
  EXPECT_NE(cli::cmd_binning(b, csv, err), 0);
}

TEST(Binning, Deterministic) {
  cli::BinningConfig b;
  b.n_list = {4, 8};
  b.seeds = 4;
  std::ostringstream x, y, err;
  cli::cmd_binning(b, x, err);
  cli::cmd_binning(b, y, err);
  EXPECT_EQ(x.str(), y.str());
}
