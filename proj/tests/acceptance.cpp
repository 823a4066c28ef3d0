// SPDX-License-Identifier: Apache-2.0
//
// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "mawtap/cli.hpp"
#include "mawtap/precoders.hpp"
#include "mawtap/rates.hpp"
#include "mawtap/regions.hpp"

using namespace mawtap;
namespace fs = std::filesystem;

namespace {

const std::vector<AntennaConfig> kConfigs{{2, 2, 4, 1}, {2, 2, 3, 1}, {3, 3, 2, 1},
                                          {3, 1, 2, 3}, {3, 1, 2, 2}, {3, 2, 2, 1}};
const std::vector<double> kGrid{1e3, 1e4, 1e5, 1e6, 1e7, 1e8, 1e9};
constexpr std::uint64_t kSeed = 12345;

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::vector<AntennaConfig> config_grid() {
  std::vector<AntennaConfig> g;
  for (int m1 = 1; m1 <= 8; ++m1)
    for (int m2 = 1; m2 <= m1; ++m2)
      for (int n = 1; n <= 8; ++n)
        for (int ne = 0; ne < m1 + m2; ++ne) g.push_back({m1, m2, n, ne});
  return g;
}

std::string str(const AntennaConfig& c) {
  std::ostringstream os;
  os << c;
  return os.str();
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

Outcome bound_equivalence() {
  int n = 0, bad = 0;
  for (const auto& c : config_grid()) {
    const auto b = upper_bound_terms(c);
    if (!(sum_sdof(c) == min(min(b[0], b[1]), b[2]))) ++bad;
    ++n;
  }
  return {bad == 0, std::to_string(n) + " configs, " + std::to_string(bad) + " mismatches"};
}

Outcome plan_arithmetic() {
  int n = 0, bad = 0;
  for (const auto& c : config_grid()) {
    if (!verify_plan_arithmetic(c, jamming_plan(c))) ++bad;
    ++n;
  }
  return {bad == 0, std::to_string(n) + " plans, " + std::to_string(bad) + " violations"};
}

Outcome geometry() {
  Outcome o;
  double worst_align = 0.0, worst_null = 0.0, worst_zf = 0.0;
  int cases = 0;
  for (const auto& c : kConfigs) {
    const auto plan = jamming_plan(c);
    const std::vector<int> eves{c.ne};
    for (std::uint64_t s = 0; s < 20; ++s) {
      const auto ch = sample_channels(c, {}, 1.0, derive_seed(kSeed, {s, 0}));
      const auto ps = synthesize(plan, ch.h1, ch.h2, derive_seed(kSeed, {s, 1}));
      const auto rep = verify_geometry(ps, ch.h1, ch.h2, plan);
      worst_align = std::max(worst_align, rep.alignment_residual);
      worst_null = std::max(worst_null, rep.nullspace_residual);
      worst_zf = std::max(worst_zf, rep.zf_residual);
      const auto e = sample_block_eavesdroppers(c, eves, plan.extension, derive_seed(kSeed, {s, 2}));
      const int cover = jamming_coverage_rank(ps, e[0].g1, e[0].g2);
      const bool ok = rep.pass() && rep.decodable_rank == plan.streams() && cover == plan.extension * c.ne;
      if (!ok && o.pass) o.detail = str(c) + " seed " + std::to_string(s) + " failed; ";
      o.pass = o.pass && ok;
      ++cases;
    }
  }
  o.detail += std::to_string(cases) + " cases, max residuals align " + num(worst_align) + " null " + num(worst_null) +
              " zf " + num(worst_zf);
  return o;
}

Outcome slopes() {
  Outcome o;
  for (const auto& c : kConfigs) {
    const auto r = sweep(c, 0.5, kGrid, 20, kSeed);
    const double target = sum_sdof(c).to_double();
    const bool ok = std::abs(r.curve.slope - target) <= 0.1;
    o.pass = o.pass && ok;
    o.detail += str(c) + " " + num(r.curve.slope) + "/" + num(target) + (ok ? "" : " (out of range)") + "; ";
  }
  return o;
}

Outcome leakage() {
  Outcome o;
  SweepOptions off;
  off.jamming = false;
  for (const auto& c : kConfigs) {
    const double on = leakage_saturation(c, 0.5, 1e5, 1e9, 50, kSeed);
    const double ctrl = leakage_saturation(c, 0.5, 1e5, 1e9, 50, kSeed, off);
    const double floor = 0.8 * c.ne * std::log2(1e4);
    const bool ok = on <= 0.5 && ctrl >= floor;
    o.pass = o.pass && ok;
    o.detail += str(c) + " " + num(on) + " vs ctrl " + num(ctrl) + ">=" + num(floor) + "; ";
  }
  return o;
}

Outcome binning() {
  Outcome o;
  std::vector<std::uint64_t> seeds;
  for (std::uint64_t s = 1; s <= 10; ++s) seeds.push_back(s);
  const std::vector<int> ns{4, 8, 12};

  for (double delta : {1.0, 0.0})
    for (const auto& e : secrecy_trend({1.0, 0.5, delta}, ns, seeds))
      for (double v : e.normalized) o.pass = o.pass && v == (delta == 1.0 ? 1.0 : 0.0);
  o.detail = std::string("extremes ") + (o.pass ? "exact" : "inexact") + "; ";

  const auto trend = secrecy_trend({1.0, 0.5, 0.5}, ns, seeds);
  const double at12 = *trend.back().mean_normalized;
  bool monotone = true;
  for (std::size_t i = 1; i < trend.size(); ++i)
    monotone = monotone && *trend[i].mean_normalized >= *trend[i - 1].mean_normalized - 0.05;
  o.pass = o.pass && at12 >= 0.8 && monotone;
  o.detail += "Rt=1 R=0.5 delta=0.5 means";
  for (const auto& e : trend) o.detail += " " + num(*e.mean_normalized);
  o.detail += monotone ? " (non-decreasing)" : " (not monotone)";
  return o;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism() {
  const fs::path dir = fs::temp_directory_path() / "mawtap_acceptance";
  fs::create_directories(dir);
  cli::ExperimentConfig e;
  e.cfg = {2, 2, 3, 1};
  e.trials = 20;
  e.seed = kSeed;
  std::ostringstream sink;
  bool ok = true;
  for (const char* name : {"run1.csv", "run2.csv"}) {
    e.output_path = (dir / name).string();
    ok = ok && cli::cmd_simulate(e, sink, sink) == 0;
  }
  ok = ok && slurp(dir / "run1.csv") == slurp(dir / "run2.csv") && slurp(dir / "run1.json") == slurp(dir / "run2.json");

  cli::BinningConfig b;
  b.seeds = 3;
  for (const char* name : {"bin1.csv", "bin2.csv"}) {
    std::ofstream out(dir / name, std::ios::binary);
    ok = ok && cli::cmd_binning(b, out, sink) == 0;
  }
  ok = ok && slurp(dir / "bin1.csv") == slurp(dir / "bin2.csv") && !slurp(dir / "bin1.csv").empty();
  return {ok, "simulate csv/json and binning csv compared byte for byte"};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"1 sdof equals converse bound", 1.0, bound_equivalence},
      {"2 plan arithmetic grid", 1.0, plan_arithmetic},
      {"3 precoder geometry", 10.0, geometry},
      {"4 slope reproduction", 120.0, slopes},
      {"5 leakage saturation", 60.0, leakage},
      {"6 binning equivocation", 60.0, binning},
      {"7 output determinism", 60.0, determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& ex) {
      o = {false, std::string("exception: ") + ex.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs <= c.budget_s;
    const bool pass = o.pass && in_time;
    failed += pass ? 0 : 1;
    std::printf("%s  criterion %s  [%.2fs of %.0fs]  %s\n", pass ? "PASS" : "FAIL", c.name, secs, c.budget_s,
                o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
