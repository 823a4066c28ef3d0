// SPDX-License-Identifier: Apache-2.0
//
// Command implementations behind the `mawtap` executable. Each command writes
// to caller-supplied streams/files and returns the process exit code:
// 0 success, 1 invalid input, 2 verification failure.
#pragma once

#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "mawtap/binning.hpp"
#include "mawtap/error.hpp"
#include "mawtap/model.hpp"
#include "mawtap/rates.hpp"
#include "mawtap/regions.hpp"

namespace mawtap::cli {

enum ExitCode : int { kOk = 0, kInvalidInput = 1, kVerificationFailure = 2 };

/// Shortest round-trip decimal form; used for every number written to CSV.
inline std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (v == 0.0) return "0";
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

inline std::string fmt(Rational r) { return r.is_integer() ? std::to_string(r.num()) : fmt(r.to_double()); }

// ---------------------------------------------------------------------------
// sdof

inline int cmd_sdof(const AntennaConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    const auto b = upper_bound_terms(cfg);
    const std::string bounds = "bounds (" + fmt(b[0]) + ", " + fmt(b[1]) + ", " + fmt(b[2]) + ")";
    if (validate(cfg) == Validity::degenerate) {
      out << "D_s = 0 (degenerate: N_E \u2265 M), " << bounds << '\n';
      return kOk;
    }
    const CaseId id = classify_case(cfg);
    out << "D_s = " << sum_sdof(cfg) << ", case " << family(id) << ", " << bounds << '\n';
    out << "region " << to_string(id);
    if (!cfg.is_canonical()) out << " (transmitters relabelled to m1 >= m2)";
    out << '\n';
    return kOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  }
}

// ---------------------------------------------------------------------------
// grid-verify

inline constexpr std::string_view kGridHeader = "m1,m2,n,ne,case,ds_num,ds_den,bound1,bound2,bound3,plan_ok";

/// Canonical non-degenerate configs with every antenna count <= max_antennas.
inline std::vector<AntennaConfig> canonical_grid(int max_antennas) {
  std::vector<AntennaConfig> grid;
  for (int m1 = 1; m1 <= max_antennas; ++m1)
    for (int m2 = 1; m2 <= m1; ++m2)
      for (int n = 1; n <= max_antennas; ++n)
        for (int ne = 0; ne < m1 + m2; ++ne) grid.push_back({m1, m2, n, ne});
  return grid;
}

inline int cmd_grid_verify(int max_antennas, std::ostream& csv, std::ostream& summary) {
  if (max_antennas < 0 || max_antennas > 10) {
    summary << "error: max_antennas must lie in [0, 10]\n";
    return kInvalidInput;
  }
  csv << kGridHeader << '\n';
  std::vector<std::string> violations;
  const auto grid = canonical_grid(max_antennas);
  for (const auto& c : grid) {
    const CaseId id = classify_case(c);
    const Rational ds = sum_sdof(c);
    const auto b = upper_bound_terms(c);
    bool plan_ok = false;
    try {
      plan_ok = verify_plan_arithmetic(c, jamming_plan(c));
    } catch (const Error&) {
      plan_ok = false;
    }
    csv << c.m1 << ',' << c.m2 << ',' << c.n << ',' << c.ne << ',' << to_string(id) << ',' << ds.num() << ','
        << ds.den() << ',' << fmt(b[0]) << ',' << fmt(b[1]) << ',' << fmt(b[2]) << ',' << (plan_ok ? 1 : 0) << '\n';
    const Rational bound = min(min(b[0], b[1]), b[2]);
    if (!(ds == bound)) {
      std::ostringstream v;
      v << c << ": D_s " << ds << " != min bound " << bound;
      violations.push_back(v.str());
    }
    if (!plan_ok) {
      std::ostringstream v;
      v << c << ": plan arithmetic fails";
      violations.push_back(v.str());
    }
  }
  if (violations.empty()) {
    summary << "all " << grid.size() << " configs consistent\n";
    return kOk;
  }
  summary << violations.size() << " violations\n";
  for (const auto& v : violations) summary << "  " << v << '\n';
  return kVerificationFailure;
}

// ---------------------------------------------------------------------------
// simulate

inline constexpr std::string_view kSimulateHeader = "p,rate_rx,leak_max,secrecy";

struct ExperimentConfig {
  AntennaConfig cfg;
  std::vector<int> eve_counts;
  double alpha = 0.5;
  std::vector<double> p_grid{1e3, 1e4, 1e5, 1e6, 1e7, 1e8, 1e9};
  int trials = 20;
  std::uint64_t seed = 1;
  std::string output_path = "simulate.csv";
  bool jamming = true;
  double tolerance = 0.1;  // allowed |slope - D_s| when jamming is on
};

/// Reads an ExperimentConfig from JSON. Required: m1, m2, n, ne. Optional:
/// eve_counts, alpha, p_grid, trials, seed, output_path, jamming, tolerance.
/// Unknown keys are rejected.
inline ExperimentConfig parse_experiment(const nlohmann::json& j) {
  static const std::set<std::string> known{"m1",   "m2",    "n",           "ne",      "eve_counts", "alpha",
                                            "p_grid", "trials", "seed", "output_path", "jamming", "tolerance"};
  if (!j.is_object()) throw Error(Errc::invalid_config, "experiment config must be a JSON object");
  for (const auto& [key, _] : j.items())
    if (!known.contains(key)) throw Error(Errc::invalid_config, "unknown key '" + key + "'");
  ExperimentConfig e;
  try {
    for (const char* k : {"m1", "m2", "n", "ne"})
      if (!j.contains(k)) throw Error(Errc::invalid_config, std::string("missing key '") + k + "'");
    e.cfg = {j.at("m1").get<int>(), j.at("m2").get<int>(), j.at("n").get<int>(), j.at("ne").get<int>()};
    if (j.contains("eve_counts")) e.eve_counts = j.at("eve_counts").get<std::vector<int>>();
    if (j.contains("alpha")) e.alpha = j.at("alpha").get<double>();
    if (j.contains("p_grid")) e.p_grid = j.at("p_grid").get<std::vector<double>>();
    if (j.contains("trials")) e.trials = j.at("trials").get<int>();
    if (j.contains("seed")) e.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("output_path")) e.output_path = j.at("output_path").get<std::string>();
    if (j.contains("jamming")) e.jamming = j.at("jamming").get<bool>();
    if (j.contains("tolerance")) e.tolerance = j.at("tolerance").get<double>();
  } catch (const nlohmann::json::exception& ex) {
    throw Error(Errc::invalid_config, ex.what());
  }
  validate(e.cfg);
  detail::check_eve_counts(canonical(e.cfg), e.eve_counts);
  PowerPolicy{1.0, e.alpha}.check();
  if (e.trials < 1) throw Error(Errc::invalid_config, "trials must be positive");
  if (e.p_grid.size() < 2) throw Error(Errc::invalid_config, "p_grid needs at least two points");
  for (std::size_t i = 0; i < e.p_grid.size(); ++i)
    if (!(e.p_grid[i] > 0.0) || (i > 0 && !(e.p_grid[i] > e.p_grid[i - 1])))
      throw Error(Errc::invalid_config, "p_grid must be positive and strictly increasing");
  if (e.output_path.empty()) throw Error(Errc::invalid_config, "output_path must not be empty");
  return e;
}

inline ExperimentConfig load_experiment(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::invalid_config, "cannot read " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& ex) {
    throw Error(Errc::invalid_config, ex.what());
  }
  return parse_experiment(j);
}

/// Companion path of the JSON summary: the CSV path with extension ".json".
inline std::filesystem::path summary_path(const std::filesystem::path& csv_path) {
  auto p = csv_path;
  p.replace_extension(".json");
  if (p == csv_path) p += ".json";
  return p;
}

struct SimulationOutput {
  SweepResult result;
  nlohmann::ordered_json summary;
};

inline SimulationOutput run_simulation(const ExperimentConfig& e) {
  SweepOptions opt;
  opt.eve_counts = e.eve_counts;
  opt.jamming = e.jamming;
  SimulationOutput out{sweep(e.cfg, e.alpha, e.p_grid, e.trials, e.seed, opt), {}};
  const auto& r = out.result;
  const double ds = r.ds_theory.to_double();
  out.summary["slope"] = r.curve.slope;
  out.summary["ds_theory"] = ds;
  out.summary["abs_error"] = std::abs(r.curve.slope - ds);
  out.summary["leakage_delta"] = r.leakage_delta;
  out.summary["ds_exact"] = r.ds_theory.str();
  out.summary["jamming"] = e.jamming;
  out.summary["trials"] = e.trials;
  out.summary["seed"] = e.seed;
  out.summary["config"] = {{"m1", r.cfg.m1}, {"m2", r.cfg.m2}, {"n", r.cfg.n}, {"ne", r.cfg.ne}};
  return out;
}

inline void write_sweep_csv(const SweepResult& r, std::ostream& csv) {
  csv << kSimulateHeader << '\n';
  for (const auto& row : r.rows)
    csv << fmt(row.p) << ',' << fmt(row.rate_rx) << ',' << fmt(row.leak_max) << ',' << fmt(row.secrecy) << '\n';
}

inline int cmd_simulate(const ExperimentConfig& e, std::ostream& out, std::ostream& err) {
  SimulationOutput sim;
  try {
    sim = run_simulation(e);
  } catch (const Error& ex) {
    err << "error: " << ex.what() << '\n';
    return ex.code() == Errc::geometry_not_verified ? kVerificationFailure : kInvalidInput;
  }
  const std::filesystem::path csv_path = e.output_path;
  {
    std::ofstream csv(csv_path, std::ios::binary);
    if (!csv) {
      err << "error: cannot write " << csv_path.string() << '\n';
      return kInvalidInput;
    }
    write_sweep_csv(sim.result, csv);
  }
  {
    std::ofstream js(summary_path(csv_path), std::ios::binary);
    if (!js) {
      err << "error: cannot write " << summary_path(csv_path).string() << '\n';
      return kInvalidInput;
    }
    js << sim.summary.dump(2) << '\n';
  }
  out << sim.summary.dump() << '\n';
  if (e.jamming && sim.summary["abs_error"].get<double>() > e.tolerance) {
    err << "slope " << sim.result.curve.slope << " deviates from D_s = " << sim.result.ds_theory << " by more than "
        << e.tolerance << '\n';
    return kVerificationFailure;
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// binning

inline constexpr std::string_view kBinningHeader = "n,seed,equivocation,normalized";

struct BinningConfig {
  std::vector<int> n_list{4, 8, 12};
  BinningParams params;
  int seeds = 10;
  std::uint64_t seed = 1;  // code seeds are seed, seed+1, ...
};

/// Writes one row per (n, seed) and a `mean` row per n.
inline int cmd_binning(const BinningConfig& b, std::ostream& csv, std::ostream& err) {
  std::vector<TrendEntry> trend;
  std::vector<std::uint64_t> seeds;
  for (int i = 0; i < b.seeds; ++i) seeds.push_back(b.seed + static_cast<std::uint64_t>(i));
  try {
    if (b.seeds < 1) throw Error(Errc::invalid_config, "at least one seed required");
    trend = secrecy_trend(b.params, b.n_list, seeds);
  } catch (const Error& ex) {
    err << "error: " << ex.what() << '\n';
    return kInvalidInput;
  }
  csv << kBinningHeader << '\n';
  for (const auto& e : trend) {
    if (!e.mean_normalized) {
      err << "n=" << e.n << ": " << e.note << '\n';
      continue;
    }
    double mean_h = 0.0;
    for (std::size_t i = 0; i < e.equivocation.size(); ++i) {
      csv << e.n << ',' << seeds[i] << ',' << fmt(e.equivocation[i]) << ',' << fmt(e.normalized[i]) << '\n';
      mean_h += e.equivocation[i];
    }
    mean_h /= static_cast<double>(e.equivocation.size());
    csv << e.n << ",mean," << fmt(mean_h) << ',' << fmt(*e.mean_normalized) << '\n';
  }
  return kOk;
}

}  // namespace mawtap::cli
