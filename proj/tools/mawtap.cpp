// SPDX-License-Identifier: Apache-2.0
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mawtap/cli.hpp"

namespace {

int open_and_run(const std::string& path, auto&& body) {
  if (path.empty()) return body(std::cout);
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write " << path << '\n';
    return mawtap::cli::kInvalidInput;
  }
  return body(out);
}

}  // namespace

int main(int argc, char** argv) {
  using namespace mawtap;
  CLI::App app{"Secure degrees of freedom laboratory for the two-transmitter MIMO wiretap MAC"};
  app.require_subcommand(1);
  int code = cli::kOk;

  // sdof
  auto* sdof = app.add_subcommand("sdof", "Sum SDoF, case region and bound terms for (m1, m2, n, ne)");
  std::vector<int> antennas;
  sdof->add_option("antennas", antennas, "m1 m2 n ne")->required()->expected(4);
  sdof->callback([&] {
    code = cli::cmd_sdof({antennas[0], antennas[1], antennas[2], antennas[3]}, std::cout, std::cerr);
  });

  // grid-verify
  auto* grid = app.add_subcommand("grid-verify", "Cross-check SDoF against bounds and plans on a config grid");
  int max_antennas = 6;
  std::string grid_out;
  grid->add_option("max_antennas", max_antennas, "largest antenna count per node")->required();
  grid->add_option("--out", grid_out, "CSV destination (default: stdout)");
  grid->callback([&] {
    code = open_and_run(grid_out, [&](std::ostream& csv) {
      return cli::cmd_grid_verify(max_antennas, csv, grid_out.empty() ? std::cerr : std::cout);
    });
  });

  // simulate
  auto* sim = app.add_subcommand("simulate", "Monte-Carlo secrecy-rate sweep from a JSON experiment config");
  std::string config_path, sim_out;
  std::optional<std::uint64_t> sim_seed;
  std::optional<int> sim_trials;
  std::optional<double> sim_alpha;
  bool no_jamming = false;
  sim->add_option("config", config_path, "experiment config (JSON)")->required();
  sim->add_option("--seed", sim_seed, "override seed");
  sim->add_option("--trials", sim_trials, "override trial count");
  sim->add_option("--alpha", sim_alpha, "override jamming power fraction");
  sim->add_option("--out", sim_out, "override CSV output path; summary goes next to it as .json");
  sim->add_flag("--no-jamming", no_jamming, "transmit without jamming (negative control)");
  sim->callback([&] {
    try {
      auto j = [&] {
        std::ifstream in(config_path);
        if (!in) throw Error(Errc::invalid_config, "cannot read " + config_path);
        try {
          return nlohmann::json::parse(in);
        } catch (const nlohmann::json::exception& ex) {
          throw Error(Errc::invalid_config, ex.what());
        }
      }();
      if (j.is_object()) {
        if (sim_seed) j["seed"] = *sim_seed;
        if (sim_trials) j["trials"] = *sim_trials;
        if (sim_alpha) j["alpha"] = *sim_alpha;
        if (!sim_out.empty()) j["output_path"] = sim_out;
        if (no_jamming) j["jamming"] = false;
      }
      code = cli::cmd_simulate(cli::parse_experiment(j), std::cout, std::cerr);
    } catch (const Error& e) {
      std::cerr << "error: " << e.what() << '\n';
      code = cli::kInvalidInput;
    }
  });

  // binning
  auto* bin = app.add_subcommand("binning", "Exact equivocation of random-binning codes at an erasure eavesdropper");
  cli::BinningConfig bcfg;
  std::string bin_out;
  bin->add_option("--n", bcfg.n_list, "block lengths")->delimiter(',');
  bin->add_option("--delta", bcfg.params.delta, "erasure probability");
  bin->add_option("--rate-total", bcfg.params.rate_total, "total code rate Rt");
  bin->add_option("--rate-secret", bcfg.params.rate_secret, "secret rate R");
  bin->add_option("--seeds", bcfg.seeds, "number of code seeds");
  bin->add_option("--seed", bcfg.seed, "first code seed");
  bin->add_option("--out", bin_out, "CSV destination (default: stdout)");
  bin->callback([&] {
    code = open_and_run(bin_out, [&](std::ostream& csv) { return cli::cmd_binning(bcfg, csv, std::cerr); });
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : cli::kInvalidInput;
  }
  return code;
}
