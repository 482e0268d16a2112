// SPDX-License-Identifier: MIT
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hsrlink/experiments.hpp"
#include "hsrlink/geometry.hpp"

int main(int argc, char** argv) {
  CLI::App app{"hsrlink: link-level simulator for distributed-antenna OFDM downlinks"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  std::uint64_t seed = 1;
  app.add_option("--config", config_path, "deployment config file (key value per line)");
  app.add_option("--seed", seed, "master seed for all random substreams")
      ->capture_default_str();
  app.add_option("--out", out_dir, "output directory for CSV files")
      ->capture_default_str();

  double sweep_omega = 0.08;
  std::string k_db = "inf";
  int alg = 1;
  double step_m = 5.0;
  auto* sweep = app.add_subcommand("sweep", "SIR vs position across one inter-RRU span");
  sweep->add_option("--omega-d", sweep_omega, "normalized Doppler")->capture_default_str();
  sweep->add_option("--k-db", k_db, "Rician K in dB, or 'inf' for pure LOS")
      ->capture_default_str();
  sweep->add_option("--alg", alg, "equalizer: 1 = LOS-estimated, 2 = full")
      ->check(CLI::IsMember({1, 2}))
      ->capture_default_str();
  sweep->add_option("--step-m", step_m, "position step in metres")->capture_default_str();

  auto* table1 =
      app.add_subcommand("table1", "LOS SIR extrema and mobile service vs omega_d");
  auto* table2 =
      app.add_subcommand("table2", "SIR statistics vs antenna count (invariance)");
  auto* table3 =
      app.add_subcommand("table3", "Monte Carlo vs theory for both equalizers");
  std::vector<double> asq_omegas;
  auto* asq_cmd =
      app.add_subcommand("asq", "accumulated service quality along the span");
  asq_cmd->add_option("--omega-d", asq_omegas,
                      "normalized Doppler (repeatable; default 0.05 and 0.08)");
  auto* verify = app.add_subcommand("verify", "run the self-check suite");
  // Global options may appear after the subcommand name.
  for (auto* sub : {sweep, table1, table2, table3, asq_cmd, verify}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    hsrlink::DeploymentConfig cfg;
    if (!config_path.empty()) cfg = hsrlink::load_config(config_path);
    cfg.validate();

    hsrlink::ExperimentResult result;
    if (sweep->parsed()) {
      double k_factor = std::numeric_limits<double>::infinity();
      if (k_db != "inf") k_factor = std::pow(10.0, std::stod(k_db) / 10.0);
      result = hsrlink::run_position_sweep(cfg, sweep_omega, k_factor, alg, step_m, seed);
    } else if (table1->parsed()) {
      result = hsrlink::run_table1(cfg, seed);
    } else if (table2->parsed()) {
      result = hsrlink::run_table2(cfg, seed);
    } else if (table3->parsed()) {
      result = hsrlink::run_table3(cfg, seed);
    } else if (asq_cmd->parsed()) {
      if (asq_omegas.empty()) asq_omegas = {0.05, 0.08};
      result = hsrlink::run_asq(cfg, asq_omegas, seed);
    } else {
      result = hsrlink::run_verify(cfg, seed);
    }

    std::filesystem::create_directories(out_dir);
    const std::filesystem::path path =
        std::filesystem::path(out_dir) / (result.name + ".csv");
    std::ofstream file(path);
    if (!file) throw std::runtime_error("cannot open " + path.string());
    file << result.to_csv();
    if (!file.flush()) throw std::runtime_error("write failed: " + path.string());
    std::cout << "wrote " << path.string() << " (" << result.rows.size() << " rows)\n";

    if (verify->parsed()) {
      int failed = 0;
      for (const auto& row : result.rows) {
        if (row.back() == "FAIL") {
          ++failed;
          std::cout << "FAIL " << row[0] << ": value " << row[1] << " exceeds limit "
                    << row[2] << "\n";
        }
      }
      std::cout << "verify: " << (result.rows.size() - failed) << "/"
                << result.rows.size() << " checks passed\n";
      if (!result.ok) return 1;
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
