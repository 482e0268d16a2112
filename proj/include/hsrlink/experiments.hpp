// SPDX-License-Identifier: MIT
//
// Experiment drivers behind the CLI: position sweeps, the three summary
// tables, ASQ curves, and the end-to-end verification suite. All emit
// self-describing CSV (one header line, 6 significant digits).
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hsrlink/analysis.hpp"
#include "hsrlink/geometry.hpp"

namespace hsrlink {

// "%.6g" with inf/nan spelled out.
std::string format_number(double v);

struct ExperimentResult {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  bool ok = true;

  std::string to_csv() const;
};

// Anchor geometry of the central inter-RRU span: the abeam point (max SIR)
// and the midpoint (min SIR), plus the service span used for MS integrals.
struct SpanGeometry {
  double x_abeam = 0.0;
  double x_mid = 0.0;
  double span = 0.0;          // d_h
  double service_span = 0.0;  // psi metres (power-ratio overload, see README)
  double psi = 0.0;
  double cos_a = 0.0;
  double cos_b = 0.0;
  LargeScaleMap map_a;
  LargeScaleMap map_b;
};

SpanGeometry span_geometry(const DeploymentConfig& cfg);

// Train speed that realizes a normalized Doppler omega_d under cfg.
double speed_from_omega(const DeploymentConfig& cfg, double omega_d);

// Deterministic LOS sweep digest over one span at subcarrier N/2.
struct LosSweepSummary {
  double max_sir_db = 0.0;
  double min_sir_db = 0.0;
  double raw_min_db = 0.0;   // unequalized minimum
  double bound_max_db = 0.0;
  double bound_min_db = 0.0;
  double closed_form_max_db = 0.0;
  double closed_form_min_db = 0.0;
};

LosSweepSummary los_sweep_summary(const DeploymentConfig& cfg, double omega_d,
                                  double step_m);

// Mobile service (ASQ over the service span) for the four Table-1 flavours.
struct MobileService {
  double no_ici = 0.0;
  double reduced = 0.0;
  double theory = 0.0;  // two-point value from the bound anchors
  double without = 0.0;
};

MobileService mobile_service(const DeploymentConfig& cfg, double omega_d);

struct McMoments {
  double mean_db = 0.0;
  double var_db2 = 0.0;
};

struct RicianBoundMc {
  McMoments max_sir;
  McMoments min_sir;
};

inline constexpr int mc_iterations = 1000;

// Monte Carlo over per-iteration fading draws of the Rician bound pair.
RicianBoundMc mc_alg2_bounds(const DeploymentConfig& cfg, double omega_d,
                             double k_factor, int iterations, std::uint64_t seed,
                             const std::string& label);

// Monte Carlo of the LOS-equalizer max SIR over the residual-power draw.
McMoments mc_alg1_max(const DeploymentConfig& cfg, double omega_d, double k_factor,
                      int iterations, std::uint64_t seed, const std::string& label);

ExperimentResult run_position_sweep(const DeploymentConfig& cfg, double omega_d,
                                    double k_factor, int algorithm, double step_m,
                                    std::uint64_t seed);
ExperimentResult run_table1(const DeploymentConfig& cfg, std::uint64_t seed);
ExperimentResult run_table2(const DeploymentConfig& cfg, std::uint64_t seed);
ExperimentResult run_table3(const DeploymentConfig& cfg, std::uint64_t seed);
ExperimentResult run_asq(const DeploymentConfig& cfg,
                         const std::vector<double>& omega_list, std::uint64_t seed);
ExperimentResult run_verify(const DeploymentConfig& cfg, std::uint64_t seed);

}  // namespace hsrlink
