// SPDX-License-Identifier: MIT
//
// Corridor geometry: trackside radio units (RRUs) spaced d_h apart at
// perpendicular offset d_v, a receiver moving along the track, angles of
// arrival, and the log-distance large-scale gain model
//   G(d) = b_db - 10*alpha*log10(d)   [dB power],  rho = 10^{G/20} [amplitude].
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hsrlink {

struct DeploymentConfig {
  double d_h = 500.0;        // inter-RRU spacing along the track [m]
  double d_v = 100.0;        // perpendicular RRU offset from the track [m]
  int rru_count = 8;
  int t_x = 4;               // transmit antennas per RRU
  int t_y = 4;               // receive antennas
  int n = 1024;              // subcarrier count
  double f_carrier = 2.4e9;  // [Hz]
  double t_s = 71e-6;        // OFDM sample duration [s]
  double alpha = 3.8;        // path-loss exponent
  double b_db = 126.0;       // receive-power control constant [dB]
  int n_t = 3;               // dominant RRUs tracked per position

  // Throws std::invalid_argument on violated invariants.
  void validate() const;
};

// Plain-text key/value config loader. Accepted line forms:
//   key = value     key: value     key value     # comment
// Keys: d_h_m, d_v_m, rru_count, t_x, t_y, n_subcarriers, f_carrier_hz,
// t_s_s, alpha, b_db, n_t. Unknown keys are rejected. Missing keys keep
// their defaults. Throws std::invalid_argument on any parse/validate error.
DeploymentConfig load_config(const std::string& path);
DeploymentConfig parse_config_text(const std::string& text);

struct TrainState {
  double x = 0.0;  // position along the track [m]; RRU i sits at x = i*d_h
  double v = 0.0;  // speed [m/s], >= 0
};

struct PathGeometry {
  int rru_index = 0;
  double distance = 0.0;  // slant distance, >= d_v
  double cos_aoa = 0.0;   // cosine of angle of arrival; > 0 for RRUs ahead
  double rho = 0.0;       // linear amplitude gain
};

// Dominant RRUs at one position, sorted ascending by distance.
using LargeScaleMap = std::vector<PathGeometry>;

double path_gain_db(const DeploymentConfig& cfg, double distance);
double rho_of_distance(const DeploymentConfig& cfg, double distance);

// Geometry of one RRU as seen from the train. Rejects non-finite train state
// and out-of-range rru_index.
PathGeometry path_geometry(const DeploymentConfig& cfg, const TrainState& train, int rru_index);

// The n_t closest RRUs; ties broken by lower index. Result sorted by
// (distance, index) ascending.
LargeScaleMap dominant_set(const DeploymentConfig& cfg, const TrainState& train);

// Power ratio (nearest rho / second-nearest rho)^2.
double psi_ratio(const LargeScaleMap& map);

// cos of the arrival angle from a flanking RRU one spacing away when the
// train sits abeam another RRU: d_h / sqrt(d_h^2 + d_v^2).
double cos_theta_abeam_flank(const DeploymentConfig& cfg);

// Same cosine at the midpoint between two RRUs: (d_h/2)/sqrt((d_h/2)^2+d_v^2).
double cos_theta_midpoint(const DeploymentConfig& cfg);

}  // namespace hsrlink
