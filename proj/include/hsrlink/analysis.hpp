// SPDX-License-Identifier: MIT
//
// Closed-form interference analysis: post-equalization Gram-block
// coefficients, exact and closed-form SIR, SIR bounds for the AWGN and
// Rician regimes, max-SIR statistics vs the Rician K-factor, the proper-K
// threshold, and accumulated service quantity (ASQ).
//
// All Gram blocks of S^T S are proportional to the all-ones T_y x T_x MIMO
// factor, so block norms reduce to scalar coefficients throughout.
#pragma once

#include <complex>
#include <functional>
#include <numbers>

#include "hsrlink/channel.hpp"
#include "hsrlink/geometry.hpp"

namespace hsrlink {

inline constexpr double zeta2 = std::numbers::pi * std::numbers::pi / 6.0;
inline constexpr double zeta4 =
    std::numbers::pi * std::numbers::pi * std::numbers::pi * std::numbers::pi / 90.0;

// Scalar coefficient (on G^T G) of the LOS Gram block at signed subcarrier
// offset m; m = 0 is the diagonal block. Small-angle closed form.
double lambda_los(const LargeScaleMap& map, double omega_d, int m);

struct LambdaRician {
  std::complex<double> los;       // LOS-LOS block coefficient
  std::complex<double> los_nlos;  // LOS-NLOS cross block
  std::complex<double> nlos_los;  // NLOS-LOS cross block
  std::complex<double> nlos;      // NLOS-NLOS block
  std::complex<double> combined;  // K-weighted mixture
};

LambdaRician lambda_rician(const LargeScaleMap& map, const SmallScaleFading& fading,
                           double k_factor, double omega_d, int m);

// Exact post-equalization SIR at subcarrier k from the factored Gram row;
// +inf when the interference row is identically zero (no ICI).
double sir_exact(const ChannelMatrix& channel, int k);

// SIR of the raw (unequalized) channel row at subcarrier k.
double sir_unequalized(const ChannelMatrix& channel, int k);

// LOS closed-form SIR from the lambda coefficients, truncated at |m| <=
// max_offset with the O(1/m^4) tail added analytically.
inline constexpr int lambda_max_offset = 512;
double sir_closed_form(const LargeScaleMap& map, double omega_d,
                       int max_offset = lambda_max_offset);

struct SirBounds {
  double max_sir = 0.0;  // linear
  double min_sir = 0.0;  // linear
};

// Deterministic sweep bounds: max at the abeam point, min at the midpoint.
SirBounds sir_bounds_awgn(double psi, double omega_d, double cos_theta_a,
                          double cos_theta_b);

// Per-fading-draw Rician bounds; map must be an abeam-position dominant set
// (nearest RRU first, then the two flanking RRUs).
SirBounds sir_bounds_rician(const LargeScaleMap& map, const SmallScaleFading& fading,
                            double k_factor, double omega_d);

// One draw of the max SIR when the LOS equalizer runs over a Rician channel:
// u is the unit-mean exponential residual interference power.
double alg1_max_sir_sample(double psi, double omega_d, double cos_theta_a,
                           double k_factor, double u);

struct SirStats {
  double mean_max_sir = 0.0;      // linear
  double var_max_db2 = 0.0;       // dB^2, LOS-equalizer statistics
  double var_max_full_db2 = 0.0;  // dB^2, full-equalization asymptote
  double var_min_full_db2 = 0.0;  // dB^2
};

SirStats rician_sir_stats(double psi, double omega_d, double cos_theta_a,
                          double k_factor);

// Smallest K (linear) whose variance-to-expectation ratio of the max SIR in
// dB falls to chi; +inf when no root exists in [1, 1e12].
double proper_k(double psi, double omega_d, double cos_theta_a, double chi);

// Post-matched-filter SNR at a position: t_y * (sum rho)^2 / noise_var.
double matched_filter_snr(const LargeScaleMap& map, int t_y, double noise_var);

struct AsqResult {
  double integral_value = 0.0;   // quadrature over the position profile
  double two_point_value = 0.0;  // endpoint approximation from profile extremes
};

// Accumulated service quantity over span_m metres of track at speed v:
//   (1/(v t_s)) * integral of log2(1 + gamma^2 / (gamma^2/SINR(x) + 1)) dx.
// sinr_profile maps position offset in [0, span_m] to linear SINR.
AsqResult asq(const std::function<double(double)>& sinr_profile, double gamma,
              double v, double span_m, double t_s);

}  // namespace hsrlink
