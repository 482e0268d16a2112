// SPDX-License-Identifier: MIT
//
// Brute-force cross-checks, independent of the closed forms: the
// scatterer-sum Doppler-spread sampler, dense materialization of the
// factored channel, and Monte Carlo SIR measurement.
#pragma once

#include <complex>
#include <vector>

#include "hsrlink/channel.hpp"
#include "hsrlink/rng.hpp"

namespace hsrlink {

struct ScattererEnsemble {
  std::vector<std::complex<double>> a;  // CN(0, 1/((K+1) N_s)) amplitudes
  std::vector<double> theta;            // arrival angles, uniform on [-pi, pi]
  std::vector<double> cos_theta;        // cached cos(theta)
};

inline constexpr int default_scatterer_count = 10000;

ScattererEnsemble make_scatterer_ensemble(int n_s, double k_factor, Rng& rng);

// Aggregate spread amplitude at integer offset m: sum over scatterers of
// a_i * Dirichlet(m + omega_d cos theta_i). Exact, no small-offset expansion.
std::complex<double> doppler_spread_sample(const ScattererEnsemble& ensemble,
                                           double omega_d, long m, int n);

struct DenseMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<std::complex<double>> a;  // row-major

  std::complex<double>& at(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
  const std::complex<double>& at(int r, int c) const {
    return a[static_cast<std::size_t>(r) * cols + c];
  }
  std::vector<std::complex<double>> apply(const std::vector<std::complex<double>>& x) const;
  std::vector<std::complex<double>> apply_transpose(
      const std::vector<std::complex<double>>& y) const;
};

inline constexpr int dense_dimension_guard = 4096;

// Entrywise materialization; throws when n * max(t_x, t_y) exceeds the guard.
DenseMatrix dense_channel(const ChannelMatrix& channel);

// Monte Carlo post-equalization SIR at subcarrier k over random unit-modulus
// frames; +inf when interference stays below 1e-12 of the desired power.
double empirical_sir(const ChannelMatrix& channel, int k, int trials, Rng& rng);

}  // namespace hsrlink
