// SPDX-License-Identifier: MIT
#include "hsrlink/oracle.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "hsrlink/ici.hpp"

namespace hsrlink {

ScattererEnsemble make_scatterer_ensemble(int n_s, double k_factor, Rng& rng) {
  if (n_s <= 0) throw std::invalid_argument("make_scatterer_ensemble: n_s must be positive");
  if (!(k_factor >= 0.0) || std::isinf(k_factor))
    throw std::invalid_argument("make_scatterer_ensemble: K must be finite and >= 0");
  ScattererEnsemble e;
  e.a.resize(n_s);
  e.theta.resize(n_s);
  e.cos_theta.resize(n_s);
  const double amp = std::sqrt(1.0 / ((k_factor + 1.0) * n_s));
  for (int i = 0; i < n_s; ++i) {
    e.a[i] = amp * rng.cnormal();
    e.theta[i] = (2.0 * rng.uniform() - 1.0) * std::numbers::pi;
    e.cos_theta[i] = std::cos(e.theta[i]);
  }
  return e;
}

std::complex<double> doppler_spread_sample(const ScattererEnsemble& ensemble,
                                           double omega_d, long m, int n) {
  if (m <= -static_cast<long>(n) || m >= static_cast<long>(n))
    throw std::invalid_argument("doppler_spread_sample: |m| must be < n");
  std::complex<double> acc = 0.0;
  const std::size_t count = ensemble.a.size();
  for (std::size_t i = 0; i < count; ++i) {
    const double s = static_cast<double>(m) + omega_d * ensemble.cos_theta[i];
    acc += ensemble.a[i] * dirichlet_ratio(s, n);
  }
  return acc;
}

std::vector<std::complex<double>> DenseMatrix::apply(
    const std::vector<std::complex<double>>& x) const {
  if (static_cast<int>(x.size()) != cols)
    throw std::invalid_argument("DenseMatrix::apply: dimension mismatch");
  std::vector<std::complex<double>> y(rows, 0.0);
  for (int r = 0; r < rows; ++r) {
    std::complex<double> acc = 0.0;
    for (int c = 0; c < cols; ++c) acc += at(r, c) * x[c];
    y[r] = acc;
  }
  return y;
}

std::vector<std::complex<double>> DenseMatrix::apply_transpose(
    const std::vector<std::complex<double>>& y) const {
  if (static_cast<int>(y.size()) != rows)
    throw std::invalid_argument("DenseMatrix::apply_transpose: dimension mismatch");
  std::vector<std::complex<double>> x(cols, 0.0);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) x[c] += at(r, c) * y[r];
  return x;
}

DenseMatrix dense_channel(const ChannelMatrix& channel) {
  const int n = channel.n();
  const int tx = channel.t_x();
  const int ty = channel.t_y();
  if (n * std::max(tx, ty) > dense_dimension_guard)
    throw std::invalid_argument("dense_channel: dimension guard exceeded");
  DenseMatrix d;
  d.rows = n * ty;
  d.cols = n * tx;
  d.a.assign(static_cast<std::size_t>(d.rows) * d.cols, 0.0);
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      const std::complex<double> v = channel.scalar_entry(k, i);
      if (v == std::complex<double>(0.0)) continue;
      for (int b = 0; b < ty; ++b)
        for (int a = 0; a < tx; ++a) d.at(k * ty + b, i * tx + a) = v;
    }
  }
  return d;
}

double empirical_sir(const ChannelMatrix& channel, int k, int trials, Rng& rng) {
  if (trials < 100) throw std::invalid_argument("empirical_sir: at least 100 trials required");
  const int n = channel.n();
  if (k < 0 || k >= n) throw std::out_of_range("empirical_sir: subcarrier out of range");
  const int tx = channel.t_x();
  double desired = 0.0;
  double interference = 0.0;
  Frame only_k(static_cast<std::size_t>(n) * tx, 0.0);
  for (int t = 0; t < trials; ++t) {
    Frame x = make_unit_phase_frame(n, tx, rng);
    Frame rest = x;
    for (int a = 0; a < tx; ++a) {
      only_k[static_cast<std::size_t>(k) * tx + a] = x[static_cast<std::size_t>(k) * tx + a];
      rest[static_cast<std::size_t>(k) * tx + a] = 0.0;
    }
    const Frame zd = channel.apply_transpose(channel.apply(only_k));
    const Frame zi = channel.apply_transpose(channel.apply(rest));
    for (int a = 0; a < tx; ++a) {
      desired += std::norm(zd[static_cast<std::size_t>(k) * tx + a]);
      interference += std::norm(zi[static_cast<std::size_t>(k) * tx + a]);
    }
    for (int a = 0; a < tx; ++a) only_k[static_cast<std::size_t>(k) * tx + a] = 0.0;
  }
  if (interference <= 1e-12 * desired) return std::numeric_limits<double>::infinity();
  return desired / interference;
}

}  // namespace hsrlink
