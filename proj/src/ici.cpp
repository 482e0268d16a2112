// SPDX-License-Identifier: MIT
#include "hsrlink/ici.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hsrlink {

namespace {
constexpr double kPi = std::numbers::pi;

int next_pow2(int n) {
  int p = 1;
  while (p < n) p <<= 1;
  return p;
}
}  // namespace

double omega_d(double f_carrier, double v, double t_s) {
  if (!std::isfinite(f_carrier) || f_carrier <= 0.0)
    throw std::invalid_argument("omega_d: carrier frequency must be finite and positive");
  if (!std::isfinite(v) || v < 0.0)
    throw std::invalid_argument("omega_d: speed must be finite and non-negative");
  if (!std::isfinite(t_s) || t_s <= 0.0)
    throw std::invalid_argument("omega_d: symbol duration must be finite and positive");
  const double w = f_carrier * v * t_s / speed_of_light;
  if (w >= 0.5)
    throw std::invalid_argument("omega_d: normalized Doppler >= 0.5 is outside model validity");
  return w;
}

double dirichlet_ratio(double s, int n) {
  if (n <= 0) throw std::invalid_argument("dirichlet_ratio: n must be positive");
  if (s == std::floor(s)) {
    const long long si = static_cast<long long>(s);
    return (si % n == 0) ? 1.0 : 0.0;
  }
  const double den = std::sin(kPi * s / n);
  if (std::abs(den) < 1e-14) return 1.0;
  return std::sin(kPi * s) / (n * den);
}

std::complex<double> ici_coefficient(double epsilon, long m, int n) {
  if (n <= 0) throw std::invalid_argument("ici_coefficient: n must be positive");
  if (m <= -static_cast<long>(n) || m >= static_cast<long>(n))
    throw std::invalid_argument("ici_coefficient: |m| must be < n");
  const double s = static_cast<double>(m) + epsilon;
  if (epsilon == std::floor(epsilon)) {
    // Integer total offset: delta comb, exact including phase.
    const long long si = m + static_cast<long long>(epsilon);
    return (si % n == 0) ? 1.0 : 0.0;
  }
  const double den = std::sin(kPi * s / n);
  if (std::abs(den) < 1e-14) return 1.0;  // removable singularity at s = 0 mod n
  const double mag = std::sin(kPi * s) / (n * den);
  const double phase = kPi * (1.0 - 1.0 / n) * s;
  return mag * std::complex<double>(std::cos(phase), std::sin(phase));
}

IciMatrix build_los_ici_matrix(double epsilon, int n) {
  if (n <= 0) throw std::invalid_argument("build_los_ici_matrix: n must be positive");
  IciMatrix m;
  m.n_ = n;
  m.kind_ = IciKind::Los;
  m.param_ = epsilon;
  m.gen_.resize(n);
  for (int k = 0; k < n; ++k) m.gen_[k] = ici_coefficient(epsilon, k, n);
  m.spec_ = fft::forward(m.gen_);
  return m;
}

IciMatrix build_nlos_ici_matrix(double omega, int n) {
  if (n <= 0) throw std::invalid_argument("build_nlos_ici_matrix: n must be positive");
  if (!std::isfinite(omega) || omega < 0.0 || omega >= 0.5)
    throw std::invalid_argument("build_nlos_ici_matrix: omega_d must be in [0, 0.5)");
  IciMatrix m;
  m.n_ = n;
  m.kind_ = IciKind::Nlos;
  m.param_ = omega;
  m.kernel_.assign(2 * n - 1, 0.0);
  m.kernel_[n - 1] = 1.0;
  for (int off = 1; off < n; ++off) {
    const double mag = omega / (std::sqrt(2.0) * off);
    const double val = (off % 2 == 0) ? mag : -mag;
    m.kernel_[n - 1 + off] = val;   // entry(r, c) with r - c = off
    m.kernel_[n - 1 - off] = -val;  // antisymmetric upper triangle
  }
  m.conv_len_ = next_pow2(3 * n - 2);
  fft::cvec pad(m.conv_len_, 0.0);
  for (int i = 0; i < 2 * n - 1; ++i) pad[i] = m.kernel_[i];
  m.kernel_spec_ = fft::forward(pad);
  std::fill(pad.begin(), pad.end(), std::complex<double>(0.0));
  for (int i = 0; i < 2 * n - 1; ++i) pad[i] = m.kernel_[2 * n - 2 - i];
  m.kernel_spec_t_ = fft::forward(pad);
  return m;
}

std::complex<double> IciMatrix::entry(int r, int c) const {
  if (r < 0 || r >= n_ || c < 0 || c >= n_)
    throw std::out_of_range("IciMatrix::entry: index out of range");
  if (kind_ == IciKind::Los) return gen_[((r - c) % n_ + n_) % n_];
  return kernel_[r - c + n_ - 1];
}

void IciMatrix::apply(const std::complex<double>* in, std::complex<double>* out) const {
  if (kind_ == IciKind::Los) {
    fft::cvec v(in, in + n_);
    fft::forward_inplace(v.data(), n_);
    for (int k = 0; k < n_; ++k) v[k] *= spec_[k];
    fft::inverse_inplace(v.data(), n_);
    for (int k = 0; k < n_; ++k) out[k] = v[k];
    return;
  }
  fft::cvec v(conv_len_, 0.0);
  for (int k = 0; k < n_; ++k) v[k] = in[k];
  fft::forward_inplace(v.data(), conv_len_);
  for (int k = 0; k < conv_len_; ++k) v[k] *= kernel_spec_[k];
  fft::inverse_inplace(v.data(), conv_len_);
  for (int k = 0; k < n_; ++k) out[k] = v[k + n_ - 1];
}

void IciMatrix::apply_transpose(const std::complex<double>* in, std::complex<double>* out) const {
  if (kind_ == IciKind::Los) {
    fft::cvec v(in, in + n_);
    fft::forward_inplace(v.data(), n_);
    for (int k = 0; k < n_; ++k) v[k] *= spec_[(n_ - k) % n_];
    fft::inverse_inplace(v.data(), n_);
    for (int k = 0; k < n_; ++k) out[k] = v[k];
    return;
  }
  fft::cvec v(conv_len_, 0.0);
  for (int k = 0; k < n_; ++k) v[k] = in[k];
  fft::forward_inplace(v.data(), conv_len_);
  for (int k = 0; k < conv_len_; ++k) v[k] *= kernel_spec_t_[k];
  fft::inverse_inplace(v.data(), conv_len_);
  for (int k = 0; k < n_; ++k) out[k] = v[k + n_ - 1];
}

double IciMatrix::row_energy() const {
  if (kind_ != IciKind::Los)
    throw std::logic_error("row_energy: defined for Los matrices only");
  double acc = 0.0;
  for (const auto& g : gen_) acc += std::norm(g);
  return acc;
}

double unitarity_deviation(const IciMatrix& m) {
  if (m.kind() != IciKind::Los)
    throw std::logic_error("unitarity_deviation: defined for Los matrices only");
  // M^H M is circulant with spectrum |spec|^2; compare against identity.
  const int n = m.size();
  fft::cvec sq(n);
  for (int k = 0; k < n; ++k) sq[k] = std::norm(m.spectrum()[k]);
  fft::inverse_inplace(sq.data(), n);
  double worst = 0.0;
  for (int k = 0; k < n; ++k) {
    const double target = (k == 0) ? 1.0 : 0.0;
    worst = std::max(worst, std::abs(sq[k] - target));
  }
  return worst;
}

}  // namespace hsrlink
