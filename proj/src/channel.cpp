// SPDX-License-Identifier: MIT
#include "hsrlink/channel.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace hsrlink {

SmallScaleFading draw_fading(std::size_t count, Rng& rng) {
  SmallScaleFading f;
  f.r.resize(count);
  for (auto& z : f.r) z = rng.cnormal();
  return f;
}

bool ChannelMatrix::pure_los() const { return std::isinf(rician_k_); }

std::complex<double> ChannelMatrix::weight_sum() const {
  std::complex<double> acc = 0.0;
  for (const auto& t : terms_) acc += t.weight;
  return acc;
}

void ChannelMatrix::rebuild_cache() {
  los_spec_.assign(n_, 0.0);
  nlos_weight_ = 0.0;
  nlos_index_ = -1;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const auto& t = terms_[i];
    if (t.ici.kind() == IciKind::Los) {
      const auto& spec = t.ici.spectrum();
      for (int k = 0; k < n_; ++k) los_spec_[k] += t.weight * spec[k];
    } else {
      nlos_weight_ += t.weight;
      if (nlos_index_ < 0) nlos_index_ = static_cast<int>(i);
    }
  }
}

const fft::cvec& ChannelMatrix::los_spectrum() const {
  if (nlos_index_ >= 0)
    throw std::logic_error("los_spectrum: channel has a Doppler-spread component");
  return los_spec_;
}

void ChannelMatrix::scalar_apply(const std::complex<double>* in,
                                 std::complex<double>* out) const {
  fft::cvec v(in, in + n_);
  fft::forward_inplace(v.data(), n_);
  for (int k = 0; k < n_; ++k) v[k] *= los_spec_[k];
  fft::inverse_inplace(v.data(), n_);
  for (int k = 0; k < n_; ++k) out[k] = v[k];
  if (nlos_index_ < 0) return;
  fft::cvec nl(n_);
  terms_[nlos_index_].ici.apply(in, nl.data());
  for (int k = 0; k < n_; ++k) out[k] += nlos_weight_ * nl[k];
}

void ChannelMatrix::scalar_apply_transpose(const std::complex<double>* in,
                                           std::complex<double>* out) const {
  fft::cvec v(in, in + n_);
  fft::forward_inplace(v.data(), n_);
  fft::cvec w(n_);
  for (int k = 0; k < n_; ++k) w[k] = los_spec_[(n_ - k) % n_] * v[k];
  fft::inverse_inplace(w.data(), n_);
  for (int k = 0; k < n_; ++k) out[k] = w[k];
  if (nlos_index_ < 0) return;
  fft::cvec nl(n_);
  terms_[nlos_index_].ici.apply_transpose(in, nl.data());
  for (int k = 0; k < n_; ++k) out[k] += nlos_weight_ * nl[k];
}

std::complex<double> ChannelMatrix::scalar_entry(int r, int c) const {
  std::complex<double> acc = 0.0;
  for (const auto& t : terms_) acc += t.weight * t.ici.entry(r, c);
  return acc;
}

Frame ChannelMatrix::apply(const Frame& x) const {
  if (static_cast<int>(x.size()) != n_ * t_x_)
    throw std::invalid_argument("ChannelMatrix::apply: frame length mismatch");
  fft::cvec u(n_);
  for (int k = 0; k < n_; ++k) {
    std::complex<double> s = 0.0;
    for (int a = 0; a < t_x_; ++a) s += x[static_cast<std::size_t>(k) * t_x_ + a];
    u[k] = s;
  }
  fft::cvec w(n_);
  scalar_apply(u.data(), w.data());
  Frame y(static_cast<std::size_t>(n_) * t_y_);
  for (int k = 0; k < n_; ++k)
    for (int b = 0; b < t_y_; ++b) y[static_cast<std::size_t>(k) * t_y_ + b] = w[k];
  return y;
}

Frame ChannelMatrix::apply_transpose(const Frame& y) const {
  if (static_cast<int>(y.size()) != n_ * t_y_)
    throw std::invalid_argument("ChannelMatrix::apply_transpose: frame length mismatch");
  fft::cvec v(n_);
  for (int k = 0; k < n_; ++k) {
    std::complex<double> s = 0.0;
    for (int b = 0; b < t_y_; ++b) s += y[static_cast<std::size_t>(k) * t_y_ + b];
    v[k] = s;
  }
  fft::cvec w(n_);
  scalar_apply_transpose(v.data(), w.data());
  Frame x(static_cast<std::size_t>(n_) * t_x_);
  for (int k = 0; k < n_; ++k)
    for (int a = 0; a < t_x_; ++a) x[static_cast<std::size_t>(k) * t_x_ + a] = w[k];
  return x;
}

ChannelMatrix build_los_channel(const LargeScaleMap& map, double omega_d,
                                int n, int t_x, int t_y) {
  if (map.empty()) throw std::invalid_argument("build_los_channel: empty path map");
  if (n <= 0 || t_x <= 0 || t_y <= 0)
    throw std::invalid_argument("build_los_channel: dimensions must be positive");
  ChannelMatrix s;
  s.n_ = n;
  s.t_x_ = t_x;
  s.t_y_ = t_y;
  s.rician_k_ = std::numeric_limits<double>::infinity();
  s.omega_ = omega_d;
  s.terms_.reserve(map.size());
  for (const auto& path : map) {
    const double eps = omega_d * path.cos_aoa;
    s.terms_.push_back({path.rho, build_los_ici_matrix(eps, n)});
  }
  s.rebuild_cache();
  return s;
}

ChannelMatrix build_rician_channel(const ChannelMatrix& los, double k_factor,
                                   const SmallScaleFading& fading,
                                   double omega_d, int n) {
  if (!los.pure_los())
    throw std::invalid_argument("build_rician_channel: base channel must be pure LOS");
  if (n != los.n_)
    throw std::invalid_argument("build_rician_channel: subcarrier count mismatch");
  if (std::isinf(k_factor)) return los;
  if (!(k_factor > 0.0))
    throw std::invalid_argument("build_rician_channel: K must be positive or infinite");
  if (fading.r.size() != los.terms_.size())
    throw std::invalid_argument("build_rician_channel: one fading draw per RRU required");
  ChannelMatrix s;
  s.n_ = n;
  s.t_x_ = los.t_x_;
  s.t_y_ = los.t_y_;
  s.rician_k_ = k_factor;
  s.omega_ = omega_d;
  const double los_scale = std::sqrt(k_factor / (k_factor + 1.0));
  const double nlos_scale = std::sqrt(1.0 / (k_factor + 1.0));
  s.terms_.reserve(2 * los.terms_.size());
  for (const auto& t : los.terms_) s.terms_.push_back({t.weight * los_scale, t.ici});
  const IciMatrix spread = build_nlos_ici_matrix(omega_d, n);
  for (std::size_t i = 0; i < los.terms_.size(); ++i)
    s.terms_.push_back({los.terms_[i].weight * nlos_scale * fading.r[i], spread});
  s.rebuild_cache();
  return s;
}

Frame transmit(const ChannelMatrix& channel, const Frame& x, double noise_var, Rng& rng) {
  if (noise_var < 0.0) throw std::invalid_argument("transmit: negative noise variance");
  Frame y = channel.apply(x);
  if (noise_var > 0.0) {
    const double amp = std::sqrt(noise_var);
    for (auto& v : y) v += amp * rng.cnormal();
  }
  return y;
}

Frame make_qpsk_frame(int n, int t_x, Rng& rng) {
  Frame x(static_cast<std::size_t>(n) * t_x);
  for (auto& v : x) v = rng.qpsk();
  return x;
}

Frame make_unit_phase_frame(int n, int t_x, Rng& rng) {
  Frame x(static_cast<std::size_t>(n) * t_x);
  for (auto& v : x) v = rng.unit_phase();
  return x;
}

}  // namespace hsrlink
