// SPDX-License-Identifier: MIT
//
// Composite channel assembly and frame synthesis.
//
// The downlink channel is a Kronecker-factored sum
//   S = sum_t weight_t * (ici_t  (x)  G),   G = all-ones T_y x T_x,
// so every (rx, tx) antenna stream sees the same N x N subcarrier operator
//   A = sum_t weight_t * ici_t.
// Frames use subcarrier-major layout: index = subcarrier * T + antenna.
#pragma once

#include <complex>
#include <vector>

#include "hsrlink/fft.hpp"
#include "hsrlink/geometry.hpp"
#include "hsrlink/ici.hpp"
#include "hsrlink/rng.hpp"

namespace hsrlink {

using Frame = fft::cvec;

// One complex fading scalar per dominant RRU, r_t ~ CN(0,1).
struct SmallScaleFading {
  std::vector<std::complex<double>> r;
};

SmallScaleFading draw_fading(std::size_t count, Rng& rng);

struct ChannelTerm {
  std::complex<double> weight;  // rho, Rician power split, and fading folded in
  IciMatrix ici;
};

class ChannelMatrix {
 public:
  int n() const { return n_; }
  int t_x() const { return t_x_; }
  int t_y() const { return t_y_; }
  double rician_k() const { return rician_k_; }  // linear, +inf for pure LOS
  bool pure_los() const;
  double omega() const { return omega_; }
  const std::vector<ChannelTerm>& terms() const { return terms_; }

  // Sum of all term weights; gamma gains are sqrt(N T_y T_x) * |this|.
  std::complex<double> weight_sum() const;

  // Per-stream scalar operator A; in/out length n, may not alias.
  void scalar_apply(const std::complex<double>* in, std::complex<double>* out) const;
  void scalar_apply_transpose(const std::complex<double>* in, std::complex<double>* out) const;
  std::complex<double> scalar_entry(int r, int c) const;

  // Spectrum of A when the channel is pure LOS (A circulant).
  const fft::cvec& los_spectrum() const;

  // Full frame products: apply maps N*T_x -> N*T_y, transpose the reverse.
  Frame apply(const Frame& x) const;
  Frame apply_transpose(const Frame& y) const;

  friend ChannelMatrix build_los_channel(const LargeScaleMap& map, double omega_d,
                                         int n, int t_x, int t_y);
  friend ChannelMatrix build_rician_channel(const ChannelMatrix& los, double k_factor,
                                            const SmallScaleFading& fading,
                                            double omega_d, int n);

 private:
  ChannelMatrix() = default;
  void rebuild_cache();

  int n_ = 0;
  int t_x_ = 0;
  int t_y_ = 0;
  double rician_k_ = 0.0;
  double omega_ = 0.0;
  std::vector<ChannelTerm> terms_;

  // Collapsed fast-path state: all circulant terms fold into one spectrum,
  // all Doppler-spread terms share one Toeplitz up to a scalar.
  fft::cvec los_spec_;
  std::complex<double> nlos_weight_ = 0.0;
  int nlos_index_ = -1;  // index of a representative Nlos term, -1 if none
};

ChannelMatrix build_los_channel(const LargeScaleMap& map, double omega_d,
                                int n, int t_x, int t_y);
ChannelMatrix build_rician_channel(const ChannelMatrix& los, double k_factor,
                                   const SmallScaleFading& fading,
                                   double omega_d, int n);

// Y = S*X + W, W circular complex Gaussian with per-entry variance noise_var.
Frame transmit(const ChannelMatrix& channel, const Frame& x, double noise_var, Rng& rng);

// Transmit-side frame generators with unit average symbol power.
Frame make_qpsk_frame(int n, int t_x, Rng& rng);
Frame make_unit_phase_frame(int n, int t_x, Rng& rng);

}  // namespace hsrlink
