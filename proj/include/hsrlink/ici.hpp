// SPDX-License-Identifier: MIT
//
// Inter-carrier-interference kernels and matrices.
//
// A single carrier-frequency offset epsilon produces the N-periodic kernel
//   I[m] = sin(pi(m+eps)) / (N sin(pi(m+eps)/N)) * exp(j pi (1-1/N)(m+eps)),
// and the full-subcarrier matrix is exactly circulant and exactly unitary:
//   entry(r, c) = gen[(r - c) mod N].
// The aggregate Doppler-spread matrix is a real Toeplitz (not circulant):
//   entry(r, c) = d[r - c],  d[0] = 1,  d[m] = (-1)^m omega_d / (sqrt(2) m).
// Matrices are stored by generator only; products run through the FFT.
#pragma once

#include <complex>
#include <vector>

#include "hsrlink/fft.hpp"

namespace hsrlink {

// Normalized Doppler omega_d = f_carrier * v * t_s / c. Throws on non-finite
// or negative input and on omega_d >= 0.5 (outside model validity).
double omega_d(double f_carrier, double v, double t_s);

inline constexpr double speed_of_light = 299792458.0;

// Kernel value at integer subcarrier offset m, |m| < n. Integer total offsets
// are evaluated exactly: 1 when (m + epsilon) is a multiple of n, else 0.
std::complex<double> ici_coefficient(double epsilon, long m, int n);

// Phaseless magnitude ratio sin(pi s) / (n sin(pi s / n)) with the same exact
// handling of integral s; valid for |s| < n.
double dirichlet_ratio(double s, int n);

enum class IciKind { Los, Nlos };

class IciMatrix {
 public:
  int size() const { return n_; }
  IciKind kind() const { return kind_; }
  double param() const { return param_; }  // epsilon (Los) or omega_d (Nlos)

  std::complex<double> entry(int r, int c) const;

  // Circulant generator and its DFT (Los only).
  const fft::cvec& generator() const { return gen_; }
  const fft::cvec& spectrum() const { return spec_; }

  // Signed Toeplitz kernel, offset m stored at index m + n - 1 (Nlos only).
  const std::vector<double>& kernel() const { return kernel_; }

  // out = M * in and out = M^T * in; in/out have length n and may not alias.
  void apply(const std::complex<double>* in, std::complex<double>* out) const;
  void apply_transpose(const std::complex<double>* in, std::complex<double>* out) const;

  double row_energy() const;  // sum over |gen[m]|^2 (Los)

  friend IciMatrix build_los_ici_matrix(double epsilon, int n);
  friend IciMatrix build_nlos_ici_matrix(double omega, int n);

 private:
  IciMatrix() = default;
  int n_ = 0;
  IciKind kind_ = IciKind::Los;
  double param_ = 0.0;
  fft::cvec gen_;     // Los: length n
  fft::cvec spec_;    // Los: fft(gen)
  std::vector<double> kernel_;  // Nlos: length 2n-1
  int conv_len_ = 0;            // Nlos: FFT length for linear convolution
  fft::cvec kernel_spec_;       // Nlos: fft of zero-padded kernel
  fft::cvec kernel_spec_t_;     // Nlos: fft of reversed kernel (transpose)
};

IciMatrix build_los_ici_matrix(double epsilon, int n);
IciMatrix build_nlos_ici_matrix(double omega_d, int n);

// max |M^H M - identity| entry for a Los matrix, via its spectrum.
double unitarity_deviation(const IciMatrix& m);

}  // namespace hsrlink
