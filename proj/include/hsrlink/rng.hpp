// SPDX-License-Identifier: MIT
//
// Deterministic random-number streams. Every experiment derives independent
// substreams from one master seed, so results are reproducible bit-for-bit
// regardless of evaluation order or thread count.
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <string_view>

namespace hsrlink {

// splitmix64 mixer; good avalanche, used only for seed derivation.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// FNV-1a over a label; labels keep substreams of one run decorrelated.
inline std::uint64_t stream_hash(std::string_view label) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (char c : label) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ull;
  }
  return h;
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  // Substream derived from (master seed, label, index); deterministic.
  static Rng stream(std::uint64_t master, std::string_view label, std::uint64_t index = 0) {
    std::uint64_t s = master ^ stream_hash(label) ^ (0xff51afd7ed558ccdull * (index + 1));
    std::uint64_t mixed = splitmix64(s);
    return Rng(mixed);
  }

  // Uniform on [0, 1) with 53 random bits; avoids stdlib distribution
  // implementation differences.
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  // Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Standard circularly-symmetric complex Gaussian CN(0, 1):
  // Rayleigh amplitude, uniform phase. |z|^2 ~ Exp(1).
  std::complex<double> cnormal() {
    double u1 = uniform();
    double u2 = uniform();
    double r = std::sqrt(-std::log1p(-u1));
    return std::polar(r, 2.0 * std::numbers::pi * u2);
  }

  double normal() {
    double u1 = uniform();
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log1p(-u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  double exponential() { return -std::log1p(-uniform()); }

  // Random unit-modulus symbol; exactly unit power per draw.
  std::complex<double> unit_phase() { return std::polar(1.0, 2.0 * std::numbers::pi * uniform()); }

  // QPSK symbol on the unit circle.
  std::complex<double> qpsk() {
    static const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
    std::uint64_t bits = eng_();
    double re = (bits & 1) ? inv_sqrt2 : -inv_sqrt2;
    double im = (bits & 2) ? inv_sqrt2 : -inv_sqrt2;
    return {re, im};
  }

  std::uint64_t raw() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

}  // namespace hsrlink
