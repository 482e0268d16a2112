// SPDX-License-Identifier: MIT
#include "hsrlink/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

namespace hsrlink::fft {

namespace {

std::mutex plan_mutex;

// Plans are created once per (size, direction) with FFTW_UNALIGNED so they can
// execute on any caller buffer. fftw_execute_dft itself is thread-safe.
fftw_plan get_plan(int n, int sign) {
  static std::map<std::pair<int, int>, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(plan_mutex);
  auto key = std::make_pair(n, sign);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<std::complex<double>> tmp(static_cast<size_t>(n));
  fftw_plan p = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(tmp.data()),
                                 reinterpret_cast<fftw_complex*>(tmp.data()), sign,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
  cache.emplace(key, p);
  return p;
}

}  // namespace

void forward_inplace(std::complex<double>* data, int n) {
  fftw_execute_dft(get_plan(n, FFTW_FORWARD), reinterpret_cast<fftw_complex*>(data),
                   reinterpret_cast<fftw_complex*>(data));
}

void inverse_inplace(std::complex<double>* data, int n) {
  fftw_execute_dft(get_plan(n, FFTW_BACKWARD), reinterpret_cast<fftw_complex*>(data),
                   reinterpret_cast<fftw_complex*>(data));
  const double s = 1.0 / static_cast<double>(n);
  for (int i = 0; i < n; ++i) data[i] *= s;
}

cvec forward(cvec v) {
  forward_inplace(v.data(), static_cast<int>(v.size()));
  return v;
}

cvec inverse(cvec v) {
  inverse_inplace(v.data(), static_cast<int>(v.size()));
  return v;
}

}  // namespace hsrlink::fft
