// SPDX-License-Identifier: MIT
//
// Thin FFTW3 wrapper: in-place complex transforms with a mutex-guarded plan
// cache. Forward uses the e^{-j2*pi*k*n/N} kernel; inverse applies the 1/N
// scaling so inverse(forward(x)) == x.
#pragma once

#include <complex>
#include <vector>

namespace hsrlink::fft {

using cvec = std::vector<std::complex<double>>;

void forward_inplace(std::complex<double>* data, int n);
void inverse_inplace(std::complex<double>* data, int n);  // includes 1/n

cvec forward(cvec v);
cvec inverse(cvec v);

}  // namespace hsrlink::fft
