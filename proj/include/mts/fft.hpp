// Copyright 2026 the mts-tracker authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <vector>

namespace mts::fft {

using cplx = std::complex<double>;

bool is_power_of_two(int n);

/// In-place radix-2 transform of length n (power of two). Forward uses the
/// e^{-i2*pi*kn/N} convention; the inverse applies the 1/n factor.
void transform(cplx* data, int n, bool inverse);

/// 2-D transform over a row-major rows x cols grid (both powers of two).
void transform2d(std::vector<cplx>& data, int rows, int cols, bool inverse);

/// Forward 2-D FFT of a real grid.
std::vector<cplx> fft2(const std::vector<double>& real, int rows, int cols);

/// Real part of the inverse 2-D FFT.
std::vector<double> ifft2_real(std::vector<cplx> spectrum, int rows, int cols);

}  // namespace mts::fft
