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

#include "mts/fft.hpp"

#include <cmath>
#include <stdexcept>

namespace mts::fft {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

void transform(cplx* data, int n, bool inverse) {
    if (!is_power_of_two(n)) throw std::invalid_argument("fft: length must be a power of two");

    // Bit-reversal permutation.
    for (int i = 1, j = 0; i < n; ++i) {
        int bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(data[i], data[j]);
    }

    for (int len = 2; len <= n; len <<= 1) {
        const double ang = (inverse ? 2.0 : -2.0) * M_PI / len;
        const cplx wlen(std::cos(ang), std::sin(ang));
        for (int i = 0; i < n; i += len) {
            cplx w(1.0, 0.0);
            for (int k = 0; k < len / 2; ++k) {
                const cplx u = data[i + k];
                const cplx v = data[i + k + len / 2] * w;
                data[i + k] = u + v;
                data[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
    if (inverse) {
        const double inv = 1.0 / n;
        for (int i = 0; i < n; ++i) data[i] *= inv;
    }
}

void transform2d(std::vector<cplx>& data, int rows, int cols, bool inverse) {
    if (static_cast<size_t>(rows) * cols != data.size())
        throw std::invalid_argument("fft: grid size mismatch");
    for (int r = 0; r < rows; ++r) transform(data.data() + static_cast<size_t>(r) * cols, cols, inverse);
    std::vector<cplx> col(static_cast<size_t>(rows));
    for (int c = 0; c < cols; ++c) {
        for (int r = 0; r < rows; ++r) col[static_cast<size_t>(r)] = data[static_cast<size_t>(r) * cols + c];
        transform(col.data(), rows, inverse);
        for (int r = 0; r < rows; ++r) data[static_cast<size_t>(r) * cols + c] = col[static_cast<size_t>(r)];
    }
}

std::vector<cplx> fft2(const std::vector<double>& real, int rows, int cols) {
    std::vector<cplx> out(real.size());
    for (size_t i = 0; i < real.size(); ++i) out[i] = cplx(real[i], 0.0);
    transform2d(out, rows, cols, false);
    return out;
}

std::vector<double> ifft2_real(std::vector<cplx> spectrum, int rows, int cols) {
    transform2d(spectrum, rows, cols, true);
    std::vector<double> out(spectrum.size());
    for (size_t i = 0; i < spectrum.size(); ++i) out[i] = spectrum[i].real();
    return out;
}

}  // namespace mts::fft
