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

#include "mts/fft.hpp"
#include "mts/tracker.hpp"

namespace mts {

/// Maps a response-grid peak index to a signed displacement with circular
/// wrap-around: indices past half the grid are negative (63 -> -1 on a
/// 64-wide grid).
int wrap_offset(int index, int size);

/// Single-channel linear correlation filter (MOSSE-style) on a fixed FFT
/// grid. The padded search region around the box is resampled to
/// grid_size^2, mean-subtracted and Hann-windowed; the filter is learned by
/// regularized ridge regression in the Fourier domain and localizes the
/// target at the response peak.
class DcfTracker final : public Tracker {
public:
    DcfTracker(const Frame& frame, const BoundingBox& box, const DcfParams& params);

    TrackerKind kind() const override { return TrackerKind::dcf; }
    BoundingBox predict(const Frame& frame) const override;
    void update(const Frame& frame, const BoundingBox& box) override;
    std::unique_ptr<Tracker> snapshot() const override;

    const std::vector<fft::cplx>& numerator() const { return A_; }
    const std::vector<double>& denominator() const { return B_; }
    int grid_size() const { return grid_; }

    /// Response map over the padded region at `box` (row-major grid_size^2).
    std::vector<double> response_map(const Frame& frame, const BoundingBox& box) const;

    static std::unique_ptr<DcfTracker> deserialize_model(ByteReader& r, const BoundingBox& box);

protected:
    void serialize_model(ByteWriter& w) const override;

private:
    DcfTracker() = default;

    /// Windowed, mean-subtracted padded patch at `box`, as a grid vector.
    std::vector<double> features(const Frame& frame, const BoundingBox& box) const;
    void train(const Frame& frame, const BoundingBox& box, double eta);

    DcfParams params_;
    int grid_ = 64;
    std::vector<double> window_;        // Hann taper, grid^2
    std::vector<fft::cplx> label_;      // spectrum of the wrapped Gaussian label
    std::vector<fft::cplx> A_;          // filter numerator
    std::vector<double> B_;             // filter denominator (real)
};

}  // namespace mts
