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

#include <cstdint>
#include <span>
#include <vector>

namespace mts {

/// Axis-aligned rectangle in image pixel coordinates. Coordinates are
/// real-valued; (x, y) is the top-left corner.
struct BoundingBox {
    double x = 0.0;
    double y = 0.0;
    double w = 0.0;
    double h = 0.0;

    double cx() const { return x + w / 2.0; }
    double cy() const { return y + h / 2.0; }
    double area() const { return w * h; }
    bool valid() const { return w > 0.0 && h > 0.0; }

    BoundingBox translated(double dx, double dy) const { return {x + dx, y + dy, w, h}; }

    bool operator==(const BoundingBox&) const = default;
};

/// Euclidean distance between two box centers, in pixels.
double center_distance(const BoundingBox& a, const BoundingBox& b);

/// Intersection over union of two valid boxes; 0 when disjoint.
double iou(const BoundingBox& a, const BoundingBox& b);

/// Single-channel image, intensities in [0, 1], row-major.
struct Image {
    int rows = 0;
    int cols = 0;
    std::vector<float> data;

    Image() = default;
    Image(int r, int c, float fill = 0.0f) : rows(r), cols(c), data(static_cast<size_t>(r) * c, fill) {}

    float at(int r, int c) const { return data[static_cast<size_t>(r) * cols + c]; }
    float& at(int r, int c) { return data[static_cast<size_t>(r) * cols + c]; }

    // Edge-replicated access for out-of-bounds samples.
    float at_clamped(int r, int c) const;
};

/// One sequence frame: 1-based index plus its grayscale pixels.
struct Frame {
    int index = 0;
    Image image;
};

/// Fixed-size resampled crop of a frame under a bounding box.
struct Patch {
    int rows = 0;
    int cols = 0;
    std::vector<double> data;
    BoundingBox source_box;

    double at(int r, int c) const { return data[static_cast<size_t>(r) * cols + c]; }
    double& at(int r, int c) { return data[static_cast<size_t>(r) * cols + c]; }

    double mean() const;
};

/// Resamples the region under `box` to a (rows x cols) patch by bilinear
/// interpolation. Samples outside the image replicate the nearest edge
/// pixel, so boxes may extend beyond the frame.
Patch extract_patch(const Frame& frame, const BoundingBox& box, int rows = 32, int cols = 32);

/// BT.601 luma of one 8-bit RGB pixel, scaled to [0, 1].
double luma(uint8_t r, uint8_t g, uint8_t b);

/// Interleaved 8-bit RGB buffer as produced by the image decoders.
struct RgbImage {
    int rows = 0;
    int cols = 0;
    std::vector<uint8_t> data;  // rows*cols*3, interleaved
};

Image to_grayscale(const RgbImage& rgb);

/// Frame lookup by 1-based index in a contiguous frame span.
const Frame& frame_at(std::span<const Frame> frames, int index);

}  // namespace mts
