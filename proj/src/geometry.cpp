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

#include "mts/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace mts {

double center_distance(const BoundingBox& a, const BoundingBox& b) {
    const double dx = a.cx() - b.cx();
    const double dy = a.cy() - b.cy();
    return std::sqrt(dx * dx + dy * dy);
}

double iou(const BoundingBox& a, const BoundingBox& b) {
    const double ix = std::max(a.x, b.x);
    const double iy = std::max(a.y, b.y);
    const double ix2 = std::min(a.x + a.w, b.x + b.w);
    const double iy2 = std::min(a.y + a.h, b.y + b.h);
    const double iw = std::max(0.0, ix2 - ix);
    const double ih = std::max(0.0, iy2 - iy);
    const double inter = iw * ih;
    const double uni = a.area() + b.area() - inter;
    if (uni <= 0.0) return 0.0;
    // Rounding can push inter an ulp past the union for identical boxes.
    return std::clamp(inter / uni, 0.0, 1.0);
}

float Image::at_clamped(int r, int c) const {
    const int rr = std::clamp(r, 0, rows - 1);
    const int cc = std::clamp(c, 0, cols - 1);
    return at(rr, cc);
}

double Patch::mean() const {
    if (data.empty()) return 0.0;
    return std::accumulate(data.begin(), data.end(), 0.0) / static_cast<double>(data.size());
}

Patch extract_patch(const Frame& frame, const BoundingBox& box, int rows, int cols) {
    if (rows < 1 || cols < 1) throw std::invalid_argument("extract_patch: patch dimensions must be positive");
    if (!box.valid()) throw std::invalid_argument("extract_patch: invalid box");
    const Image& img = frame.image;

    Patch patch;
    patch.rows = rows;
    patch.cols = cols;
    patch.data.resize(static_cast<size_t>(rows) * cols);
    patch.source_box = box;

    // Pixel centers map into the box; sample position for output column j is
    // box.x + (j + 0.5) * box.w / cols - 0.5, so a box matching the patch
    // size exactly is an identity resample.
    for (int i = 0; i < rows; ++i) {
        const double sy = box.y + (i + 0.5) * box.h / rows - 0.5;
        const int y0 = static_cast<int>(std::floor(sy));
        const double fy = sy - y0;
        for (int j = 0; j < cols; ++j) {
            const double sx = box.x + (j + 0.5) * box.w / cols - 0.5;
            const int x0 = static_cast<int>(std::floor(sx));
            const double fx = sx - x0;
            const double v00 = img.at_clamped(y0, x0);
            const double v01 = img.at_clamped(y0, x0 + 1);
            const double v10 = img.at_clamped(y0 + 1, x0);
            const double v11 = img.at_clamped(y0 + 1, x0 + 1);
            const double top = v00 + fx * (v01 - v00);
            const double bot = v10 + fx * (v11 - v10);
            patch.at(i, j) = top + fy * (bot - top);
        }
    }
    return patch;
}

double luma(uint8_t r, uint8_t g, uint8_t b) {
    return (0.299 * r + 0.587 * g + 0.114 * b) / 255.0;
}

Image to_grayscale(const RgbImage& rgb) {
    Image out(rgb.rows, rgb.cols);
    const uint8_t* p = rgb.data.data();
    for (size_t i = 0; i < out.data.size(); ++i, p += 3) {
        out.data[i] = static_cast<float>(luma(p[0], p[1], p[2]));
    }
    return out;
}

const Frame& frame_at(std::span<const Frame> frames, int index) {
    if (frames.empty()) throw std::out_of_range("frame_at: empty frame span");
    const long offset = static_cast<long>(index) - frames.front().index;
    if (offset < 0 || offset >= static_cast<long>(frames.size()))
        throw std::out_of_range("frame_at: frame index out of range");
    const Frame& f = frames[static_cast<size_t>(offset)];
    if (f.index != index) throw std::logic_error("frame_at: non-contiguous frame indices");
    return f;
}

}  // namespace mts
