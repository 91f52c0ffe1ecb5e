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

#include <filesystem>

#include "mts/geometry.hpp"

namespace mts {

/// Decodes a PNG or JPEG file to grayscale intensities in [0, 1]. Color
/// inputs go through the BT.601 luma conversion.
Image load_image(const std::filesystem::path& path);

/// Writes an 8-bit grayscale PNG. Intensities are clamped and quantized to
/// round(v * 255). Output bytes are deterministic for identical images.
void save_png(const std::filesystem::path& path, const Image& image);

/// Writes an 8-bit grayscale JPEG (quality 95). Lossy; used for fixtures.
void save_jpeg(const std::filesystem::path& path, const Image& image);

/// Draws a 1-px box outline (intensity `value`) onto a copy of the image.
Image draw_box(const Image& image, const BoundingBox& box, float value = 1.0f);

}  // namespace mts
