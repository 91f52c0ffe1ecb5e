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
#include <optional>
#include <string>

#include "mts/geometry.hpp"

namespace mts {

/// A loaded or generated image sequence with optional per-frame ground truth
/// and challenge-factor tags (IV, SV, OCC, ...). Immutable after
/// construction and freely shareable between threads.
struct Sequence {
    std::string name;
    std::vector<Frame> frames;
    std::vector<BoundingBox> ground_truth;  // empty or one box per frame
    std::vector<std::string> attributes;

    bool has_ground_truth() const { return !ground_truth.empty(); }
    int frame_count() const { return static_cast<int>(frames.size()); }
    void validate() const;
};

struct MotionWaypoint {
    int frame = 1;  // 1-based
    double cx = 0.0;
    double cy = 0.0;
};

struct OcclusionInterval {
    int first = 1;
    int last = 1;
    double cover = 1.0;  // fraction of the target hidden, top-down
};

struct GainPoint {
    int frame = 1;
    double gain = 1.0;
};

/// Deterministic synthetic-sequence recipe: a textured square target over a
/// textured background, piecewise-linear motion, optional occlusion spans,
/// an illumination ramp and per-frame noise. Ground truth is the exact
/// target box on every frame.
struct SynthSpec {
    std::string name = "synth";
    int width = 160;
    int height = 120;
    int frame_count = 60;
    int target_w = 16;
    int target_h = 16;
    uint64_t texture_seed = 1;
    uint64_t seed = 1;
    double noise_sigma = 0.0;
    double bg_lo = 0.0;      // background intensity band
    double bg_hi = 1.0;
    double target_lo = 0.0;  // target intensity band
    double target_hi = 1.0;
    std::vector<MotionWaypoint> waypoints;   // at least one
    std::vector<OcclusionInterval> occlusions;
    std::vector<GainPoint> gains;            // piecewise-linear gain; empty = 1.0

    void validate() const;
    static SynthSpec parse(const std::string& text);
    static SynthSpec parse_file(const std::filesystem::path& path);
    std::string to_text() const;
};

Sequence generate_synth(const SynthSpec& spec);

/// Loads an OTB-layout sequence: `<dir>/img/####.jpg|png` plus
/// `groundtruth_rect.txt` with one `x,y,w,h` line per frame (comma or tab
/// separated). Coordinates are kept as stored, with no origin shift.
Sequence load_otb(const std::filesystem::path& dir);

/// Writes a sequence in OTB layout (PNG frames). Ground truth is written at
/// full precision so a reload reproduces it exactly.
void export_otb(const Sequence& seq, const std::filesystem::path& dir);

/// Results CSV: one `frame,x,y,w,h` line per frame, 6 significant digits.
void save_result_boxes(const std::filesystem::path& path, std::span<const BoundingBox> boxes);
std::vector<BoundingBox> load_result_boxes(const std::filesystem::path& path);

}  // namespace mts
