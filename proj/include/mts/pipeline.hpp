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

#include <string>

#include "mts/trajectory_scoring.hpp"

namespace mts {

/// Full configuration of one tracking run.
struct MtsConfig {
    TrackerKind base_kind = TrackerKind::ncc;
    int n = 8;
    int tau = 0;  // 0: 10 for ncc, 20 for dcf
    TrackerParams tracker;
    ScoringParams scoring;
    bool append_selected_patch = false;  // grow the appearance set per window
    int parallelism = 1;
    std::string window_dump_path;  // when set, per-window trajectory records (JSON lines)

    int resolved_tau() const {
        if (tau > 0) return tau;
        return base_kind == TrackerKind::ncc ? 10 : 20;
    }
    void validate() const;
};

/// Per-window selection diagnostics.
struct WindowDiagnostics {
    int anchor_frame = 0;
    int t1 = 0;
    int t2 = 0;
    std::vector<int> stop_frames;
    std::vector<double> psi;
    std::vector<bool> cyclic;
    int selected = 0;  // 0-based ensemble position
    uint64_t base_state_hash = 0;    // state the window started from
    uint64_t winner_state_hash = 0;  // winner's post-forward state (next window's base)

    std::string to_record() const;  // one-line JSON
};

/// One box per frame (frame 1 carries the given init box) plus per-window
/// diagnostics.
struct TrackingResult {
    std::vector<BoundingBox> boxes;
    std::vector<WindowDiagnostics> windows;

    int frame_count() const { return static_cast<int>(boxes.size()); }
    const BoundingBox& box_at(int frame) const { return boxes.at(static_cast<size_t>(frame) - 1); }
};

/// Runs the full update-pacing pipeline: windows are tiled over the
/// sequence; each window runs the paced forward pass, the backward pass and
/// trajectory scoring; the winner's forward boxes become the output and its
/// post-forward state seeds the next window.
TrackingResult run_mts(std::span<const Frame> frames, const BoundingBox& init_box, const MtsConfig& config);

/// Plain always-update run of a base tracker (the comparison arm).
TrackingResult run_baseline(std::span<const Frame> frames, const BoundingBox& init_box, TrackerKind kind,
                            const TrackerParams& params = {});

void save_diagnostics(const std::string& path, const TrackingResult& result);

}  // namespace mts
