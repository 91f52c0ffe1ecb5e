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

#include <iosfwd>
#include <limits>

#include "mts/tracker.hpp"

namespace mts {

/// Update schedule of one ensemble window. The window spans frames
/// [anchor+1, t2]; member i freezes its model from stop_frame[i] on, and the
/// last member never freezes.
struct WindowPlan {
    static constexpr int kNeverStops = std::numeric_limits<int>::max();

    int anchor_frame = 0;  // frame with a trusted box
    BoundingBox anchor_box;
    int t1 = 0;  // anchor_frame + 1
    int t2 = 0;  // min(anchor_frame + n*tau, last_frame)
    int n = 0;
    int tau = 0;
    std::vector<int> stop_frame;  // size n; entries past t2 are inert

    int span() const { return t2 - t1 + 1; }
};

WindowPlan plan_window(int anchor_frame, const BoundingBox& anchor_box, int n, int tau, int last_frame);

enum class TrackDirection : uint8_t { forward, backward };

/// Ordered boxes over an inclusive frame range. Backward trajectories run
/// from the window end down to the anchor, so frame_begin > frame_end.
struct Trajectory {
    TrackDirection direction = TrackDirection::forward;
    int frame_begin = 0;
    int frame_end = 0;
    std::vector<BoundingBox> boxes;

    int length() const { return std::abs(frame_end - frame_begin) + 1; }
    bool covers(int frame) const {
        return frame >= std::min(frame_begin, frame_end) && frame <= std::max(frame_begin, frame_end);
    }
    const BoundingBox& box_at(int frame) const;
};

struct ForwardRun {
    Trajectory trajectory;            // over [anchor, t2], anchor box first
    std::unique_ptr<Tracker> end_state;  // model as of the end of the forward pass
};

/// Forward pass of the paced ensemble: each member starts from a snapshot of
/// `base`, predicts every frame of the window, and folds its own prediction
/// back into the model only on frames before its stop frame.
std::vector<ForwardRun> run_forward(const Tracker& base, const WindowPlan& plan,
                                    std::span<const Frame> frames, int threads = 1);

/// Backward pass: each member continues from its forward end state, is
/// re-anchored at its last forward box, and tracks back to the anchor frame
/// with updates enabled everywhere.
std::vector<Trajectory> run_backward(const std::vector<ForwardRun>& forward, const WindowPlan& plan,
                                     std::span<const Frame> frames, int threads = 1);

/// Debug dump: one JSON record per tracker with both trajectories and the
/// stop frame, line-delimited.
void dump_window(std::ostream& out, const WindowPlan& plan, const std::vector<ForwardRun>& forward,
                 const std::vector<Trajectory>& backward);

}  // namespace mts
