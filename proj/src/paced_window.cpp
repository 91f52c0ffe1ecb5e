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

#include "mts/paced_window.hpp"

#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace mts {

const BoundingBox& Trajectory::box_at(int frame) const {
    if (!covers(frame)) throw std::out_of_range("trajectory: frame outside range");
    const size_t idx = static_cast<size_t>(std::abs(frame - frame_begin));
    return boxes[idx];
}

WindowPlan plan_window(int anchor_frame, const BoundingBox& anchor_box, int n, int tau, int last_frame) {
    if (n < 1) throw std::invalid_argument("plan_window: n must be at least 1");
    if (tau < 1) throw std::invalid_argument("plan_window: tau must be at least 1");
    if (anchor_frame >= last_frame) throw std::invalid_argument("plan_window: anchor at or past the last frame");
    if (!anchor_box.valid()) throw std::invalid_argument("plan_window: invalid anchor box");

    WindowPlan plan;
    plan.anchor_frame = anchor_frame;
    plan.anchor_box = anchor_box;
    plan.t1 = anchor_frame + 1;
    plan.t2 = std::min(anchor_frame + n * tau, last_frame);
    plan.n = n;
    plan.tau = tau;
    plan.stop_frame.resize(static_cast<size_t>(n));
    for (int i = 1; i < n; ++i) plan.stop_frame[static_cast<size_t>(i - 1)] = anchor_frame + i * tau;
    plan.stop_frame[static_cast<size_t>(n - 1)] = WindowPlan::kNeverStops;
    return plan;
}

static void check_frames(const WindowPlan& plan, std::span<const Frame> frames) {
    // Throws unless the span covers [anchor, t2].
    frame_at(frames, plan.anchor_frame);
    frame_at(frames, plan.t2);
}

std::vector<ForwardRun> run_forward(const Tracker& base, const WindowPlan& plan,
                                    std::span<const Frame> frames, int threads) {
    check_frames(plan, frames);
    if (!(base.current_box() == plan.anchor_box))
        throw std::invalid_argument("run_forward: base tracker is not anchored at the plan's anchor box");
    std::vector<ForwardRun> runs(static_cast<size_t>(plan.n));
    parallel_for(plan.n, threads, [&](int i) {
        std::unique_ptr<Tracker> tracker = base.snapshot();
        const int stop = plan.stop_frame[static_cast<size_t>(i)];

        Trajectory traj;
        traj.direction = TrackDirection::forward;
        traj.frame_begin = plan.anchor_frame;
        traj.frame_end = plan.t2;
        traj.boxes.reserve(static_cast<size_t>(plan.span()) + 1);
        traj.boxes.push_back(plan.anchor_box);

        for (int t = plan.t1; t <= plan.t2; ++t) {
            const Frame& frame = frame_at(frames, t);
            const BoundingBox box = tracker->predict(frame);
            if (t < stop) tracker->update(frame, box);
            traj.boxes.push_back(box);
        }
        runs[static_cast<size_t>(i)] = ForwardRun{std::move(traj), std::move(tracker)};
    });
    return runs;
}

std::vector<Trajectory> run_backward(const std::vector<ForwardRun>& forward, const WindowPlan& plan,
                                     std::span<const Frame> frames, int threads) {
    if (forward.size() != static_cast<size_t>(plan.n))
        throw std::invalid_argument("run_backward: forward results do not match the plan");
    check_frames(plan, frames);

    std::vector<Trajectory> out(forward.size());
    parallel_for(plan.n, threads, [&](int i) {
        const ForwardRun& run = forward[static_cast<size_t>(i)];
        // Snapshot so the forward end state survives the backward pass; the
        // pipeline hands that state to the next window.
        std::unique_ptr<Tracker> tracker = run.end_state->snapshot();
        const BoundingBox start_box = run.trajectory.box_at(plan.t2);
        tracker->reanchor(start_box);

        Trajectory traj;
        traj.direction = TrackDirection::backward;
        traj.frame_begin = plan.t2;
        traj.frame_end = plan.anchor_frame;
        traj.boxes.reserve(static_cast<size_t>(plan.span()) + 1);
        traj.boxes.push_back(start_box);  // backward box at t2 equals the forward one

        for (int t = plan.t2 - 1; t >= plan.anchor_frame; --t) {
            const Frame& frame = frame_at(frames, t);
            const BoundingBox box = tracker->predict(frame);
            tracker->update(frame, box);  // backward updates run on every frame
            traj.boxes.push_back(box);
        }
        out[static_cast<size_t>(i)] = std::move(traj);
    });
    return out;
}

static nlohmann::json box_json(const BoundingBox& b) {
    return nlohmann::json::array({b.x, b.y, b.w, b.h});
}

void dump_window(std::ostream& out, const WindowPlan& plan, const std::vector<ForwardRun>& forward,
                 const std::vector<Trajectory>& backward) {
    for (size_t i = 0; i < forward.size(); ++i) {
        nlohmann::json rec;
        rec["tracker"] = i + 1;
        rec["anchor_frame"] = plan.anchor_frame;
        rec["t1"] = plan.t1;
        rec["t2"] = plan.t2;
        const int stop = plan.stop_frame[i];
        if (stop == WindowPlan::kNeverStops) {
            rec["stop_frame"] = nullptr;
        } else {
            rec["stop_frame"] = stop;
        }
        nlohmann::json fwd = nlohmann::json::array();
        for (const BoundingBox& b : forward[i].trajectory.boxes) fwd.push_back(box_json(b));
        rec["forward"] = std::move(fwd);
        if (i < backward.size()) {
            nlohmann::json bwd = nlohmann::json::array();
            for (const BoundingBox& b : backward[i].boxes) bwd.push_back(box_json(b));
            rec["backward"] = std::move(bwd);
        }
        out << rec.dump() << '\n';
    }
}

}  // namespace mts
