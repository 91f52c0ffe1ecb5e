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

#include "mts/pipeline.hpp"

#include <fstream>
#include <stdexcept>

#include "mts/paced_window.hpp"

#include <json.hpp>

namespace mts {

void MtsConfig::validate() const {
    if (n < 1) throw std::invalid_argument("config: n must be at least 1");
    if (tau < 0) throw std::invalid_argument("config: tau must be positive (or 0 for the per-kind default)");
    if (parallelism < 1) throw std::invalid_argument("config: parallelism must be at least 1");
}

std::string WindowDiagnostics::to_record() const {
    nlohmann::json rec;
    rec["anchor_frame"] = anchor_frame;
    rec["t1"] = t1;
    rec["t2"] = t2;
    nlohmann::json stops = nlohmann::json::array();
    for (int s : stop_frames) {
        if (s == WindowPlan::kNeverStops) {
            stops.push_back(nullptr);
        } else {
            stops.push_back(s);
        }
    }
    rec["stop_frames"] = std::move(stops);
    rec["psi"] = psi;
    rec["cyclic"] = cyclic;
    rec["selected"] = selected + 1;
    rec["base_state_hash"] = base_state_hash;
    rec["winner_state_hash"] = winner_state_hash;
    return rec.dump();
}

TrackingResult run_mts(std::span<const Frame> frames, const BoundingBox& init_box, const MtsConfig& config) {
    config.validate();
    const int T = static_cast<int>(frames.size());
    if (T < 2) throw std::invalid_argument("run_mts: need at least 2 frames");
    frame_at(frames, 1);
    frame_at(frames, T);
    if (!init_box.valid()) throw std::invalid_argument("run_mts: invalid init box");

    const int tau = config.resolved_tau();
    const ScoringParams scoring = config.scoring.resolved(init_box);

    std::unique_ptr<Tracker> base = init_tracker(frame_at(frames, 1), init_box, config.base_kind, config.tracker);

    AppearanceSet appearance;
    appearance.patches.push_back(
        extract_patch(frame_at(frames, 1), init_box, scoring.patch_rows, scoring.patch_cols));

    TrackingResult result;
    result.boxes.resize(static_cast<size_t>(T));
    result.boxes[0] = init_box;

    std::ofstream dump;
    if (!config.window_dump_path.empty()) {
        dump.open(config.window_dump_path);
        if (!dump) throw std::runtime_error("cannot write window dump: " + config.window_dump_path);
    }

    int anchor = 1;
    BoundingBox anchor_box = init_box;
    while (anchor < T) {
        const WindowPlan plan = plan_window(anchor, anchor_box, config.n, tau, T);
        const uint64_t base_hash = base->state_hash();

        std::vector<ForwardRun> forward = run_forward(*base, plan, frames, config.parallelism);
        const std::vector<Trajectory> backward = run_backward(forward, plan, frames, config.parallelism);
        if (dump.is_open()) dump_window(dump, plan, forward, backward);

        std::vector<RobustnessReport> reports(forward.size());
        parallel_for(plan.n, config.parallelism, [&](int i) {
            reports[static_cast<size_t>(i)] = robustness_score(
                forward[static_cast<size_t>(i)].trajectory, backward[static_cast<size_t>(i)], frames,
                appearance, scoring, i);
        });
        const size_t best = select_best(reports);

        const Trajectory& winner = forward[best].trajectory;
        for (int t = plan.t1; t <= plan.t2; ++t) result.boxes[static_cast<size_t>(t) - 1] = winner.box_at(t);

        WindowDiagnostics diag;
        diag.anchor_frame = plan.anchor_frame;
        diag.t1 = plan.t1;
        diag.t2 = plan.t2;
        diag.stop_frames = plan.stop_frame;
        diag.selected = static_cast<int>(best);
        diag.base_state_hash = base_hash;
        for (const RobustnessReport& r : reports) {
            diag.psi.push_back(r.psi);
            diag.cyclic.push_back(r.cyclic);
        }

        // Hand off the winner's post-forward model; the backward pass ran on
        // snapshots and never touched it.
        base = std::move(forward[best].end_state);
        base->reanchor(winner.box_at(plan.t2));
        diag.winner_state_hash = base->state_hash();
        result.windows.push_back(std::move(diag));

        if (config.append_selected_patch) {
            appearance.patches.push_back(extract_patch(frame_at(frames, plan.t2), winner.box_at(plan.t2),
                                                       scoring.patch_rows, scoring.patch_cols));
        }

        anchor = plan.t2;
        anchor_box = winner.box_at(plan.t2);
    }
    return result;
}

TrackingResult run_baseline(std::span<const Frame> frames, const BoundingBox& init_box, TrackerKind kind,
                            const TrackerParams& params) {
    const int T = static_cast<int>(frames.size());
    if (T < 2) throw std::invalid_argument("run_baseline: need at least 2 frames");
    frame_at(frames, 1);
    if (!init_box.valid()) throw std::invalid_argument("run_baseline: invalid init box");

    std::unique_ptr<Tracker> tracker = init_tracker(frame_at(frames, 1), init_box, kind, params);
    TrackingResult result;
    result.boxes.resize(static_cast<size_t>(T));
    result.boxes[0] = init_box;
    for (int t = 2; t <= T; ++t) {
        const Frame& frame = frame_at(frames, t);
        const BoundingBox box = tracker->predict(frame);
        tracker->update(frame, box);
        result.boxes[static_cast<size_t>(t) - 1] = box;
    }
    return result;
}

void save_diagnostics(const std::string& path, const TrackingResult& result) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write diagnostics file: " + path);
    for (const WindowDiagnostics& w : result.windows) out << w.to_record() << '\n';
}

}  // namespace mts
