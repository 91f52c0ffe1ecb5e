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

#include <doctest.h>

#include <sstream>

#include "mts/paced_window.hpp"
#include "mts/sequence.hpp"
#include "test_support.hpp"

using namespace mts;

namespace {

SynthSpec drift_spec(uint64_t seed) {
    // Target keeps moving while fully occluded mid-window: the member that
    // froze its model early stays anchored where the target returns on the
    // backward pass, while the always-updating member learns the background
    // it latched onto and drifts.
    SynthSpec spec;
    spec.name = "drift";
    spec.width = 200;
    spec.height = 120;
    spec.frame_count = 18;
    spec.target_w = 16;
    spec.target_h = 16;
    spec.texture_seed = seed;
    spec.seed = seed;
    spec.waypoints = {{1, 40, 60}, {18, 74, 60}};
    spec.occlusions = {{6, 13, 1.0}};
    return spec;
}

}  // namespace

TEST_CASE("plan_window lays out the documented 5-tracker schedule") {
    const BoundingBox box{0, 0, 10, 10};
    const WindowPlan plan = plan_window(0, box, 5, 3, 100);
    CHECK(plan.t1 == 1);
    CHECK(plan.t2 == 15);
    REQUIRE(plan.stop_frame.size() == 5);
    CHECK(plan.stop_frame[0] == 3);
    CHECK(plan.stop_frame[1] == 6);
    CHECK(plan.stop_frame[2] == 9);
    CHECK(plan.stop_frame[3] == 12);
    CHECK(plan.stop_frame[4] == WindowPlan::kNeverStops);
}

TEST_CASE("plan_window degenerate single tracker") {
    const WindowPlan plan = plan_window(4, {0, 0, 10, 10}, 1, 7, 100);
    CHECK(plan.t2 == 11);
    REQUIRE(plan.stop_frame.size() == 1);
    CHECK(plan.stop_frame[0] == WindowPlan::kNeverStops);
}

TEST_CASE("plan_window clips at the sequence end, stops past it stay inert") {
    const WindowPlan plan = plan_window(90, {0, 0, 10, 10}, 5, 3, 100);
    CHECK(plan.t2 == 100);
    CHECK(plan.stop_frame[3] == 102);  // beyond t2, never reached
}

TEST_CASE("plan_window rejects bad arguments") {
    const BoundingBox box{0, 0, 10, 10};
    CHECK_THROWS_AS(plan_window(0, box, 0, 3, 100), std::invalid_argument);
    CHECK_THROWS_AS(plan_window(0, box, 5, 0, 100), std::invalid_argument);
    CHECK_THROWS_AS(plan_window(100, box, 5, 3, 100), std::invalid_argument);
}

TEST_CASE("run_forward with n=1 reduces to a plain always-update run") {
    SynthSpec spec;
    spec.frame_count = 12;
    spec.texture_seed = 61;
    spec.seed = 61;
    spec.waypoints = {{1, 50, 60}, {12, 61, 60}};
    const Sequence seq = generate_synth(spec);
    const BoundingBox init = seq.ground_truth[0];

    auto base = init_tracker(seq.frames[0], init, TrackerKind::ncc);
    const WindowPlan plan = plan_window(1, init, 1, 11, 12);
    const auto runs = run_forward(*base, plan, seq.frames);
    REQUIRE(runs.size() == 1);

    auto plain = init_tracker(seq.frames[0], init, TrackerKind::ncc);
    for (int t = 2; t <= 12; ++t) {
        const Frame& f = frame_at(seq.frames, t);
        const BoundingBox p = plain->predict(f);
        plain->update(f, p);
        CHECK(runs[0].trajectory.box_at(t) == p);
    }
    CHECK(runs[0].end_state->serialize() == plain->serialize());
}

TEST_CASE("prefix agreement: members are bit-identical until the earlier stop frame") {
    Rng rng(404);
    for (int trial = 0; trial < 6; ++trial) {
        const int n = rng.uniform_int(2, 5);
        const int tau = rng.uniform_int(2, 4);
        const TrackerKind kind = trial % 2 == 0 ? TrackerKind::ncc : TrackerKind::dcf;

        SynthSpec spec;
        spec.frame_count = n * tau + 2;
        spec.width = 120;
        spec.height = 90;
        spec.target_w = 12;
        spec.target_h = 12;
        spec.texture_seed = 700 + static_cast<uint64_t>(trial);
        spec.seed = spec.texture_seed;
        spec.noise_sigma = 0.01;  // per-frame noise so post-divergence paths actually differ
        spec.waypoints = {{1, 40, 45}, {spec.frame_count, 40.0 + spec.frame_count, 45}};
        const Sequence seq = generate_synth(spec);

        auto base = init_tracker(seq.frames[0], seq.ground_truth[0], kind);
        const WindowPlan plan = plan_window(1, seq.ground_truth[0], n, tau, spec.frame_count);
        const auto runs = run_forward(*base, plan, seq.frames);

        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                const int stop = std::min(plan.stop_frame[static_cast<size_t>(i)], plan.t2);
                for (int t = plan.anchor_frame; t <= stop; ++t) {
                    CHECK(runs[static_cast<size_t>(i)].trajectory.box_at(t) ==
                          runs[static_cast<size_t>(j)].trajectory.box_at(t));
                }
            }
        }
    }
}

TEST_CASE("backward anchors exactly at the last forward box and spans the window") {
    SynthSpec spec;
    spec.frame_count = 14;
    spec.texture_seed = 77;
    spec.seed = 77;
    spec.noise_sigma = 0.02;
    spec.waypoints = {{1, 50, 60}, {14, 63, 60}};
    const Sequence seq = generate_synth(spec);

    auto base = init_tracker(seq.frames[0], seq.ground_truth[0], TrackerKind::ncc);
    const WindowPlan plan = plan_window(1, seq.ground_truth[0], 3, 4, 14);
    const auto fwd = run_forward(*base, plan, seq.frames);
    const auto bwd = run_backward(fwd, plan, seq.frames);
    REQUIRE(bwd.size() == fwd.size());
    for (size_t i = 0; i < fwd.size(); ++i) {
        CHECK(bwd[i].box_at(plan.t2) == fwd[i].trajectory.box_at(plan.t2));
        CHECK(bwd[i].length() == plan.span() + 1);
        CHECK(fwd[i].trajectory.length() == plan.span() + 1);
        CHECK(bwd[i].frame_begin == plan.t2);
        CHECK(bwd[i].frame_end == plan.anchor_frame);
    }
}

TEST_CASE("static scene: backward retraces the forward trajectory") {
    SynthSpec spec;
    spec.frame_count = 10;
    spec.texture_seed = 88;
    spec.seed = 88;
    spec.waypoints = {{1, 60, 55}};
    const Sequence seq = generate_synth(spec);

    auto base = init_tracker(seq.frames[0], seq.ground_truth[0], TrackerKind::ncc);
    const WindowPlan plan = plan_window(1, seq.ground_truth[0], 2, 5, 10);
    const auto fwd = run_forward(*base, plan, seq.frames);
    const auto bwd = run_backward(fwd, plan, seq.frames);
    for (size_t i = 0; i < fwd.size(); ++i) {
        for (int t = plan.anchor_frame; t <= plan.t2; ++t) {
            CHECK(std::abs(fwd[i].trajectory.box_at(t).cx() - bwd[i].box_at(t).cx()) <= 0.5);
            CHECK(std::abs(fwd[i].trajectory.box_at(t).cy() - bwd[i].box_at(t).cy()) <= 0.5);
        }
    }
}

TEST_CASE("occlusion window: an early-stopped member returns to the anchor, the always-updating one drifts") {
    const Sequence seq = generate_synth(drift_spec(873));
    const BoundingBox init = seq.ground_truth[0];

    auto base = init_tracker(seq.frames[0], init, TrackerKind::ncc);
    const WindowPlan plan = plan_window(1, init, 4, 4, 18);  // stops at 5, 9, 13, never
    const auto fwd = run_forward(*base, plan, seq.frames);
    const auto bwd = run_backward(fwd, plan, seq.frames);

    const double early = iou(bwd[0].box_at(1), init);  // froze at 5, before the occlusion
    const double late = iou(bwd[3].box_at(1), init);   // updated through the occlusion
    CHECK(early > late);
    CHECK(early >= 0.5);
    CHECK(late < 0.3);
}

TEST_CASE("parallel ensemble execution is bit-identical to sequential") {
    const Sequence seq = generate_synth(drift_spec(606));
    auto base = init_tracker(seq.frames[0], seq.ground_truth[0], TrackerKind::ncc);
    const WindowPlan plan = plan_window(1, seq.ground_truth[0], 4, 4, 18);

    const auto seq_fwd = run_forward(*base, plan, seq.frames, 1);
    const auto par_fwd = run_forward(*base, plan, seq.frames, 4);
    REQUIRE(seq_fwd.size() == par_fwd.size());
    for (size_t i = 0; i < seq_fwd.size(); ++i) {
        CHECK(seq_fwd[i].trajectory.boxes == par_fwd[i].trajectory.boxes);
        CHECK(seq_fwd[i].end_state->serialize() == par_fwd[i].end_state->serialize());
    }
    const auto seq_bwd = run_backward(seq_fwd, plan, seq.frames, 1);
    const auto par_bwd = run_backward(par_fwd, plan, seq.frames, 4);
    for (size_t i = 0; i < seq_bwd.size(); ++i) CHECK(seq_bwd[i].boxes == par_bwd[i].boxes);
}

TEST_CASE("window debug dump emits one record per tracker") {
    const Sequence seq = generate_synth(drift_spec(707));
    auto base = init_tracker(seq.frames[0], seq.ground_truth[0], TrackerKind::ncc);
    const WindowPlan plan = plan_window(1, seq.ground_truth[0], 3, 4, 18);
    const auto fwd = run_forward(*base, plan, seq.frames);
    const auto bwd = run_backward(fwd, plan, seq.frames);

    std::ostringstream out;
    dump_window(out, plan, fwd, bwd);
    const std::string text = out.str();
    CHECK(std::count(text.begin(), text.end(), '\n') == 3);
    CHECK(text.find("\"stop_frame\":5") != std::string::npos);
    CHECK(text.find("\"stop_frame\":null") != std::string::npos);
    CHECK(text.find("\"forward\"") != std::string::npos);
    CHECK(text.find("\"backward\"") != std::string::npos);
}
