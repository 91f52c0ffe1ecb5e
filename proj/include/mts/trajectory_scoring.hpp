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

#include "mts/paced_window.hpp"

namespace mts {

/// Parameters of the trajectory robustness score.
struct ScoringParams {
    double sigma1 = 0.0;          // geometric bandwidth, px; <=0: 0.5*sqrt(w0*h0) of the initial box
    double sigma2 = 0.2;          // appearance bandwidth, intensity units
    double chi_cyclic = 1e6;      // weight of a cyclic trajectory pair
    double chi_noncyclic = 1.0;   // weight of a non-cyclic pair
    double theta_cyc = 0.5;       // IoU threshold of the cyclicity check
    int patch_rows = 32;
    int patch_cols = 32;
    std::vector<double> weight_mask;  // K, patch_rows*patch_cols, peak 1; empty: default Gaussian

    void validate() const;

    /// Fills defaults that depend on the initial target box.
    ScoringParams resolved(const BoundingBox& initial_box) const;

    const std::vector<double>& mask() const;
};

/// Centered 2-D Gaussian mask with sigma = half the patch side per axis,
/// peak-normalized to 1.
std::vector<double> gaussian_weight_mask(int rows, int cols);

/// Patches treated as trusted target appearance (the set the appearance
/// similarity compares against).
struct AppearanceSet {
    std::vector<Patch> patches;
};

/// Per-tracker trajectory-consistency scores over one window.
struct RobustnessReport {
    int tracker_index = 0;  // position in the ensemble, 0-based
    bool cyclic = false;
    int t1 = 0;
    int t2 = 0;
    std::vector<double> geo;  // per-frame geometric similarity over [t1, t2]
    std::vector<double> app;  // per-frame appearance similarity over [t1, t2]
    double psi = 0.0;

    std::string to_record() const;  // one-line JSON
};

/// A pair is cyclic when the backward box at the anchor frame overlaps the
/// trusted anchor box with IoU >= theta (inclusive).
bool check_cyclicity(const Trajectory& fwd, const Trajectory& bwd, double theta_cyc);

/// exp(-d^2 / sigma1^2) with d the distance between the two box centers.
double geometric_similarity(const BoundingBox& fwd_box, const BoundingBox& bwd_box, double sigma1);

/// exp(-sum_Q ||K (P - Q)||^2 / (4 w h sigma2^2)) where P is the patch under
/// `box` and (w, h) are the canonical patch dimensions.
double appearance_similarity(const Frame& frame, const BoundingBox& box, const AppearanceSet& set,
                             const ScoringParams& params);

RobustnessReport robustness_score(const Trajectory& fwd, const Trajectory& bwd,
                                  std::span<const Frame> frames, const AppearanceSet& set,
                                  const ScoringParams& params, int tracker_index = 0);

/// Index of the report with the highest psi; ties go to the largest index
/// (the most-updated tracker).
size_t select_best(const std::vector<RobustnessReport>& reports);

}  // namespace mts
