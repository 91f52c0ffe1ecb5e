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

#include "mts/trajectory_scoring.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <json.hpp>

namespace mts {

void ScoringParams::validate() const {
    if (sigma1 <= 0.0) throw std::invalid_argument("scoring: sigma1 must be positive");
    if (sigma2 <= 0.0) throw std::invalid_argument("scoring: sigma2 must be positive");
    if (!(chi_cyclic > chi_noncyclic && chi_noncyclic > 0.0))
        throw std::invalid_argument("scoring: need chi_cyclic > chi_noncyclic > 0");
    if (!(theta_cyc > 0.0 && theta_cyc < 1.0)) throw std::invalid_argument("scoring: theta_cyc must be in (0,1)");
    if (patch_rows < 1 || patch_cols < 1) throw std::invalid_argument("scoring: bad patch dimensions");
    if (!weight_mask.empty() && weight_mask.size() != static_cast<size_t>(patch_rows) * patch_cols)
        throw std::invalid_argument("scoring: weight mask does not match patch dimensions");
}

ScoringParams ScoringParams::resolved(const BoundingBox& initial_box) const {
    ScoringParams p = *this;
    if (p.sigma1 <= 0.0) p.sigma1 = 0.5 * std::sqrt(initial_box.w * initial_box.h);
    if (p.weight_mask.empty()) p.weight_mask = gaussian_weight_mask(p.patch_rows, p.patch_cols);
    p.validate();
    return p;
}

const std::vector<double>& ScoringParams::mask() const {
    if (weight_mask.empty()) throw std::logic_error("scoring: params not resolved (empty weight mask)");
    return weight_mask;
}

std::vector<double> gaussian_weight_mask(int rows, int cols) {
    std::vector<double> mask(static_cast<size_t>(rows) * cols);
    const double cr = (rows - 1) / 2.0;
    const double cc = (cols - 1) / 2.0;
    const double sr = 0.5 * rows;
    const double sc = 0.5 * cols;
    double peak = 0.0;
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            const double dr = (r - cr) / sr;
            const double dc = (c - cc) / sc;
            const double v = std::exp(-0.5 * (dr * dr + dc * dc));
            mask[static_cast<size_t>(r) * cols + c] = v;
            peak = std::max(peak, v);
        }
    }
    for (double& v : mask) v /= peak;  // peak-normalized to exactly 1
    return mask;
}

bool check_cyclicity(const Trajectory& fwd, const Trajectory& bwd, double theta_cyc) {
    if (fwd.direction != TrackDirection::forward || bwd.direction != TrackDirection::backward)
        throw std::invalid_argument("cyclicity: trajectory directions do not match");
    if (fwd.frame_begin != bwd.frame_end || fwd.frame_end != bwd.frame_begin)
        throw std::invalid_argument("cyclicity: trajectory frame ranges do not match");
    const int anchor = fwd.frame_begin;
    return iou(bwd.box_at(anchor), fwd.box_at(anchor)) >= theta_cyc;
}

double geometric_similarity(const BoundingBox& fwd_box, const BoundingBox& bwd_box, double sigma1) {
    const double d = center_distance(fwd_box, bwd_box);
    // Keep the score strictly positive even where exp underflows.
    return std::max(std::exp(-(d * d) / (sigma1 * sigma1)), std::numeric_limits<double>::min());
}

double appearance_similarity(const Frame& frame, const BoundingBox& box, const AppearanceSet& set,
                             const ScoringParams& params) {
    if (set.patches.empty()) throw std::invalid_argument("appearance: empty appearance set");
    const std::vector<double>& mask = params.mask();
    const Patch p = extract_patch(frame, box, params.patch_rows, params.patch_cols);

    double energy = 0.0;
    for (const Patch& q : set.patches) {
        if (q.rows != p.rows || q.cols != p.cols)
            throw std::invalid_argument("appearance: patch in set has wrong dimensions");
        for (size_t i = 0; i < p.data.size(); ++i) {
            const double r = mask[i] * (p.data[i] - q.data[i]);
            energy += r * r;
        }
    }
    const double wh = static_cast<double>(params.patch_rows) * params.patch_cols;
    return std::max(std::exp(-energy / (4.0 * wh * params.sigma2 * params.sigma2)),
                    std::numeric_limits<double>::min());
}

RobustnessReport robustness_score(const Trajectory& fwd, const Trajectory& bwd,
                                  std::span<const Frame> frames, const AppearanceSet& set,
                                  const ScoringParams& params, int tracker_index) {
    RobustnessReport rep;
    rep.tracker_index = tracker_index;
    rep.cyclic = check_cyclicity(fwd, bwd, params.theta_cyc);
    rep.t1 = fwd.frame_begin + 1;
    rep.t2 = fwd.frame_end;
    rep.geo.reserve(static_cast<size_t>(rep.t2 - rep.t1 + 1));
    rep.app.reserve(rep.geo.capacity());

    double sum = 0.0;
    for (int t = rep.t1; t <= rep.t2; ++t) {
        const double geo = geometric_similarity(fwd.box_at(t), bwd.box_at(t), params.sigma1);
        const double app = appearance_similarity(frame_at(frames, t), bwd.box_at(t), set, params);
        rep.geo.push_back(geo);
        rep.app.push_back(app);
        sum += geo * app;
    }
    rep.psi = (rep.cyclic ? params.chi_cyclic : params.chi_noncyclic) * sum;
    return rep;
}

size_t select_best(const std::vector<RobustnessReport>& reports) {
    if (reports.empty()) throw std::invalid_argument("select_best: no reports");
    size_t best = 0;
    for (size_t i = 1; i < reports.size(); ++i) {
        if (reports[i].psi >= reports[best].psi) best = i;  // ties go to the larger index
    }
    return best;
}

std::string RobustnessReport::to_record() const {
    nlohmann::json rec;
    rec["tracker"] = tracker_index + 1;
    rec["cyclic"] = cyclic;
    rec["t1"] = t1;
    rec["t2"] = t2;
    rec["geo"] = geo;
    rec["app"] = app;
    rec["psi"] = psi;
    return rec.dump();
}

}  // namespace mts
