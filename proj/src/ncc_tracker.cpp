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

#include "mts/ncc_tracker.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mts {

static bool is_flat(const Patch& p) {
    const auto [lo, hi] = std::minmax_element(p.data.begin(), p.data.end());
    return *lo == *hi;
}

std::optional<double> zncc(const Patch& a, const Patch& b) {
    if (a.rows != b.rows || a.cols != b.cols) throw std::invalid_argument("zncc: patch size mismatch");
    if (is_flat(a) || is_flat(b)) return std::nullopt;  // zero variance: no score
    const double ma = a.mean();
    const double mb = b.mean();
    double num = 0.0, va = 0.0, vb = 0.0;
    for (size_t i = 0; i < a.data.size(); ++i) {
        const double da = a.data[i] - ma;
        const double db = b.data[i] - mb;
        num += da * db;
        va += da * da;
        vb += db * db;
    }
    if (va == 0.0 || vb == 0.0) return std::nullopt;
    const double score = num / std::sqrt(va * vb);
    return std::clamp(score, -1.0, 1.0);
}

NccTracker::NccTracker(const Frame& frame, const BoundingBox& box, const NccParams& params) {
    params_ = params;
    box_ = box;
    search_radius_ = params.search_radius > 0
                         ? params.search_radius
                         : static_cast<int>(std::lround(0.5 * std::max(box.w, box.h)));
    if (search_radius_ < 1) search_radius_ = 1;
    template_ = extract_patch(frame, box, params.patch_rows, params.patch_cols);
}

BoundingBox NccTracker::predict(const Frame& frame) const {
    detail::note_predict();
    const int R = search_radius_;
    double best = -std::numeric_limits<double>::infinity();
    int best_dx = 0, best_dy = 0;
    int best_manhattan = 0;
    bool found = false;

    // Row-major sweep; on equal score the smaller |dx|+|dy| wins, then the
    // earlier candidate in the sweep.
    for (int dy = -R; dy <= R; ++dy) {
        for (int dx = -R; dx <= R; ++dx) {
            const Patch cand =
                extract_patch(frame, box_.translated(dx, dy), params_.patch_rows, params_.patch_cols);
            const std::optional<double> score = zncc(template_, cand);
            if (!score) continue;  // flat candidate (or flat template): excluded
            const int manhattan = std::abs(dx) + std::abs(dy);
            if (!found || *score > best || (*score == best && manhattan < best_manhattan)) {
                found = true;
                best = *score;
                best_dx = dx;
                best_dy = dy;
                best_manhattan = manhattan;
            }
        }
    }
    if (!found) return box_;  // all candidates flat: stay put
    return box_.translated(best_dx, best_dy);
}

void NccTracker::update(const Frame& frame, const BoundingBox& box) {
    detail::note_update();
    if (!box.valid()) throw std::invalid_argument("ncc update: invalid box");
    const Patch patch = extract_patch(frame, box, params_.patch_rows, params_.patch_cols);
    const double eta = params_.eta;
    for (size_t i = 0; i < template_.data.size(); ++i) {
        template_.data[i] = (1.0 - eta) * template_.data[i] + eta * patch.data[i];
    }
    template_.source_box = box;
    box_ = box;
}

std::unique_ptr<Tracker> NccTracker::snapshot() const {
    auto copy = std::unique_ptr<NccTracker>(new NccTracker());
    *copy = *this;
    return copy;
}

void NccTracker::serialize_model(ByteWriter& w) const {
    w.put_f64(params_.eta);
    w.put_i32(search_radius_);
    w.put_i32(template_.rows);
    w.put_i32(template_.cols);
    for (double v : template_.data) w.put_f64(v);
    w.put_f64(template_.source_box.x);
    w.put_f64(template_.source_box.y);
    w.put_f64(template_.source_box.w);
    w.put_f64(template_.source_box.h);
}

std::unique_ptr<NccTracker> NccTracker::deserialize_model(ByteReader& r, const BoundingBox& box) {
    auto t = std::unique_ptr<NccTracker>(new NccTracker());
    t->box_ = box;
    t->params_.eta = r.get_f64();
    t->search_radius_ = r.get_i32();
    t->params_.search_radius = t->search_radius_;
    t->template_.rows = r.get_i32();
    t->template_.cols = r.get_i32();
    if (t->template_.rows < 1 || t->template_.cols < 1)
        throw std::runtime_error("ncc blob: bad template dimensions");
    t->params_.patch_rows = t->template_.rows;
    t->params_.patch_cols = t->template_.cols;
    t->template_.data.resize(static_cast<size_t>(t->template_.rows) * t->template_.cols);
    for (double& v : t->template_.data) v = r.get_f64();
    t->template_.source_box.x = r.get_f64();
    t->template_.source_box.y = r.get_f64();
    t->template_.source_box.w = r.get_f64();
    t->template_.source_box.h = r.get_f64();
    return t;
}

}  // namespace mts
