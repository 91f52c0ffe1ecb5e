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

#include <optional>

#include "mts/tracker.hpp"

namespace mts {

/// Zero-normalized cross-correlation of two equal-size patches, clamped to
/// [-1, 1]. Empty when either patch has zero variance.
std::optional<double> zncc(const Patch& a, const Patch& b);

/// Template tracker: dense integer-translation search scored by ZNCC, with
/// convex template blending on update. Deliberately simple; it drifts under
/// occlusion, which is what the pacing framework is there to absorb.
class NccTracker final : public Tracker {
public:
    NccTracker(const Frame& frame, const BoundingBox& box, const NccParams& params);

    TrackerKind kind() const override { return TrackerKind::ncc; }
    BoundingBox predict(const Frame& frame) const override;
    void update(const Frame& frame, const BoundingBox& box) override;
    std::unique_ptr<Tracker> snapshot() const override;

    const Patch& tmpl() const { return template_; }
    int search_radius() const { return search_radius_; }
    double eta() const { return params_.eta; }

    static std::unique_ptr<NccTracker> deserialize_model(ByteReader& r, const BoundingBox& box);

protected:
    void serialize_model(ByteWriter& w) const override;

private:
    NccTracker() = default;

    NccParams params_;
    int search_radius_ = 0;
    Patch template_;
};

}  // namespace mts
