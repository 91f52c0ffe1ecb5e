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

#include <memory>
#include <string>

#include "mts/geometry.hpp"
#include "mts/util.hpp"

namespace mts {

enum class TrackerKind : uint8_t { ncc = 0, dcf = 1 };

TrackerKind tracker_kind_from_string(const std::string& s);
std::string to_string(TrackerKind kind);

struct NccParams {
    double eta = 0.1;       // template learning rate
    int search_radius = 0;  // 0: derived as round(0.5*max(w,h)) at init
    int patch_rows = 32;
    int patch_cols = 32;
};

struct DcfParams {
    double lambda = 1e-2;  // ridge regularizer
    double eta = 0.02;     // filter learning rate
    double padding = 2.0;  // search region scale relative to the box
    int grid_size = 64;    // FFT grid side, power of two
};

struct TrackerParams {
    NccParams ncc;
    DcfParams dcf;
};

/// The base-tracker contract the ensemble framework drives. A tracker owns a
/// snapshottable online model plus the box it last accepted; predict searches
/// near that box without mutating anything, update folds new appearance into
/// the model and accepts the box.
///
/// Thread contract: a tracker instance is confined to one logical thread at a
/// time but may be handed between threads; distinct instances can run fully
/// concurrently. Frames are shared read-only.
class Tracker {
public:
    virtual ~Tracker() = default;

    virtual TrackerKind kind() const = 0;

    /// Best-scoring box near current_box on this frame. Never mutates state;
    /// the returned box keeps the current box size.
    virtual BoundingBox predict(const Frame& frame) const = 0;

    /// Learns the appearance at (frame, box) and accepts box as the current
    /// location.
    virtual void update(const Frame& frame, const BoundingBox& box) = 0;

    /// Deep, fully independent duplicate.
    virtual std::unique_ptr<Tracker> snapshot() const = 0;

    const BoundingBox& current_box() const { return box_; }

    /// Moves the search anchor without touching the model. Framework
    /// plumbing: the backward pass starts each tracker from the last forward
    /// box regardless of where its last accepted update left it.
    void reanchor(const BoundingBox& box) { box_ = box; }

    /// Versioned binary state blob: magic, version, kind, box, model payload.
    std::vector<uint8_t> serialize() const;
    uint64_t state_hash() const;

protected:
    virtual void serialize_model(ByteWriter& w) const = 0;
    BoundingBox box_;
};

/// Learns a fresh tracker from scratch on (frame, box). Rejects degenerate
/// targets (area under 4 px).
std::unique_ptr<Tracker> init_tracker(const Frame& frame, const BoundingBox& box, TrackerKind kind,
                                      const TrackerParams& params = {});

/// Rebuilds a tracker from a serialize() blob.
std::unique_ptr<Tracker> deserialize_tracker(std::span<const uint8_t> blob);

/// Process-wide instrumentation of tracker work, for cost-model tests.
struct TrackerCallCounts {
    uint64_t predicts = 0;
    uint64_t updates = 0;
};
TrackerCallCounts tracker_call_counts();
void reset_tracker_call_counts();

namespace detail {
void note_predict();
void note_update();
}  // namespace detail

}  // namespace mts
