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

#include "mts/tracker.hpp"

#include <atomic>
#include <stdexcept>

#include "mts/dcf_tracker.hpp"
#include "mts/ncc_tracker.hpp"

namespace mts {

namespace {
constexpr uint32_t kStateMagic = 0x4d545353;  // "MTSS"
constexpr uint32_t kStateVersion = 1;

std::atomic<uint64_t> g_predicts{0};
std::atomic<uint64_t> g_updates{0};
}  // namespace

namespace detail {
void note_predict() { g_predicts.fetch_add(1, std::memory_order_relaxed); }
void note_update() { g_updates.fetch_add(1, std::memory_order_relaxed); }
}  // namespace detail

TrackerCallCounts tracker_call_counts() {
    return {g_predicts.load(), g_updates.load()};
}

void reset_tracker_call_counts() {
    g_predicts.store(0);
    g_updates.store(0);
}

TrackerKind tracker_kind_from_string(const std::string& s) {
    if (s == "ncc") return TrackerKind::ncc;
    if (s == "dcf") return TrackerKind::dcf;
    throw std::invalid_argument("unknown tracker kind: '" + s + "' (expected ncc or dcf)");
}

std::string to_string(TrackerKind kind) {
    return kind == TrackerKind::ncc ? "ncc" : "dcf";
}

std::vector<uint8_t> Tracker::serialize() const {
    ByteWriter w;
    w.put_u32(kStateMagic);
    w.put_u32(kStateVersion);
    w.put_u8(static_cast<uint8_t>(kind()));
    w.put_f64(box_.x);
    w.put_f64(box_.y);
    w.put_f64(box_.w);
    w.put_f64(box_.h);
    serialize_model(w);
    return w.take();
}

uint64_t Tracker::state_hash() const {
    const std::vector<uint8_t> blob = serialize();
    return fnv1a(std::span<const uint8_t>(blob.data(), blob.size()));
}

std::unique_ptr<Tracker> init_tracker(const Frame& frame, const BoundingBox& box, TrackerKind kind,
                                      const TrackerParams& params) {
    if (!box.valid() || box.area() < 4.0)
        throw std::invalid_argument("tracker init: degenerate target box (area under 4 px)");
    switch (kind) {
        case TrackerKind::ncc:
            return std::make_unique<NccTracker>(frame, box, params.ncc);
        case TrackerKind::dcf:
            return std::make_unique<DcfTracker>(frame, box, params.dcf);
    }
    throw std::invalid_argument("tracker init: unknown kind");
}

std::unique_ptr<Tracker> deserialize_tracker(std::span<const uint8_t> blob) {
    ByteReader r(blob);
    if (r.get_u32() != kStateMagic) throw std::runtime_error("tracker blob: bad magic");
    if (r.get_u32() != kStateVersion) throw std::runtime_error("tracker blob: unsupported version");
    const auto kind = static_cast<TrackerKind>(r.get_u8());
    BoundingBox box;
    box.x = r.get_f64();
    box.y = r.get_f64();
    box.w = r.get_f64();
    box.h = r.get_f64();
    std::unique_ptr<Tracker> t;
    switch (kind) {
        case TrackerKind::ncc:
            t = NccTracker::deserialize_model(r, box);
            break;
        case TrackerKind::dcf:
            t = DcfTracker::deserialize_model(r, box);
            break;
        default:
            throw std::runtime_error("tracker blob: unknown kind tag");
    }
    if (!r.exhausted()) throw std::runtime_error("tracker blob: trailing bytes");
    return t;
}

}  // namespace mts
