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

#include <cmath>
#include <cstdint>
#include <cstring>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mts {

/// Deterministic PRNG (splitmix64 core). Identical sequences on every
/// platform, unlike the standard library distributions.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next_u64() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    /// Uniform integer in [lo, hi] inclusive.
    int uniform_int(int lo, int hi) {
        return lo + static_cast<int>(next_u64() % static_cast<uint64_t>(hi - lo + 1));
    }

    /// Standard normal via Box-Muller.
    double next_normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = next_double();
        double u2 = next_double();
        while (u1 <= 0.0) u1 = next_double();
        const double mag = std::sqrt(-2.0 * std::log(u1));
        spare_ = mag * std::sin(2.0 * M_PI * u2);
        have_spare_ = true;
        return mag * std::cos(2.0 * M_PI * u2);
    }

private:
    uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

/// FNV-1a over an arbitrary byte span.
uint64_t fnv1a(std::span<const uint8_t> bytes);
uint64_t fnv1a(const std::string& s);

/// Little-endian binary writer for state blobs.
class ByteWriter {
public:
    void put_u8(uint8_t v) { buf_.push_back(v); }
    void put_u32(uint32_t v) { put_raw(&v, sizeof v); }
    void put_i32(int32_t v) { put_raw(&v, sizeof v); }
    void put_u64(uint64_t v) { put_raw(&v, sizeof v); }
    void put_f64(double v) { put_raw(&v, sizeof v); }
    const std::vector<uint8_t>& bytes() const { return buf_; }
    std::vector<uint8_t> take() { return std::move(buf_); }

private:
    void put_raw(const void* p, size_t n) {
        const auto* c = static_cast<const uint8_t*>(p);
        buf_.insert(buf_.end(), c, c + n);
    }
    std::vector<uint8_t> buf_;
};

class ByteReader {
public:
    explicit ByteReader(std::span<const uint8_t> bytes) : buf_(bytes) {}
    uint8_t get_u8() { return get<uint8_t>(); }
    uint32_t get_u32() { return get<uint32_t>(); }
    int32_t get_i32() { return get<int32_t>(); }
    uint64_t get_u64() { return get<uint64_t>(); }
    double get_f64() { return get<double>(); }
    bool exhausted() const { return pos_ == buf_.size(); }

private:
    template <typename T>
    T get() {
        if (pos_ + sizeof(T) > buf_.size()) throw std::out_of_range("ByteReader: truncated blob");
        T v;
        std::memcpy(&v, buf_.data() + pos_, sizeof(T));
        pos_ += sizeof(T);
        return v;
    }
    std::span<const uint8_t> buf_;
    size_t pos_ = 0;
};

/// Runs fn(i) for i in [0, count) on up to `threads` worker threads.
/// Tasks must be independent; the first exception is rethrown after join.
void parallel_for(int count, int threads, const std::function<void(int)>& fn);

/// One `key = value` line of a config file, with its 1-based line number.
struct KvEntry {
    std::string key;
    std::string value;
    int line = 0;
};

/// Parses structured key-value text: one `key = value` per line, '#'
/// comments, blank lines ignored. Repeated keys are preserved in order.
std::vector<KvEntry> parse_kv_text(const std::string& text);
std::vector<KvEntry> parse_kv_file(const std::string& path);

/// Splits a comma/tab/space separated value list.
std::vector<std::string> split_fields(const std::string& line);

double parse_double(const std::string& s, const std::string& context);
int parse_int(const std::string& s, const std::string& context);

}  // namespace mts
