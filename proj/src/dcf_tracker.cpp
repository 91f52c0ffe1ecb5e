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

#include "mts/dcf_tracker.hpp"

#include <cmath>
#include <stdexcept>

namespace mts {

int wrap_offset(int index, int size) {
    return index > size / 2 ? index - size : index;
}

static std::vector<double> hann2d(int n) {
    std::vector<double> w1(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) w1[static_cast<size_t>(k)] = 0.5 * (1.0 - std::cos(2.0 * M_PI * k / (n - 1)));
    std::vector<double> w(static_cast<size_t>(n) * n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) w[static_cast<size_t>(r) * n + c] = w1[static_cast<size_t>(r)] * w1[static_cast<size_t>(c)];
    return w;
}

// Gaussian regression label with its peak at grid index (0,0) and circularly
// wrapped distances, so a zero displacement detects at index (0,0).
static std::vector<fft::cplx> gaussian_label_spectrum(int n, double sigma) {
    std::vector<double> y(static_cast<size_t>(n) * n);
    for (int r = 0; r < n; ++r) {
        const int dy = wrap_offset(r, n);
        for (int c = 0; c < n; ++c) {
            const int dx = wrap_offset(c, n);
            y[static_cast<size_t>(r) * n + c] =
                std::exp(-(static_cast<double>(dx) * dx + static_cast<double>(dy) * dy) / (2.0 * sigma * sigma));
        }
    }
    return fft::fft2(y, n, n);
}

DcfTracker::DcfTracker(const Frame& frame, const BoundingBox& box, const DcfParams& params) {
    if (!fft::is_power_of_two(params.grid_size)) throw std::invalid_argument("dcf: grid_size must be a power of two");
    if (params.padding <= 1.0) throw std::invalid_argument("dcf: padding must exceed 1");
    params_ = params;
    grid_ = params.grid_size;
    box_ = box;
    window_ = hann2d(grid_);
    // The box maps to grid/padding cells of the fixed grid; sigma follows the
    // sqrt(w*h)/16 rule in those units.
    const double mapped_side = static_cast<double>(grid_) / params_.padding;
    const double sigma = std::sqrt(mapped_side * mapped_side) / 16.0;
    label_ = gaussian_label_spectrum(grid_, sigma);
    train(frame, box, 1.0);
}

std::vector<double> DcfTracker::features(const Frame& frame, const BoundingBox& box) const {
    const double rw = box.w * params_.padding;
    const double rh = box.h * params_.padding;
    const BoundingBox region{box.cx() - rw / 2.0, box.cy() - rh / 2.0, rw, rh};
    const Patch p = extract_patch(frame, region, grid_, grid_);
    const double mean = p.mean();
    std::vector<double> f(p.data.size());
    for (size_t i = 0; i < f.size(); ++i) f[i] = (p.data[i] - mean) * window_[i];
    return f;
}

void DcfTracker::train(const Frame& frame, const BoundingBox& box, double eta) {
    const std::vector<fft::cplx> F = fft::fft2(features(frame, box), grid_, grid_);
    const size_t sz = F.size();
    if (A_.empty()) {
        A_.assign(sz, fft::cplx(0.0, 0.0));
        B_.assign(sz, 0.0);
        eta = 1.0;
    }
    for (size_t i = 0; i < sz; ++i) {
        A_[i] = (1.0 - eta) * A_[i] + eta * (label_[i] * std::conj(F[i]));
        B_[i] = (1.0 - eta) * B_[i] + eta * std::norm(F[i]);
    }
}

std::vector<double> DcfTracker::response_map(const Frame& frame, const BoundingBox& box) const {
    const std::vector<fft::cplx> Z = fft::fft2(features(frame, box), grid_, grid_);
    std::vector<fft::cplx> R(Z.size());
    for (size_t i = 0; i < Z.size(); ++i) {
        R[i] = (A_[i] / (B_[i] + params_.lambda)) * Z[i];
    }
    return fft::ifft2_real(std::move(R), grid_, grid_);
}

BoundingBox DcfTracker::predict(const Frame& frame) const {
    detail::note_predict();
    const std::vector<double> response = response_map(frame, box_);
    size_t peak = 0;
    for (size_t i = 1; i < response.size(); ++i) {
        if (response[i] > response[peak]) peak = i;
    }
    const int pr = static_cast<int>(peak) / grid_;
    const int pc = static_cast<int>(peak) % grid_;
    const double scale_x = box_.w * params_.padding / grid_;
    const double scale_y = box_.h * params_.padding / grid_;
    const double dx = wrap_offset(pc, grid_) * scale_x;
    const double dy = wrap_offset(pr, grid_) * scale_y;
    return box_.translated(dx, dy);
}

void DcfTracker::update(const Frame& frame, const BoundingBox& box) {
    detail::note_update();
    if (!box.valid()) throw std::invalid_argument("dcf update: invalid box");
    train(frame, box, params_.eta);
    box_ = box;
}

std::unique_ptr<Tracker> DcfTracker::snapshot() const {
    auto copy = std::unique_ptr<DcfTracker>(new DcfTracker());
    *copy = *this;
    return copy;
}

void DcfTracker::serialize_model(ByteWriter& w) const {
    w.put_f64(params_.lambda);
    w.put_f64(params_.eta);
    w.put_f64(params_.padding);
    w.put_i32(grid_);
    for (const fft::cplx& v : A_) {
        w.put_f64(v.real());
        w.put_f64(v.imag());
    }
    for (double v : B_) w.put_f64(v);
}

std::unique_ptr<DcfTracker> DcfTracker::deserialize_model(ByteReader& r, const BoundingBox& box) {
    auto t = std::unique_ptr<DcfTracker>(new DcfTracker());
    t->box_ = box;
    t->params_.lambda = r.get_f64();
    t->params_.eta = r.get_f64();
    t->params_.padding = r.get_f64();
    t->grid_ = r.get_i32();
    if (!fft::is_power_of_two(t->grid_)) throw std::runtime_error("dcf blob: bad grid size");
    t->params_.grid_size = t->grid_;
    const size_t sz = static_cast<size_t>(t->grid_) * t->grid_;
    t->A_.resize(sz);
    for (fft::cplx& v : t->A_) {
        const double re = r.get_f64();
        const double im = r.get_f64();
        v = fft::cplx(re, im);
    }
    t->B_.resize(sz);
    for (double& v : t->B_) v = r.get_f64();
    t->window_ = hann2d(t->grid_);
    const double mapped_side = static_cast<double>(t->grid_) / t->params_.padding;
    t->label_ = gaussian_label_spectrum(t->grid_, mapped_side / 16.0);
    return t;
}

}  // namespace mts
