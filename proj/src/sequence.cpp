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

#include "mts/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "mts/image_codec.hpp"
#include "mts/util.hpp"

namespace mts {

namespace fs = std::filesystem;

void Sequence::validate() const {
    if (frames.empty()) throw std::runtime_error("sequence '" + name + "': no frames");
    for (size_t i = 0; i < frames.size(); ++i) {
        if (frames[i].index != static_cast<int>(i) + 1)
            throw std::runtime_error("sequence '" + name + "': frame indices not contiguous from 1");
    }
    if (!ground_truth.empty() && ground_truth.size() != frames.size())
        throw std::runtime_error("sequence '" + name + "': ground truth count does not match frame count");
}

void SynthSpec::validate() const {
    if (width < 1 || height < 1) throw std::runtime_error("synth spec: image size must be positive");
    if (frame_count < 1) throw std::runtime_error("synth spec: frame count must be positive");
    if (target_w < 2 || target_h < 2) throw std::runtime_error("synth spec: target must be at least 2x2");
    if (noise_sigma < 0.0) throw std::runtime_error("synth spec: negative noise sigma");
    if (waypoints.empty()) throw std::runtime_error("synth spec: at least one waypoint required");
    for (size_t i = 1; i < waypoints.size(); ++i) {
        if (waypoints[i].frame <= waypoints[i - 1].frame)
            throw std::runtime_error("synth spec: waypoint frames must be strictly increasing");
    }
    for (const OcclusionInterval& o : occlusions) {
        if (o.first < 1 || o.last > frame_count || o.first > o.last)
            throw std::runtime_error("synth spec: occlusion interval outside [1, frames]");
        if (o.cover <= 0.0 || o.cover > 1.0) throw std::runtime_error("synth spec: occlusion cover must be in (0,1]");
    }
    for (const GainPoint& g : gains) {
        if (g.gain <= 0.0) throw std::runtime_error("synth spec: gain must be positive");
        if (g.frame < 1 || g.frame > frame_count) throw std::runtime_error("synth spec: gain frame outside [1, frames]");
    }
    if (!(bg_lo >= 0.0 && bg_lo < bg_hi && bg_hi <= 1.0))
        throw std::runtime_error("synth spec: background band must satisfy 0 <= lo < hi <= 1");
    if (!(target_lo >= 0.0 && target_lo < target_hi && target_hi <= 1.0))
        throw std::runtime_error("synth spec: target band must satisfy 0 <= lo < hi <= 1");
}

namespace {

// Seeded lattice value in [0, 1).
double lattice(uint64_t seed, int64_t ix, int64_t iy) {
    uint64_t z = seed + static_cast<uint64_t>(ix) * 0x9e3779b97f4a7c15ULL +
                 static_cast<uint64_t>(iy) * 0xc2b2ae3d27d4eb4fULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return static_cast<double>(z >> 11) * 0x1.0p-53;
}

// Smooth bilinear value noise at one lattice scale.
double value_noise(uint64_t seed, double x, double y, double cell) {
    const double gx = x / cell;
    const double gy = y / cell;
    const auto ix = static_cast<int64_t>(std::floor(gx));
    const auto iy = static_cast<int64_t>(std::floor(gy));
    double fx = gx - static_cast<double>(ix);
    double fy = gy - static_cast<double>(iy);
    fx = fx * fx * (3.0 - 2.0 * fx);
    fy = fy * fy * (3.0 - 2.0 * fy);
    const double v00 = lattice(seed, ix, iy);
    const double v01 = lattice(seed, ix + 1, iy);
    const double v10 = lattice(seed, ix, iy + 1);
    const double v11 = lattice(seed, ix + 1, iy + 1);
    const double top = v00 + fx * (v01 - v00);
    const double bot = v10 + fx * (v11 - v10);
    return top + fy * (bot - top);
}

double background_texture(const SynthSpec& spec, double x, double y) {
    const uint64_t seed = spec.texture_seed;
    const double n = 0.7 * value_noise(seed, x, y, 9.0) + 0.3 * value_noise(seed ^ 0x5bd1e995ULL, x, y, 3.5);
    return spec.bg_lo + n * (spec.bg_hi - spec.bg_lo);
}

double target_texture(const SynthSpec& spec, double u, double v) {
    // Distinct seed stream and finer cells than the background.
    const uint64_t s = spec.texture_seed ^ 0xa0761d6478bd642fULL;
    const double n = 0.6 * value_noise(s, u, v, 3.0) + 0.4 * value_noise(s ^ 0xe7037ed1a0b428dbULL, u, v, 1.5);
    // Stretch towards the full band for a high-contrast pattern.
    const double stretched = std::clamp(0.5 + 1.6 * (n - 0.5), 0.0, 1.0);
    return spec.target_lo + stretched * (spec.target_hi - spec.target_lo);
}

double interp_center(const std::vector<MotionWaypoint>& wps, int frame, bool horizontal) {
    const auto pick = [&](const MotionWaypoint& w) { return horizontal ? w.cx : w.cy; };
    if (frame <= wps.front().frame) return pick(wps.front());
    if (frame >= wps.back().frame) return pick(wps.back());
    for (size_t i = 1; i < wps.size(); ++i) {
        if (frame <= wps[i].frame) {
            const double f0 = wps[i - 1].frame;
            const double f1 = wps[i].frame;
            const double a = (frame - f0) / (f1 - f0);
            return pick(wps[i - 1]) + a * (pick(wps[i]) - pick(wps[i - 1]));
        }
    }
    return pick(wps.back());
}

double interp_gain(const std::vector<GainPoint>& gains, int frame) {
    if (gains.empty()) return 1.0;
    if (frame <= gains.front().frame) return gains.front().gain;
    if (frame >= gains.back().frame) return gains.back().gain;
    for (size_t i = 1; i < gains.size(); ++i) {
        if (frame <= gains[i].frame) {
            const double f0 = gains[i - 1].frame;
            const double f1 = gains[i].frame;
            const double a = (frame - f0) / (f1 - f0);
            return gains[i - 1].gain + a * (gains[i].gain - gains[i - 1].gain);
        }
    }
    return gains.back().gain;
}

}  // namespace

Sequence generate_synth(const SynthSpec& spec) {
    spec.validate();
    Sequence seq;
    seq.name = spec.name;
    seq.frames.reserve(static_cast<size_t>(spec.frame_count));
    seq.ground_truth.reserve(static_cast<size_t>(spec.frame_count));
    if (!spec.occlusions.empty()) seq.attributes.push_back("OCC");
    for (const GainPoint& g : spec.gains) {
        if (g.gain != 1.0) {
            seq.attributes.push_back("IV");
            break;
        }
    }

    for (int t = 1; t <= spec.frame_count; ++t) {
        const double cx = interp_center(spec.waypoints, t, true);
        const double cy = interp_center(spec.waypoints, t, false);
        const BoundingBox box{cx - spec.target_w / 2.0, cy - spec.target_h / 2.0,
                              static_cast<double>(spec.target_w), static_cast<double>(spec.target_h)};

        double cover = 0.0;
        for (const OcclusionInterval& o : spec.occlusions) {
            if (t >= o.first && t <= o.last) cover = std::max(cover, o.cover);
        }
        const double gain = interp_gain(spec.gains, t);

        Frame frame;
        frame.index = t;
        frame.image = Image(spec.height, spec.width);
        Rng noise(spec.seed ^ (0x9e3779b97f4a7c15ULL * static_cast<uint64_t>(t)));
        for (int r = 0; r < spec.height; ++r) {
            for (int c = 0; c < spec.width; ++c) {
                const double px = c + 0.5;
                const double py = r + 0.5;
                double v = background_texture(spec, px, py);
                const double u = px - box.x;
                const double w = py - box.y;
                if (u > 0.0 && u < box.w && w > 0.0 && w < box.h) {
                    // Top-down partial cover: the covered strip keeps showing
                    // the background texture.
                    if (w >= cover * box.h) v = target_texture(spec, u, w);
                }
                v *= gain;
                if (spec.noise_sigma > 0.0) v += spec.noise_sigma * noise.next_normal();
                frame.image.at(r, c) = static_cast<float>(std::clamp(v, 0.0, 1.0));
            }
        }
        seq.frames.push_back(std::move(frame));
        seq.ground_truth.push_back(box);
    }
    seq.validate();
    return seq;
}

SynthSpec SynthSpec::parse(const std::string& text) {
    SynthSpec spec;
    spec.waypoints.clear();
    bool have_waypoint = false;
    for (const KvEntry& e : parse_kv_text(text)) {
        const std::string ctx = "synth spec line " + std::to_string(e.line);
        if (e.key == "name") {
            spec.name = e.value;
        } else if (e.key == "width") {
            spec.width = parse_int(e.value, ctx);
        } else if (e.key == "height") {
            spec.height = parse_int(e.value, ctx);
        } else if (e.key == "frames") {
            spec.frame_count = parse_int(e.value, ctx);
        } else if (e.key == "target_w") {
            spec.target_w = parse_int(e.value, ctx);
        } else if (e.key == "target_h") {
            spec.target_h = parse_int(e.value, ctx);
        } else if (e.key == "texture_seed") {
            spec.texture_seed = static_cast<uint64_t>(std::stoull(e.value));
        } else if (e.key == "seed") {
            spec.seed = static_cast<uint64_t>(std::stoull(e.value));
        } else if (e.key == "noise_sigma") {
            spec.noise_sigma = parse_double(e.value, ctx);
        } else if (e.key == "bg_band") {
            const auto f = split_fields(e.value);
            if (f.size() != 2) throw std::runtime_error(ctx + ": bg_band needs lo,hi");
            spec.bg_lo = parse_double(f[0], ctx);
            spec.bg_hi = parse_double(f[1], ctx);
        } else if (e.key == "target_band") {
            const auto f = split_fields(e.value);
            if (f.size() != 2) throw std::runtime_error(ctx + ": target_band needs lo,hi");
            spec.target_lo = parse_double(f[0], ctx);
            spec.target_hi = parse_double(f[1], ctx);
        } else if (e.key == "waypoint") {
            const auto f = split_fields(e.value);
            if (f.size() != 3) throw std::runtime_error(ctx + ": waypoint needs frame,cx,cy");
            spec.waypoints.push_back({parse_int(f[0], ctx), parse_double(f[1], ctx), parse_double(f[2], ctx)});
            have_waypoint = true;
        } else if (e.key == "occlusion") {
            const auto f = split_fields(e.value);
            if (f.size() != 2 && f.size() != 3) throw std::runtime_error(ctx + ": occlusion needs first,last[,cover]");
            OcclusionInterval o;
            o.first = parse_int(f[0], ctx);
            o.last = parse_int(f[1], ctx);
            o.cover = f.size() == 3 ? parse_double(f[2], ctx) : 1.0;
            spec.occlusions.push_back(o);
        } else if (e.key == "gain") {
            const auto f = split_fields(e.value);
            if (f.size() != 2) throw std::runtime_error(ctx + ": gain needs frame,value");
            spec.gains.push_back({parse_int(f[0], ctx), parse_double(f[1], ctx)});
        } else {
            throw std::runtime_error(ctx + ": unknown key '" + e.key + "'");
        }
    }
    if (!have_waypoint) throw std::runtime_error("synth spec: at least one waypoint required");
    spec.validate();
    return spec;
}

SynthSpec SynthSpec::parse_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open synth spec: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

std::string SynthSpec::to_text() const {
    std::ostringstream out;
    out << "name = " << name << "\n";
    out << "width = " << width << "\n";
    out << "height = " << height << "\n";
    out << "frames = " << frame_count << "\n";
    out << "target_w = " << target_w << "\n";
    out << "target_h = " << target_h << "\n";
    out << "texture_seed = " << texture_seed << "\n";
    out << "seed = " << seed << "\n";
    out << "noise_sigma = " << noise_sigma << "\n";
    out << "bg_band = " << bg_lo << "," << bg_hi << "\n";
    out << "target_band = " << target_lo << "," << target_hi << "\n";
    for (const MotionWaypoint& w : waypoints) out << "waypoint = " << w.frame << "," << w.cx << "," << w.cy << "\n";
    for (const OcclusionInterval& o : occlusions)
        out << "occlusion = " << o.first << "," << o.last << "," << o.cover << "\n";
    for (const GainPoint& g : gains) out << "gain = " << g.frame << "," << g.gain << "\n";
    return out.str();
}

namespace {

std::vector<BoundingBox> parse_groundtruth(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("missing ground truth file: " + path.string());
    std::vector<BoundingBox> boxes;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
        const auto f = split_fields(line);
        const std::string ctx = path.filename().string() + " line " + std::to_string(lineno);
        if (f.size() != 4) throw std::runtime_error(ctx + ": expected 4 fields, got " + std::to_string(f.size()));
        BoundingBox b;
        b.x = parse_double(f[0], ctx);
        b.y = parse_double(f[1], ctx);
        b.w = parse_double(f[2], ctx);
        b.h = parse_double(f[3], ctx);
        if (!b.valid()) throw std::runtime_error(ctx + ": non-positive box size");
        boxes.push_back(b);
    }
    return boxes;
}

}  // namespace

Sequence load_otb(const fs::path& dir) {
    const fs::path img_dir = dir / "img";
    if (!fs::is_directory(img_dir)) throw std::runtime_error("missing image directory: " + img_dir.string());

    std::map<long, fs::path> numbered;
    for (const auto& entry : fs::directory_iterator(img_dir)) {
        if (!entry.is_regular_file()) continue;
        std::string ext = entry.path().extension().string();
        std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
        if (ext != ".jpg" && ext != ".jpeg" && ext != ".png") continue;
        const std::string stem = entry.path().stem().string();
        try {
            size_t pos = 0;
            const long num = std::stol(stem, &pos);
            if (pos != stem.size()) throw std::invalid_argument(stem);
            numbered[num] = entry.path();
        } catch (const std::exception&) {
            throw std::runtime_error("non-numeric frame filename: " + entry.path().string());
        }
    }
    if (numbered.empty()) throw std::runtime_error("no frames found under " + img_dir.string());

    Sequence seq;
    seq.name = dir.filename().string();
    if (seq.name.empty()) seq.name = dir.parent_path().filename().string();
    int index = 0;
    for (const auto& [num, path] : numbered) {
        Frame f;
        f.index = ++index;
        f.image = load_image(path);
        seq.frames.push_back(std::move(f));
    }

    // Ground truth is optional at load time; the CLI demands an explicit
    // init box when it is absent.
    if (fs::exists(dir / "groundtruth_rect.txt")) {
        seq.ground_truth = parse_groundtruth(dir / "groundtruth_rect.txt");
        if (seq.ground_truth.size() != seq.frames.size())
            throw std::runtime_error("sequence '" + seq.name + "': " + std::to_string(seq.frames.size()) +
                                     " frames but " + std::to_string(seq.ground_truth.size()) +
                                     " ground-truth lines");
    }

    const fs::path attrs = dir / "attrs.txt";
    if (fs::exists(attrs)) {
        std::ifstream in(attrs);
        std::string line;
        if (std::getline(in, line)) {
            for (const std::string& tag : split_fields(line)) seq.attributes.push_back(tag);
        }
    }
    seq.validate();
    return seq;
}

void export_otb(const Sequence& seq, const fs::path& dir) {
    seq.validate();
    fs::create_directories(dir / "img");
    char name[32];
    for (const Frame& f : seq.frames) {
        std::snprintf(name, sizeof name, "%04d.png", f.index);
        save_png(dir / "img" / name, f.image);
    }
    if (seq.has_ground_truth()) {
        std::ofstream out(dir / "groundtruth_rect.txt");
        if (!out) throw std::runtime_error("cannot write ground truth under " + dir.string());
        char line[160];
        for (const BoundingBox& b : seq.ground_truth) {
            std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g\n", b.x, b.y, b.w, b.h);
            out << line;
        }
    }
    if (!seq.attributes.empty()) {
        std::ofstream out(dir / "attrs.txt");
        for (size_t i = 0; i < seq.attributes.size(); ++i) out << (i ? "," : "") << seq.attributes[i];
        out << "\n";
    }
}

void save_result_boxes(const fs::path& path, std::span<const BoundingBox> boxes) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write results file: " + path.string());
    out << "# frame,x,y,w,h\n";
    char line[160];
    for (size_t i = 0; i < boxes.size(); ++i) {
        std::snprintf(line, sizeof line, "%zu,%.6g,%.6g,%.6g,%.6g\n", i + 1, boxes[i].x, boxes[i].y,
                      boxes[i].w, boxes[i].h);
        out << line;
    }
}

std::vector<BoundingBox> load_result_boxes(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open results file: " + path.string());
    std::vector<BoundingBox> boxes;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        const auto f = split_fields(line);
        const std::string ctx = path.filename().string() + " line " + std::to_string(lineno);
        if (f.size() != 5) throw std::runtime_error(ctx + ": expected 5 columns, got " + std::to_string(f.size()));
        const int frame = parse_int(f[0], ctx);
        if (frame != static_cast<int>(boxes.size()) + 1)
            throw std::runtime_error(ctx + ": frame indices must run 1..T without gaps");
        BoundingBox b;
        b.x = parse_double(f[1], ctx);
        b.y = parse_double(f[2], ctx);
        b.w = parse_double(f[3], ctx);
        b.h = parse_double(f[4], ctx);
        boxes.push_back(b);
    }
    return boxes;
}

}  // namespace mts
