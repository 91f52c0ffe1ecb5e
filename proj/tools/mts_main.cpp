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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "mts/evaluation.hpp"
#include "mts/image_codec.hpp"
#include "mts/pipeline.hpp"
#include "mts/sequence.hpp"

namespace fs = std::filesystem;

namespace {

constexpr const char* kVersion = "mts 1.0.0";

struct CommonOpts {
    std::string seq_dir;
    std::string synth_spec;
    std::string out_dir;
    std::string init_box;     // "x,y,w,h" when no ground truth is available
    std::string kind = "ncc";
    int n = 8;
    int tau = 0;              // 0: per-kind default
    double ncc_eta = 0.1;
    int search_radius = 0;
    double dcf_eta = 0.02;
    double lambda = 1e-2;
    double padding = 2.0;
    double sigma1 = 0.0;
    double sigma2 = 0.2;
    double theta_cyc = 0.5;
    double chi_cyclic = 1e6;
    double chi_noncyclic = 1.0;
    bool append_appearance = false;
    int jobs = 0;             // 0: hardware concurrency
    bool overlay = false;
    bool dump_windows = false;
};

fs::path default_out_root() {
    if (const char* root = std::getenv("MTS_OUT_ROOT")) return root;
    return "out";
}

void add_tracker_flags(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--kind", o.kind, "Base tracker: ncc or dcf")->check(CLI::IsMember({"ncc", "dcf"}));
    cmd->add_option("--eta", o.ncc_eta, "NCC template learning rate");
    cmd->add_option("--search-radius", o.search_radius, "NCC search radius in px (0: half the box side)");
    cmd->add_option("--dcf-eta", o.dcf_eta, "DCF filter learning rate");
    cmd->add_option("--lambda", o.lambda, "DCF ridge regularizer");
    cmd->add_option("--padding", o.padding, "DCF search region scale");
}

void add_mts_flags(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--n", o.n, "Ensemble size");
    cmd->add_option("--tau", o.tau, "Interval length in frames (0: 10 for ncc, 20 for dcf)");
    cmd->add_option("--sigma1", o.sigma1, "Geometric bandwidth in px (0: scale with the initial box)");
    cmd->add_option("--sigma2", o.sigma2, "Appearance bandwidth");
    cmd->add_option("--theta", o.theta_cyc, "Cyclicity IoU threshold");
    cmd->add_option("--chi-cyclic", o.chi_cyclic, "Weight of cyclic trajectories");
    cmd->add_option("--chi-noncyclic", o.chi_noncyclic, "Weight of non-cyclic trajectories");
    cmd->add_flag("--append-appearance", o.append_appearance,
                  "Grow the appearance set with each window's selected patch");
    cmd->add_flag("--dump-windows", o.dump_windows,
                  "Write per-window forward/backward trajectories (JSON lines)");
}

void add_io_flags(CLI::App* cmd, CommonOpts& o, bool need_seq = true) {
    if (need_seq) {
        cmd->add_option("--seq", o.seq_dir, "Sequence directory (OTB layout)");
        cmd->add_option("--synth-spec", o.synth_spec, "Synthetic sequence spec file (alternative to --seq)");
        cmd->add_option("--init", o.init_box, "Init box x,y,w,h (required when the sequence has no ground truth)");
    }
    cmd->add_option("--out", o.out_dir, "Output directory");
    cmd->add_option("--jobs", o.jobs, "Worker threads (0: hardware concurrency)");
}

int resolve_jobs(int jobs) {
    if (jobs > 0) return jobs;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

mts::MtsConfig build_config(const CommonOpts& o) {
    mts::MtsConfig cfg;
    cfg.base_kind = mts::tracker_kind_from_string(o.kind);
    cfg.n = o.n;
    cfg.tau = o.tau;
    cfg.tracker.ncc.eta = o.ncc_eta;
    cfg.tracker.ncc.search_radius = o.search_radius;
    cfg.tracker.dcf.eta = o.dcf_eta;
    cfg.tracker.dcf.lambda = o.lambda;
    cfg.tracker.dcf.padding = o.padding;
    cfg.scoring.sigma1 = o.sigma1;
    cfg.scoring.sigma2 = o.sigma2;
    cfg.scoring.theta_cyc = o.theta_cyc;
    cfg.scoring.chi_cyclic = o.chi_cyclic;
    cfg.scoring.chi_noncyclic = o.chi_noncyclic;
    cfg.append_selected_patch = o.append_appearance;
    cfg.parallelism = resolve_jobs(o.jobs);
    cfg.validate();
    return cfg;
}

mts::Sequence load_sequence(const CommonOpts& o) {
    if (!o.seq_dir.empty() && !o.synth_spec.empty())
        throw std::runtime_error("cli: give either --seq or --synth-spec, not both");
    if (!o.seq_dir.empty()) return mts::load_otb(o.seq_dir);
    if (!o.synth_spec.empty()) return mts::generate_synth(mts::SynthSpec::parse_file(o.synth_spec));
    throw std::runtime_error("cli: a sequence is required (--seq or --synth-spec)");
}

mts::BoundingBox resolve_init_box(const mts::Sequence& seq, const CommonOpts& o) {
    if (!o.init_box.empty()) {
        const auto f = mts::split_fields(o.init_box);
        if (f.size() != 4) throw std::runtime_error("cli: --init needs x,y,w,h");
        mts::BoundingBox b{mts::parse_double(f[0], "--init"), mts::parse_double(f[1], "--init"),
                           mts::parse_double(f[2], "--init"), mts::parse_double(f[3], "--init")};
        if (!b.valid()) throw std::runtime_error("cli: --init box must have positive size");
        return b;
    }
    if (seq.has_ground_truth()) return seq.ground_truth.front();
    throw std::runtime_error("cli: sequence has no ground truth; pass --init x,y,w,h");
}

uint64_t file_hash(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) return 0;
    std::vector<uint8_t> bytes{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    return mts::fnv1a(std::span<const uint8_t>(bytes.data(), bytes.size()));
}

// Full resolved configuration, reloadable with --config. Input hashes and
// the tool version ride along as comments.
void write_manifest(const CLI::App& app, const CommonOpts& o, const fs::path& out_dir) {
    std::ofstream out(out_dir / "manifest.cfg");
    out << "# " << kVersion << "\n";
    if (!o.seq_dir.empty()) {
        out << "# input_hash groundtruth_rect.txt=" << std::hex
            << file_hash(fs::path(o.seq_dir) / "groundtruth_rect.txt") << std::dec << "\n";
        const fs::path img = fs::path(o.seq_dir) / "img";
        if (fs::is_directory(img)) {
            std::vector<fs::path> files;
            for (const auto& e : fs::directory_iterator(img)) files.push_back(e.path());
            std::sort(files.begin(), files.end());
            if (!files.empty()) {
                out << "# input_hash first_frame=" << std::hex << file_hash(files.front()) << std::dec << "\n";
                out << "# input_hash last_frame=" << std::hex << file_hash(files.back()) << std::dec << "\n";
            }
        }
    }
    if (!o.synth_spec.empty()) {
        out << "# input_hash synth_spec=" << std::hex << file_hash(o.synth_spec) << std::dec << "\n";
    }
    out << app.config_to_str(true, false);
}

void write_overlays(const mts::Sequence& seq, const mts::TrackingResult& result, const fs::path& dir) {
    fs::create_directories(dir);
    char name[32];
    for (const mts::Frame& f : seq.frames) {
        const mts::Image img = mts::draw_box(f.image, result.box_at(f.index));
        std::snprintf(name, sizeof name, "%04d.png", f.index);
        mts::save_png(dir / name, img);
    }
}

int cmd_track(const CLI::App& app, const CommonOpts& o, bool baseline) {
    const mts::Sequence seq = load_sequence(o);
    const mts::BoundingBox init = resolve_init_box(seq, o);
    const mts::MtsConfig cfg = build_config(o);

    const fs::path out_dir = o.out_dir.empty()
                                 ? default_out_root() / (baseline ? "baseline" : "track") / seq.name
                                 : fs::path(o.out_dir);
    fs::create_directories(out_dir);

    mts::MtsConfig run_cfg = cfg;
    if (!baseline && o.dump_windows) run_cfg.window_dump_path = (out_dir / "windows.jsonl").string();
    const mts::TrackingResult result = baseline
                                           ? mts::run_baseline(seq.frames, init, cfg.base_kind, cfg.tracker)
                                           : mts::run_mts(seq.frames, init, run_cfg);

    mts::save_result_boxes(out_dir / "results.csv", result.boxes);
    if (!baseline) mts::save_diagnostics((out_dir / "diagnostics.jsonl").string(), result);
    write_manifest(app, o, out_dir);
    if (o.overlay) write_overlays(seq, result, out_dir / "overlay");

    if (seq.has_ground_truth()) {
        const mts::EvalReport report = mts::evaluate_ope(result, seq.ground_truth, seq.name, seq.attributes);
        std::cout << seq.name << ": PR=" << report.pr << " SR=" << report.sr << "\n";
    }
    std::cout << "results written to " << out_dir << "\n";
    return 0;
}

int cmd_synth(const CLI::App& app, const CommonOpts& o, const std::string& spec_path) {
    const mts::SynthSpec spec = mts::SynthSpec::parse_file(spec_path);
    const mts::Sequence seq = mts::generate_synth(spec);
    const fs::path out_dir = o.out_dir.empty() ? default_out_root() / "synth" : fs::path(o.out_dir);
    mts::export_otb(seq, out_dir / spec.name);
    write_manifest(app, o, out_dir / spec.name);
    std::cout << "sequence '" << spec.name << "' (" << seq.frame_count() << " frames) written to "
              << out_dir / spec.name << "\n";
    return 0;
}

int cmd_eval(const CommonOpts& o, const std::string& result_path) {
    const mts::Sequence seq = load_sequence(o);
    if (!seq.has_ground_truth()) throw std::runtime_error("eval: sequence has no ground truth");
    const auto boxes = mts::load_result_boxes(result_path);
    if (boxes.size() != static_cast<size_t>(seq.frame_count()))
        throw std::runtime_error("eval: result length does not match the sequence");

    mts::TrackingResult result;
    result.boxes = boxes;
    const mts::EvalReport report = mts::evaluate_ope(result, seq.ground_truth, seq.name, seq.attributes);

    const fs::path out_dir = o.out_dir.empty() ? default_out_root() / "eval" / seq.name : fs::path(o.out_dir);
    fs::create_directories(out_dir);
    mts::write_eval_report(out_dir / "report.csv", report);
    mts::emit_plots({{seq.name, report}}, out_dir);
    std::cout << seq.name << ": PR=" << report.pr << " SR=" << report.sr << "\n";
    return 0;
}

std::vector<fs::path> sequence_dirs(const std::string& root) {
    std::vector<fs::path> dirs;
    for (const auto& entry : fs::directory_iterator(root)) {
        if (entry.is_directory() && fs::exists(entry.path() / "groundtruth_rect.txt")) dirs.push_back(entry.path());
    }
    std::sort(dirs.begin(), dirs.end());
    if (dirs.empty()) throw std::runtime_error("no sequences found under " + root);
    return dirs;
}

int cmd_compare(const CLI::App& app, const CommonOpts& o, const std::string& seqs_root) {
    const mts::MtsConfig cfg = build_config(o);
    std::vector<mts::SequenceEval> mts_evals, base_evals;
    for (const fs::path& dir : sequence_dirs(seqs_root)) {
        const mts::Sequence seq = mts::load_otb(dir);
        const mts::BoundingBox init = seq.ground_truth.front();
        const mts::TrackingResult wrapped = mts::run_mts(seq.frames, init, cfg);
        const mts::TrackingResult plain = mts::run_baseline(seq.frames, init, cfg.base_kind, cfg.tracker);
        mts_evals.push_back(mts::evaluate_sequence(seq.name, seq.attributes, wrapped.boxes, seq.ground_truth));
        base_evals.push_back(mts::evaluate_sequence(seq.name, seq.attributes, plain.boxes, seq.ground_truth));
        std::cout << seq.name << ": mts PR=" << mts_evals.back().pr << " SR=" << mts_evals.back().sr
                  << " | base PR=" << base_evals.back().pr << " SR=" << base_evals.back().sr << "\n";
    }
    const mts::EvalReport mts_report = mts::combine_evals(std::move(mts_evals));
    const mts::EvalReport base_report = mts::combine_evals(std::move(base_evals));
    const mts::ComparisonRecord rec = mts::compare(mts_report, base_report);

    const std::string base_label = o.kind;
    const std::string mts_label = "MTS+" + o.kind;
    const std::string table = mts::format_comparison(rec, base_label, mts_label);
    std::cout << table;

    const fs::path out_dir = o.out_dir.empty() ? default_out_root() / "compare" : fs::path(o.out_dir);
    fs::create_directories(out_dir);
    std::ofstream(out_dir / "comparison.txt") << table;
    mts::write_eval_report(out_dir / "report_mts.csv", mts_report);
    mts::write_eval_report(out_dir / "report_base.csv", base_report);
    mts::emit_plots({{mts_label, mts_report}, {base_label, base_report}}, out_dir);
    write_manifest(app, o, out_dir);
    return 0;
}

int cmd_calibrate(const CommonOpts& o, const std::string& seqs_root, std::vector<double> sigma1_grid,
                  std::vector<double> sigma2_grid, std::vector<double> theta_grid) {
    if (sigma1_grid.empty()) sigma1_grid = {0.0};
    if (sigma2_grid.empty()) sigma2_grid = {0.1, 0.2, 0.4};
    if (theta_grid.empty()) theta_grid = {0.3, 0.5, 0.7};

    std::vector<mts::Sequence> seqs;
    for (const fs::path& dir : sequence_dirs(seqs_root)) seqs.push_back(mts::load_otb(dir));

    const fs::path out_dir = o.out_dir.empty() ? default_out_root() / "calibrate" : fs::path(o.out_dir);
    fs::create_directories(out_dir);
    std::ofstream report(out_dir / "calibration.csv");
    report << "sigma1,sigma2,theta,mean_sr\n";

    double best_sr = -1.0;
    double best[3] = {0, 0, 0};
    for (double s1 : sigma1_grid) {
        for (double s2 : sigma2_grid) {
            for (double th : theta_grid) {
                CommonOpts trial = o;
                trial.sigma1 = s1;
                trial.sigma2 = s2;
                trial.theta_cyc = th;
                const mts::MtsConfig cfg = build_config(trial);
                double mean_sr = 0.0;
                for (const mts::Sequence& seq : seqs) {
                    const mts::TrackingResult r = mts::run_mts(seq.frames, seq.ground_truth.front(), cfg);
                    mean_sr += mts::evaluate_sequence(seq.name, seq.attributes, r.boxes, seq.ground_truth).sr;
                }
                mean_sr /= static_cast<double>(seqs.size());
                char line[96];
                std::snprintf(line, sizeof line, "%.6g,%.6g,%.6g,%.6g\n", s1, s2, th, mean_sr);
                report << line;
                std::cout << "sigma1=" << s1 << " sigma2=" << s2 << " theta=" << th << " mean SR=" << mean_sr
                          << "\n";
                if (mean_sr > best_sr) {
                    best_sr = mean_sr;
                    best[0] = s1;
                    best[1] = s2;
                    best[2] = th;
                }
            }
        }
    }
    std::ofstream suggested(out_dir / "suggested.cfg");
    suggested << "sigma1=" << best[0] << "\nsigma2=" << best[1] << "\ntheta=" << best[2] << "\n";
    std::cout << "best: sigma1=" << best[0] << " sigma2=" << best[1] << " theta=" << best[2] << " (mean SR "
              << best_sr << ")\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Update-pacing tracker ensemble: paced updates plus forward/backward trajectory selection"};
    app.set_version_flag("--version", kVersion);
    app.set_config("--config", "", "Read options from a config file (a run manifest reruns that run)");
    app.require_subcommand(1);

    CommonOpts o;
    std::string spec_path, result_path, seqs_root;
    std::vector<double> sigma1_grid, sigma2_grid, theta_grid;

    CLI::App* track = app.add_subcommand("track", "Run the paced-ensemble tracker over a sequence");
    track->option_defaults()->always_capture_default(true);
    add_io_flags(track, o);
    add_tracker_flags(track, o);
    add_mts_flags(track, o);
    track->add_flag("--overlay", o.overlay, "Write per-frame overlay images with the predicted box");
    track->configurable();

    CLI::App* baseline = app.add_subcommand("baseline", "Run the plain always-update base tracker");
    baseline->option_defaults()->always_capture_default(true);
    add_io_flags(baseline, o);
    add_tracker_flags(baseline, o);
    baseline->add_flag("--overlay", o.overlay, "Write per-frame overlay images with the predicted box");
    baseline->configurable();

    CLI::App* synth = app.add_subcommand("synth", "Materialize a synthetic sequence in OTB layout");
    synth->option_defaults()->always_capture_default(true);
    synth->add_option("--spec", spec_path, "Synthetic sequence spec file")->required();
    add_io_flags(synth, o, false);
    synth->configurable();

    CLI::App* eval = app.add_subcommand("eval", "Evaluate a results file against ground truth (OPE)");
    eval->option_defaults()->always_capture_default(true);
    add_io_flags(eval, o);
    eval->add_option("--result", result_path, "Results CSV from track/baseline")->required();

    CLI::App* comp = app.add_subcommand("compare", "Run wrapped and plain arms over a sequence set");
    comp->option_defaults()->always_capture_default(true);
    comp->add_option("--seqs", seqs_root, "Directory of OTB-layout sequences")->required();
    add_io_flags(comp, o, false);
    add_tracker_flags(comp, o);
    add_mts_flags(comp, o);
    comp->configurable();

    CLI::App* calib = app.add_subcommand("calibrate", "Grid-search scoring parameters on a sequence set");
    calib->option_defaults()->always_capture_default(true);
    calib->add_option("--seqs", seqs_root, "Directory of OTB-layout sequences")->required();
    add_io_flags(calib, o, false);
    add_tracker_flags(calib, o);
    add_mts_flags(calib, o);
    calib->add_option("--sigma1-grid", sigma1_grid, "Candidate sigma1 values");
    calib->add_option("--sigma2-grid", sigma2_grid, "Candidate sigma2 values");
    calib->add_option("--theta-grid", theta_grid, "Candidate theta values");

    CLI11_PARSE(app, argc, argv);

    try {
        if (track->parsed()) return cmd_track(app, o, false);
        if (baseline->parsed()) return cmd_track(app, o, true);
        if (synth->parsed()) return cmd_synth(app, o, spec_path);
        if (eval->parsed()) return cmd_eval(o, result_path);
        if (comp->parsed()) return cmd_compare(app, o, seqs_root);
        if (calib->parsed()) return cmd_calibrate(o, seqs_root, sigma1_grid, sigma2_grid, theta_grid);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
