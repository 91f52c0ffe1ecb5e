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

#include "mts/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "mts/util.hpp"

namespace mts {

namespace fs = std::filesystem;

SequenceEval evaluate_sequence(const std::string& name, const std::vector<std::string>& attributes,
                               std::span<const BoundingBox> predicted, std::span<const BoundingBox> truth) {
    if (predicted.size() != truth.size())
        throw std::invalid_argument("evaluate: prediction/ground-truth length mismatch");
    if (predicted.size() < 2) throw std::invalid_argument("evaluate: need at least 2 frames");

    SequenceEval ev;
    ev.name = name;
    ev.attributes = attributes;
    const size_t scored = predicted.size() - 1;  // frame 1 excluded
    ev.center_error.reserve(scored);
    ev.overlap.reserve(scored);
    for (size_t i = 1; i < predicted.size(); ++i) {
        ev.center_error.push_back(center_distance(predicted[i], truth[i]));
        ev.overlap.push_back(iou(predicted[i], truth[i]));
    }

    for (int k = 0; k < kPrecisionPoints; ++k) {
        const double thr = static_cast<double>(k);
        size_t hits = 0;
        for (double e : ev.center_error) {
            if (e <= thr) ++hits;
        }
        ev.precision[static_cast<size_t>(k)] = static_cast<double>(hits) / static_cast<double>(scored);
    }
    for (int k = 0; k < kSuccessPoints; ++k) {
        const double thr = static_cast<double>(k) * 0.05;
        size_t hits = 0;
        for (double o : ev.overlap) {
            if (o > thr) ++hits;  // strict inequality, OTB convention
        }
        ev.success[static_cast<size_t>(k)] = static_cast<double>(hits) / static_cast<double>(scored);
    }
    ev.pr = ev.precision[20];
    double sum = 0.0;
    for (double s : ev.success) sum += s;
    ev.sr = sum / static_cast<double>(kSuccessPoints);
    return ev;
}

EvalReport combine_evals(std::vector<SequenceEval> evals) {
    if (evals.empty()) throw std::invalid_argument("combine: no sequence evaluations");
    EvalReport report;
    report.precision.fill(0.0);
    report.success.fill(0.0);
    for (const SequenceEval& ev : evals) {
        for (int k = 0; k < kPrecisionPoints; ++k) report.precision[static_cast<size_t>(k)] += ev.precision[static_cast<size_t>(k)];
        for (int k = 0; k < kSuccessPoints; ++k) report.success[static_cast<size_t>(k)] += ev.success[static_cast<size_t>(k)];
        report.pr += ev.pr;
        report.sr += ev.sr;
        for (const std::string& tag : ev.attributes) {
            FactorAggregate& f = report.factors[tag];
            ++f.count;
            f.pr += ev.pr;
            f.sr += ev.sr;
        }
    }
    const double n = static_cast<double>(evals.size());
    for (double& v : report.precision) v /= n;
    for (double& v : report.success) v /= n;
    report.pr /= n;
    report.sr /= n;
    for (auto& [tag, f] : report.factors) {
        f.pr /= f.count;
        f.sr /= f.count;
    }
    report.sequences = std::move(evals);
    return report;
}

EvalReport evaluate_ope(const TrackingResult& result, std::span<const BoundingBox> truth,
                        const std::string& name, const std::vector<std::string>& attributes) {
    std::vector<SequenceEval> evals;
    evals.push_back(evaluate_sequence(name, attributes, result.boxes, truth));
    return combine_evals(std::move(evals));
}

static double delta_pct(double base, double now) {
    if (base == 0.0) return now == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return (now - base) / base * 100.0;
}

ComparisonRecord compare(const EvalReport& mts_report, const EvalReport& base_report) {
    std::set<std::string> a, b;
    for (const SequenceEval& ev : mts_report.sequences) a.insert(ev.name);
    for (const SequenceEval& ev : base_report.sequences) b.insert(ev.name);
    if (a != b) throw std::invalid_argument("compare: reports cover different sequence sets");

    ComparisonRecord rec;
    for (const auto& [tag, f] : base_report.factors) {
        const auto it = mts_report.factors.find(tag);
        if (it == mts_report.factors.end()) continue;
        ComparisonRow row;
        row.label = tag;
        row.count = f.count;
        row.pr_base = f.pr;
        row.sr_base = f.sr;
        row.pr_mts = it->second.pr;
        row.sr_mts = it->second.sr;
        row.pr_delta_pct = delta_pct(f.pr, it->second.pr);
        row.sr_delta_pct = delta_pct(f.sr, it->second.sr);
        rec.rows.push_back(row);
    }
    ComparisonRow avg;
    avg.label = "Average";
    avg.count = static_cast<int>(base_report.sequences.size());
    avg.pr_base = base_report.pr;
    avg.sr_base = base_report.sr;
    avg.pr_mts = mts_report.pr;
    avg.sr_mts = mts_report.sr;
    avg.pr_delta_pct = delta_pct(base_report.pr, mts_report.pr);
    avg.sr_delta_pct = delta_pct(base_report.sr, mts_report.sr);
    rec.rows.push_back(avg);
    return rec;
}

std::string format_comparison(const ComparisonRecord& record, const std::string& base_label,
                              const std::string& mts_label) {
    std::ostringstream out;
    char line[256];
    std::snprintf(line, sizeof line, "%-12s %-16s %-16s %s\n", "factor", base_label.c_str(),
                  mts_label.c_str(), "delta");
    out << line;
    for (const ComparisonRow& r : record.rows) {
        std::string label = r.label;
        if (r.label != "Average") label += "(" + std::to_string(r.count) + ")";
        std::snprintf(line, sizeof line, "%-12s %.3f/%.3f      %.3f/%.3f      %.2f%%/%.2f%%\n", label.c_str(),
                      r.pr_base, r.sr_base, r.pr_mts, r.sr_mts, r.pr_delta_pct, r.sr_delta_pct);
        out << line;
    }
    return out.str();
}

namespace {

struct Series {
    std::string label;
    double score;
    std::vector<std::pair<double, double>> points;  // threshold, value
};

void write_curve_csv(const fs::path& path, const Series& s) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write curve file: " + path.string());
    out << "threshold,value\n";
    char line[80];
    for (const auto& [t, v] : s.points) {
        std::snprintf(line, sizeof line, "%.10g,%.10g\n", t, v);
        out << line;
    }
}

// Minimal SVG line plot: fixed canvas, axis box, one polyline per series,
// legend ranked by score.
void write_svg_plot(const fs::path& path, const std::string& title, std::vector<Series> series,
                    double x_max) {
    std::sort(series.begin(), series.end(), [](const Series& a, const Series& b) { return a.score > b.score; });
    const double W = 640, H = 480, ml = 60, mr = 20, mt = 40, mb = 50;
    const double pw = W - ml - mr, ph = H - mt - mb;
    const auto X = [&](double x) { return ml + x / x_max * pw; };
    const auto Y = [&](double y) { return mt + (1.0 - y) * ph; };
    static const char* colors[] = {"#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e",
                                   "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write plot file: " + path.string());
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" << title
        << "</text>\n";
    out << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw << "\" height=\"" << ph
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 5; ++i) {
        const double fx = x_max * i / 5.0;
        out << "<text x=\"" << X(fx) << "\" y=\"" << H - mb + 20 << "\" text-anchor=\"middle\" font-size=\"11\">"
            << fx << "</text>\n";
        const double fy = i / 5.0;
        out << "<text x=\"" << ml - 8 << "\" y=\"" << Y(fy) + 4 << "\" text-anchor=\"end\" font-size=\"11\">"
            << fy << "</text>\n";
    }
    for (size_t s = 0; s < series.size(); ++s) {
        out << "<polyline fill=\"none\" stroke=\"" << colors[s % 10] << "\" stroke-width=\"2\" points=\"";
        for (const auto& [t, v] : series[s].points) out << X(t) << "," << Y(v) << " ";
        out << "\"/>\n";
        const double ly = mt + 18 + 18 * static_cast<double>(s);
        out << "<line x1=\"" << ml + pw - 150 << "\" y1=\"" << ly << "\" x2=\"" << ml + pw - 120 << "\" y2=\""
            << ly << "\" stroke=\"" << colors[s % 10] << "\" stroke-width=\"2\"/>\n";
        char score[32];
        std::snprintf(score, sizeof score, "%.3f", series[s].score);
        out << "<text x=\"" << ml + pw - 114 << "\" y=\"" << ly + 4 << "\" font-size=\"12\">" << series[s].label
            << " [" << score << "]</text>\n";
    }
    out << "</svg>\n";
}

}  // namespace

void emit_plots(const std::vector<std::pair<std::string, EvalReport>>& reports, const fs::path& dir) {
    if (reports.empty()) throw std::invalid_argument("emit_plots: no reports");
    fs::create_directories(dir);
    std::vector<Series> prec, succ;
    for (const auto& [name, rep] : reports) {
        Series p{name, rep.pr, {}};
        for (int k = 0; k < kPrecisionPoints; ++k) p.points.emplace_back(k, rep.precision[static_cast<size_t>(k)]);
        Series s{name, rep.sr, {}};
        for (int k = 0; k < kSuccessPoints; ++k) s.points.emplace_back(k * 0.05, rep.success[static_cast<size_t>(k)]);
        write_curve_csv(dir / (name + "_precision.csv"), p);
        write_curve_csv(dir / (name + "_success.csv"), s);
        prec.push_back(std::move(p));
        succ.push_back(std::move(s));
    }
    write_svg_plot(dir / "precision.svg", "Precision plot of OPE", std::move(prec), 50.0);
    write_svg_plot(dir / "success.svg", "Success plot of OPE", std::move(succ), 1.0);
}

void write_eval_report(const fs::path& path, const EvalReport& report) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write report file: " + path.string());
    char line[256];
    out << "sequence,pr,sr,frames\n";
    for (const SequenceEval& ev : report.sequences) {
        std::snprintf(line, sizeof line, "%s,%.6g,%.6g,%zu\n", ev.name.c_str(), ev.pr, ev.sr,
                      ev.center_error.size() + 1);
        out << line;
    }
    std::snprintf(line, sizeof line, "aggregate,%.6g,%.6g,%zu\n", report.pr, report.sr, report.sequences.size());
    out << line;
    for (const auto& [tag, f] : report.factors) {
        std::snprintf(line, sizeof line, "factor:%s,%.6g,%.6g,%d\n", tag.c_str(), f.pr, f.sr, f.count);
        out << line;
    }
}

std::vector<std::pair<double, double>> load_curve_csv(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open curve file: " + path.string());
    std::vector<std::pair<double, double>> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (lineno == 1 || line.empty()) continue;  // header
        const auto f = split_fields(line);
        const std::string ctx = path.filename().string() + " line " + std::to_string(lineno);
        if (f.size() != 2) throw std::runtime_error(ctx + ": expected threshold,value");
        out.emplace_back(parse_double(f[0], ctx), parse_double(f[1], ctx));
    }
    return out;
}

}  // namespace mts
