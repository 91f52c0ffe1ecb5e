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

#include <array>
#include <filesystem>
#include <map>
#include <string>

#include "mts/pipeline.hpp"

namespace mts {

inline constexpr int kPrecisionPoints = 51;  // thresholds 0..50 px, step 1
inline constexpr int kSuccessPoints = 21;    // thresholds 0..1, step 0.05

/// One-pass evaluation of a single sequence. Frame 1 is the given init and
/// is excluded from every metric.
struct SequenceEval {
    std::string name;
    std::vector<std::string> attributes;
    std::vector<double> center_error;  // frames 2..T
    std::vector<double> overlap;       // IoU, frames 2..T
    std::array<double, kPrecisionPoints> precision{};
    std::array<double, kSuccessPoints> success{};
    double pr = 0.0;  // precision at 20 px
    double sr = 0.0;  // mean of the sampled success curve
};

struct FactorAggregate {
    int count = 0;
    double pr = 0.0;
    double sr = 0.0;
};

/// Evaluation over one or more sequences; curves and summary scores are
/// means over the per-sequence results, OTB style.
struct EvalReport {
    std::vector<SequenceEval> sequences;
    std::array<double, kPrecisionPoints> precision{};
    std::array<double, kSuccessPoints> success{};
    double pr = 0.0;
    double sr = 0.0;
    std::map<std::string, FactorAggregate> factors;
};

SequenceEval evaluate_sequence(const std::string& name, const std::vector<std::string>& attributes,
                               std::span<const BoundingBox> predicted, std::span<const BoundingBox> truth);

EvalReport evaluate_ope(const TrackingResult& result, std::span<const BoundingBox> truth,
                        const std::string& name = "", const std::vector<std::string>& attributes = {});

EvalReport combine_evals(std::vector<SequenceEval> evals);

/// One row of a comparison table: baseline vs wrapped scores plus percentage
/// deltas relative to the baseline.
struct ComparisonRow {
    std::string label;
    int count = 0;
    double pr_base = 0.0;
    double sr_base = 0.0;
    double pr_mts = 0.0;
    double sr_mts = 0.0;
    double pr_delta_pct = 0.0;
    double sr_delta_pct = 0.0;
};

struct ComparisonRecord {
    std::vector<ComparisonRow> rows;  // per-factor rows, then "Average"
};

/// Requires both reports to cover the same sequence set.
ComparisonRecord compare(const EvalReport& mts_report, const EvalReport& base_report);

std::string format_comparison(const ComparisonRecord& record, const std::string& base_label,
                              const std::string& mts_label);

/// Writes precision/success SVG plots plus raw curve CSVs
/// (`threshold,value`) for each named report. Legends are ranked by summary
/// score, best first.
void emit_plots(const std::vector<std::pair<std::string, EvalReport>>& reports,
                const std::filesystem::path& dir);

/// Plain-text per-sequence and aggregate report.
void write_eval_report(const std::filesystem::path& path, const EvalReport& report);

std::vector<std::pair<double, double>> load_curve_csv(const std::filesystem::path& path);

}  // namespace mts
