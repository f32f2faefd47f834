#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "recur/embed.hpp"
#include "recur/metric.hpp"
#include "recur/ph/rips.hpp"
#include "recur/video/noise.hpp"
#include "recur/video/synth.hpp"

namespace recur {

struct PipelineConfig {
    // exactly one of input_path / synth must be set
    std::optional<std::string> input_path;
    std::optional<video::SynthSpec> synth;
    std::optional<video::NoiseSpec> noise;

    int d = 10;
    std::optional<double> tau;  // absent: planned from the period estimate
    std::size_t n_points = 600;
    int max_dim = 1;
    int prime = 3;
    std::optional<double> rips_threshold;  // absent: enclosing radius

    int filter_half_width = 5;  // derivative filter; sigma = half_width/2
    double svd_energy = 1.0;
    double knn_frac = 0.1;
    int deriv_width = 10;
    std::uint64_t seed = 0;
};

struct RecurrenceReport {
    // input provenance
    std::string input_kind;    // "file" or "synth"
    std::string input_source;  // path or generator name
    std::uint32_t frames = 0, width = 0, height = 0;
    std::uint32_t fps_num = 30, fps_den = 1;

    PipelineConfig config;

    // window provenance
    bool period_estimated = false;  // true when tau came from the estimator
    double period_len = 0.0;        // tau*(d+1)
    double clarity = 0.0;           // only meaningful when estimated
    double tau_used = 0.0;
    double window = 0.0;

    // scores
    double ps = 0.0;
    double mps = 0.0;
    std::optional<double> qps;  // present when max_dim >= 2
    double frequency = 0.0;
    bool cd_no_lattice = true;
    double cd = 0.0;

    // diagnostics
    std::size_t svd_rank = 0;
    double basis_energy = 1.0;
    std::size_t cloud_points = 0;
    std::size_t cloud_dim = 0;
    double enclosing_radius = 0.0;
    double rips_threshold_used = 0.0;
    double mp1_h1 = 0.0, mp2_h1 = 0.0;
    std::optional<double> mp1_h2;

    PersistenceDiagrams diagrams;
};

// Full scoring pipeline: load or synthesize, corrupt, filter, project,
// window (planning the window from the period estimate when tau is absent),
// normalize, build distances, run persistence and score. Errors are
// annotated with the pipeline stage that raised them.
RecurrenceReport run_pipeline(const PipelineConfig& cfg);

// Stable-key-order JSON ("v": 1). Identical reports serialize to identical
// bytes.
std::string report_to_json(const RecurrenceReport& report);
void save_report_json(const RecurrenceReport& report, const std::string& path);

enum class ScoreMetric { ps, mps, qps };
ScoreMetric parse_metric(const std::string& name);
std::string to_string(ScoreMetric metric);

struct AurocExperiment {
    video::SynthSpec positive;
    video::SynthSpec negative;
    ScoreMetric metric = ScoreMetric::ps;
    video::NoiseModel noise_model = video::NoiseModel::awgn;
    std::vector<double> levels;
    int trials = 50;
    std::uint64_t seed = 0;
    PipelineConfig base;  // shared embedding parameters
};

struct AurocRow {
    double level = 0.0;
    double auroc = 0.0;
    std::vector<double> positive_scores;  // ordered by trial index
    std::vector<double> negative_scores;
};

// Scores `trials` corrupted positive/negative pairs per level (trial seeds
// are seed + trial index) and reports one AUROC per level. Trials run
// concurrently; results are ordered by trial index, so output does not
// depend on scheduling.
std::vector<AurocRow> run_auroc_experiment(const AurocExperiment& exp);

// CSV rows "level,auroc".
void save_auroc_csv(const std::vector<AurocRow>& rows, const std::string& path);

}  // namespace recur
