#include "recur/pipeline.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <thread>

#include "recur/cd_lattice.hpp"
#include "recur/error.hpp"
#include "recur/period.hpp"
#include "recur/rank.hpp"
#include "recur/scores.hpp"
#include "recur/video/io.hpp"

namespace recur {

namespace {

template <typename F>
auto stage(const char* name, F&& fn) {
    try {
        return fn();
    } catch (const FormatError& e) {
        throw FormatError(std::string(name) + ": " + e.what());
    } catch (const InvalidInput& e) {
        throw InvalidInput(std::string(name) + ": " + e.what());
    } catch (const NumericalError& e) {
        throw NumericalError(std::string(name) + ": " + e.what());
    }
}

}  // namespace

RecurrenceReport run_pipeline(const PipelineConfig& cfg) {
    if (cfg.input_path.has_value() == cfg.synth.has_value())
        throw InvalidInput("pipeline: exactly one of input path or synth spec required");
    if (cfg.d < 1) throw InvalidInput("pipeline: d must be at least 1");
    if (cfg.n_points < 2) throw InvalidInput("pipeline: need at least two cloud points");

    RecurrenceReport rep;
    rep.config = cfg;

    VideoTensor video = stage("input", [&] {
        if (cfg.input_path) {
            rep.input_kind = "file";
            rep.input_source = *cfg.input_path;
            return video::load_any(*cfg.input_path);
        }
        rep.input_kind = "synth";
        rep.input_source = video::to_string(cfg.synth->kind);
        return video::synthesize(*cfg.synth);
    });
    rep.frames = video.frames;
    rep.width = video.width;
    rep.height = video.height;
    rep.fps_num = video.fps_num;
    rep.fps_den = video.fps_den;

    if (cfg.noise)
        video = stage("noise", [&] { return video::apply_noise(video, *cfg.noise); });

    VideoTensor filtered = stage("dog_filter", [&] {
        return embed::dog_filter(video, double(cfg.filter_half_width) / 2.0,
                                 cfg.filter_half_width);
    });

    FrameCoords coords = stage("svd_frame_reduce",
                               [&] { return embed::svd_frame_reduce(filtered, cfg.svd_energy); });
    rep.svd_rank = coords.dim;
    rep.basis_energy = coords.basis_energy;

    double tau;
    if (cfg.tau) {
        tau = *cfg.tau;
        rep.period_estimated = false;
        rep.period_len = tau * double(cfg.d + 1);
    } else {
        PeriodEstimate est = stage("period_estimate", [&] {
            Surrogate1D sur = period::diffusion_1d(video, cfg.knn_frac, cfg.deriv_width);
            return period::estimate_period(period::normalized_autocorr(sur.samples));
        });
        if (!est.has_period)
            throw NumericalError(
                "period_estimate: no period detected; pass tau explicitly");
        if (double(video.frames) < 4.0 * est.period)
            throw InvalidInput("period_estimate: video shorter than four periods (" +
                               std::to_string(est.period) + " frames each)");
        WindowPlan plan = embed::plan_window(est.period, cfg.d);
        tau = plan.tau;
        rep.period_estimated = true;
        rep.period_len = est.period;
        rep.clarity = est.clarity;
    }
    rep.tau_used = tau;
    rep.window = tau * double(cfg.d);

    PointCloud cloud = stage("sliding_window", [&] {
        return embed::sliding_window(coords, cfg.d, tau, cfg.n_points);
    });
    stage("normalize_cloud", [&] {
        embed::normalize_cloud(cloud);
        return 0;
    });
    rep.cloud_points = cloud.count;
    rep.cloud_dim = cloud.dim;

    DistanceMatrix dm =
        stage("cloud_distances", [&] { return metric::cloud_distances(cloud); });
    rep.enclosing_radius = ph::enclosing_radius(dm);

    rep.diagrams = stage("rips", [&] {
        ph::RipsOptions opt;
        opt.max_dim = cfg.max_dim;
        opt.prime = cfg.prime;
        opt.threshold = cfg.rips_threshold;
        return ph::rips_persistence(dm, opt);
    });
    rep.rips_threshold_used = rep.diagrams.threshold;

    stage("scores", [&] {
        rep.ps = scores::periodicity(rep.diagrams);
        rep.mps = scores::modified_periodicity(rep.diagrams);
        rep.mp1_h1 = ph::max_persistence(rep.diagrams, 1, 1);
        rep.mp2_h1 = ph::max_persistence(rep.diagrams, 1, 2);
        if (cfg.max_dim >= 2) {
            rep.qps = scores::quasiperiodicity(rep.diagrams);
            rep.mp1_h2 = ph::max_persistence(rep.diagrams, 2, 1);
        }
        rep.frequency = scores::frequency_score(dm);
        scores::CdResult cd = scores::cd_lattice_score(dm);
        rep.cd_no_lattice = cd.no_lattice;
        rep.cd = cd.score;
        return 0;
    });

    return rep;
}

ScoreMetric parse_metric(const std::string& name) {
    if (name == "ps") return ScoreMetric::ps;
    if (name == "mps") return ScoreMetric::mps;
    if (name == "qps") return ScoreMetric::qps;
    throw InvalidInput("unknown score metric: " + name);
}

std::string to_string(ScoreMetric metric) {
    switch (metric) {
        case ScoreMetric::ps: return "ps";
        case ScoreMetric::mps: return "mps";
        case ScoreMetric::qps: return "qps";
    }
    throw InvalidInput("unknown score metric value");
}

namespace {

double metric_of(const RecurrenceReport& rep, ScoreMetric metric) {
    switch (metric) {
        case ScoreMetric::ps: return rep.ps;
        case ScoreMetric::mps: return rep.mps;
        case ScoreMetric::qps:
            if (!rep.qps)
                throw InvalidInput("auroc: qps metric requested but max_dim < 2");
            return *rep.qps;
    }
    throw InvalidInput("unknown score metric value");
}

}  // namespace

std::vector<AurocRow> run_auroc_experiment(const AurocExperiment& exp) {
    if (exp.trials < 1) throw InvalidInput("auroc experiment: need at least one trial");
    if (exp.levels.empty()) throw InvalidInput("auroc experiment: need at least one level");
    if (exp.metric == ScoreMetric::qps && exp.base.max_dim < 2)
        throw InvalidInput("auroc experiment: qps needs max_dim 2");

    unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, unsigned(exp.trials));

    std::vector<AurocRow> rows;
    for (double level : exp.levels) {
        AurocRow row;
        row.level = level;
        row.positive_scores.assign(std::size_t(exp.trials), 0.0);
        row.negative_scores.assign(std::size_t(exp.trials), 0.0);

        auto run_trial = [&](int t, bool positive) {
            PipelineConfig cfg = exp.base;
            cfg.input_path.reset();
            video::SynthSpec spec = positive ? exp.positive : exp.negative;
            spec.seed = exp.seed + std::uint64_t(t);
            cfg.synth = spec;
            cfg.noise = video::NoiseSpec{exp.noise_model, level, exp.seed + std::uint64_t(t)};
            cfg.seed = exp.seed + std::uint64_t(t);
            return metric_of(run_pipeline(cfg), exp.metric);
        };

        std::vector<std::future<void>> futs;
        std::atomic<int> next{0};
        for (unsigned w = 0; w < workers; ++w)
            futs.push_back(std::async(std::launch::async, [&] {
                for (;;) {
                    int t = next.fetch_add(1);
                    if (t >= exp.trials) return;
                    row.positive_scores[std::size_t(t)] = run_trial(t, true);
                    row.negative_scores[std::size_t(t)] = run_trial(t, false);
                }
            }));
        for (auto& f : futs) f.get();

        row.auroc = rank::auroc(row.positive_scores, row.negative_scores);
        rows.push_back(std::move(row));
    }
    return rows;
}

void save_auroc_csv(const std::vector<AurocRow>& rows, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InvalidInput("cannot open for writing: " + path);
    out << "level,auroc\n";
    char buf[40];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%.17g", r.level);
        out << buf << ',';
        std::snprintf(buf, sizeof buf, "%.17g", r.auroc);
        out << buf << '\n';
    }
}

}  // namespace recur
