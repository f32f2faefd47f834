// Command line front end: one subcommand per stage plus the composite
// `score`. JSON goes to stdout (or --out for `score`); CSV/SVG are side
// files. Exit codes: 0 ok, 2 bad input, 3 numerical failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "recur/error.hpp"
#include "recur/metric.hpp"
#include "recur/period.hpp"
#include "recur/ph/rips.hpp"
#include "recur/pipeline.hpp"
#include "recur/rank.hpp"
#include "recur/svg.hpp"
#include "recur/video/io.hpp"

namespace {

using nlohmann::ordered_json;

void print_json(const ordered_json& j) {
    std::string text = j.dump(2);
    text += '\n';
    std::fputs(text.c_str(), stdout);
}

void add_synth_params(CLI::App* cmd, recur::video::SynthSpec& s) {
    cmd->add_option("--frames", s.frames, "frame count");
    cmd->add_option("--width", s.width, "frame width (0: kind default)");
    cmd->add_option("--height", s.height, "frame height (0: kind default)");
    cmd->add_option("--fps-num", s.fps_num, "frame rate numerator");
    cmd->add_option("--fps-den", s.fps_den, "frame rate denominator");
    cmd->add_option("--period", s.period, "pendulum swing period in frames");
    cmd->add_option("--omega1", s.omega1, "first angular rate, rad/frame (0: kind default)");
    cmd->add_option("--omega2", s.omega2, "second angular rate (0: omega1*pi)");
}

constexpr const char* kKinds =
    "pendulum|quasi_disks|modulated_pulses|harmonic_1d|quasi_1d|white_noise";

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sliding-window topology scores for recurrent video"};
    app.require_subcommand(1);

    // ---- synth: generate a clip and store it
    auto* synth = app.add_subcommand("synth", "generate a synthetic clip");
    std::string synth_kind, synth_out;
    recur::video::SynthSpec synth_spec;
    synth->add_option("kind", synth_kind, kKinds)->required();
    add_synth_params(synth, synth_spec);
    synth->add_option("--seed", synth_spec.seed, "white_noise seed");
    synth->add_option("--out", synth_out, "output RCV1 path")->required();
    synth->callback([&] {
        synth_spec.kind = recur::video::parse_synth_kind(synth_kind);
        recur::VideoTensor v = recur::video::synthesize(synth_spec);
        recur::video::save_rcv(v, synth_out);
        ordered_json j;
        j["kind"] = recur::video::to_string(synth_spec.kind);
        j["frames"] = v.frames;
        j["width"] = v.width;
        j["height"] = v.height;
        j["out"] = synth_out;
        print_json(j);
    });

    // ---- noise: corrupt a stored clip
    auto* noise = app.add_subcommand("noise", "corrupt a clip with a noise model");
    std::string noise_in, noise_out, noise_model;
    recur::video::NoiseSpec noise_spec;
    noise->add_option("--in", noise_in, "RCV1 file or PGM directory")->required();
    noise->add_option("--out", noise_out, "output RCV1 path")->required();
    noise->add_option("--model", noise_model, "blur|awgn|frame_corrupt")->required();
    noise->add_option("--level", noise_spec.level, "model level")->required();
    noise->add_option("--seed", noise_spec.seed, "noise seed");
    noise->callback([&] {
        noise_spec.model = recur::video::parse_noise_model(noise_model);
        recur::VideoTensor v = recur::video::load_any(noise_in);
        recur::VideoTensor w = recur::video::apply_noise(v, noise_spec);
        recur::video::save_rcv(w, noise_out);
        ordered_json j;
        j["model"] = recur::video::to_string(noise_spec.model);
        j["level"] = noise_spec.level;
        j["seed"] = noise_spec.seed;
        j["frames"] = w.frames;
        j["out"] = noise_out;
        print_json(j);
    });

    // ---- score: the full pipeline
    auto* score = app.add_subcommand("score", "score a clip for periodic structure");
    recur::PipelineConfig cfg;
    std::string score_in, score_kind;
    recur::video::SynthSpec score_spec;
    std::string score_noise;
    double score_noise_level = 0.0;
    std::uint64_t score_noise_seed = 0;
    std::string report_out, dgm_csv, dgm_svg;
    auto* sin_opt = score->add_option("--in", score_in, "RCV1 file or PGM directory");
    auto* skind_opt = score->add_option("--synth", score_kind, kKinds);
    sin_opt->excludes(skind_opt);
    skind_opt->excludes(sin_opt);
    add_synth_params(score, score_spec);
    auto* snm = score->add_option("--noise", score_noise, "corruption model: blur|awgn|frame_corrupt");
    score->add_option("--noise-level", score_noise_level, "corruption level")->needs(snm);
    auto* sns = score->add_option("--noise-seed", score_noise_seed,
                                  "corruption seed (default: --seed)")
                    ->needs(snm);
    score->add_option("--d", cfg.d, "delay dimension");
    score->add_option("--tau", cfg.tau, "delay in frames (default: planned from the period estimate)");
    score->add_option("--n-points", cfg.n_points, "cloud size");
    score->add_option("--max-dim", cfg.max_dim, "top homology dimension (2 enables qps)");
    score->add_option("--prime", cfg.prime, "coefficient field characteristic");
    score->add_option("--threshold", cfg.rips_threshold,
                      "filtration cutoff (default: enclosing radius; inf: full)");
    score->add_option("--filter-half-width", cfg.filter_half_width, "bandpass filter half width");
    score->add_option("--svd-energy", cfg.svd_energy, "retained energy fraction");
    score->add_option("--knn-frac", cfg.knn_frac, "neighbor fraction for the period surrogate");
    score->add_option("--deriv-width", cfg.deriv_width, "period surrogate filter width");
    score->add_option("--seed", cfg.seed, "master seed");
    score->add_option("--out", report_out, "write the JSON report here instead of stdout");
    score->add_option("--diagram-csv", dgm_csv, "write the persistence diagram as CSV");
    score->add_option("--diagram-svg", dgm_svg, "write the persistence diagram as SVG");
    score->callback([&] {
        if (!score_in.empty()) cfg.input_path = score_in;
        if (!score_kind.empty()) {
            score_spec.kind = recur::video::parse_synth_kind(score_kind);
            score_spec.seed = cfg.seed;
            cfg.synth = score_spec;
        }
        if (!score_noise.empty())
            cfg.noise = recur::video::NoiseSpec{
                recur::video::parse_noise_model(score_noise), score_noise_level,
                sns->count() ? score_noise_seed : cfg.seed};
        recur::RecurrenceReport rep = recur::run_pipeline(cfg);
        if (!dgm_csv.empty()) recur::ph::save_csv(rep.diagrams, dgm_csv);
        if (!dgm_svg.empty()) recur::ph::save_svg(rep.diagrams, dgm_svg);
        if (report_out.empty())
            std::fputs(recur::report_to_json(rep).c_str(), stdout);
        else
            recur::save_report_json(rep, report_out);
    });

    // ---- estimate-period
    auto* est = app.add_subcommand("estimate-period", "period and clarity of a clip");
    std::string est_in, est_kind, est_nacf, est_surr;
    recur::video::SynthSpec est_spec;
    double est_knn = 0.1;
    int est_deriv = 10;
    auto* ein_opt = est->add_option("--in", est_in, "RCV1 file or PGM directory");
    auto* ekind_opt = est->add_option("--synth", est_kind, kKinds);
    ein_opt->excludes(ekind_opt);
    ekind_opt->excludes(ein_opt);
    add_synth_params(est, est_spec);
    est->add_option("--seed", est_spec.seed, "generator seed");
    est->add_option("--knn-frac", est_knn, "neighbor fraction for the frame graph");
    est->add_option("--deriv-width", est_deriv, "temporal derivative filter width");
    est->add_option("--nacf-csv", est_nacf, "write the normalized autocorrelation");
    est->add_option("--surrogate-csv", est_surr, "write the 1-d motion surrogate");
    est->callback([&] {
        if (est_in.empty() == est_kind.empty())
            throw recur::InvalidInput("estimate-period: exactly one of --in / --synth required");
        recur::VideoTensor v = est_in.empty()
                                   ? (est_spec.kind = recur::video::parse_synth_kind(est_kind),
                                      recur::video::synthesize(est_spec))
                                   : recur::video::load_any(est_in);
        recur::Surrogate1D sur = recur::period::diffusion_1d(v, est_knn, est_deriv);
        std::vector<double> nacf = recur::period::normalized_autocorr(sur.samples);
        recur::PeriodEstimate pe = recur::period::estimate_period(nacf);
        if (!est_surr.empty()) recur::period::save_series_csv(sur.samples, est_surr);
        if (!est_nacf.empty()) recur::period::save_series_csv(nacf, est_nacf);
        ordered_json j;
        j["v"] = 1;
        j["has_period"] = pe.has_period;
        j["period"] = pe.period;
        j["clarity"] = pe.clarity;
        j["frames"] = v.frames;
        j["k_used"] = sur.k_used;
        j["bandwidth"] = sur.bandwidth;
        j["degenerate"] = sur.degenerate;
        print_json(j);
    });

    // ---- auroc: scored separation of two synthetic populations
    auto* auroc = app.add_subcommand("auroc", "AUROC of a score across noise levels");
    recur::AurocExperiment exp;
    std::string pos_kind, neg_kind, metric_name = "ps", noise_name = "awgn", auroc_out;
    auroc->add_option("--positive", pos_kind, kKinds)->required();
    auroc->add_option("--negative", neg_kind, kKinds)->required();
    auroc->add_option("--metric", metric_name, "ps|mps|qps");
    auroc->add_option("--noise", noise_name, "blur|awgn|frame_corrupt");
    auroc->add_option("--levels", exp.levels, "noise levels")->delimiter(',')->required();
    auroc->add_option("--trials", exp.trials, "trials per class per level");
    auroc->add_option("--seed", exp.seed, "base seed; trial t uses seed+t");
    add_synth_params(auroc, exp.positive);
    auroc->add_option("--d", exp.base.d, "delay dimension");
    auroc->add_option("--tau", exp.base.tau, "delay in frames (default: planned per trial)");
    auroc->add_option("--n-points", exp.base.n_points, "cloud size");
    auroc->add_option("--max-dim", exp.base.max_dim, "top homology dimension");
    auroc->add_option("--prime", exp.base.prime, "coefficient field characteristic");
    auroc->add_option("--filter-half-width", exp.base.filter_half_width,
                      "bandpass filter half width");
    auroc->add_option("--svd-energy", exp.base.svd_energy, "retained energy fraction");
    auroc->add_option("--knn-frac", exp.base.knn_frac, "neighbor fraction");
    auroc->add_option("--deriv-width", exp.base.deriv_width, "surrogate filter width");
    auroc->add_option("--out", auroc_out, "write level,auroc rows as CSV");
    auroc->callback([&] {
        exp.negative = exp.positive;
        exp.positive.kind = recur::video::parse_synth_kind(pos_kind);
        exp.negative.kind = recur::video::parse_synth_kind(neg_kind);
        exp.metric = recur::parse_metric(metric_name);
        exp.noise_model = recur::video::parse_noise_model(noise_name);
        std::vector<recur::AurocRow> rows = recur::run_auroc_experiment(exp);
        if (!auroc_out.empty()) recur::save_auroc_csv(rows, auroc_out);
        ordered_json j;
        j["v"] = 1;
        j["metric"] = recur::to_string(exp.metric);
        j["noise"] = recur::video::to_string(exp.noise_model);
        j["trials"] = exp.trials;
        j["seed"] = exp.seed;
        ordered_json jrows = ordered_json::array();
        for (const recur::AurocRow& r : rows) {
            ordered_json row;
            row["level"] = r.level;
            row["auroc"] = r.auroc;
            jrows.push_back(row);
        }
        j["rows"] = jrows;
        print_json(j);
    });

    // ---- rank: evaluation math from CSV files
    auto* rank = app.add_subcommand("rank", "rank aggregation and rank comparison");
    rank->require_subcommand(1);

    auto* hodge = rank->add_subcommand("hodge", "least-squares scores from preferences");
    std::string hodge_prefs, hodge_out;
    std::size_t hodge_n = 0;
    hodge->add_option("--prefs", hodge_prefs, "CSV rows a,b,margin")->required();
    hodge->add_option("--n", hodge_n, "object count (default: max index + 1)");
    hodge->add_option("--out", hodge_out, "write index,score rows in rank order");
    hodge->callback([&] {
        std::vector<recur::rank::Preference> prefs = recur::rank::load_preferences_csv(hodge_prefs);
        std::size_t n = hodge_n;
        if (n == 0)
            for (const recur::rank::Preference& p : prefs)
                n = std::max({n, p.a + 1, p.b + 1});
        recur::rank::HodgeResult res = recur::rank::hodge_aggregate(prefs, n);
        if (!hodge_out.empty()) recur::rank::save_ranking_csv(res.scores, hodge_out);
        ordered_json j;
        j["v"] = 1;
        j["n"] = n;
        j["scores"] = res.scores;
        j["order"] = recur::rank::ranking_order(res.scores);
        j["residual"] = res.residual;
        j["components"] = res.n_components;
        j["disconnected"] = res.disconnected;
        print_json(j);
    });

    auto* tau = rank->add_subcommand("tau", "Kendall correlation of two rankings");
    std::string tau_a, tau_b;
    tau->add_option("--first", tau_a, "ranking CSV (index,score)")->required();
    tau->add_option("--second", tau_b, "ranking CSV (index,score)")->required();
    tau->callback([&] {
        std::vector<double> a = recur::rank::load_ranking_csv(tau_a);
        std::vector<double> b = recur::rank::load_ranking_csv(tau_b);
        ordered_json j;
        j["v"] = 1;
        j["n"] = a.size();
        j["tau"] = recur::rank::kendall_tau(a, b);
        print_json(j);
    });

    // ---- diagram: persistence of a stored distance matrix
    auto* dgm = app.add_subcommand("diagram", "persistence diagram of a distance matrix");
    std::string dgm_in, dgm_out_csv, dgm_out_svg;
    recur::ph::RipsOptions ripsopt;
    dgm->add_option("--in", dgm_in, "distance matrix CSV")->required();
    dgm->add_option("--max-dim", ripsopt.max_dim, "top homology dimension");
    dgm->add_option("--prime", ripsopt.prime, "coefficient field characteristic");
    dgm->add_option("--threshold", ripsopt.threshold,
                    "filtration cutoff (default: enclosing radius; inf: full)");
    dgm->add_option("--out", dgm_out_csv, "write dim,birth,death rows");
    dgm->add_option("--svg", dgm_out_svg, "write a diagram scatter plot");
    dgm->callback([&] {
        recur::DistanceMatrix m = recur::metric::load_csv(dgm_in);
        recur::PersistenceDiagrams dgms = recur::ph::rips_persistence(m, ripsopt);
        if (!dgm_out_csv.empty()) recur::ph::save_csv(dgms, dgm_out_csv);
        if (!dgm_out_svg.empty()) recur::ph::save_svg(dgms, dgm_out_svg);
        ordered_json j;
        j["v"] = 1;
        j["points"] = m.n;
        j["threshold"] = dgms.threshold;
        j["prime"] = dgms.prime;
        ordered_json per_dim = ordered_json::array();
        for (int d = 0; d <= dgms.max_dim; ++d) {
            std::size_t finite = 0, essential = 0;
            for (const recur::PersistencePair& p : dgms.dim(d))
                (p.finite() ? finite : essential) += 1;
            ordered_json row;
            row["dim"] = d;
            row["finite"] = finite;
            row["essential"] = essential;
            row["mp1"] = recur::ph::max_persistence(dgms, d, 1);
            row["mp2"] = recur::ph::max_persistence(dgms, d, 2);
            per_dim.push_back(row);
        }
        j["dims"] = per_dim;
        print_json(j);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const recur::InvalidInput& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const recur::NumericalError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
