#include <fstream>

#include <json.hpp>

#include "recur/error.hpp"
#include "recur/pipeline.hpp"

namespace recur {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json json_or_null(const std::optional<double>& v) {
    if (v) return *v;
    return nullptr;
}

}  // namespace

std::string report_to_json(const RecurrenceReport& rep) {
    const PipelineConfig& cfg = rep.config;
    ordered_json j;
    j["v"] = 1;

    ordered_json input;
    input["kind"] = rep.input_kind;
    input["source"] = rep.input_source;
    input["frames"] = rep.frames;
    input["width"] = rep.width;
    input["height"] = rep.height;
    input["fps"] = ordered_json::array({rep.fps_num, rep.fps_den});
    j["input"] = input;

    ordered_json params;
    params["d"] = cfg.d;
    params["tau"] = rep.tau_used;
    params["tau_source"] = rep.period_estimated ? "estimated" : "given";
    params["n_points"] = cfg.n_points;
    params["max_dim"] = cfg.max_dim;
    params["prime"] = cfg.prime;
    if (cfg.rips_threshold)
        params["rips_threshold"] = *cfg.rips_threshold;
    else
        params["rips_threshold"] = "auto";
    params["filter_half_width"] = cfg.filter_half_width;
    params["filter_sigma"] = double(cfg.filter_half_width) / 2.0;
    params["svd_energy"] = cfg.svd_energy;
    params["knn_frac"] = cfg.knn_frac;
    params["deriv_width"] = cfg.deriv_width;
    params["seed"] = cfg.seed;
    if (cfg.noise) {
        ordered_json noise;
        noise["model"] = video::to_string(cfg.noise->model);
        noise["level"] = cfg.noise->level;
        noise["seed"] = cfg.noise->seed;
        params["noise"] = noise;
    } else {
        params["noise"] = nullptr;
    }
    j["params"] = params;

    ordered_json period;
    period["length"] = rep.period_len;
    period["clarity"] = rep.period_estimated ? ordered_json(rep.clarity) : ordered_json(nullptr);
    period["source"] = rep.period_estimated ? "estimated" : "given";
    period["window"] = rep.window;
    j["period"] = period;

    ordered_json scores;
    scores["ps"] = rep.ps;
    scores["mps"] = rep.mps;
    scores["qps"] = json_or_null(rep.qps);
    scores["frequency"] = rep.frequency;
    if (rep.cd_no_lattice)
        scores["cd"] = "no-lattice";
    else
        scores["cd"] = rep.cd;
    j["scores"] = scores;

    ordered_json diag;
    diag["svd_rank"] = rep.svd_rank;
    diag["basis_energy"] = rep.basis_energy;
    diag["cloud_points"] = rep.cloud_points;
    diag["cloud_dim"] = rep.cloud_dim;
    diag["enclosing_radius"] = rep.enclosing_radius;
    diag["rips_threshold"] = rep.rips_threshold_used;
    diag["mp1_h1"] = rep.mp1_h1;
    diag["mp2_h1"] = rep.mp2_h1;
    diag["mp1_h2"] = json_or_null(rep.mp1_h2);
    j["diagnostics"] = diag;

    return j.dump(2) + "\n";
}

void save_report_json(const RecurrenceReport& report, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidInput("cannot open for writing: " + path);
    out << report_to_json(report);
}

}  // namespace recur
