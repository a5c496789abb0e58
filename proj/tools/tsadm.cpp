// tsadm: evaluate time-series anomaly-detection metrics, generate synthetic
// datasets, and run the anti-randomness benchmark grid.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tsadm/bench.hpp"
#include "tsadm/io.hpp"
#include "tsadm/registry.hpp"
#include "tsadm/synthgen.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

tsadm::MetricParams params_from_json(const json& j, const std::string& origin) {
    using tsadm::ParseError;
    tsadm::MetricParams p;
    tsadm::require_keys(j, {"schema_version", "beta", "k_coverage", "k_delay", "tf_tolerance", "rf", "taf",
                            "etaf", "lsf", "nab", "pate", "vus"},
                        origin);
    try {
        if (j.contains("schema_version") && j.at("schema_version").get<int>() != 1)
            throw ParseError(origin + ": unsupported schema_version");
        if (j.contains("beta")) p.beta = j.at("beta").get<double>();
        if (j.contains("k_coverage")) p.k_coverage = j.at("k_coverage").get<double>();
        if (j.contains("k_delay")) p.k_delay = j.at("k_delay").get<std::size_t>();
        if (j.contains("tf_tolerance")) p.tf_tolerance = j.at("tf_tolerance").get<std::size_t>();
        if (j.contains("rf")) {
            const auto& r = j.at("rf");
            tsadm::require_keys(r, {"alpha", "cardinality"}, origin + ".rf");
            if (r.contains("alpha")) p.rf.alpha = r.at("alpha").get<double>();
            if (r.contains("cardinality")) {
                const std::string c = r.at("cardinality").get<std::string>();
                if (c == "one") p.rf.cardinality = tsadm::CardinalityPenalty::one;
                else if (c == "inverse") p.rf.cardinality = tsadm::CardinalityPenalty::inverse;
                else throw ParseError(origin + ": unknown cardinality '" + c + "'");
            }
        }
        if (j.contains("taf")) {
            const auto& t = j.at("taf");
            tsadm::require_keys(t, {"alpha", "theta", "delta"}, origin + ".taf");
            if (t.contains("alpha")) p.taf.alpha = t.at("alpha").get<double>();
            if (t.contains("theta")) p.taf.theta = t.at("theta").get<double>();
            if (t.contains("delta")) p.taf.delta = t.at("delta").get<std::size_t>();
        }
        if (j.contains("etaf")) {
            const auto& t = j.at("etaf");
            tsadm::require_keys(t, {"theta_r", "theta_p", "delta"}, origin + ".etaf");
            if (t.contains("theta_r")) p.etaf.theta_r = t.at("theta_r").get<double>();
            if (t.contains("theta_p")) p.etaf.theta_p = t.at("theta_p").get<double>();
            if (t.contains("delta")) p.etaf.delta = t.at("delta").get<std::size_t>();
        }
        if (j.contains("lsf")) {
            const auto& t = j.at("lsf");
            tsadm::require_keys(t, {"w", "activation"}, origin + ".lsf");
            if (t.contains("w")) p.lsf.w = t.at("w").get<std::size_t>();
            if (t.contains("activation")) {
                const std::string a = t.at("activation").get<std::string>();
                if (a == "segment_start") p.lsf.activation = tsadm::LsfActivation::segment_start;
                else if (a == "window_first_anomaly")
                    p.lsf.activation = tsadm::LsfActivation::window_first_anomaly;
                else throw ParseError(origin + ": unknown lsf activation '" + a + "'");
            }
        }
        if (j.contains("nab")) {
            const auto& t = j.at("nab");
            tsadm::require_keys(t, {"w_tp", "w_fp"}, origin + ".nab");
            if (t.contains("w_tp")) p.nab.w_tp = t.at("w_tp").get<double>();
            if (t.contains("w_fp")) p.nab.w_fp = t.at("w_fp").get<double>();
        }
        if (j.contains("pate")) {
            const auto& t = j.at("pate");
            tsadm::require_keys(t, {"eps_grid", "delta_grid"}, origin + ".pate");
            if (t.contains("eps_grid")) p.pate.eps_grid = t.at("eps_grid").get<std::vector<std::size_t>>();
            if (t.contains("delta_grid"))
                p.pate.delta_grid = t.at("delta_grid").get<std::vector<std::size_t>>();
        }
        if (j.contains("vus")) {
            const auto& t = j.at("vus");
            tsadm::require_keys(t, {"w_max"}, origin + ".vus");
            if (t.contains("w_max")) p.vus.w_max = t.at("w_max").get<std::size_t>();
        }
    } catch (const json::exception& e) {
        throw ParseError(origin + ": " + e.what());
    }
    return p;
}

tsadm::SynthConfig synth_config_from_json(const json& j, const std::string& origin) {
    using tsadm::ParseError;
    tsadm::SynthConfig cfg;
    tsadm::require_keys(j, {"schema_version", "length", "contamination", "seed", "mix"}, origin);
    try {
        if (!j.contains("schema_version")) throw ParseError(origin + ": missing schema_version");
        if (j.at("schema_version").get<int>() != 1) throw ParseError(origin + ": unsupported schema_version");
        if (j.contains("length")) cfg.length = j.at("length").get<std::size_t>();
        if (j.contains("contamination")) cfg.contamination = j.at("contamination").get<double>();
        if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("mix")) {
            cfg.mix.clear();
            for (const auto& [name, share] : j.at("mix").items()) {
                tsadm::AnomalyFamily family;
                if (name == "point") family = tsadm::AnomalyFamily::point;
                else if (name == "level_shift") family = tsadm::AnomalyFamily::level_shift;
                else if (name == "collective") family = tsadm::AnomalyFamily::collective;
                else if (name == "periodic_disruption") family = tsadm::AnomalyFamily::periodic_disruption;
                else if (name == "contextual") family = tsadm::AnomalyFamily::contextual;
                else throw ParseError(origin + ": unknown anomaly family '" + name + "'");
                cfg.mix[family] = share.get<double>();
            }
        }
    } catch (const json::exception& e) {
        throw ParseError(origin + ": " + e.what());
    }
    return cfg;
}

int cmd_evaluate(const std::string& labels_path, const std::string& scores_path,
                 const std::string& preds_path, const std::vector<std::string>& metric_arg,
                 std::optional<double> threshold_arg, const std::string& params_path,
                 const std::string& out_path) {
    const tsadm::BinaryLabelSeries y = tsadm::read_binary_csv(labels_path);

    std::optional<tsadm::ScoreSeries> scores;
    if (!scores_path.empty()) {
        scores = tsadm::read_scores_csv(scores_path);
        if (scores->size() != y.size()) throw tsadm::LengthMismatch(y.size(), scores->size());
    }
    std::optional<tsadm::BinaryLabelSeries> preds;
    if (!preds_path.empty()) {
        preds = tsadm::read_binary_csv(preds_path);
        if (preds->size() != y.size()) throw tsadm::LengthMismatch(y.size(), preds->size());
    }
    if (!preds && scores && threshold_arg) preds = tsadm::threshold(*scores, *threshold_arg);
    if (!preds && !scores) throw tsadm::ParseError("evaluate needs --scores and/or --predictions");

    tsadm::MetricParams params;
    if (!params_path.empty()) params = params_from_json(tsadm::parse_json_file(params_path), params_path);

    std::vector<std::string> ids = metric_arg;
    const bool explicit_ids = !ids.empty();
    if (!explicit_ids) ids = tsadm::metric_ids();

    json values;
    std::vector<std::pair<std::string, double>> table;
    for (const std::string& id : ids) {
        const tsadm::MetricDef& def = tsadm::find_metric(id);
        if (def.input == tsadm::MetricInput::predictions && !preds) {
            if (explicit_ids)
                throw tsadm::ShapeError("metric " + id +
                                        " needs binary predictions (--predictions or --threshold)");
            continue;
        }
        if (def.input == tsadm::MetricInput::scores && !scores) {
            if (explicit_ids) throw tsadm::ShapeError("metric " + id + " needs anomaly scores (--scores)");
            continue;
        }
        const double v = def.eval(y, preds ? &*preds : nullptr, scores ? &*scores : nullptr, params);
        values[id] = v;
        table.emplace_back(id, v);
    }

    std::size_t width = 6;
    for (const auto& [id, v] : table) width = std::max(width, id.size());
    for (const auto& [id, v] : table) std::printf("%-*s  %.6f\n", static_cast<int>(width), id.c_str(), v);
    const std::string payload = values.dump(2) + "\n";
    if (!out_path.empty())
        tsadm::write_file(out_path, payload);
    else
        std::fputs(payload.c_str(), stdout);
    return 0;
}

int cmd_synth(const std::string& config_path, const std::string& out_dir, std::optional<std::uint64_t> seed) {
    const json j = tsadm::parse_json_file(config_path);
    tsadm::SynthConfig cfg = synth_config_from_json(j, config_path);
    if (seed) cfg.seed = *seed;
    const tsadm::GeneratedDataset data = tsadm::generate(cfg);

    fs::create_directories(out_dir);
    tsadm::write_file(fs::path(out_dir) / "data.csv", tsadm::dataset_to_csv(data));
    tsadm::write_file(fs::path(out_dir) / "labels.csv", tsadm::labels_to_csv(data.labels));
    tsadm::write_file(fs::path(out_dir) / "events.json", tsadm::events_to_json(data).dump(2) + "\n");

    json mix;
    for (const auto& [family, share] : cfg.mix) mix[tsadm::family_name(family)] = share;
    const json canonical{{"schema_version", 1},
                         {"length", cfg.length},
                         {"contamination", cfg.contamination},
                         {"seed", cfg.seed},
                         {"mix", mix}};
    const json manifest{{"schema_version", 1},
                        {"tool_version", tsadm::kToolVersion},
                        {"config_digest", tsadm::hex64(tsadm::fnv1a64(canonical.dump()))},
                        {"config", canonical},
                        {"events", data.events.size()}};
    tsadm::write_file(fs::path(out_dir) / "manifest.json", manifest.dump(2) + "\n");
    tsadm::Log::emit(tsadm::Log::info, "synth wrote " + out_dir);
    return 0;
}

int cmd_bench(const std::string& config_path, const std::string& out_dir, std::size_t jobs,
              std::optional<std::uint64_t> seed, const std::vector<std::string>& metric_arg) {
    tsadm::BenchConfig cfg = tsadm::bench_config_from_json(tsadm::parse_json_file(config_path), config_path);
    if (jobs > 0) cfg.jobs = jobs;
    if (seed) cfg.base_seed = *seed;
    if (!metric_arg.empty()) {
        cfg.metrics = metric_arg;
        for (const std::string& id : cfg.metrics) tsadm::find_metric(id);
    }
    const tsadm::BenchResult result = tsadm::run_bench(cfg);
    tsadm::write_bench_outputs(result, out_dir);
    tsadm::Log::emit(tsadm::Log::info, "bench wrote " + out_dir);
    return 0;
}

int cmd_report(const std::string& samples_path, const std::string& out_dir,
               const std::vector<std::string>& metric_arg) {
    tsadm::BenchResult result =
        tsadm::raw_samples_from_json(tsadm::parse_json_file(samples_path), samples_path);
    if (!metric_arg.empty()) {
        for (const std::string& id : metric_arg) tsadm::find_metric(id);
        result.config.metrics = metric_arg;
        result.report = tsadm::report_from_cells(result.cells, metric_arg);
    }
    tsadm::write_bench_outputs(result, out_dir, /*with_raw_samples=*/false);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"time-series anomaly-detection metric toolkit"};
    app.require_subcommand(1);

    std::string labels_path, scores_path, preds_path, params_path, config_path, out_path, samples_path;
    std::vector<std::string> metric_arg;
    std::optional<double> threshold_arg;
    std::optional<std::uint64_t> seed_arg;
    std::size_t jobs = 0;

    auto* evaluate = app.add_subcommand("evaluate", "compute metrics for a label/score/prediction triple");
    evaluate->add_option("--labels", labels_path, "ground-truth CSV (t,label)")->required();
    evaluate->add_option("--scores", scores_path, "anomaly score CSV (t,score)");
    evaluate->add_option("--predictions", preds_path, "binary prediction CSV (t,pred)");
    evaluate->add_option("--metrics", metric_arg, "metric ids (default: all applicable)")->delimiter(',');
    evaluate->add_option("--threshold", threshold_arg, "threshold applied to scores (strict >)");
    evaluate->add_option("--params", params_path, "metric parameter JSON");
    evaluate->add_option("--out", out_path, "write the JSON report here instead of stdout");

    auto* synth = app.add_subcommand("synth", "generate a synthetic dataset");
    synth->add_option("--config", config_path, "synth config JSON")->required();
    synth->add_option("--out", out_path, "output directory")->required();
    synth->add_option("--seed", seed_arg, "override the config seed");

    auto* bench = app.add_subcommand("bench", "run the anti-randomness benchmark grid");
    bench->add_option("--config", config_path, "bench config JSON")->required();
    bench->add_option("--out", out_path, "output directory")->required();
    bench->add_option("--jobs", jobs, "worker count (default: cores; results independent of it)");
    bench->add_option("--seed", seed_arg, "override the base seed");
    bench->add_option("--metrics", metric_arg, "restrict to these metric ids")->delimiter(',');

    auto* report = app.add_subcommand("report", "re-aggregate a report from raw samples");
    report->add_option("--samples", samples_path, "raw_samples.json from a bench run")->required();
    report->add_option("--out", out_path, "output directory")->required();
    report->add_option("--metrics", metric_arg, "restrict to these metric ids")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        if (evaluate->parsed())
            return cmd_evaluate(labels_path, scores_path, preds_path, metric_arg, threshold_arg, params_path,
                                out_path);
        if (synth->parsed()) return cmd_synth(config_path, out_path, seed_arg);
        if (bench->parsed()) return cmd_bench(config_path, out_path, jobs, seed_arg, metric_arg);
        if (report->parsed()) return cmd_report(samples_path, out_path, metric_arg);
    } catch (const tsadm::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
