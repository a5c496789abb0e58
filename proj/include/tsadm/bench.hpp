#pragma once

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "tsadm/analysis.hpp"
#include "tsadm/io.hpp"
#include "tsadm/registry.hpp"
#include "tsadm/strategies.hpp"
#include "tsadm/synthgen.hpp"

namespace tsadm {

inline constexpr const char* kToolVersion = "0.1.0";

// Stderr logger gated by TSADM_LOG (debug|info|warn|error; default warn).
class Log {
public:
    enum Level { debug = 0, info = 1, warn = 2, error = 3 };

    static Level threshold() {
        static const Level lvl = [] {
            const char* env = std::getenv("TSADM_LOG");
            if (!env) return warn;
            const std::string s(env);
            if (s == "debug") return debug;
            if (s == "info") return info;
            if (s == "error") return error;
            return warn;
        }();
        return lvl;
    }

    static void emit(Level lvl, const std::string& msg) {
        static const char* names[] = {"debug", "info", "warn", "error"};
        if (lvl < threshold()) return;
        static std::mutex mu;
        std::lock_guard<std::mutex> lock(mu);
        std::cerr << "[tsadm " << names[lvl] << "] " << msg << "\n";
    }
};

struct BenchConfig {
    int schema_version = 1;
    std::uint64_t base_seed = 42;
    std::vector<std::size_t> lengths{5000, 10000};
    std::vector<double> contaminations{0.05, 0.10, 0.15, 0.20};
    std::size_t repetitions = 10;
    std::size_t outer_repeats = 5;
    std::size_t random_runs_per_group = 20;
    std::vector<double> gradient_alphas{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    std::size_t gradient_runs_per_alpha = 2;
    std::vector<Detector> detectors{Detector::moving_average, Detector::seasonal_naive, Detector::ar};
    std::vector<double> genuine_gradient_alphas{0.8, 0.9};
    std::vector<std::string> metrics;  // empty = all registered
    bool include_oracle = false;
    std::size_t oracle_iterations = 500;
    std::size_t oracle_restarts = 2;
    MetricParams params;
    std::size_t jobs = 0;  // 0 = hardware concurrency

    std::vector<std::string> metric_list() const { return metrics.empty() ? metric_ids() : metrics; }
};

inline BenchConfig bench_config_from_json(const nlohmann::json& j, const std::string& origin) {
    require_keys(j,
                 {"schema_version", "base_seed", "lengths", "contaminations", "repetitions", "outer_repeats",
                  "random_runs_per_group", "gradient_alphas", "gradient_runs_per_alpha", "detectors",
                  "genuine_gradient_alphas", "metrics", "include_oracle", "oracle_iterations",
                  "oracle_restarts", "jobs"},
                 origin);
    BenchConfig cfg;
    try {
        if (!j.contains("schema_version")) throw ParseError(origin + ": missing schema_version");
        cfg.schema_version = j.at("schema_version").get<int>();
        if (cfg.schema_version != 1) throw ParseError(origin + ": unsupported schema_version");
        if (j.contains("base_seed")) cfg.base_seed = j.at("base_seed").get<std::uint64_t>();
        if (j.contains("lengths")) cfg.lengths = j.at("lengths").get<std::vector<std::size_t>>();
        if (j.contains("contaminations"))
            cfg.contaminations = j.at("contaminations").get<std::vector<double>>();
        if (j.contains("repetitions")) cfg.repetitions = j.at("repetitions").get<std::size_t>();
        if (j.contains("outer_repeats")) cfg.outer_repeats = j.at("outer_repeats").get<std::size_t>();
        if (j.contains("random_runs_per_group"))
            cfg.random_runs_per_group = j.at("random_runs_per_group").get<std::size_t>();
        if (j.contains("gradient_alphas")) cfg.gradient_alphas = j.at("gradient_alphas").get<std::vector<double>>();
        if (j.contains("gradient_runs_per_alpha"))
            cfg.gradient_runs_per_alpha = j.at("gradient_runs_per_alpha").get<std::size_t>();
        if (j.contains("detectors")) {
            cfg.detectors.clear();
            for (const auto& name : j.at("detectors")) {
                const std::string s = name.get<std::string>();
                if (s == "moving_average") cfg.detectors.push_back(Detector::moving_average);
                else if (s == "seasonal_naive") cfg.detectors.push_back(Detector::seasonal_naive);
                else if (s == "ar") cfg.detectors.push_back(Detector::ar);
                else throw ParseError(origin + ": unknown detector '" + s + "'");
            }
        }
        if (j.contains("genuine_gradient_alphas"))
            cfg.genuine_gradient_alphas = j.at("genuine_gradient_alphas").get<std::vector<double>>();
        if (j.contains("metrics")) cfg.metrics = j.at("metrics").get<std::vector<std::string>>();
        if (j.contains("include_oracle")) cfg.include_oracle = j.at("include_oracle").get<bool>();
        if (j.contains("oracle_iterations")) cfg.oracle_iterations = j.at("oracle_iterations").get<std::size_t>();
        if (j.contains("oracle_restarts")) cfg.oracle_restarts = j.at("oracle_restarts").get<std::size_t>();
        if (j.contains("jobs")) cfg.jobs = j.at("jobs").get<std::size_t>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(origin + ": " + e.what());
    }
    for (const std::string& id : cfg.metric_list()) find_metric(id);
    if (cfg.metric_list().empty()) throw ParseError(origin + ": metric list is empty");
    return cfg;
}

inline nlohmann::json bench_config_to_json(const BenchConfig& cfg) {
    std::vector<std::string> det_names;
    for (Detector d : cfg.detectors) det_names.emplace_back(detector_name(d));
    return nlohmann::json{{"schema_version", cfg.schema_version},
                          {"base_seed", cfg.base_seed},
                          {"lengths", cfg.lengths},
                          {"contaminations", cfg.contaminations},
                          {"repetitions", cfg.repetitions},
                          {"outer_repeats", cfg.outer_repeats},
                          {"random_runs_per_group", cfg.random_runs_per_group},
                          {"gradient_alphas", cfg.gradient_alphas},
                          {"gradient_runs_per_alpha", cfg.gradient_runs_per_alpha},
                          {"detectors", det_names},
                          {"genuine_gradient_alphas", cfg.genuine_gradient_alphas},
                          {"metrics", cfg.metric_list()},
                          {"include_oracle", cfg.include_oracle},
                          {"oracle_iterations", cfg.oracle_iterations},
                          {"oracle_restarts", cfg.oracle_restarts}};
}

struct CellId {
    std::size_t outer = 0;
    std::size_t length = 0;
    double contamination = 0;
    std::size_t rep = 0;
};

// Per-cell per-metric samples, with the three random groups kept apart for
// the JSON breakdown (the report pools them).
struct CellResult {
    CellId id;
    std::uint64_t seed = 0;
    bool skipped = false;
    std::string skip_reason;
    std::map<std::string, MetricSamples> samples;
    std::map<std::string, std::map<std::string, std::vector<double>>> random_groups;
};

struct BenchResult {
    BenchConfig config;
    std::vector<CellResult> cells;
    std::vector<MetricReportRow> report;
};

namespace bench_detail {

struct RunRecord {
    std::string group;  // genuine | uniform | clustered | bernoulli | gradient | oracle
    double alpha = 0;
    const PredictionRun* run = nullptr;
};

inline void evaluate_into(CellResult& cell, const std::vector<std::string>& ids, const MetricParams& params,
                          const BinaryLabelSeries& labels, const std::string& group, double alpha,
                          const PredictionRun& run) {
    std::size_t true_points = 0, pred_points = 0;
    for (auto v : labels) true_points += v;
    for (auto v : run.predictions) pred_points += v;
    const ReportContext ctx{labels.size(), true_points, pred_points};
    for (const std::string& id : ids) {
        const MetricDef& def = find_metric(id);
        const double raw = def.eval(labels, &run.predictions, &run.scores, params);
        const double value = normalize_for_report(id, raw, ctx);
        MetricSamples& samples = cell.samples[id];
        if (group == "genuine") {
            samples.genuine.push_back(value);
        } else if (group == "gradient") {
            samples.by_alpha[alpha].push_back(value);
        } else if (group == "oracle") {
            samples.oracle.push_back(value);
        } else {
            samples.random.push_back(value);
            cell.random_groups[id][group].push_back(value);
        }
    }
}

inline CellResult run_cell(const BenchConfig& cfg, const CellId& id) {
    CellResult cell;
    cell.id = id;
    const std::uint64_t outer_seed = hash_combine(cfg.base_seed, id.outer);
    cell.seed = cell_seed(outer_seed, id.length, id.contamination, id.rep);
    const auto ids = cfg.metric_list();
    try {
        SynthConfig synth;
        synth.length = id.length;
        synth.contamination = id.contamination;
        synth.seed = cell.seed;
        const GeneratedDataset data = generate(synth);

        std::size_t run_idx = 0;
        for (Detector det : cfg.detectors) {
            const auto run = genuine_run(data.signal, data.labels, det, hash_combine(cell.seed, run_idx++));
            evaluate_into(cell, ids, cfg.params, data.labels, "genuine", 0, run);
        }
        for (double alpha : cfg.genuine_gradient_alphas) {
            const auto run = quality_gradient(data.labels, alpha, hash_combine(cell.seed, 1000 + run_idx++));
            evaluate_into(cell, ids, cfg.params, data.labels, "genuine", alpha, run);
        }
        for (std::size_t r = 0; r < cfg.random_runs_per_group; ++r) {
            evaluate_into(cell, ids, cfg.params, data.labels, "uniform", 0,
                          uniform_random(data.labels, hash_combine(cell.seed, 2000 + r)));
            evaluate_into(cell, ids, cfg.params, data.labels, "clustered", 0,
                          clustered_random(data.labels, hash_combine(cell.seed, 3000 + r)));
            evaluate_into(cell, ids, cfg.params, data.labels, "bernoulli", 0,
                          bernoulli_random(data.labels, hash_combine(cell.seed, 4000 + r)));
        }
        for (double alpha : cfg.gradient_alphas) {
            for (std::size_t r = 0; r < cfg.gradient_runs_per_alpha; ++r) {
                const auto run = quality_gradient(
                    data.labels, alpha,
                    hash_combine(cell.seed, 5000 + static_cast<std::uint64_t>(alpha * 1000) + r));
                evaluate_into(cell, ids, cfg.params, data.labels, "gradient", alpha, run);
            }
        }
        if (cfg.include_oracle) {
            std::size_t k = 0;
            for (const std::string& metric : ids) {
                const auto run = oracle_attack(data.labels, metric, 0.1, cfg.oracle_iterations,
                                               cfg.oracle_restarts, hash_combine(cell.seed, 6000 + k++),
                                               cfg.params);
                evaluate_into(cell, ids, cfg.params, data.labels, "oracle", 0, run);
            }
        }
    } catch (const std::exception& e) {
        cell.skipped = true;
        cell.skip_reason = e.what();
        cell.samples.clear();
        cell.random_groups.clear();
        Log::emit(Log::warn, "cell skipped: " + cell.skip_reason);
    }
    return cell;
}

}  // namespace bench_detail

inline std::vector<MetricReportRow> report_from_cells(const std::vector<CellResult>& cells,
                                                      const std::vector<std::string>& ids) {
    std::map<std::string, std::vector<MetricSamples>> per_cell;
    for (const std::string& id : ids) per_cell[id];
    for (const CellResult& cell : cells) {
        if (cell.skipped) continue;
        for (const std::string& id : ids) {
            const auto it = cell.samples.find(id);
            if (it != cell.samples.end()) per_cell[id].push_back(it->second);
        }
    }
    return build_report(per_cell, ids);
}

// Runs the full grid over a worker pool. Every (outer, cell) is seeded and
// evaluated independently and results are collected in canonical order, so
// the outcome does not depend on the worker count.
inline BenchResult run_bench(const BenchConfig& cfg) {
    std::vector<CellId> plan;
    for (std::size_t outer = 0; outer < cfg.outer_repeats; ++outer)
        for (std::size_t length : cfg.lengths)
            for (double c : cfg.contaminations)
                for (std::size_t rep = 0; rep < cfg.repetitions; ++rep)
                    plan.push_back(CellId{outer, length, c, rep});

    BenchResult result;
    result.config = cfg;
    result.cells.resize(plan.size());

    std::size_t jobs = cfg.jobs == 0 ? std::thread::hardware_concurrency() : cfg.jobs;
    if (jobs == 0) jobs = 1;
    jobs = std::min<std::size_t>(jobs, plan.size() == 0 ? 1 : plan.size());

    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> done{0};
    auto worker = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= plan.size()) break;
            result.cells[i] = bench_detail::run_cell(cfg, plan[i]);
            const std::size_t d = done.fetch_add(1) + 1;
            if (d % 16 == 0 || d == plan.size())
                Log::emit(Log::info,
                          "cells " + std::to_string(d) + "/" + std::to_string(plan.size()));
        }
    };
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t i = 0; i < jobs; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    result.report = report_from_cells(result.cells, cfg.metric_list());
    return result;
}

// ---- serialization ----

inline nlohmann::json raw_samples_to_json(const BenchResult& result) {
    nlohmann::json cells = nlohmann::json::array();
    for (const CellResult& cell : result.cells) {
        nlohmann::json jc{{"outer", cell.id.outer},
                          {"length", cell.id.length},
                          {"contamination", cell.id.contamination},
                          {"rep", cell.id.rep},
                          {"seed", cell.seed},
                          {"skipped", cell.skipped}};
        if (cell.skipped) {
            jc["skip_reason"] = cell.skip_reason;
        } else {
            nlohmann::json samples;
            for (const auto& [id, s] : cell.samples) {
                nlohmann::json js{{"genuine", s.genuine}, {"oracle", s.oracle}};
                nlohmann::json groups;
                const auto git = cell.random_groups.find(id);
                if (git != cell.random_groups.end())
                    for (const auto& [group, values] : git->second) groups[group] = values;
                js["random"] = groups;
                nlohmann::json by_alpha;
                for (const auto& [alpha, values] : s.by_alpha) by_alpha[format_double(alpha)] = values;
                js["by_alpha"] = by_alpha;
                samples[id] = js;
            }
            jc["samples"] = samples;
        }
        cells.push_back(jc);
    }
    return nlohmann::json{{"schema_version", 1},
                          {"tool_version", kToolVersion},
                          {"metrics", result.config.metric_list()},
                          {"config", bench_config_to_json(result.config)},
                          {"cells", cells}};
}

inline BenchResult raw_samples_from_json(const nlohmann::json& j, const std::string& origin) {
    BenchResult result;
    try {
        if (j.at("schema_version").get<int>() != 1) throw ParseError(origin + ": unsupported schema_version");
        result.config = bench_config_from_json(j.at("config"), origin);
        for (const auto& jc : j.at("cells")) {
            CellResult cell;
            cell.id.outer = jc.at("outer").get<std::size_t>();
            cell.id.length = jc.at("length").get<std::size_t>();
            cell.id.contamination = jc.at("contamination").get<double>();
            cell.id.rep = jc.at("rep").get<std::size_t>();
            cell.seed = jc.at("seed").get<std::uint64_t>();
            cell.skipped = jc.at("skipped").get<bool>();
            if (cell.skipped) {
                cell.skip_reason = jc.value("skip_reason", "");
            } else {
                for (const auto& [id, js] : jc.at("samples").items()) {
                    MetricSamples s;
                    s.genuine = js.at("genuine").get<std::vector<double>>();
                    s.oracle = js.at("oracle").get<std::vector<double>>();
                    for (const auto& [group, values] : js.at("random").items()) {
                        const auto v = values.get<std::vector<double>>();
                        cell.random_groups[id][group] = v;
                        s.random.insert(s.random.end(), v.begin(), v.end());
                    }
                    for (const auto& [alpha, values] : js.at("by_alpha").items())
                        s.by_alpha[std::stod(alpha)] = values.get<std::vector<double>>();
                    cell.samples[id] = s;
                }
            }
            result.cells.push_back(std::move(cell));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(origin + ": " + e.what());
    }
    result.report = report_from_cells(result.cells, result.config.metric_list());
    return result;
}

inline std::string report_to_csv(const std::vector<MetricReportRow>& rows) {
    std::string out = "metric,avg_effect_size,avg_auc,avg_genuine_score,avg_random_score,monotonicity\n";
    for (const MetricReportRow& r : rows) {
        out += r.metric_id;
        out += ',';
        out += format_double(r.avg_effect_size);
        out += ',';
        out += format_double(r.avg_auc);
        out += ',';
        out += format_double(r.avg_genuine);
        out += ',';
        out += format_double(r.avg_random);
        out += ',';
        out += format_double(r.monotonicity);
        out += '\n';
    }
    return out;
}

inline nlohmann::json report_to_json(const BenchResult& result) {
    nlohmann::json rows = nlohmann::json::array();
    for (const MetricReportRow& r : result.report) {
        // per-strategy breakdown pooled over cells
        std::map<std::string, std::pair<double, std::size_t>> group_acc;
        std::map<std::string, std::pair<double, std::size_t>> alpha_acc;
        for (const CellResult& cell : result.cells) {
            if (cell.skipped) continue;
            const auto git = cell.random_groups.find(r.metric_id);
            if (git != cell.random_groups.end())
                for (const auto& [group, values] : git->second)
                    for (double v : values) {
                        group_acc[group].first += v;
                        group_acc[group].second += 1;
                    }
            const auto sit = cell.samples.find(r.metric_id);
            if (sit != cell.samples.end())
                for (const auto& [alpha, values] : sit->second.by_alpha)
                    for (double v : values) {
                        alpha_acc[format_double(alpha)].first += v;
                        alpha_acc[format_double(alpha)].second += 1;
                    }
        }
        nlohmann::json groups, alphas;
        for (const auto& [g, acc] : group_acc) groups[g] = acc.first / static_cast<double>(acc.second);
        for (const auto& [a, acc] : alpha_acc) alphas[a] = acc.first / static_cast<double>(acc.second);
        rows.push_back({{"metric", r.metric_id},
                        {"avg_effect_size", r.avg_effect_size},
                        {"avg_auc", r.avg_auc},
                        {"avg_genuine_score", r.avg_genuine},
                        {"avg_random_score", r.avg_random},
                        {"monotonicity", r.monotonicity},
                        {"degenerate_cells", r.degenerate_cells},
                        {"random_group_means", groups},
                        {"gradient_alpha_means", alphas}});
    }
    std::size_t skipped = 0;
    nlohmann::json skips = nlohmann::json::array();
    for (const CellResult& cell : result.cells)
        if (cell.skipped) {
            ++skipped;
            skips.push_back({{"outer", cell.id.outer},
                             {"length", cell.id.length},
                             {"contamination", cell.id.contamination},
                             {"rep", cell.id.rep},
                             {"reason", cell.skip_reason}});
        }
    return nlohmann::json{{"schema_version", 1},
                          {"tool_version", kToolVersion},
                          {"rows", rows},
                          {"cells_total", result.cells.size()},
                          {"cells_skipped", skipped},
                          {"skips", skips}};
}

// Plot-data emission (CSV/JSON only, consumed by any plotting tool).
inline std::string score_distributions_csv(const BenchResult& result) {
    std::string out = "metric,strategy,value\n";
    for (const CellResult& cell : result.cells) {
        if (cell.skipped) continue;
        for (const auto& [id, s] : cell.samples) {
            for (double v : s.genuine) out += id + ",genuine," + format_double(v) + "\n";
            const auto git = cell.random_groups.find(id);
            if (git != cell.random_groups.end())
                for (const auto& [group, values] : git->second)
                    for (double v : values) out += id + "," + group + "," + format_double(v) + "\n";
            for (const auto& [alpha, values] : s.by_alpha)
                for (double v : values) out += id + ",gradient@" + format_double(alpha) + "," + format_double(v) + "\n";
            for (double v : s.oracle) out += id + ",oracle," + format_double(v) + "\n";
        }
    }
    return out;
}

inline std::string heatmap_csv(const BenchResult& result) {
    std::string out = "metric,outer,length,contamination,rep,separability_auc,effect_size\n";
    for (const CellResult& cell : result.cells) {
        if (cell.skipped) continue;
        for (const auto& [id, s] : cell.samples) {
            double d = 0, auc = 0.5;
            if (s.genuine.size() >= 2 && s.random.size() >= 2) {
                d = cohens_d(s.genuine, s.random);
                auc = separability_auc(s.genuine, s.random);
            }
            out += id + ',' + std::to_string(cell.id.outer) + ',' + std::to_string(cell.id.length) + ',' +
                   format_double(cell.id.contamination) + ',' + std::to_string(cell.id.rep) + ',' +
                   format_double(auc) + ',' + format_double(d) + '\n';
        }
    }
    return out;
}

inline std::string scatter_csv(const BenchResult& result) {
    std::string out = "metric,avg_effect_size,avg_auc\n";
    for (const MetricReportRow& r : result.report)
        out += r.metric_id + ',' + format_double(r.avg_effect_size) + ',' + format_double(r.avg_auc) + '\n';
    return out;
}

inline nlohmann::json bench_manifest(const BenchConfig& cfg) {
    const std::string canonical = bench_config_to_json(cfg).dump();
    return nlohmann::json{{"schema_version", 1},
                          {"tool_version", kToolVersion},
                          {"config_digest", hex64(fnv1a64(canonical))},
                          {"base_seed", cfg.base_seed},
                          {"grid",
                           {{"lengths", cfg.lengths},
                            {"contaminations", cfg.contaminations},
                            {"repetitions", cfg.repetitions},
                            {"outer_repeats", cfg.outer_repeats}}},
                          {"metrics", cfg.metric_list()}};
}

// Writes the full output set; cmd_report reuses the same writers so a
// rebuilt report is byte-identical.
inline void write_bench_outputs(const BenchResult& result, const std::filesystem::path& out_dir,
                                bool with_raw_samples = true) {
    std::filesystem::create_directories(out_dir);
    std::filesystem::create_directories(out_dir / "plots");
    write_file(out_dir / "metric_report.csv", report_to_csv(result.report));
    write_file(out_dir / "metric_report.json", report_to_json(result).dump(2) + "\n");
    if (with_raw_samples)
        write_file(out_dir / "raw_samples.json", raw_samples_to_json(result).dump() + "\n");
    write_file(out_dir / "plots" / "score_distributions.csv", score_distributions_csv(result));
    write_file(out_dir / "plots" / "heatmap.csv", heatmap_csv(result));
    write_file(out_dir / "plots" / "effect_auc_scatter.csv", scatter_csv(result));
    write_file(out_dir / "manifest.json", bench_manifest(result.config).dump(2) + "\n");
}

}  // namespace tsadm
