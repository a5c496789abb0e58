#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "tsadm/labels.hpp"
#include "tsadm/registry.hpp"

namespace tsadm {

// Metric values collected for one grid cell: genuine runs, pooled random
// runs, the quality-gradient values per alpha, and optional oracle runs.
struct MetricSamples {
    std::vector<double> genuine;
    std::vector<double> random;
    std::map<double, std::vector<double>> by_alpha;
    std::vector<double> oracle;
};

struct MetricReportRow {
    std::string metric_id;
    double avg_effect_size = 0;
    double avg_auc = 0;
    double avg_genuine = 0;
    double avg_random = 0;
    double monotonicity = 0;
    std::size_t degenerate_cells = 0;  // cells whose effect size was an inf sentinel
};

namespace analysis_detail {

inline double mean_of(const std::vector<double>& v) {
    double s = 0;
    for (double x : v) s += x;
    return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

inline double sample_var(const std::vector<double>& v) {
    const double m = mean_of(v);
    double s = 0;
    for (double x : v) s += (x - m) * (x - m);
    return v.size() > 1 ? s / static_cast<double>(v.size() - 1) : 0.0;
}

// Midranks (1-based, ties averaged).
inline std::vector<double> midranks(const std::vector<double>& v) {
    std::vector<std::size_t> order(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> rank(v.size(), 0);
    std::size_t i = 0;
    while (i < v.size()) {
        std::size_t j = i;
        while (j < v.size() && v[order[j]] == v[order[i]]) ++j;
        const double r = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j));
        for (std::size_t k = i; k < j; ++k) rank[order[k]] = r;
        i = j;
    }
    return rank;
}

inline double pearson(const std::vector<double>& a, const std::vector<double>& b) {
    const double ma = mean_of(a), mb = mean_of(b);
    double num = 0, va = 0, vb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num += (a[i] - ma) * (b[i] - mb);
        va += (a[i] - ma) * (a[i] - ma);
        vb += (b[i] - mb) * (b[i] - mb);
    }
    if (va <= 0 || vb <= 0) return 0.0;
    return num / std::sqrt(va * vb);
}

}  // namespace analysis_detail

// Standardized mean difference with the pooled std. Returns +-inf when the
// pooled std vanishes but the means differ, 0 when both vanish.
inline double cohens_d(const std::vector<double>& genuine, const std::vector<double>& random_group) {
    if (genuine.size() < 2 || random_group.size() < 2)
        throw ShapeError("cohens_d needs at least two samples per group");
    using analysis_detail::mean_of;
    using analysis_detail::sample_var;
    const double ng = static_cast<double>(genuine.size());
    const double nr = static_cast<double>(random_group.size());
    const double pooled =
        std::sqrt(((ng - 1) * sample_var(genuine) + (nr - 1) * sample_var(random_group)) / (ng + nr - 2));
    const double diff = mean_of(genuine) - mean_of(random_group);
    if (pooled <= 0.0) {
        if (diff == 0.0) return 0.0;
        return diff > 0 ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
    }
    return diff / pooled;
}

// Rank AUC treating genuine as the positive class, ties counted half.
inline double separability_auc(const std::vector<double>& genuine, const std::vector<double>& random_group) {
    if (genuine.empty() || random_group.empty()) throw ShapeError("separability_auc needs both groups");
    std::vector<double> all;
    all.reserve(genuine.size() + random_group.size());
    all.insert(all.end(), genuine.begin(), genuine.end());
    all.insert(all.end(), random_group.begin(), random_group.end());
    const auto rank = analysis_detail::midranks(all);
    double rank_sum = 0;
    for (std::size_t i = 0; i < genuine.size(); ++i) rank_sum += rank[i];
    const double ng = static_cast<double>(genuine.size());
    const double nr = static_cast<double>(random_group.size());
    return (rank_sum - ng * (ng + 1) / 2.0) / (ng * nr);
}

// Spearman rho between the quality levels and the per-level mean scores,
// tie-corrected via midranks. All-constant means give 0.
inline double monotonicity_rho(const std::map<double, std::vector<double>>& by_alpha) {
    if (by_alpha.size() < 3) throw TooFewLevels(by_alpha.size());
    std::vector<double> alphas, means;
    for (const auto& [alpha, values] : by_alpha) {
        alphas.push_back(alpha);
        means.push_back(analysis_detail::mean_of(values));
    }
    return analysis_detail::pearson(analysis_detail::midranks(alphas), analysis_detail::midranks(means));
}

struct ReportContext {
    std::size_t series_length = 0;
    std::size_t true_points = 0;
    std::size_t predicted_points = 0;
};

// Map every metric onto a higher-is-better [0,1] scale for aggregation:
// NAB from [0,100] with sub-null negatives clamped, TD inverted against its
// worst-case bound L*(|A|+|B|), all others pass through.
inline double normalize_for_report(const std::string& metric_id, double raw, const ReportContext& ctx) {
    find_metric(metric_id);  // throws UnknownMetric for unregistered ids
    if (metric_id == "nab") return std::clamp(raw / 100.0, 0.0, 1.0);
    if (metric_id == "td") {
        const double td_max = static_cast<double>(ctx.series_length) *
                              static_cast<double>(ctx.true_points + ctx.predicted_points);
        if (td_max <= 0) return 1.0;
        return std::clamp(1.0 - raw / td_max, 0.0, 1.0);
    }
    return raw;
}

// One report row computed from a single pooled sample set.
inline MetricReportRow report_row(const std::string& metric_id, const MetricSamples& samples) {
    MetricReportRow row;
    row.metric_id = metric_id;
    const double d = cohens_d(samples.genuine, samples.random);
    if (std::isinf(d)) {
        row.degenerate_cells = 1;
        row.avg_effect_size = 0;
    } else {
        row.avg_effect_size = d;
    }
    row.avg_auc = separability_auc(samples.genuine, samples.random);
    row.avg_genuine = analysis_detail::mean_of(samples.genuine);
    row.avg_random = analysis_detail::mean_of(samples.random);
    row.monotonicity = samples.by_alpha.size() >= 3 ? monotonicity_rho(samples.by_alpha) : 0.0;
    return row;
}

// Table-style report: per-cell indicators averaged over cells (inf effect
// sizes excluded from the average and counted), rows sorted by effect size
// descending with metric id as the tiebreak.
inline std::vector<MetricReportRow> build_report(
    const std::map<std::string, std::vector<MetricSamples>>& per_cell_samples,
    const std::vector<std::string>& required_metrics = {}) {
    for (const std::string& id : required_metrics)
        if (per_cell_samples.find(id) == per_cell_samples.end()) throw MissingMetric(id);

    std::vector<MetricReportRow> rows;
    for (const auto& [id, cells] : per_cell_samples) {
        MetricReportRow row;
        row.metric_id = id;
        double d_sum = 0, auc_sum = 0, g_sum = 0, r_sum = 0, rho_sum = 0;
        std::size_t d_n = 0, rho_n = 0;
        for (const MetricSamples& cell : cells) {
            const double d = cohens_d(cell.genuine, cell.random);
            if (std::isinf(d)) {
                ++row.degenerate_cells;
            } else {
                d_sum += d;
                ++d_n;
            }
            auc_sum += separability_auc(cell.genuine, cell.random);
            g_sum += analysis_detail::mean_of(cell.genuine);
            r_sum += analysis_detail::mean_of(cell.random);
            if (cell.by_alpha.size() >= 3) {
                rho_sum += monotonicity_rho(cell.by_alpha);
                ++rho_n;
            }
        }
        const double n_cells = static_cast<double>(cells.size());
        row.avg_effect_size = d_n ? d_sum / static_cast<double>(d_n) : 0.0;
        row.avg_auc = cells.empty() ? 0.0 : auc_sum / n_cells;
        row.avg_genuine = cells.empty() ? 0.0 : g_sum / n_cells;
        row.avg_random = cells.empty() ? 0.0 : r_sum / n_cells;
        row.monotonicity = rho_n ? rho_sum / static_cast<double>(rho_n) : 0.0;
        rows.push_back(row);
    }
    std::sort(rows.begin(), rows.end(), [](const MetricReportRow& a, const MetricReportRow& b) {
        if (a.avg_effect_size != b.avg_effect_size) return a.avg_effect_size > b.avg_effect_size;
        return a.metric_id < b.metric_id;
    });
    return rows;
}

inline std::vector<MetricReportRow> build_report(const std::map<std::string, MetricSamples>& samples,
                                                 const std::vector<std::string>& required_metrics = {}) {
    std::map<std::string, std::vector<MetricSamples>> per_cell;
    for (const auto& [id, s] : samples) per_cell[id] = {s};
    return build_report(per_cell, required_metrics);
}

}  // namespace tsadm
