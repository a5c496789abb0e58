#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "tsadm/labels.hpp"

namespace tsadm {

struct VusParams {
    std::size_t w_max = 4;  // maximum tolerance window
};

namespace curve_detail {

inline std::vector<std::size_t> order_by_score_desc(const ScoreSeries& scores) {
    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return scores[a] > scores[b] || (scores[a] == scores[b] && a < b);
    });
    return order;
}

// Weighted ROC area over the descending threshold sweep; tie groups advance
// both axes at once, so the trapezoid matches the rank statistic with ties
// counted half.
inline double weighted_auc_roc(const ScoreSeries& scores, const std::vector<std::size_t>& order,
                               const std::vector<double>& pos_w, const std::vector<double>& neg_w,
                               double pos_total, double neg_total) {
    double tp = 0, fp = 0, area = 0;
    std::size_t i = 0;
    const std::size_t n = order.size();
    while (i < n) {
        std::size_t j = i;
        double d_tp = 0, d_fp = 0;
        while (j < n && scores[order[j]] == scores[order[i]]) {
            d_tp += pos_w[order[j]];
            d_fp += neg_w[order[j]];
            ++j;
        }
        area += d_fp * (tp + 0.5 * d_tp);
        tp += d_tp;
        fp += d_fp;
        i = j;
    }
    (void)fp;
    return area / (pos_total * neg_total);
}

// Weighted PR area, step ("last precision") interpolation.
inline double weighted_auc_pr(const ScoreSeries& scores, const std::vector<std::size_t>& order,
                              const std::vector<double>& pos_w, const std::vector<double>& neg_w,
                              double pos_total) {
    double tp = 0, fp = 0, area = 0, prev_recall = 0;
    std::size_t i = 0;
    const std::size_t n = order.size();
    while (i < n) {
        std::size_t j = i;
        while (j < n && scores[order[j]] == scores[order[i]]) {
            tp += pos_w[order[j]];
            fp += neg_w[order[j]];
            ++j;
        }
        const double recall = tp / pos_total;
        const double precision = tp + fp > 0 ? tp / (tp + fp) : 0.0;
        area += (recall - prev_recall) * precision;
        prev_recall = recall;
        i = j;
    }
    return area;
}

}  // namespace curve_detail

inline double auc_roc(const BinaryLabelSeries& y, const ScoreSeries& scores) {
    if (y.size() != scores.size()) throw LengthMismatch(y.size(), scores.size());
    double pos = 0;
    for (auto v : y) pos += v;
    const double neg = static_cast<double>(y.size()) - pos;
    if (pos == 0 || neg == 0) throw SingleClass();
    std::vector<double> pos_w(y.size()), neg_w(y.size());
    for (std::size_t t = 0; t < y.size(); ++t) {
        pos_w[t] = y[t] ? 1.0 : 0.0;
        neg_w[t] = y[t] ? 0.0 : 1.0;
    }
    const auto order = curve_detail::order_by_score_desc(scores);
    return curve_detail::weighted_auc_roc(scores, order, pos_w, neg_w, pos, neg);
}

inline double auc_pr(const BinaryLabelSeries& y, const ScoreSeries& scores) {
    if (y.size() != scores.size()) throw LengthMismatch(y.size(), scores.size());
    double pos = 0;
    for (auto v : y) pos += v;
    if (pos == 0) throw NoPositives();
    std::vector<double> pos_w(y.size()), neg_w(y.size());
    for (std::size_t t = 0; t < y.size(); ++t) {
        pos_w[t] = y[t] ? 1.0 : 0.0;
        neg_w[t] = y[t] ? 0.0 : 1.0;
    }
    const auto order = curve_detail::order_by_score_desc(scores);
    return curve_detail::weighted_auc_pr(scores, order, pos_w, neg_w, pos);
}

// Exhaustive search over all thresholds theta in the score values, with the
// prediction rule s >= theta.
inline double best_pwf(const BinaryLabelSeries& y, const ScoreSeries& scores, double beta) {
    if (y.size() != scores.size()) throw LengthMismatch(y.size(), scores.size());
    double pos = 0;
    for (auto v : y) pos += v;
    if (pos == 0) throw NoPositives();
    const auto order = curve_detail::order_by_score_desc(scores);
    double tp = 0, fp = 0, best = 0;
    std::size_t i = 0;
    const std::size_t n = order.size();
    while (i < n) {
        std::size_t j = i;
        while (j < n && scores[order[j]] == scores[order[i]]) {
            y[order[j]] ? ++tp : ++fp;
            ++j;
        }
        const double p = tp / (tp + fp);
        const double r = tp / pos;
        best = std::max(best, fbeta(p, r, beta));
        i = j;
    }
    return best;
}

// Soft labels with tolerance window w: y_t = max over nearby positives of
// 1 - d/w (1 at d = 0; w = 0 returns the labels unchanged).
inline std::vector<double> soft_labels(const BinaryLabelSeries& y, std::size_t w) {
    const std::size_t n = y.size();
    std::vector<double> out(n, 0.0);
    if (w == 0) {
        for (std::size_t t = 0; t < n; ++t) out[t] = y[t] ? 1.0 : 0.0;
        return out;
    }
    // two-pass distance transform to the nearest positive
    const double inf = 1e18;
    std::vector<double> dist(n, inf);
    for (std::size_t t = 0; t < n; ++t) {
        if (y[t]) dist[t] = 0;
        else if (t > 0) dist[t] = dist[t - 1] + 1;
    }
    for (std::size_t t = n; t-- > 1;) dist[t - 1] = std::min(dist[t - 1], dist[t] + 1);
    for (std::size_t t = 0; t < n; ++t)
        out[t] = dist[t] <= static_cast<double>(w) ? 1.0 - dist[t] / static_cast<double>(w) : 0.0;
    return out;
}

enum class CurveKind { roc, pr };

// Volume under the surface: per-window AUC on soft labels (soft value as
// fractional positive weight, complement as negative weight), aggregated by
// unit-step trapezoid over w = 0..w_max.
inline double vus(const BinaryLabelSeries& y, const ScoreSeries& scores, const VusParams& params,
                  CurveKind kind) {
    if (y.size() != scores.size()) throw LengthMismatch(y.size(), scores.size());
    double pos = 0;
    for (auto v : y) pos += v;
    if (pos == 0 || pos == static_cast<double>(y.size())) throw SingleClass();
    const auto order = curve_detail::order_by_score_desc(scores);
    std::vector<double> aucs;
    aucs.reserve(params.w_max + 1);
    for (std::size_t w = 0; w <= params.w_max; ++w) {
        const auto soft = soft_labels(y, w);
        std::vector<double> pos_w(y.size()), neg_w(y.size());
        double pos_total = 0, neg_total = 0;
        for (std::size_t t = 0; t < y.size(); ++t) {
            pos_w[t] = soft[t];
            neg_w[t] = 1.0 - soft[t];
            pos_total += pos_w[t];
            neg_total += neg_w[t];
        }
        aucs.push_back(kind == CurveKind::roc
                           ? curve_detail::weighted_auc_roc(scores, order, pos_w, neg_w, pos_total, neg_total)
                           : curve_detail::weighted_auc_pr(scores, order, pos_w, neg_w, pos_total));
    }
    if (params.w_max == 0) return aucs[0];
    double integral = 0.5 * (aucs.front() + aucs.back());
    for (std::size_t w = 1; w < params.w_max; ++w) integral += aucs[w];
    return integral / static_cast<double>(params.w_max);
}

// Precision within the top-K alerts, K = number of true anomalies; the
// threshold is the K-th largest score and ties at it are included.
inline double p_at_k(const BinaryLabelSeries& y, const ScoreSeries& scores) {
    if (y.size() != scores.size()) throw LengthMismatch(y.size(), scores.size());
    std::size_t k = 0;
    for (auto v : y) k += v;
    if (k == 0) throw NoAnomalies();
    ScoreSeries sorted = scores;
    std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(k - 1), sorted.end(),
                     std::greater<>());
    const double tau = sorted[k - 1];
    double hits = 0, alerts = 0;
    for (std::size_t t = 0; t < y.size(); ++t) {
        if (scores[t] >= tau) {
            alerts += 1;
            hits += y[t];
        }
    }
    return alerts > 0 ? hits / alerts : 0.0;
}

}  // namespace tsadm
