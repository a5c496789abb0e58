#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "tsadm/labels.hpp"

namespace tsadm {

struct PateParams {
    std::vector<std::size_t> eps_grid{100, 200};   // pre-buffer sizes
    std::vector<std::size_t> delta_grid{100, 200}; // post-buffer sizes
};

namespace pate_detail {

enum class Region : std::uint8_t { outside, pre, in_range, post };

struct RegionMap {
    std::vector<Region> kind;
    std::vector<double> weight;  // buffer credit; 1 inside the true range
    double true_total = 0;       // number of true-range points
};

// Region construction per segment: pre-buffer clipped at 0 and at the end of
// the previous post-buffer, post-buffer clipped before the next segment and
// at the series end. Buffer weights follow the distance-sum construction with
// the unclipped anchors max(0, start-eps) and min(end+delta, T-1).
inline RegionMap build_regions(const SegmentSet& gt, std::size_t t_len, std::size_t eps, std::size_t delta) {
    RegionMap map;
    map.kind.assign(t_len, Region::outside);
    map.weight.assign(t_len, 0.0);
    const auto& segs = gt.segments();
    std::ptrdiff_t prev_blocked = -1;  // last index claimed by a previous true/post region
    for (std::size_t i = 0; i < segs.size(); ++i) {
        const Segment& seg = segs[i];
        const double a_s = static_cast<double>(seg.start);
        const double a_e = static_cast<double>(seg.end);

        // pre-buffer; sum_k (k - t) over the segment in closed form
        const double seg_len = static_cast<double>(seg.length());
        const double seg_sum = 0.5 * seg_len * (a_s + a_e);
        if (eps > 0 && seg.start > 0) {
            const std::size_t lo = std::max<std::ptrdiff_t>(
                {0, static_cast<std::ptrdiff_t>(seg.start) - static_cast<std::ptrdiff_t>(eps),
                 prev_blocked + 1});
            const double anchor = a_s >= static_cast<double>(eps) ? a_s - static_cast<double>(eps) : 0.0;
            const double denom = seg_sum - seg_len * anchor;
            for (std::size_t t = lo; t + 1 <= seg.start; ++t) {
                const double num = seg_sum - seg_len * static_cast<double>(t);
                map.kind[t] = Region::pre;
                map.weight[t] = denom > 0.0 ? std::max(0.0, 1.0 - num / denom) : 0.0;
            }
        }

        for (std::size_t t = seg.start; t <= seg.end; ++t) {
            map.kind[t] = Region::in_range;
            map.weight[t] = 1.0;
        }
        map.true_total += static_cast<double>(seg.length());
        prev_blocked = static_cast<std::ptrdiff_t>(seg.end);

        // post-buffer; sum_k (t - k) in closed form
        if (delta > 0 && seg.end + 1 < t_len) {
            std::size_t hi = std::min(seg.end + delta, t_len - 1);
            if (i + 1 < segs.size() && segs[i + 1].start > 0) hi = std::min(hi, segs[i + 1].start - 1);
            const double anchor = std::min(a_e + static_cast<double>(delta), static_cast<double>(t_len - 1));
            const double denom = seg_len * anchor - seg_sum;
            for (std::size_t t = seg.end + 1; t <= hi; ++t) {
                const double num = seg_len * static_cast<double>(t) - seg_sum;
                map.kind[t] = Region::post;
                map.weight[t] = denom > 0.0 ? std::max(0.0, 1.0 - num / denom) : 0.0;
                prev_blocked = static_cast<std::ptrdiff_t>(t);
            }
        }
    }
    return map;
}

struct WeightedCounts {
    double w_tp = 0, w_fp = 0, w_fn = 0;
};

inline WeightedCounts binary_counts(const RegionMap& map, const BinaryLabelSeries& yhat) {
    WeightedCounts c;
    double covered_true = 0;
    for (std::size_t t = 0; t < yhat.size(); ++t) {
        if (!yhat[t]) continue;
        switch (map.kind[t]) {
            case Region::in_range:
                c.w_tp += 1.0;
                covered_true += 1.0;
                break;
            case Region::pre:
            case Region::post:
                c.w_tp += map.weight[t];
                c.w_fp += 1.0 - map.weight[t];
                break;
            case Region::outside:
                c.w_fp += 1.0;
                break;
        }
    }
    c.w_fn = map.true_total - covered_true;
    return c;
}

inline double f1_of(const WeightedCounts& c) {
    const double p = c.w_tp + c.w_fp > 0 ? c.w_tp / (c.w_tp + c.w_fp) : 0.0;
    const double r = c.w_tp + c.w_fn > 0 ? c.w_tp / (c.w_tp + c.w_fn) : 0.0;
    return fbeta(p, r, 1.0);
}

// Weighted AUC-PR over the descending threshold sweep (theta over all unique
// score values; prediction rule s >= theta), step interpolation.
inline double weighted_auc_pr(const RegionMap& map, const ScoreSeries& scores,
                              const std::vector<std::size_t>& order_desc) {
    double w_tp = 0, w_fp = 0, covered_true = 0;
    double auc = 0.0, prev_recall = 0.0;
    std::size_t i = 0;
    const std::size_t n = order_desc.size();
    while (i < n) {
        std::size_t j = i;
        while (j < n && scores[order_desc[j]] == scores[order_desc[i]]) {
            const std::size_t t = order_desc[j];
            switch (map.kind[t]) {
                case Region::in_range:
                    w_tp += 1.0;
                    covered_true += 1.0;
                    break;
                case Region::pre:
                case Region::post:
                    w_tp += map.weight[t];
                    w_fp += 1.0 - map.weight[t];
                    break;
                case Region::outside:
                    w_fp += 1.0;
                    break;
            }
            ++j;
        }
        const double w_fn = map.true_total - covered_true;
        const double recall = w_tp + w_fn > 0 ? w_tp / (w_tp + w_fn) : 0.0;
        const double precision = w_tp + w_fp > 0 ? w_tp / (w_tp + w_fp) : 0.0;
        auc += (recall - prev_recall) * precision;
        prev_recall = recall;
        i = j;
    }
    return auc;
}

}  // namespace pate_detail

// PATE-F1: mean weighted F1 over the (eps, delta) buffer grid for binary
// predictions.
inline double pate_f1(const BinaryLabelSeries& y, const BinaryLabelSeries& yhat, const PateParams& params) {
    require_same_length(y, yhat);
    if (params.eps_grid.empty() || params.delta_grid.empty()) throw EmptyGrid();
    const SegmentSet gt = segments_from_labels(y);
    if (gt.empty()) throw NoGroundTruthSegments();
    double sum = 0.0;
    for (std::size_t eps : params.eps_grid)
        for (std::size_t delta : params.delta_grid) {
            const auto map = pate_detail::build_regions(gt, y.size(), eps, delta);
            sum += pate_detail::f1_of(pate_detail::binary_counts(map, yhat));
        }
    return sum / static_cast<double>(params.eps_grid.size() * params.delta_grid.size());
}

// PATE: mean weighted AUC-PR over the buffer grid, sweeping thresholds over
// the score series.
inline double pate(const BinaryLabelSeries& y, const ScoreSeries& scores, const PateParams& params) {
    if (y.size() != scores.size()) throw LengthMismatch(y.size(), scores.size());
    if (params.eps_grid.empty() || params.delta_grid.empty()) throw EmptyGrid();
    const SegmentSet gt = segments_from_labels(y);
    if (gt.empty()) throw NoGroundTruthSegments();
    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return scores[a] > scores[b] || (scores[a] == scores[b] && a < b);
    });
    double sum = 0.0;
    for (std::size_t eps : params.eps_grid)
        for (std::size_t delta : params.delta_grid) {
            const auto map = pate_detail::build_regions(gt, y.size(), eps, delta);
            sum += pate_detail::weighted_auc_pr(map, scores, order);
        }
    return sum / static_cast<double>(params.eps_grid.size() * params.delta_grid.size());
}

}  // namespace tsadm
