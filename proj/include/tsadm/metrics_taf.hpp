#pragma once

#include <cmath>
#include <vector>

#include "tsadm/labels.hpp"

namespace tsadm {

struct TaFParams {
    double alpha = 0.5;     // detection/position mix, in [0,1]
    double theta = 0.5;     // coverage threshold, in (0,1]
    std::size_t delta = 0;  // fuzzy window length behind each gt segment
};

struct ETaFParams {
    double theta_r = 0.5;   // prune gt segments with recall below this
    double theta_p = 0.5;   // prune predicted segments with precision below this
    std::size_t delta = 0;  // fuzzy window, as in TaF
};

namespace taf_detail {

// Logistic decay over the delta points trailing a gt segment; d is 1-based
// distance past the segment end. Centered so sig(delta/2) = 0.5.
inline double decay_weight(std::size_t d, std::size_t delta) {
    if (delta == 0) return 0.0;
    const double x = 6.0 * (2.0 * static_cast<double>(d) / static_cast<double>(delta) - 1.0);
    return 1.0 / (1.0 + std::exp(x));
}

// Per-position credit a prediction earns: 1 inside a gt segment, the decay
// weight inside a trailing fuzzy window (clipped before the next segment),
// 0 elsewhere. Mask ignores gt segments flagged false (for eTaF pruning).
inline std::vector<double> position_credit(const SegmentSet& gt, std::size_t t_len, std::size_t delta,
                                           const std::vector<std::uint8_t>* keep = nullptr) {
    std::vector<double> w(t_len, 0.0);
    const auto& gs = gt.segments();
    for (std::size_t i = 0; i < gs.size(); ++i) {
        if (keep && !(*keep)[i]) continue;
        for (std::size_t t = gs[i].start; t <= gs[i].end; ++t) w[t] = 1.0;
        if (delta == 0) continue;
        std::size_t zone_end = gs[i].end + delta;
        if (i + 1 < gs.size()) zone_end = std::min(zone_end, gs[i + 1].start - 1);
        zone_end = std::min(zone_end, t_len - 1);
        for (std::size_t t = gs[i].end + 1; t <= zone_end && t < t_len; ++t)
            w[t] = std::max(w[t], decay_weight(t - gs[i].end, delta));
    }
    return w;
}

// Point-level view of a segment set restricted to the flagged entries.
inline BinaryLabelSeries masked_points(const SegmentSet& set, std::size_t t_len,
                                       const std::vector<std::uint8_t>& keep) {
    BinaryLabelSeries pts(t_len, 0);
    const auto& ss = set.segments();
    for (std::size_t j = 0; j < ss.size(); ++j) {
        if (!keep[j]) continue;
        for (std::size_t t = ss[j].start; t <= ss[j].end; ++t) pts[t] = 1;
    }
    return pts;
}

// Overlap score of one gt segment against predicted points: hits inside the
// segment plus decayed hits in its trailing window.
inline double segment_score(const Segment& seg, std::size_t next_start, const BinaryLabelSeries& pred_points,
                            std::size_t delta) {
    double s = 0.0;
    for (std::size_t t = seg.start; t <= seg.end; ++t)
        if (pred_points[t]) s += 1.0;
    if (delta > 0) {
        std::size_t zone_end = std::min(seg.end + delta, pred_points.size() - 1);
        if (next_start > 0) zone_end = std::min(zone_end, next_start - 1);
        for (std::size_t t = seg.end + 1; t <= zone_end; ++t)
            if (pred_points[t]) s += decay_weight(t - seg.end, delta);
    }
    return s;
}

}  // namespace taf_detail

// Time-series aware F-score: per-segment coverage ratios feed a thresholded
// detection term and a min(1, ratio) position term, mixed by alpha; the
// precision side applies the same construction to predicted segments.
inline double taf(const BinaryLabelSeries& y, const BinaryLabelSeries& yhat, const TaFParams& params,
                  double beta) {
    require_same_length(y, yhat);
    const SegmentSet gt = segments_from_labels(y);
    const SegmentSet pred = segments_from_labels(yhat);
    const std::size_t t_len = y.size();

    auto side = [&](const SegmentSet& own, const BinaryLabelSeries& own_points_of_other,
                    bool recall_side) -> std::pair<double, double> {
        if (own.empty()) return {0.0, 0.0};
        double det = 0.0, pos = 0.0;
        if (recall_side) {
            const auto& gs = own.segments();
            for (std::size_t i = 0; i < gs.size(); ++i) {
                const std::size_t next = i + 1 < gs.size() ? gs[i + 1].start : 0;
                const double s = taf_detail::segment_score(gs[i], next, own_points_of_other, params.delta);
                const double ratio = s / static_cast<double>(gs[i].length());
                if (ratio >= params.theta - 1e-12) det += 1.0;
                pos += std::min(1.0, ratio);
            }
        } else {
            const auto credit = taf_detail::position_credit(gt, t_len, params.delta);
            for (const Segment& seg : own.segments()) {
                double s = 0.0;
                for (std::size_t t = seg.start; t <= seg.end; ++t) s += credit[t];
                const double ratio = s / static_cast<double>(seg.length());
                if (ratio >= params.theta - 1e-12) det += 1.0;
                pos += std::min(1.0, ratio);
            }
        }
        const double n = static_cast<double>(own.size());
        return {det / n, pos / n};
    };

    const auto [r_det, r_pos] = side(gt, yhat, true);
    const auto [p_det, p_pos] = side(pred, y, false);
    const double r = params.alpha * r_det + (1.0 - params.alpha) * r_pos;
    const double p = params.alpha * p_det + (1.0 - params.alpha) * p_pos;
    return fbeta(p, r, beta);
}

// Enhanced TaF: iteratively prune gt segments whose recall stays below
// theta_r and predicted segments whose precision stays below theta_p, then
// score the retained sets with sqrt-length weighting on the precision side.
inline double etaf(const BinaryLabelSeries& y, const BinaryLabelSeries& yhat, const ETaFParams& params,
                   double beta) {
    require_same_length(y, yhat);
    const SegmentSet gt = segments_from_labels(y);
    const SegmentSet pred = segments_from_labels(yhat);
    const std::size_t t_len = y.size();
    const auto& gs = gt.segments();
    const auto& ps = pred.segments();

    std::vector<std::uint8_t> keep_g(gs.size(), 1), keep_p(ps.size(), 1);
    std::vector<double> recall_ratio(gs.size(), 0.0), precision_ratio(ps.size(), 0.0);

    bool changed = true;
    while (changed) {
        changed = false;
        // recall of each retained gt segment against retained predictions
        const auto pred_points = taf_detail::masked_points(pred, t_len, keep_p);
        for (std::size_t i = 0; i < gs.size(); ++i) {
            if (!keep_g[i]) continue;
            const std::size_t next = i + 1 < gs.size() ? gs[i + 1].start : 0;
            const double s = taf_detail::segment_score(gs[i], next, pred_points, params.delta);
            recall_ratio[i] = s / static_cast<double>(gs[i].length());
        }
        // precision of each retained prediction against retained gt segments
        const auto credit = taf_detail::position_credit(gt, t_len, params.delta, &keep_g);
        for (std::size_t j = 0; j < ps.size(); ++j) {
            if (!keep_p[j]) continue;
            double s = 0.0;
            for (std::size_t t = ps[j].start; t <= ps[j].end; ++t) s += credit[t];
            precision_ratio[j] = s / static_cast<double>(ps[j].length());
        }
        for (std::size_t i = 0; i < gs.size(); ++i)
            if (keep_g[i] && recall_ratio[i] < params.theta_r - 1e-12) {
                keep_g[i] = 0;
                changed = true;
            }
        for (std::size_t j = 0; j < ps.size(); ++j)
            if (keep_p[j] && precision_ratio[j] < params.theta_p - 1e-12) {
                keep_p[j] = 0;
                changed = true;
            }
    }

    double etar = 0.0;
    if (!gs.empty()) {
        double sum = 0.0;
        for (std::size_t i = 0; i < gs.size(); ++i)
            if (keep_g[i]) sum += 1.0 + std::min(1.0, recall_ratio[i]);
        etar = sum / (2.0 * static_cast<double>(gs.size()));
    }
    double etap = 0.0;
    double w_norm = 0.0, w_sum = 0.0;
    for (std::size_t j = 0; j < ps.size(); ++j) {
        if (!keep_p[j]) continue;
        const double w = std::sqrt(static_cast<double>(ps[j].length()));
        w_norm += w;
        w_sum += w * (1.0 + std::min(1.0, precision_ratio[j]));
    }
    if (w_norm > 0.0) etap = w_sum / (2.0 * w_norm);
    return fbeta(etap, etar, beta);
}

}  // namespace tsadm
