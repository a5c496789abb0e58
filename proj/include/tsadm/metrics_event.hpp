#pragma once

#include <cstdlib>
#include <limits>

#include "tsadm/labels.hpp"

namespace tsadm {

namespace detail {

// For each segment of `a`, whether it overlaps any segment of `b`. Two-pointer
// over the sorted disjoint sets.
inline std::vector<std::uint8_t> overlap_flags(const SegmentSet& a, const SegmentSet& b) {
    std::vector<std::uint8_t> hit(a.size(), 0);
    std::size_t j = 0;
    const auto& bs = b.segments();
    for (std::size_t i = 0; i < a.size(); ++i) {
        const Segment& s = a.segments()[i];
        while (j < bs.size() && bs[j].end < s.start) ++j;
        if (j < bs.size() && overlap(s, bs[j])) hit[i] = 1;
    }
    return hit;
}

}  // namespace detail

// Event-level confusion: a ground-truth segment counts as detected if any
// predicted segment overlaps it; a predicted segment overlapping nothing is a
// false positive event.
inline double segment_f(const BinaryLabelSeries& y, const BinaryLabelSeries& yhat, double beta) {
    require_same_length(y, yhat);
    const SegmentSet gt = segments_from_labels(y);
    const SegmentSet pred = segments_from_labels(yhat);
    const auto gt_hit = detail::overlap_flags(gt, pred);
    const auto pred_hit = detail::overlap_flags(pred, gt);
    ConfusionCounts c;
    for (auto h : gt_hit) h ? ++c.tp : ++c.fn;
    for (auto h : pred_hit)
        if (!h) ++c.fp;
    return fbeta_from_counts(c, beta);
}

// Event-level recall combined with point-wise precision.
inline double composite_f(const BinaryLabelSeries& y, const BinaryLabelSeries& yhat, double beta) {
    require_same_length(y, yhat);
    const SegmentSet gt = segments_from_labels(y);
    const auto gt_hit = detail::overlap_flags(gt, segments_from_labels(yhat));
    double tp_seg = 0;
    for (auto h : gt_hit) tp_seg += h;
    const double r_seg = gt.empty() ? 0.0 : tp_seg / static_cast<double>(gt.size());
    const double p_point = precision_of(pointwise_confusion(y, yhat));
    return fbeta(p_point, r_seg, beta);
}

// A point counts if any counterpart lies within +-d (window clipped at the
// series bounds).
inline double time_tolerant_f(const BinaryLabelSeries& y, const BinaryLabelSeries& yhat, std::size_t d,
                              double beta) {
    require_same_length(y, yhat);
    const std::size_t n = y.size();
    // prefix[t] = number of ones in [0, t)
    auto prefix = [n](const BinaryLabelSeries& s) {
        std::vector<std::size_t> p(n + 1, 0);
        for (std::size_t t = 0; t < n; ++t) p[t + 1] = p[t] + s[t];
        return p;
    };
    const auto py = prefix(y);
    const auto ph = prefix(yhat);
    auto any_in_window = [n, d](const std::vector<std::size_t>& p, std::size_t t) {
        const std::size_t lo = t >= d ? t - d : 0;
        const std::size_t hi = std::min(t + d, n - 1);
        return p[hi + 1] - p[lo] > 0;
    };
    std::size_t true_pts = 0, pred_pts = 0, r_hits = 0, p_hits = 0;
    for (std::size_t t = 0; t < n; ++t) {
        if (y[t]) {
            ++true_pts;
            if (any_in_window(ph, t)) ++r_hits;
        }
        if (yhat[t]) {
            ++pred_pts;
            if (any_in_window(py, t)) ++p_hits;
        }
    }
    const double r = true_pts ? static_cast<double>(r_hits) / static_cast<double>(true_pts) : 0.0;
    const double p = pred_pts ? static_cast<double>(p_hits) / static_cast<double>(pred_pts) : 0.0;
    return fbeta(p, r, beta);
}

// Bidirectional nearest-neighbor distance between the two anomalous point
// sets; an empty counterpart set costs the full series length per point.
// Lower is better; 0 means exact alignment.
inline double temporal_distance(const BinaryLabelSeries& y, const BinaryLabelSeries& yhat) {
    require_same_length(y, yhat);
    const std::size_t n = y.size();
    std::vector<std::size_t> a, b;
    for (std::size_t t = 0; t < n; ++t) {
        if (y[t]) a.push_back(t);
        if (yhat[t]) b.push_back(t);
    }
    auto one_sided = [n](const std::vector<std::size_t>& from, const std::vector<std::size_t>& to) {
        double total = 0;
        if (to.empty()) return static_cast<double>(n) * static_cast<double>(from.size());
        std::size_t j = 0;
        for (std::size_t s : from) {
            while (j + 1 < to.size() && to[j + 1] <= s) ++j;
            double best = std::abs(static_cast<double>(to[j]) - static_cast<double>(s));
            if (j + 1 < to.size())
                best = std::min(best, std::abs(static_cast<double>(to[j + 1]) - static_cast<double>(s)));
            total += best;
        }
        return total;
    };
    return one_sided(a, b) + one_sided(b, a);
}

}  // namespace tsadm
