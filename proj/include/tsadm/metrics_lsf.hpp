#pragma once

#include <vector>

#include "tsadm/labels.hpp"

namespace tsadm {

// Two readings of the detection-state activation rule (the update formula in
// the source construction is ambiguous):
//   segment_start        — a true-positive hit activates the window when the
//                          window contains the first anomaly of the segment
//                          the hit belongs to (default);
//   window_first_anomaly — literal reading: the hit must land exactly on the
//                          window's first anomalous point.
// In both, an active state persists into the next window while the anomaly
// spans the boundary, and resets once a normal point breaks continuity.
enum class LsfActivation { segment_start, window_first_anomaly };

struct LsfParams {
    std::size_t w = 100;  // window size, >= 1
    LsfActivation activation = LsfActivation::segment_start;
};

struct LsfCounts {
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t fn = 0;
};

// Batch-level confusion via detection-state propagation. Within each window,
// the adjusted ground truth marks everything from the window's first anomaly
// to the window end; an active detection state forces predictions positive on
// that same span. Each window then contributes at most one TP/FP/FN.
inline LsfCounts lsf_counts(const BinaryLabelSeries& y, const BinaryLabelSeries& yhat,
                            const LsfParams& params) {
    require_same_length(y, yhat);
    const std::size_t n = y.size();
    const std::size_t w = params.w == 0 ? 1 : params.w;

    // segment start index for every anomalous point
    std::vector<std::size_t> seg_start(n, 0);
    for (std::size_t t = 0; t < n; ++t)
        if (y[t]) seg_start[t] = (t > 0 && y[t - 1]) ? seg_start[t - 1] : t;

    LsfCounts counts;
    bool prev_ds = false;
    bool prev_ends_anomalous = false;
    for (std::size_t lo = 0; lo < n; lo += w) {
        const std::size_t hi = std::min(lo + w, n) - 1;

        std::size_t first_anom = n;
        for (std::size_t t = lo; t <= hi; ++t)
            if (y[t]) {
                first_anom = t;
                break;
            }

        bool ds = false;
        if (first_anom < n) {
            const bool carried = prev_ds && prev_ends_anomalous && y[lo];
            if (carried) {
                ds = true;
            } else {
                for (std::size_t t = lo; t <= hi && !ds; ++t) {
                    if (!(yhat[t] && y[t])) continue;
                    if (params.activation == LsfActivation::window_first_anomaly)
                        ds = t == first_anom;
                    else
                        ds = seg_start[t] >= lo;  // hit's segment starts in this window
                }
            }
        }

        bool tp = false, fp = false, fn = false;
        for (std::size_t t = lo; t <= hi; ++t) {
            const bool y_star = first_anom < n && t >= first_anom;
            const bool yhat_star = (ds && first_anom < n && t >= first_anom) || yhat[t];
            if (y_star && yhat_star) tp = true;
            if (!y_star && yhat_star) fp = true;
            if (y_star && !yhat_star) fn = true;
        }
        counts.tp += tp;
        counts.fp += fp;
        counts.fn += fn;

        prev_ds = ds;
        prev_ends_anomalous = y[hi] != 0;
    }
    return counts;
}

inline double lsf(const BinaryLabelSeries& y, const BinaryLabelSeries& yhat, const LsfParams& params) {
    const LsfCounts c = lsf_counts(y, yhat, params);
    const double denom = 2.0 * static_cast<double>(c.tp) + static_cast<double>(c.fp) + static_cast<double>(c.fn);
    if (denom <= 0.0) return 0.0;
    return 2.0 * static_cast<double>(c.tp) / denom;
}

inline double lsf(const BinaryLabelSeries& y, const BinaryLabelSeries& yhat, std::size_t w) {
    return lsf(y, yhat, LsfParams{w, LsfActivation::segment_start});
}

}  // namespace tsadm
