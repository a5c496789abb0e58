#pragma once

#include <cmath>
#include <vector>

#include "tsadm/labels.hpp"

namespace tsadm {

struct NabParams {
    double w_tp = 1.0;   // reward weight, standard profile
    double w_fp = 0.11;  // penalty weight, standard profile
};

namespace nab_detail {

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// Scaled sigmoid score: positive for in-window detections (r < 0), negative
// for false alarms (r > 0), saturating at -1 beyond r = 3.
inline double scaled_sigmoid(double r) {
    if (r > 3.0) return -1.0;
    return 2.0 * sigmoid(-5.0 * r) - 1.0;
}

}  // namespace nab_detail

// NAB score with the detection window equal to the ground-truth segment
// itself. Each window contributes at most one reward (its best in-window
// detection); every out-of-window positive is penalized relative to the
// nearest preceding window. Normalized so that the null detector scores 0 and
// the earliest-possible hit in every window with no false alarms scores 100.
// False alarms can push the result below 0.
inline double nab_score(const BinaryLabelSeries& y, const BinaryLabelSeries& yhat, const NabParams& params) {
    require_same_length(y, yhat);
    const SegmentSet gt = segments_from_labels(y);
    if (gt.empty()) throw NoGroundTruthSegments();
    const auto& windows = gt.segments();

    std::vector<double> best_reward(windows.size(), 0.0);
    std::vector<std::uint8_t> detected(windows.size(), 0);
    double fp_sum = 0.0;

    std::size_t w = 0;  // index of the first window with end >= t
    for (std::size_t t = 0; t < y.size(); ++t) {
        if (!yhat[t]) continue;
        while (w < windows.size() && windows[w].end < t) ++w;
        if (w < windows.size() && windows[w].start <= t) {
            const double width = static_cast<double>(windows[w].length());
            const double r = -(static_cast<double>(windows[w].end) - static_cast<double>(t) + 1.0) / width;
            const double s = nab_detail::scaled_sigmoid(r);
            if (!detected[w] || s > best_reward[w]) best_reward[w] = std::max(best_reward[w], s);
            detected[w] = 1;
        } else if (w == 0) {
            // before the first window: no preceding window, saturated penalty
            fp_sum += -1.0;
        } else {
            const Segment& prev = windows[w - 1];
            const double denom = std::max(static_cast<double>(prev.length()) - 1.0, 1.0);
            const double r = (static_cast<double>(t) - static_cast<double>(prev.end)) / denom;
            fp_sum += nab_detail::scaled_sigmoid(r);
        }
    }

    double raw = 0.0;
    for (std::size_t i = 0; i < windows.size(); ++i)
        if (detected[i]) raw += params.w_tp * best_reward[i];
    raw += params.w_fp * fp_sum;

    double perfect = 0.0;
    for (std::size_t i = 0; i < windows.size(); ++i) perfect += params.w_tp * nab_detail::scaled_sigmoid(-1.0);
    if (perfect <= 0.0) return 0.0;
    return 100.0 * raw / perfect;
}

}  // namespace tsadm
