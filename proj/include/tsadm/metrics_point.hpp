#pragma once

#include "tsadm/labels.hpp"

namespace tsadm {

struct PointMetricParams {
    double beta = 1.0;
    double k_coverage = 0.5;   // K for K%-PAF, in (0,1]
    std::size_t k_delay = 10;  // k for dT-PAF, >= 1
};

inline double pw_f(const BinaryLabelSeries& y, const BinaryLabelSeries& yhat, double beta) {
    return fbeta_from_counts(pointwise_confusion(y, yhat), beta);
}

// For every ground-truth segment containing at least one predicted positive,
// mark the whole segment positive; predictions outside segments are untouched.
inline BinaryLabelSeries point_adjust(const BinaryLabelSeries& y, const BinaryLabelSeries& yhat) {
    require_same_length(y, yhat);
    BinaryLabelSeries adjusted = yhat;
    for (const Segment& seg : segments_from_labels(y)) {
        bool hit = false;
        for (std::size_t t = seg.start; t <= seg.end && !hit; ++t) hit = yhat[t] != 0;
        if (hit)
            for (std::size_t t = seg.start; t <= seg.end; ++t) adjusted[t] = 1;
    }
    return adjusted;
}

inline double pa_f(const BinaryLabelSeries& y, const BinaryLabelSeries& yhat, double beta) {
    return fbeta_from_counts(pointwise_confusion(y, point_adjust(y, yhat)), beta);
}

namespace detail {

// Shared fill-or-delete adjustment: segments passing `detected` are filled,
// otherwise the segment's predictions are removed (its points all become FN).
template <typename DetectedFn>
double segment_gated_f(const BinaryLabelSeries& y, const BinaryLabelSeries& yhat, double beta,
                       DetectedFn&& detected) {
    require_same_length(y, yhat);
    BinaryLabelSeries adjusted = yhat;
    for (const Segment& seg : segments_from_labels(y)) {
        const std::uint8_t fill = detected(seg) ? 1 : 0;
        for (std::size_t t = seg.start; t <= seg.end; ++t) adjusted[t] = fill;
    }
    return fbeta_from_counts(pointwise_confusion(y, adjusted), beta);
}

}  // namespace detail

// Fill only when predictions cover at least K of the segment's points.
inline double k_pa_f(const BinaryLabelSeries& y, const BinaryLabelSeries& yhat, double k_coverage, double beta) {
    if (!(k_coverage > 0.0 && k_coverage <= 1.0)) throw InvalidK(k_coverage);
    return detail::segment_gated_f(y, yhat, beta, [&](const Segment& seg) {
        std::size_t hits = 0;
        for (std::size_t t = seg.start; t <= seg.end; ++t) hits += yhat[t];
        return static_cast<double>(hits) >= k_coverage * static_cast<double>(seg.length()) - 1e-12;
    });
}

// Fill only when a hit lands within the first k steps of the segment
// (window clipped at the segment end for segments shorter than k).
inline double dt_pa_f(const BinaryLabelSeries& y, const BinaryLabelSeries& yhat, std::size_t k_delay, double beta) {
    return detail::segment_gated_f(y, yhat, beta, [&](const Segment& seg) {
        const std::size_t w_end = std::min(seg.start + k_delay - 1, seg.end);
        for (std::size_t t = seg.start; t <= w_end; ++t)
            if (yhat[t]) return true;
        return false;
    });
}

}  // namespace tsadm
