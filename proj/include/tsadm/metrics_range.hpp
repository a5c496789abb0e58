#pragma once

#include "tsadm/labels.hpp"

namespace tsadm {

enum class PositionalBias { flat, front, back };
enum class CardinalityPenalty { one, inverse };

struct RangeFParams {
    double alpha = 0.0;  // existence weight, in [0,1]
    PositionalBias positional_bias = PositionalBias::flat;
    CardinalityPenalty cardinality = CardinalityPenalty::inverse;
};

namespace detail {

// Sum of positional weights over [lo,hi] inside interval [s,e]. Flat weight is
// 1 per position; front is highest at the segment start (e-t+1), back is the
// mirror. Closed-form arithmetic series keeps pairwise overlap O(1).
inline double bias_mass(PositionalBias bias, const Segment& seg, std::size_t lo, std::size_t hi) {
    const double n = static_cast<double>(hi - lo + 1);
    switch (bias) {
        case PositionalBias::flat:
            return n;
        case PositionalBias::front: {
            const double first = static_cast<double>(seg.end - lo + 1);
            const double last = static_cast<double>(seg.end - hi + 1);
            return 0.5 * n * (first + last);
        }
        case PositionalBias::back: {
            const double first = static_cast<double>(lo - seg.start + 1);
            const double last = static_cast<double>(hi - seg.start + 1);
            return 0.5 * n * (first + last);
        }
    }
    return n;
}

// Mean per-interval score of `own` against `other`:
//   S_i = alpha * E_i + (1-alpha) * g(n_i) * sum_j omega_ij
// with omega normalized by the interval's total bias mass.
inline double range_side(const SegmentSet& own, const SegmentSet& other, double alpha, PositionalBias bias,
                         CardinalityPenalty card) {
    if (own.empty()) return 0.0;
    const auto& os = other.segments();
    double total = 0.0;
    std::size_t j0 = 0;
    for (const Segment& seg : own.segments()) {
        while (j0 < os.size() && os[j0].end < seg.start) ++j0;
        double weighted = 0.0;
        std::size_t n_overlaps = 0;
        for (std::size_t j = j0; j < os.size() && os[j].start <= seg.end; ++j) {
            const std::size_t lo = std::max(seg.start, os[j].start);
            const std::size_t hi = std::min(seg.end, os[j].end);
            weighted += bias_mass(bias, seg, lo, hi);
            ++n_overlaps;
        }
        double s_i = 0.0;
        if (n_overlaps > 0) {
            const double omega_sum = weighted / bias_mass(bias, seg, seg.start, seg.end);
            const double g = card == CardinalityPenalty::one ? 1.0 : 1.0 / static_cast<double>(n_overlaps);
            s_i = alpha + (1.0 - alpha) * g * omega_sum;
        }
        total += s_i;
    }
    return total / static_cast<double>(own.size());
}

}  // namespace detail

// Range-based F: recall side uses the configured positional bias, precision
// side is computed with roles swapped and flat bias.
inline double range_f(const BinaryLabelSeries& y, const BinaryLabelSeries& yhat, const RangeFParams& params,
                      double beta) {
    require_same_length(y, yhat);
    const SegmentSet gt = segments_from_labels(y);
    const SegmentSet pred = segments_from_labels(yhat);
    const double recall = detail::range_side(gt, pred, params.alpha, params.positional_bias, params.cardinality);
    const double precision = detail::range_side(pred, gt, params.alpha, PositionalBias::flat, params.cardinality);
    return fbeta(precision, recall, beta);
}

}  // namespace tsadm
