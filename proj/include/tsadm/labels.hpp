#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "tsadm/errors.hpp"

namespace tsadm {

// Per-timestep 0/1 series; index is the (unitless) timestep.
using BinaryLabelSeries = std::vector<std::uint8_t>;

// Per-timestep real anomaly scores, same length as the paired label series.
using ScoreSeries = std::vector<double>;

// Inclusive interval of timesteps.
struct Segment {
    std::size_t start;
    std::size_t end;

    std::size_t length() const { return end - start + 1; }
    bool operator==(const Segment& o) const { return start == o.start && end == o.end; }
};

inline bool overlap(const Segment& a, const Segment& b) { return a.start <= b.end && b.start <= a.end; }

// Sorted, pairwise disjoint, non-adjacent inclusive intervals. Construction
// canonicalizes arbitrary input: sorts and merges overlapping or adjacent
// segments, so the set round-trips losslessly with the pointwise view.
class SegmentSet {
public:
    SegmentSet() = default;

    explicit SegmentSet(std::vector<Segment> raw) {
        std::sort(raw.begin(), raw.end(), [](const Segment& a, const Segment& b) {
            return a.start < b.start || (a.start == b.start && a.end < b.end);
        });
        for (const Segment& s : raw) {
            if (!segs_.empty() && s.start <= segs_.back().end + 1)
                segs_.back().end = std::max(segs_.back().end, s.end);
            else
                segs_.push_back(s);
        }
    }

    const std::vector<Segment>& segments() const { return segs_; }
    std::size_t size() const { return segs_.size(); }
    bool empty() const { return segs_.empty(); }

    std::size_t total_points() const {
        std::size_t n = 0;
        for (const Segment& s : segs_) n += s.length();
        return n;
    }

    auto begin() const { return segs_.begin(); }
    auto end() const { return segs_.end(); }

private:
    std::vector<Segment> segs_;
};

// Counts are real-valued so weighted metric variants can reuse the record.
struct ConfusionCounts {
    double tp = 0;
    double fp = 0;
    double fn = 0;
    double tn = 0;
};

inline void require_same_length(const BinaryLabelSeries& a, const BinaryLabelSeries& b) {
    if (a.size() != b.size()) throw LengthMismatch(a.size(), b.size());
}

// Maximal runs of consecutive 1s become segments.
inline SegmentSet segments_from_labels(const BinaryLabelSeries& labels) {
    std::vector<Segment> segs;
    std::size_t t = 0;
    const std::size_t n = labels.size();
    while (t < n) {
        if (labels[t]) {
            std::size_t start = t;
            while (t + 1 < n && labels[t + 1]) ++t;
            segs.push_back({start, t});
        }
        ++t;
    }
    return SegmentSet(std::move(segs));
}

inline BinaryLabelSeries labels_from_segments(const SegmentSet& segments, std::size_t t_len) {
    BinaryLabelSeries out(t_len, 0);
    for (const Segment& s : segments) {
        if (s.end >= t_len) throw SegmentOutOfRange(s.end, t_len);
        std::fill(out.begin() + static_cast<std::ptrdiff_t>(s.start),
                  out.begin() + static_cast<std::ptrdiff_t>(s.end) + 1, std::uint8_t{1});
    }
    return out;
}

// Strict comparison: ties at tau are negative.
inline BinaryLabelSeries threshold(const ScoreSeries& scores, double tau) {
    BinaryLabelSeries out(scores.size(), 0);
    for (std::size_t t = 0; t < scores.size(); ++t) out[t] = scores[t] > tau ? 1 : 0;
    return out;
}

inline ConfusionCounts pointwise_confusion(const BinaryLabelSeries& y, const BinaryLabelSeries& yhat) {
    require_same_length(y, yhat);
    ConfusionCounts c;
    for (std::size_t t = 0; t < y.size(); ++t) {
        if (y[t] && yhat[t])
            c.tp += 1;
        else if (!y[t] && yhat[t])
            c.fp += 1;
        else if (y[t] && !yhat[t])
            c.fn += 1;
        else
            c.tn += 1;
    }
    return c;
}

// F_beta with the degenerate 0/0 case mapped to 0.
inline double fbeta(double p, double r, double beta) {
    const double b2 = beta * beta;
    const double denom = b2 * p + r;
    if (denom <= 0.0) return 0.0;
    return (1.0 + b2) * p * r / denom;
}

inline double precision_of(const ConfusionCounts& c) { return c.tp + c.fp > 0 ? c.tp / (c.tp + c.fp) : 0.0; }
inline double recall_of(const ConfusionCounts& c) { return c.tp + c.fn > 0 ? c.tp / (c.tp + c.fn) : 0.0; }

inline double fbeta_from_counts(const ConfusionCounts& c, double beta) {
    return fbeta(precision_of(c), recall_of(c), beta);
}

}  // namespace tsadm
