#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "tsadm/labels.hpp"

namespace tsadm {

namespace affiliation_detail {

// Timesteps map to unit intervals: segment [s,e] becomes [s, e+1) on the
// continuous axis, so the series has total measure T.
struct Interval {
    double lo, hi;
    double length() const { return hi - lo; }
};

// Probability that a uniform point of zone [z0,z1) lies at distance >= c from
// the ground-truth interval [a,b). mu is the corresponding measure, piecewise
// linear and decreasing in c with breakpoints where each side saturates.
inline double mu_at(double c, double z0, double z1, double a, double b) {
    return std::max(0.0, (a - c) - z0) + std::max(0.0, z1 - (b + c));
}

inline double mu_integral(double c_lo, double c_hi, double z0, double z1, double a, double b) {
    if (c_hi <= c_lo) return 0.0;
    double pts[4] = {c_lo, c_hi, a - z0, z1 - b};
    std::sort(pts, pts + 4);
    double total = 0.0;
    for (int i = 0; i < 3; ++i) {
        const double l = std::clamp(pts[i], c_lo, c_hi);
        const double r = std::clamp(pts[i + 1], c_lo, c_hi);
        if (r > l) total += 0.5 * (mu_at(l, z0, z1, a, b) + mu_at(r, z0, z1, a, b)) * (r - l);
    }
    return total;
}

// Integral of the individual precision probability over one predicted piece
// [u,v) inside the zone, evaluated in closed form.
inline double precision_piece_integral(const Interval& piece, double z0, double z1, double a, double b) {
    const double zone_len = z1 - z0;
    if (zone_len <= 0.0) return 0.0;
    double total = 0.0;
    // part inside the ground-truth interval: p = 1
    const double in_lo = std::max(piece.lo, a);
    const double in_hi = std::min(piece.hi, b);
    if (in_hi > in_lo) total += in_hi - in_lo;
    // left of the interval: distance a - x
    const double l_hi = std::min(piece.hi, a);
    if (l_hi > piece.lo) total += mu_integral(a - l_hi, a - piece.lo, z0, z1, a, b) / zone_len;
    // right of the interval: distance x - b
    const double r_lo = std::max(piece.lo, b);
    if (piece.hi > r_lo) total += mu_integral(r_lo - b, piece.hi - b, z0, z1, a, b) / zone_len;
    return total;
}

inline double dist_to_pieces(double y, const std::vector<Interval>& pieces) {
    // pieces sorted and disjoint
    double best = std::numeric_limits<double>::infinity();
    for (const Interval& p : pieces) {
        if (y >= p.lo && y < p.hi) return 0.0;
        best = std::min(best, y < p.lo ? p.lo - y : y - p.hi);
    }
    return best;
}

inline double recall_prob(double y, double d, double z0, double z1) {
    if (!(d > 0.0)) return 1.0;
    const double covered = std::min(y + d, z1) - std::max(y - d, z0);
    return ((z1 - z0) - std::max(covered, 0.0)) / (z1 - z0);
}

// Integral of the individual recall probability over the ground-truth
// interval [a,b). The integrand is piecewise linear; breakpoints come from
// piece bounds, midpoints between consecutive pieces, and the points where
// the distance window saturates at a zone bound.
inline double recall_integral(double a, double b, const std::vector<Interval>& pieces, double z0, double z1) {
    if (pieces.empty() || b <= a) return 0.0;
    std::vector<double> cuts{a, b};
    for (const Interval& p : pieces) {
        if (p.lo > a && p.lo < b) cuts.push_back(p.lo);
        if (p.hi > a && p.hi < b) cuts.push_back(p.hi);
    }
    for (std::size_t i = 0; i + 1 < pieces.size(); ++i) {
        const double mid = 0.5 * (pieces[i].hi + pieces[i + 1].lo);
        if (mid > a && mid < b) cuts.push_back(mid);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::vector<double> refined;
    auto d_at = [&](double y) { return dist_to_pieces(y, pieces); };
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double l = cuts[i], r = cuts[i + 1];
        refined.push_back(l);
        // window-edge crossings: y + d hits z1, y - d hits z0 (d linear here)
        const double fl = l + d_at(l), fr = r + d_at(r);
        if ((fl - z1) * (fr - z1) < 0.0) refined.push_back(l + (z1 - fl) * (r - l) / (fr - fl));
        const double gl = l - d_at(l), gr = r - d_at(r);
        if ((gl - z0) * (gr - z0) < 0.0) refined.push_back(l + (z0 - gl) * (r - l) / (gr - gl));
    }
    refined.push_back(cuts.back());
    std::sort(refined.begin(), refined.end());

    double total = 0.0;
    for (std::size_t i = 0; i + 1 < refined.size(); ++i) {
        const double l = refined[i], r = refined[i + 1];
        if (r <= l) continue;
        const double pl = recall_prob(l, d_at(l), z0, z1);
        const double pr = recall_prob(r, d_at(r), z0, z1);
        total += 0.5 * (pl + pr) * (r - l);
    }
    return total;
}

}  // namespace affiliation_detail

// Affiliation F-score. The time axis is partitioned into zones bounded by the
// midpoints between consecutive ground-truth segments; within each zone the
// individual precision/recall probabilities follow the survival-probability
// construction (probability that a uniform zone point lies at least as far
// from the target as the evaluated point), integrated in closed form.
inline double affiliation_f(const BinaryLabelSeries& y, const BinaryLabelSeries& yhat, double beta) {
    require_same_length(y, yhat);
    using affiliation_detail::Interval;
    const SegmentSet gt = segments_from_labels(y);
    if (gt.empty()) throw NoGroundTruthSegments();
    const SegmentSet pred = segments_from_labels(yhat);

    const double t_len = static_cast<double>(y.size());
    const std::size_t m = gt.size();
    std::vector<double> bounds(m + 1);
    bounds[0] = 0.0;
    for (std::size_t i = 0; i + 1 < m; ++i)
        bounds[i + 1] = 0.5 * (static_cast<double>(gt.segments()[i].end + 1) +
                               static_cast<double>(gt.segments()[i + 1].start));
    bounds[m] = t_len;

    double precision_num = 0.0, precision_den = 0.0;
    double recall_num = 0.0, recall_den = 0.0;
    for (const Segment& p : pred) precision_den += static_cast<double>(p.length());

    for (std::size_t i = 0; i < m; ++i) {
        const double z0 = bounds[i], z1 = bounds[i + 1];
        const double a = static_cast<double>(gt.segments()[i].start);
        const double b = static_cast<double>(gt.segments()[i].end + 1);
        std::vector<Interval> pieces;
        for (const Segment& p : pred) {
            const double lo = std::max(static_cast<double>(p.start), z0);
            const double hi = std::min(static_cast<double>(p.end + 1), z1);
            if (hi > lo) pieces.push_back({lo, hi});
        }
        for (const Interval& piece : pieces)
            precision_num += affiliation_detail::precision_piece_integral(piece, z0, z1, a, b);
        recall_num += affiliation_detail::recall_integral(a, b, pieces, z0, z1);
        recall_den += b - a;
    }

    const double p_af = precision_den > 0.0 ? precision_num / precision_den : 0.0;
    const double r_af = recall_den > 0.0 ? recall_num / recall_den : 0.0;
    return fbeta(p_af, r_af, beta);
}

}  // namespace tsadm
