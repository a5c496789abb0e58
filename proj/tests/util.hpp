#pragma once

#include <vector>

#include "tsadm/labels.hpp"
#include "tsadm/rng.hpp"

namespace testutil {

inline tsadm::BinaryLabelSeries random_labels(tsadm::Rng& rng, std::size_t n, double rate = 0.3) {
    tsadm::BinaryLabelSeries y(n, 0);
    for (auto& v : y) v = rng.bernoulli(rate) ? 1 : 0;
    return y;
}

inline tsadm::BinaryLabelSeries random_labels_nonempty(tsadm::Rng& rng, std::size_t n, double rate = 0.3) {
    auto y = random_labels(rng, n, rate);
    y[rng.index(n)] = 1;
    return y;
}

// Labels with at least one positive and one negative.
inline tsadm::BinaryLabelSeries random_labels_two_class(tsadm::Rng& rng, std::size_t n, double rate = 0.3) {
    auto y = random_labels_nonempty(rng, n, rate);
    bool has_zero = false;
    for (auto v : y) has_zero |= v == 0;
    if (!has_zero) y[rng.index(n)] = 0;
    return y;
}

inline tsadm::ScoreSeries random_scores(tsadm::Rng& rng, std::size_t n, bool with_ties = false) {
    tsadm::ScoreSeries s(n);
    for (auto& v : s) v = rng.uniform01();
    if (with_ties)
        for (auto& v : s)
            if (rng.bernoulli(0.5)) v = std::floor(v * 4.0) / 4.0;  // coarse grid forces ties
    return s;
}

}  // namespace testutil
