#pragma once

// Random-fixture sweep comparing every registered metric against its literal
// transcription oracle. Shared by the unit suite and the acceptance runner.

#include <cmath>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "tsadm/registry.hpp"
#include "tsadm/rng.hpp"

namespace oracle_check {

struct Mismatch {
    std::string metric;
    std::size_t fixture;
    double impl;
    double want;
};

// Fixture family: labels with both classes, arbitrary predictions, scores
// with deliberate ties; parameters drawn per fixture to exercise the knobs.
inline std::vector<Mismatch> run(std::size_t fixtures, std::uint64_t seed, std::size_t max_len = 24,
                                 double tol = 1e-9) {
    tsadm::Rng rng(seed);
    std::vector<Mismatch> bad;
    for (std::size_t fx = 0; fx < fixtures; ++fx) {
        const std::size_t n = 4 + rng.index(max_len - 3);
        tsadm::BinaryLabelSeries y(n, 0), yhat(n, 0);
        for (auto& v : y) v = rng.bernoulli(rng.uniform(0.15, 0.6)) ? 1 : 0;
        y[rng.index(n)] = 1;
        bool has_zero = false;
        for (auto v : y) has_zero |= v == 0;
        if (!has_zero) y[rng.index(n)] = 0;
        for (auto& v : yhat) v = rng.bernoulli(rng.uniform(0.0, 0.7)) ? 1 : 0;
        tsadm::ScoreSeries s(n);
        for (auto& v : s) v = rng.uniform01();
        for (auto& v : s)
            if (rng.bernoulli(0.4)) v = std::floor(v * 5.0) / 5.0;

        tsadm::MetricParams prm;
        prm.beta = rng.bernoulli(0.8) ? 1.0 : rng.uniform(0.5, 2.0);
        prm.k_coverage = rng.uniform(0.1, 1.0);
        prm.k_delay = 1 + rng.index(5);
        prm.tf_tolerance = rng.index(4);
        prm.rf.alpha = rng.uniform01();
        prm.rf.cardinality =
            rng.bernoulli(0.5) ? tsadm::CardinalityPenalty::inverse : tsadm::CardinalityPenalty::one;
        prm.taf = tsadm::TaFParams{rng.uniform01(), rng.uniform(0.1, 1.0), rng.index(5)};
        prm.etaf = tsadm::ETaFParams{rng.uniform(0.1, 1.0), rng.uniform(0.1, 1.0), rng.index(5)};
        prm.lsf.w = 1 + rng.index(8);
        prm.lsf.activation = rng.bernoulli(0.5) ? tsadm::LsfActivation::segment_start
                                                : tsadm::LsfActivation::window_first_anomaly;
        prm.pate = tsadm::PateParams{{rng.index(5)}, {rng.index(5)}};
        if (rng.bernoulli(0.5)) prm.pate.eps_grid.push_back(1 + rng.index(6));
        if (rng.bernoulli(0.5)) prm.pate.delta_grid.push_back(1 + rng.index(6));
        prm.vus.w_max = rng.index(4);

        for (const tsadm::MetricDef& def : tsadm::metric_registry()) {
            const double impl = tsadm::evaluate_metric(def.id, y, &yhat, &s, prm);
            const double want = oracle::evaluate(def.id, y, yhat, s, prm);
            if (!(std::abs(impl - want) <= tol)) bad.push_back({def.id, fx, impl, want});
        }
    }
    return bad;
}

}  // namespace oracle_check
