#include "tsadm/strategies.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "tsadm/metrics_point.hpp"
#include "tsadm/synthgen.hpp"

using namespace tsadm;

namespace {

BinaryLabelSeries fixture_labels(std::size_t n, double rate, std::uint64_t seed) {
    Rng rng(seed);
    BinaryLabelSeries y(n, 0);
    // segment-style labels: a few runs, mass close to rate*n
    std::size_t budget = static_cast<std::size_t>(rate * static_cast<double>(n));
    while (budget > 0) {
        const std::size_t len = std::min<std::size_t>(budget, 5 + rng.index(30));
        const std::size_t start = rng.index(n - len);
        for (std::size_t t = start; t < start + len; ++t) y[t] = 1;
        budget -= len;
    }
    return y;
}

double lag1_autocorr(const BinaryLabelSeries& v) {
    double mean = 0;
    for (auto x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double num = 0, den = 1e-12;
    for (std::size_t t = 0; t < v.size(); ++t) {
        den += (v[t] - mean) * (v[t] - mean);
        if (t > 0) num += (v[t] - mean) * (v[t - 1] - mean);
    }
    return num / den;
}

bool two_band(const PredictionRun& run) {
    for (std::size_t t = 0; t < run.scores.size(); ++t) {
        const bool hi = run.scores[t] >= 0.7 && run.scores[t] <= 1.0;
        const bool lo = run.scores[t] >= 0.0 && run.scores[t] <= 0.3;
        if (run.predictions[t] && !hi) return false;
        if (!run.predictions[t] && !lo) return false;
    }
    return true;
}

}  // namespace

TEST(genuine, constant_signal_scores_near_zero) {
    std::vector<double> flat(600, 3.0);
    BinaryLabelSeries labels(600, 0);
    labels[300] = 1;
    const auto s = genuine_scores(flat, labels, Detector::moving_average);
    for (double v : s) EXPECT_LE(v, 1e-9);
    EXPECT_THROW(genuine_scores(std::vector<double>(100, 1.0), BinaryLabelSeries(100, 0),
                                Detector::moving_average),
                 SeriesTooShort);
}

TEST(genuine, spike_dominates_scores) {
    SynthConfig cfg;
    cfg.length = 2000;
    cfg.seed = 3;
    auto signal = generate_base_signal(cfg.length, cfg.seed, cfg.base);
    BinaryLabelSeries labels(cfg.length, 0);
    signal[1200] += 8.0;  // injected spike
    labels[1200] = 1;
    for (Detector det : {Detector::moving_average, Detector::ar}) {
        const auto s = genuine_scores(signal, labels, det);
        std::vector<double> off;
        for (std::size_t t = 0; t < s.size(); ++t)
            if (t < 1195 || t > 1205) off.push_back(s[t]);
        std::sort(off.begin(), off.end());
        const double q99 = off[static_cast<std::size_t>(0.99 * static_cast<double>(off.size()))];
        EXPECT_GT(s[1200], q99) << detector_name(det);
    }
}

TEST(genuine, deterministic) {
    SynthConfig cfg;
    cfg.length = 3000;
    cfg.seed = 9;
    const auto d = generate(cfg);
    for (Detector det : {Detector::moving_average, Detector::seasonal_naive, Detector::ar}) {
        const auto a = genuine_scores(d.signal, d.labels, det);
        const auto b = genuine_scores(d.signal, d.labels, det);
        EXPECT_EQ(a, b);
    }
}

TEST(gradient, alpha_one_reproduces_labels) {
    const auto y = fixture_labels(2000, 0.1, 17);
    const auto run = quality_gradient(y, 1.0, 5);
    EXPECT_EQ(run.predictions, y);
    EXPECT_THROW(quality_gradient(y, 0.0, 5), InvalidAlpha);
    EXPECT_THROW(quality_gradient(y, 1.5, 5), InvalidAlpha);
}

TEST(gradient, low_alpha_agreement_matches_bernoulli_baseline) {
    // At alpha = p the hit rate on anomalous points should be statistically
    // indistinguishable from Bernoulli(p): two-proportion z-test over 60 runs.
    const double p = 0.1;
    const auto y = fixture_labels(2000, p, 23);
    std::size_t m = 0;
    for (auto v : y) m += v;
    double grad_hits = 0, bern_hits = 0;
    const int runs = 60;
    for (int r = 0; r < runs; ++r) {
        const auto g = quality_gradient(y, 0.1, 100 + static_cast<std::uint64_t>(r));
        const auto b = bernoulli_random(y, 200 + static_cast<std::uint64_t>(r));
        for (std::size_t t = 0; t < y.size(); ++t) {
            if (!y[t]) continue;
            grad_hits += g.predictions[t];
            bern_hits += b.predictions[t];
        }
    }
    const double n_total = static_cast<double>(m) * runs;
    const double p1 = grad_hits / n_total, p2 = bern_hits / n_total;
    const double pool = (grad_hits + bern_hits) / (2 * n_total);
    const double z = (p1 - p2) / std::sqrt(pool * (1 - pool) * (2 / n_total));
    EXPECT_LT(std::abs(z), 3.5);
}

TEST(gradient, mean_pwf_strictly_increases_with_alpha) {
    const auto y = fixture_labels(2000, 0.1, 31);
    double prev = -1;
    for (double alpha : {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}) {
        double mean = 0;
        for (int r = 0; r < 60; ++r) {
            const auto run =
                quality_gradient(y, alpha, hash_combine(7, static_cast<std::uint64_t>(r)));
            mean += pw_f(y, run.predictions, 1.0);
        }
        mean /= 60.0;
        EXPECT_GT(mean, prev) << "alpha=" << alpha;
        prev = mean;
    }
}

TEST(uniform_random_strategy, alarm_count_and_uniformity) {
    const auto y = fixture_labels(200, 0.1, 41);
    std::size_t m = 0;
    for (auto v : y) m += v;
    std::vector<double> counts(200, 0);
    const int runs = 1000;
    for (int r = 0; r < runs; ++r) {
        const auto run = uniform_random(y, static_cast<std::uint64_t>(r));
        std::size_t alarms = 0;
        for (auto v : run.predictions) alarms += v;
        ASSERT_EQ(alarms, m);  // round(p*T) with p = m/T
        for (std::size_t t = 0; t < 200; ++t) counts[t] += run.predictions[t];
    }
    // chi-square over positions; expected = runs*m/T per bin
    const double expected = static_cast<double>(runs) * static_cast<double>(m) / 200.0;
    double chi2 = 0;
    for (double c : counts) chi2 += (c - expected) * (c - expected) / expected;
    // 199 dof, 1% critical ~ 249 (Wilson-Hilferty); generous bound
    EXPECT_LT(chi2, 260.0);
    EXPECT_TRUE(two_band(uniform_random(y, 77)));
    EXPECT_EQ(uniform_random(y, 5).predictions, uniform_random(y, 5).predictions);
}

TEST(clustered_random_strategy, mass_calibration_and_clustering) {
    const auto y = fixture_labels(2000, 0.1, 51);
    double total = 0, lag1 = 0, lag1_uniform = 0;
    const int runs = 1000;
    for (int r = 0; r < runs; ++r) {
        const auto run = clustered_random(y, static_cast<std::uint64_t>(r));
        for (auto v : run.predictions) total += v;
        lag1 += lag1_autocorr(run.predictions);
        lag1_uniform += lag1_autocorr(uniform_random(y, static_cast<std::uint64_t>(r)).predictions);
    }
    const double expected_mass = 0.1 * 2000;
    EXPECT_NEAR(total / runs, expected_mass, 0.1 * expected_mass);
    EXPECT_GT(lag1 / runs, lag1_uniform / runs + 0.2);
    EXPECT_TRUE(two_band(clustered_random(y, 3)));
    EXPECT_EQ(clustered_random(y, 5).predictions, clustered_random(y, 5).predictions);
}

TEST(bernoulli_random_strategy, rate_and_independence) {
    const auto y = fixture_labels(2000, 0.1, 61);
    std::size_t m = 0;
    for (auto v : y) m += v;
    const double p = static_cast<double>(m) / 2000.0;
    double total = 0, lag1 = 0;
    const int runs = 1000;
    for (int r = 0; r < runs; ++r) {
        const auto run = bernoulli_random(y, static_cast<std::uint64_t>(r));
        for (auto v : run.predictions) total += v;
        lag1 += lag1_autocorr(run.predictions);
    }
    const double n_draws = 2000.0 * runs;
    const double sigma = std::sqrt(n_draws * p * (1 - p));
    EXPECT_NEAR(total, n_draws * p, 3 * sigma);
    EXPECT_NEAR(lag1 / runs, 0.0, 0.01);
    EXPECT_TRUE(two_band(bernoulli_random(y, 3)));
    EXPECT_EQ(bernoulli_random(y, 5).predictions, bernoulli_random(y, 5).predictions);
}

TEST(oracle_attack_strategy, zero_iterations_returns_initial_point) {
    const auto y = fixture_labels(500, 0.1, 71);
    const auto run = oracle_attack(y, "pwf", 0.1, 0, 1, 9);
    for (auto v : run.predictions) EXPECT_EQ(v, 0);
    EXPECT_TRUE(two_band(run));
}

TEST(oracle_attack_strategy, respects_budget_and_games_point_adjust) {
    const auto y = fixture_labels(600, 0.08, 81);
    const auto run = oracle_attack(y, "paf", 0.1, 1500, 3, 13);
    std::size_t alarms = 0;
    for (auto v : run.predictions) alarms += v;
    EXPECT_LE(alarms, static_cast<std::size_t>(0.1 * 600 + 1e-9));
    EXPECT_GE(pa_f(y, run.predictions, 1.0), 0.99);
}

TEST(oracle_attack_strategy, pwf_bounded_by_budget_cap) {
    // anomalous mass exceeds the alarm budget: closed-form cap from the
    // confusion algebra
    const auto y = fixture_labels(1000, 0.3, 91);
    std::size_t m = 0;
    for (auto v : y) m += v;
    const double b = std::floor(0.1 * 1000);
    const double cap = 2 * b / (2 * b + (static_cast<double>(m) - b));
    const auto run = oracle_attack(y, "pwf", 0.1, 1500, 3, 17);
    EXPECT_LE(pw_f(y, run.predictions, 1.0), cap + 1e-12);
    EXPECT_THROW(oracle_attack(y, "nope", 0.1, 10, 1, 1), UnknownMetric);
}
