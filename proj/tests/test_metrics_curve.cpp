#include "tsadm/metrics_curve.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "tsadm/metrics_point.hpp"
#include "util.hpp"

using namespace tsadm;

TEST(auc_roc, examples) {
    const BinaryLabelSeries y{0, 1, 0, 1};
    ScoreSeries perfect{0.0, 1.0, 0.0, 1.0};
    EXPECT_DOUBLE_EQ(auc_roc(y, perfect), 1.0);
    EXPECT_DOUBLE_EQ(auc_roc(y, ScoreSeries(4, 0.7)), 0.5);
    EXPECT_DOUBLE_EQ(auc_roc(y, {0.1, 0.4, 0.35, 0.8}), 1.0);
    EXPECT_THROW(auc_roc(BinaryLabelSeries(4, 0), perfect), SingleClass);
    EXPECT_THROW(auc_roc(BinaryLabelSeries(4, 1), perfect), SingleClass);
}

TEST(auc_roc, equals_rank_statistic) {
    Rng rng(21);
    for (int it = 0; it < 200; ++it) {
        const std::size_t n = 2 + rng.index(30);
        const auto y = testutil::random_labels_two_class(rng, n);
        const auto s = testutil::random_scores(rng, n, true);
        EXPECT_NEAR(auc_roc(y, s), oracle::auc_roc(y, s), 1e-12);
    }
}

TEST(auc_roc, monotone_transform_invariance) {
    Rng rng(22);
    for (int it = 0; it < 100; ++it) {
        const std::size_t n = 2 + rng.index(30);
        const auto y = testutil::random_labels_two_class(rng, n);
        const auto s = testutil::random_scores(rng, n, true);
        ScoreSeries cubed(n), expd(n), affine(n);
        for (std::size_t t = 0; t < n; ++t) {
            cubed[t] = s[t] * s[t] * s[t];
            expd[t] = std::exp(3.0 * s[t]);
            affine[t] = 2.0 * s[t] + 1.0;
        }
        const double base = auc_roc(y, s);
        EXPECT_NEAR(auc_roc(y, cubed), base, 1e-12);
        EXPECT_NEAR(auc_roc(y, expd), base, 1e-12);
        EXPECT_NEAR(auc_roc(y, affine), base, 1e-12);
    }
}

TEST(auc_pr, examples) {
    const BinaryLabelSeries y{0, 1, 0, 1};
    EXPECT_DOUBLE_EQ(auc_pr(y, {0.0, 1.0, 0.0, 1.0}), 1.0);
    EXPECT_DOUBLE_EQ(auc_pr(y, ScoreSeries(4, 0.7)), 0.5);  // prevalence
    EXPECT_DOUBLE_EQ(auc_pr(y, {0.1, 0.4, 0.35, 0.8}), 1.0);
    EXPECT_THROW(auc_pr(BinaryLabelSeries(4, 0), {0.1, 0.2, 0.3, 0.4}), NoPositives);
}

TEST(auc_pr, properties) {
    Rng rng(23);
    for (int it = 0; it < 200; ++it) {
        const std::size_t n = 2 + rng.index(30);
        const auto y = testutil::random_labels_two_class(rng, n);
        const auto s = testutil::random_scores(rng, n, true);
        EXPECT_NEAR(auc_pr(y, s), oracle::auc_pr(y, s), 1e-12);
        double pos = 0;
        for (auto v : y) pos += v;
        const double prevalence = pos / static_cast<double>(n);
        EXPECT_NEAR(auc_pr(y, ScoreSeries(n, 0.3)), prevalence, 1e-12);
    }
}

TEST(best_pwf, examples) {
    const BinaryLabelSeries y{0, 1, 0, 1};
    EXPECT_DOUBLE_EQ(best_pwf(y, {0.0, 1.0, 0.0, 1.0}, 1.0), 1.0);
    // single positive whose score is the unique max
    EXPECT_DOUBLE_EQ(best_pwf({0, 0, 1}, {0.2, 0.3, 0.9}, 1.0), 1.0);
    EXPECT_THROW(best_pwf(BinaryLabelSeries(3, 0), {0.1, 0.2, 0.3}, 1.0), NoPositives);
}

TEST(best_pwf, matches_exhaustive_sweep_and_bounds_fixed_thresholds) {
    Rng rng(24);
    for (int it = 0; it < 200; ++it) {
        const std::size_t n = 2 + rng.index(30);
        const auto y = testutil::random_labels_two_class(rng, n);
        const auto s = testutil::random_scores(rng, n, true);
        const double best = best_pwf(y, s, 1.0);
        EXPECT_NEAR(best, oracle::best_pwf(y, s, 1.0), 1e-12);
        for (int k = 0; k < 10; ++k) {
            const double tau = rng.uniform01();
            EXPECT_GE(best + 1e-12, pw_f(y, threshold(s, tau), 1.0));
        }
    }
}

TEST(soft_labels, examples) {
    const BinaryLabelSeries y{0, 0, 1, 0, 0};
    EXPECT_EQ(soft_labels(y, 0), (std::vector<double>{0, 0, 1, 0, 0}));
    const auto w2 = soft_labels(y, 2);
    const std::vector<double> expected{0, 0.5, 1, 0.5, 0};
    ASSERT_EQ(w2.size(), expected.size());
    for (std::size_t t = 0; t < w2.size(); ++t) EXPECT_NEAR(w2[t], expected[t], 1e-15);
    const auto zeros = soft_labels(BinaryLabelSeries(6, 0), 3);
    for (double v : zeros) EXPECT_DOUBLE_EQ(v, 0.0);
}

TEST(soft_labels, matches_literal_max_formula) {
    Rng rng(25);
    for (int it = 0; it < 200; ++it) {
        const std::size_t n = 1 + rng.index(30);
        const auto y = testutil::random_labels(rng, n);
        const std::size_t w = rng.index(6);
        const auto got = soft_labels(y, w);
        const auto want = oracle::soft_labels(y, w);
        for (std::size_t t = 0; t < n; ++t) EXPECT_NEAR(got[t], want[t], 1e-12);
    }
}

TEST(vus, degenerate_and_perfect) {
    Rng rng(26);
    for (int it = 0; it < 100; ++it) {
        const std::size_t n = 3 + rng.index(25);
        const auto y = testutil::random_labels_two_class(rng, n);
        const auto s = testutil::random_scores(rng, n, true);
        EXPECT_NEAR(vus(y, s, VusParams{0}, CurveKind::roc), auc_roc(y, s), 1e-12);
        EXPECT_NEAR(vus(y, s, VusParams{0}, CurveKind::pr), auc_pr(y, s), 1e-12);
    }
    BinaryLabelSeries y(20, 0);
    y[10] = 1;
    ScoreSeries s(20, 0.0);
    s[10] = 1.0;
    EXPECT_DOUBLE_EQ(vus(y, s, VusParams{0}, CurveKind::roc), 1.0);
}

TEST(vus, small_fixture_matches_per_w_oracle) {
    BinaryLabelSeries y(20, 0);
    for (std::size_t t = 8; t <= 11; ++t) y[t] = 1;
    Rng rng(27);
    for (int it = 0; it < 50; ++it) {
        const auto s = testutil::random_scores(rng, 20, true);
        EXPECT_NEAR(vus(y, s, VusParams{2}, CurveKind::roc), oracle::vus(y, s, 2, true), 1e-12);
        EXPECT_NEAR(vus(y, s, VusParams{2}, CurveKind::pr), oracle::vus(y, s, 2, false), 1e-12);
    }
}
