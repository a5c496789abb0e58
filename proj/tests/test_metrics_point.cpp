#include "tsadm/metrics_point.hpp"

#include <gtest/gtest.h>

#include "util.hpp"

using namespace tsadm;

namespace {
const BinaryLabelSeries kFixtureY{0, 1, 1, 1, 0, 0, 0, 1, 0, 0};
const BinaryLabelSeries kFixtureYhat{0, 0, 1, 0, 0, 0, 0, 0, 0, 0};
}  // namespace

TEST(metrics_point, pwf_fixture) {
    EXPECT_DOUBLE_EQ(pw_f(kFixtureY, kFixtureYhat, 1.0), 0.4);
    EXPECT_DOUBLE_EQ(pw_f(kFixtureY, kFixtureY, 1.0), 1.0);
    EXPECT_DOUBLE_EQ(pw_f(kFixtureY, BinaryLabelSeries(10, 0), 1.0), 0.0);
}

TEST(metrics_point, point_adjust_examples) {
    EXPECT_EQ(point_adjust({0, 1, 1, 1, 0}, {0, 0, 1, 0, 0}), (BinaryLabelSeries{0, 1, 1, 1, 0}));
    const BinaryLabelSeries none(5, 0);
    EXPECT_EQ(point_adjust({0, 1, 1, 1, 0}, none), none);
    // false positives outside segments are preserved verbatim
    EXPECT_EQ(point_adjust({0, 1, 1, 0, 0}, {1, 0, 0, 0, 1}), (BinaryLabelSeries{1, 0, 0, 0, 1}));
}

TEST(metrics_point, paf_fixture) {
    EXPECT_NEAR(pa_f(kFixtureY, kFixtureYhat, 1.0), 6.0 / 7.0, 1e-15);
    EXPECT_DOUBLE_EQ(pa_f(kFixtureY, kFixtureY, 1.0), 1.0);
}

TEST(metrics_point, paf_single_hit_fills_long_segment) {
    BinaryLabelSeries y(120, 0), yhat(120, 0);
    for (std::size_t t = 10; t < 110; ++t) y[t] = 1;
    yhat[57] = 1;
    EXPECT_DOUBLE_EQ(pa_f(y, yhat, 1.0), 1.0);
    EXPECT_LT(pw_f(y, yhat, 1.0), 0.03);
}

TEST(metrics_point, kpaf_examples) {
    BinaryLabelSeries y{0, 1, 1, 1, 0, 0, 0, 0};
    BinaryLabelSeries yhat{0, 0, 1, 0, 0, 0, 0, 0};
    // 1 hit < 0.5 * 3: segment removed, tp = 0 and fn = 3
    EXPECT_DOUBLE_EQ(k_pa_f(y, yhat, 0.5, 1.0), 0.0);
    // tiny K passes on any hit
    EXPECT_DOUBLE_EQ(k_pa_f(y, yhat, 1e-9, 1.0), pa_f(y, yhat, 1.0));
    // full coverage at K = 1 matches plain point adjust
    BinaryLabelSeries full{0, 1, 1, 1, 0, 0, 0, 0};
    EXPECT_DOUBLE_EQ(k_pa_f(y, full, 1.0, 1.0), pa_f(y, full, 1.0));
    EXPECT_THROW(k_pa_f(y, yhat, 0.0, 1.0), InvalidK);
    EXPECT_THROW(k_pa_f(y, yhat, 1.5, 1.0), InvalidK);
}

TEST(metrics_point, dtpaf_examples) {
    BinaryLabelSeries y{0, 1, 1, 1, 0};
    BinaryLabelSeries hit_mid{0, 0, 1, 0, 0};
    // window [1,1] misses the hit at t=2
    EXPECT_DOUBLE_EQ(dt_pa_f(y, hit_mid, 1, 1.0), 0.0);
    // window [1,2] catches it and the segment fills
    EXPECT_DOUBLE_EQ(dt_pa_f(y, hit_mid, 2, 1.0), 1.0);
    BinaryLabelSeries hit_start{0, 1, 0, 0, 0};
    EXPECT_DOUBLE_EQ(dt_pa_f(y, hit_start, 1, 1.0), 1.0);
}

TEST(metrics_point, adjustment_properties) {
    Rng rng(42);
    for (int it = 0; it < 300; ++it) {
        const std::size_t n = 2 + rng.index(40);
        const auto y = testutil::random_labels(rng, n);
        const auto yhat = testutil::random_labels(rng, n);
        // idempotence
        const auto adj = point_adjust(y, yhat);
        EXPECT_EQ(point_adjust(y, adj), adj);
        // adjustment never loses score
        EXPECT_GE(pa_f(y, yhat, 1.0) + 1e-12, pw_f(y, yhat, 1.0));
        // a window as long as the longest segment makes dt-pa equal pa
        std::size_t max_len = 1;
        for (const Segment& s : segments_from_labels(y)) max_len = std::max(max_len, s.length());
        EXPECT_NEAR(dt_pa_f(y, yhat, max_len, 1.0), pa_f(y, yhat, 1.0), 1e-12);
    }
}

TEST(metrics_point, kpaf_non_increasing_in_k) {
    Rng rng(43);
    for (int it = 0; it < 100; ++it) {
        const std::size_t n = 2 + rng.index(40);
        const auto y = testutil::random_labels(rng, n);
        const auto yhat = testutil::random_labels(rng, n);
        double prev = 2.0;
        for (double k : {0.01, 0.25, 0.5, 0.75, 1.0}) {
            const double v = k_pa_f(y, yhat, k, 1.0);
            EXPECT_LE(v, prev + 1e-12);
            prev = v;
        }
    }
}
