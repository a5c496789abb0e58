#include "tsadm/labels.hpp"

#include <gtest/gtest.h>

#include "util.hpp"

using namespace tsadm;

TEST(labels, segments_from_labels_examples) {
    const BinaryLabelSeries y{0, 1, 1, 1, 0, 0, 0, 1, 0, 0};
    const auto segs = segments_from_labels(y);
    ASSERT_EQ(segs.size(), 2u);
    EXPECT_EQ(segs.segments()[0], (Segment{1, 3}));
    EXPECT_EQ(segs.segments()[1], (Segment{7, 7}));

    EXPECT_TRUE(segments_from_labels(BinaryLabelSeries(5, 0)).empty());

    const auto all_ones = segments_from_labels(BinaryLabelSeries(4, 1));
    ASSERT_EQ(all_ones.size(), 1u);
    EXPECT_EQ(all_ones.segments()[0], (Segment{0, 3}));
}

TEST(labels, labels_from_segments_examples) {
    const SegmentSet s(std::vector<Segment>{{1, 3}, {7, 7}});
    EXPECT_EQ(labels_from_segments(s, 10), (BinaryLabelSeries{0, 1, 1, 1, 0, 0, 0, 1, 0, 0}));
    EXPECT_EQ(labels_from_segments(SegmentSet{}, 3), (BinaryLabelSeries{0, 0, 0}));
    EXPECT_EQ(labels_from_segments(SegmentSet(std::vector<Segment>{{0, 0}}), 1), (BinaryLabelSeries{1}));
    EXPECT_THROW(labels_from_segments(SegmentSet(std::vector<Segment>{{1, 5}}), 5), SegmentOutOfRange);
}

TEST(labels, canonicalization_merges_adjacent) {
    const SegmentSet s(std::vector<Segment>{{3, 4}, {1, 2}});
    ASSERT_EQ(s.size(), 1u);
    EXPECT_EQ(s.segments()[0], (Segment{1, 4}));
}

TEST(labels, roundtrip_property) {
    Rng rng(1234);
    for (int it = 0; it < 300; ++it) {
        const std::size_t n = 1 + rng.index(40);
        const auto y = testutil::random_labels(rng, n, rng.uniform(0.05, 0.9));
        EXPECT_EQ(labels_from_segments(segments_from_labels(y), n), y);
    }
}

TEST(labels, threshold_examples) {
    EXPECT_EQ(threshold({0.1, 0.9, 0.5}, 0.5), (BinaryLabelSeries{0, 1, 0}));
    EXPECT_EQ(threshold({0.3, 0.3}, 0.2), (BinaryLabelSeries{1, 1}));
    EXPECT_EQ(threshold({0.2, 0.8, 0.5}, 0.8), (BinaryLabelSeries{0, 0, 0}));
}

TEST(labels, threshold_monotone_property) {
    Rng rng(77);
    for (int it = 0; it < 100; ++it) {
        const auto s = testutil::random_scores(rng, 30, true);
        const double lo = rng.uniform01();
        const double hi = lo + rng.uniform01();
        const auto pred_lo = threshold(s, lo);
        const auto pred_hi = threshold(s, hi);
        for (std::size_t t = 0; t < s.size(); ++t) EXPECT_LE(pred_hi[t], pred_lo[t]);
    }
}

TEST(labels, overlap_examples) {
    EXPECT_TRUE(overlap({1, 3}, {3, 5}));
    EXPECT_FALSE(overlap({1, 2}, {4, 5}));
    EXPECT_TRUE(overlap({0, 9}, {4, 4}));
}

TEST(labels, overlap_symmetric_reflexive) {
    Rng rng(9);
    for (int it = 0; it < 200; ++it) {
        const std::size_t a0 = rng.index(20), b0 = rng.index(20);
        const Segment a{a0, a0 + rng.index(5)}, b{b0, b0 + rng.index(5)};
        EXPECT_EQ(overlap(a, b), overlap(b, a));
        EXPECT_TRUE(overlap(a, a));
    }
}

TEST(labels, pointwise_confusion_fixture) {
    const BinaryLabelSeries y{0, 1, 1, 1, 0, 0, 0, 1, 0, 0};
    const BinaryLabelSeries yhat{0, 0, 1, 0, 0, 0, 0, 0, 0, 0};
    const auto c = pointwise_confusion(y, yhat);
    EXPECT_DOUBLE_EQ(c.tp, 1);
    EXPECT_DOUBLE_EQ(c.fp, 0);
    EXPECT_DOUBLE_EQ(c.fn, 3);
    EXPECT_DOUBLE_EQ(c.tn, 6);
    EXPECT_THROW(pointwise_confusion(y, BinaryLabelSeries(3, 0)), LengthMismatch);
}

TEST(labels, confusion_totals_property) {
    Rng rng(5);
    for (int it = 0; it < 200; ++it) {
        const std::size_t n = 1 + rng.index(50);
        const auto y = testutil::random_labels(rng, n);
        const auto yhat = testutil::random_labels(rng, n);
        const auto c = pointwise_confusion(y, yhat);
        EXPECT_DOUBLE_EQ(c.tp + c.fp + c.fn + c.tn, static_cast<double>(n));
        if (y == yhat) {
            EXPECT_DOUBLE_EQ(c.fp, 0);
            EXPECT_DOUBLE_EQ(c.fn, 0);
        }
    }
}

TEST(labels, fbeta_examples) {
    EXPECT_DOUBLE_EQ(fbeta(1.0, 1.0, 1.0), 1.0);
    EXPECT_DOUBLE_EQ(fbeta(1.0, 0.25, 1.0), 0.4);
    EXPECT_DOUBLE_EQ(fbeta(0.0, 0.0, 1.0), 0.0);
}
