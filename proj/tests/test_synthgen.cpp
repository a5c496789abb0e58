#include "tsadm/synthgen.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <set>

using namespace tsadm;

TEST(base_signal, deterministic_and_noise_controls) {
    const auto a = generate_base_signal(2000, 99);
    const auto b = generate_base_signal(2000, 99);
    EXPECT_EQ(a, b);
    const auto c = generate_base_signal(2000, 100);
    EXPECT_NE(a, c);

    BaseSignalParams smooth;
    smooth.noise_sigma = 0.0;
    const auto s1 = generate_base_signal(500, 7, smooth);
    const auto s2 = generate_base_signal(500, 7, smooth);
    EXPECT_EQ(s1, s2);
    // smooth waveform: bounded first differences
    for (std::size_t t = 1; t < s1.size(); ++t) EXPECT_LT(std::abs(s1[t] - s1[t - 1]), 0.3);
}

TEST(base_signal, noise_variance_matches_configuration) {
    BaseSignalParams pure_noise;
    pure_noise.amp_fast = 0;
    pure_noise.amp_slow = 0;
    pure_noise.trend_span = 0;
    pure_noise.noise_sigma = 0.37;
    const auto x = generate_base_signal(50000, 3, pure_noise);
    double mean = 0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(x.size());
    double var = 0;
    for (double v : x) var += (v - mean) * (v - mean);
    var /= static_cast<double>(x.size());
    EXPECT_NEAR(var, 0.37 * 0.37, 0.05 * 0.37 * 0.37);
}

TEST(inject, determinism_and_budget) {
    SynthConfig cfg;
    cfg.length = 5000;
    cfg.contamination = 0.10;
    cfg.seed = 42;
    const auto d1 = generate(cfg);
    const auto d2 = generate(cfg);
    EXPECT_EQ(d1.signal, d2.signal);
    EXPECT_EQ(d1.labels, d2.labels);
    ASSERT_EQ(d1.events.size(), d2.events.size());

    std::size_t labeled = 0;
    for (auto v : d1.labels) labeled += v;
    EXPECT_GE(labeled, 450u);
    EXPECT_LE(labeled, 550u);
}

TEST(inject, point_only_mix) {
    SynthConfig cfg;
    cfg.length = 1000;
    cfg.contamination = 0.01;
    cfg.seed = 5;
    cfg.mix = {{AnomalyFamily::point, 1.0}};
    const auto d = generate(cfg);
    std::size_t labeled = 0;
    for (auto v : d.labels) labeled += v;
    EXPECT_GE(labeled, 8u);
    EXPECT_LE(labeled, 12u);
    for (const auto& ev : d.events) {
        EXPECT_EQ(ev.family, AnomalyFamily::point);
        EXPECT_LE(ev.span.length(), 3u);
    }
}

TEST(inject, labels_roundtrip_to_events_and_no_overlap) {
    SynthConfig cfg;
    cfg.length = 8000;
    cfg.contamination = 0.15;
    cfg.seed = 11;
    const auto d = generate(cfg);
    std::vector<Segment> spans;
    for (const auto& ev : d.events) spans.push_back(ev.span);
    std::sort(spans.begin(), spans.end(), [](const Segment& a, const Segment& b) { return a.start < b.start; });
    for (std::size_t i = 0; i + 1 < spans.size(); ++i) EXPECT_GT(spans[i + 1].start, spans[i].end + 1);
    const auto segs = segments_from_labels(d.labels);
    ASSERT_EQ(segs.size(), spans.size());
    for (std::size_t i = 0; i < spans.size(); ++i) EXPECT_EQ(segs.segments()[i], spans[i]);
}

TEST(inject, intensities_scale_with_sigma0) {
    SynthConfig cfg;
    cfg.length = 4000;
    cfg.contamination = 0.12;
    cfg.seed = 21;
    const auto clean = generate_base_signal(cfg.length, cfg.seed, cfg.base);
    const auto base = inject_anomalies(clean, cfg);
    for (double c : {0.5, 2.0, 10.0}) {
        std::vector<double> scaled(clean.size());
        for (std::size_t t = 0; t < clean.size(); ++t) scaled[t] = c * clean[t];
        const auto d = inject_anomalies(scaled, cfg);
        ASSERT_EQ(d.events.size(), base.events.size());
        EXPECT_EQ(d.labels, base.labels);
        for (std::size_t t = 0; t < clean.size(); ++t) {
            const double delta_base = base.signal[t] - clean[t];
            const double delta_scaled = d.signal[t] - scaled[t];
            EXPECT_NEAR(delta_scaled, c * delta_base, 1e-6 * (1.0 + std::abs(c * delta_base)))
                << "c=" << c << " t=" << t;
        }
    }
}

TEST(inject, infeasible_mix_reports_error) {
    SynthConfig cfg;
    cfg.length = 1000;
    cfg.contamination = 0.01;  // 10-point budget cannot host a level shift
    cfg.seed = 1;
    EXPECT_THROW(generate(cfg), BudgetInfeasible);
}

TEST(grid, expansion_and_seed_stability) {
    const auto grid = grid_expand({5000, 10000, 50000}, {0.05, 0.10, 0.15, 0.20}, 60, 7);
    EXPECT_EQ(grid.size(), 720u);

    const auto single = grid_expand({5000}, {0.10}, 1, 7);
    ASSERT_EQ(single.size(), 1u);
    EXPECT_EQ(single[0].seed, cell_seed(7, 5000, 0.10, 0));

    // permuting the axis order leaves the multiset of seeds unchanged
    const auto grid2 = grid_expand({50000, 5000, 10000}, {0.20, 0.05, 0.15, 0.10}, 60, 7);
    std::multiset<std::uint64_t> s1, s2;
    for (const auto& g : grid) s1.insert(g.seed);
    for (const auto& g : grid2) s2.insert(g.seed);
    EXPECT_EQ(s1, s2);
}
