#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "tsadm/labels.hpp"
#include "tsadm/rng.hpp"

namespace tsadm {

enum class AnomalyFamily { point, level_shift, collective, periodic_disruption, contextual };

inline const char* family_name(AnomalyFamily f) {
    switch (f) {
        case AnomalyFamily::point: return "point";
        case AnomalyFamily::level_shift: return "level_shift";
        case AnomalyFamily::collective: return "collective";
        case AnomalyFamily::periodic_disruption: return "periodic_disruption";
        case AnomalyFamily::contextual: return "contextual";
    }
    return "?";
}

struct BaseSignalParams {
    double amp_fast = 1.0;
    double amp_slow = 0.5;
    double period_fast_min = 50, period_fast_max = 200;
    double period_slow_min = 500, period_slow_max = 2000;
    double trend_span = 0.5;  // total linear drift over the series
    double noise_sigma = 0.1;
};

// Every anomaly-injection knob in one auditable record. All magnitudes are
// relative to sigma0 (clean-signal std) or sigma_hf (high-frequency noise
// estimate), so scaling the clean signal scales the injected effects.
struct InjectionParams {
    std::size_t min_gap = 5;

    std::size_t point_len_min = 1, point_len_max = 3;
    double point_k_min = 3.0, point_k_max = 8.0;

    std::size_t shift_short_min = 50, shift_short_max = 200;
    std::size_t shift_medium_min = 200, shift_medium_max = 1000;
    std::size_t shift_long_min = 1000, shift_long_max = 3000;
    double shift_offset_min = 2.0, shift_offset_max = 5.0;  // x sigma0, additive variant
    double shift_scale_min = 1.5, shift_scale_max = 2.5;    // multiplicative variant

    std::size_t collective_len_min = 10, collective_len_max = 500;
    double collective_sine_amp = 2.0;          // x sigma0
    double collective_sine_period_min = 5, collective_sine_period_max = 40;
    double collective_noise_factor = 5.0;      // target ratio of hf noise
    double collective_pattern_amp = 2.0;       // x sigma0, uniform replacement

    std::size_t periodic_len_min = 50, periodic_len_max = 1000;
    double periodic_amp_red_min = 0.4, periodic_amp_red_max = 0.7;
    std::size_t periodic_phase_shift_min = 10, periodic_phase_shift_max = 50;

    std::size_t contextual_len_min = 20, contextual_len_max = 200;
    double contextual_scale_min = 1.3, contextual_scale_max = 1.8;
};

struct SynthConfig {
    std::size_t length = 5000;
    double contamination = 0.10;
    std::uint64_t seed = 0;
    std::map<AnomalyFamily, double> mix = {
        {AnomalyFamily::point, 0.025},      {AnomalyFamily::level_shift, 0.35},
        {AnomalyFamily::collective, 0.25},  {AnomalyFamily::periodic_disruption, 0.25},
        {AnomalyFamily::contextual, 0.125},
    };
    BaseSignalParams base;
    InjectionParams inject;
};

struct AnomalyEvent {
    Segment span;
    AnomalyFamily family;
    std::string variant;
    double magnitude = 0;
};

struct GeneratedDataset {
    std::vector<double> signal;
    BinaryLabelSeries labels;
    std::vector<AnomalyEvent> events;
    double sigma0 = 0;    // clean-signal std, fixed before injection
    double sigma_hf = 0;  // high-frequency noise estimate, std(diff)/sqrt(2)
};

inline std::vector<double> generate_base_signal(std::size_t length, std::uint64_t seed,
                                                const BaseSignalParams& p = {}) {
    Rng rng(splitmix64(seed ^ 0x5157ULL));
    const double period_fast = rng.uniform(p.period_fast_min, p.period_fast_max);
    const double period_slow = rng.uniform(p.period_slow_min, p.period_slow_max);
    const double phase_fast = rng.uniform(0, 6.283185307179586);
    const double phase_slow = rng.uniform(0, 6.283185307179586);
    std::vector<double> x(length);
    const double two_pi = 6.283185307179586;
    for (std::size_t t = 0; t < length; ++t) {
        const double ft = static_cast<double>(t);
        x[t] = p.amp_fast * std::sin(two_pi * ft / period_fast + phase_fast) +
               p.amp_slow * std::sin(two_pi * ft / period_slow + phase_slow) +
               p.trend_span * ft / static_cast<double>(length) + p.noise_sigma * rng.normal();
    }
    return x;
}

namespace synth_detail {

inline double std_of(const std::vector<double>& x) {
    double mean = 0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(x.size());
    double var = 0;
    for (double v : x) var += (v - mean) * (v - mean);
    return std::sqrt(var / static_cast<double>(x.size()));
}

inline double hf_sigma_of(const std::vector<double>& x) {
    if (x.size() < 2) return 0;
    double var = 0;
    for (std::size_t t = 1; t < x.size(); ++t) {
        const double d = x[t] - x[t - 1];
        var += d * d;
    }
    return std::sqrt(var / static_cast<double>(x.size() - 1) / 2.0);
}

struct PlannedEvent {
    AnomalyFamily family;
    std::size_t length;
};

// Draw event lengths per family until its point budget is spent, then top up
// the overall shortfall with collective and point events so the total lands
// within a few points of the contamination target.
inline std::vector<PlannedEvent> plan_events(std::size_t budget, const SynthConfig& cfg, Rng& rng) {
    const InjectionParams& ip = cfg.inject;
    std::vector<PlannedEvent> plan;
    std::size_t planned_total = 0;

    auto family_min = [&](AnomalyFamily f) -> std::size_t {
        switch (f) {
            case AnomalyFamily::point: return ip.point_len_min;
            case AnomalyFamily::level_shift: return ip.shift_short_min;
            case AnomalyFamily::collective: return ip.collective_len_min;
            case AnomalyFamily::periodic_disruption: return ip.periodic_len_min;
            case AnomalyFamily::contextual: return ip.contextual_len_min;
        }
        return 1;
    };

    for (const auto& [family, share] : cfg.mix) {
        if (share <= 0) continue;
        const auto family_budget = static_cast<std::size_t>(std::llround(share * static_cast<double>(budget)));
        if (family_budget < family_min(family))
            throw BudgetInfeasible("family " + std::string(family_name(family)) + " budget " +
                                   std::to_string(family_budget) + " below its minimum event length " +
                                   std::to_string(family_min(family)));
        std::size_t remaining = family_budget;
        while (remaining >= family_min(family)) {
            std::size_t len = family_min(family);
            switch (family) {
                case AnomalyFamily::point:
                    len = ip.point_len_min + rng.index(ip.point_len_max - ip.point_len_min + 1);
                    break;
                case AnomalyFamily::level_shift: {
                    // class weight proportional to the remaining budget, so
                    // larger budgets favor longer drift classes
                    std::vector<std::pair<std::size_t, std::size_t>> classes;
                    std::vector<double> weights;
                    if (remaining >= ip.shift_short_min) {
                        classes.emplace_back(ip.shift_short_min, ip.shift_short_max);
                        weights.push_back(static_cast<double>(ip.shift_short_min));
                    }
                    if (remaining >= ip.shift_medium_min) {
                        classes.emplace_back(ip.shift_medium_min, ip.shift_medium_max);
                        weights.push_back(static_cast<double>(std::min(remaining, ip.shift_medium_max)));
                    }
                    if (remaining >= ip.shift_long_min) {
                        classes.emplace_back(ip.shift_long_min, ip.shift_long_max);
                        weights.push_back(static_cast<double>(std::min(remaining, ip.shift_long_max)));
                    }
                    double total_w = 0;
                    for (double wv : weights) total_w += wv;
                    double pick = rng.uniform(0.0, total_w);
                    std::size_t ci = 0;
                    while (ci + 1 < classes.size() && pick > weights[ci]) {
                        pick -= weights[ci];
                        ++ci;
                    }
                    const auto& cls = classes[ci];
                    const std::size_t hi = std::min(cls.second, std::max(cls.first, remaining));
                    len = cls.first + rng.index(hi - cls.first + 1);
                    break;
                }
                case AnomalyFamily::collective:
                    len = ip.collective_len_min + rng.index(ip.collective_len_max - ip.collective_len_min + 1);
                    break;
                case AnomalyFamily::periodic_disruption:
                    len = ip.periodic_len_min + rng.index(ip.periodic_len_max - ip.periodic_len_min + 1);
                    break;
                case AnomalyFamily::contextual:
                    len = ip.contextual_len_min + rng.index(ip.contextual_len_max - ip.contextual_len_min + 1);
                    break;
            }
            if (len > remaining) {
                if (remaining < family_min(family)) break;
                len = remaining;
            }
            plan.push_back({family, len});
            planned_total += len;
            remaining -= len;
        }
    }

    // top-up so the total tracks the budget closely
    while (budget > planned_total && budget - planned_total >= ip.collective_len_min) {
        const std::size_t want = budget - planned_total;
        std::size_t len = ip.collective_len_min + rng.index(ip.collective_len_max - ip.collective_len_min + 1);
        len = std::min(len, want);
        plan.push_back({AnomalyFamily::collective, len});
        planned_total += len;
    }
    while (budget > planned_total) {
        const std::size_t len = std::min<std::size_t>(ip.point_len_max, budget - planned_total);
        plan.push_back({AnomalyFamily::point, len});
        planned_total += len;
    }
    return plan;
}

// Uniform rejection placement, longest events first, min_gap between spans.
inline std::vector<std::pair<std::size_t, PlannedEvent>> place_events(const std::vector<PlannedEvent>& plan,
                                                                      std::size_t t_len, std::size_t min_gap,
                                                                      Rng& rng) {
    std::vector<PlannedEvent> ordered = plan;
    std::stable_sort(ordered.begin(), ordered.end(),
                     [](const PlannedEvent& a, const PlannedEvent& b) { return a.length > b.length; });
    std::vector<std::pair<std::size_t, std::size_t>> occupied;  // [start, end] inclusive
    std::vector<std::pair<std::size_t, PlannedEvent>> placed;
    for (const PlannedEvent& ev : ordered) {
        if (ev.length > t_len) throw BudgetInfeasible("event longer than the series");
        bool ok = false;
        for (int attempt = 0; attempt < 4000 && !ok; ++attempt) {
            const std::size_t start = rng.index(t_len - ev.length + 1);
            const std::size_t end = start + ev.length - 1;
            ok = true;
            for (const auto& [os, oe] : occupied) {
                const std::size_t lo = os >= min_gap ? os - min_gap : 0;
                const std::size_t hi = oe + min_gap;
                if (start <= hi && lo <= end) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                occupied.emplace_back(start, end);
                placed.emplace_back(start, ev);
            }
        }
        if (!ok)
            throw BudgetInfeasible("could not place all events: contamination too dense for length " +
                                   std::to_string(t_len));
    }
    std::sort(placed.begin(), placed.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return placed;
}

}  // namespace synth_detail

inline GeneratedDataset inject_anomalies(const std::vector<double>& signal, const SynthConfig& cfg) {
    if (!(cfg.contamination > 0.0 && cfg.contamination < 1.0))
        throw ShapeError("contamination must lie in (0,1)");
    double mix_sum = 0;
    for (const auto& [f, share] : cfg.mix) mix_sum += share;
    if (std::abs(mix_sum - 1.0) > 1e-9) throw ShapeError("anomaly mix proportions must sum to 1");

    const std::size_t n = signal.size();
    const InjectionParams& ip = cfg.inject;
    GeneratedDataset out;
    out.signal = signal;
    out.labels.assign(n, 0);
    out.sigma0 = synth_detail::std_of(signal);
    out.sigma_hf = synth_detail::hf_sigma_of(signal);
    if (out.sigma0 <= 0) throw ShapeError("clean signal has zero variance");

    Rng rng(splitmix64(cfg.seed ^ 0x1439ULL));
    const auto budget = static_cast<std::size_t>(std::llround(cfg.contamination * static_cast<double>(n)));
    const auto plan = synth_detail::plan_events(budget, cfg, rng);
    const auto placed = synth_detail::place_events(plan, n, ip.min_gap, rng);

    const std::vector<double>& clean = signal;
    auto seg_mean = [&](std::size_t s, std::size_t e) {
        double m = 0;
        for (std::size_t t = s; t <= e; ++t) m += clean[t];
        return m / static_cast<double>(e - s + 1);
    };

    for (const auto& [start, ev] : placed) {
        const std::size_t end = start + ev.length - 1;
        AnomalyEvent rec{{start, end}, ev.family, "", 0};
        switch (ev.family) {
            case AnomalyFamily::point: {
                const double k = rng.uniform(ip.point_k_min, ip.point_k_max);
                const double sign = rng.bernoulli(0.5) ? 1.0 : -1.0;
                for (std::size_t t = start; t <= end; ++t) out.signal[t] += sign * k * out.sigma0;
                rec.variant = "spike";
                rec.magnitude = k;
                break;
            }
            case AnomalyFamily::level_shift: {
                if (rng.bernoulli(0.5)) {
                    const double off = rng.uniform(ip.shift_offset_min, ip.shift_offset_max) * out.sigma0;
                    const double sign = rng.bernoulli(0.5) ? 1.0 : -1.0;
                    for (std::size_t t = start; t <= end; ++t) out.signal[t] += sign * off;
                    rec.variant = "additive";
                    rec.magnitude = off;
                } else {
                    const double factor = rng.uniform(ip.shift_scale_min, ip.shift_scale_max);
                    const double m = seg_mean(start, end);
                    for (std::size_t t = start; t <= end; ++t) out.signal[t] = m + (clean[t] - m) * factor;
                    rec.variant = "multiplicative";
                    rec.magnitude = factor;
                }
                break;
            }
            case AnomalyFamily::collective: {
                const std::size_t variant = rng.index(3);
                if (variant == 0) {
                    const double period = rng.uniform(ip.collective_sine_period_min, ip.collective_sine_period_max);
                    const double m = seg_mean(start, end);
                    for (std::size_t t = start; t <= end; ++t)
                        out.signal[t] = m + ip.collective_sine_amp * out.sigma0 *
                                                std::sin(6.283185307179586 * static_cast<double>(t - start) / period);
                    rec.variant = "frequency_change";
                    rec.magnitude = period;
                } else if (variant == 1) {
                    // added noise of std sqrt(f^2-1)*sigma_hf raises the total
                    // hf noise to f times its clean level
                    const double f = ip.collective_noise_factor;
                    const double extra = std::sqrt(f * f - 1.0) * out.sigma_hf;
                    for (std::size_t t = start; t <= end; ++t) out.signal[t] += extra * rng.normal();
                    rec.variant = "noise_amplification";
                    rec.magnitude = f;
                } else {
                    const double m = seg_mean(start, end);
                    for (std::size_t t = start; t <= end; ++t)
                        out.signal[t] = m + ip.collective_pattern_amp * out.sigma0 * rng.uniform(-1.0, 1.0);
                    rec.variant = "pattern_change";
                    rec.magnitude = ip.collective_pattern_amp;
                }
                break;
            }
            case AnomalyFamily::periodic_disruption: {
                const std::size_t variant = rng.index(3);
                if (variant == 0) {
                    const double m = seg_mean(start, end);
                    for (std::size_t t = start; t <= end; ++t) out.signal[t] = m;
                    rec.variant = "flatten";
                } else if (variant == 1) {
                    const std::size_t shift =
                        ip.periodic_phase_shift_min + rng.index(ip.periodic_phase_shift_max - ip.periodic_phase_shift_min + 1);
                    for (std::size_t t = start; t <= end; ++t)
                        out.signal[t] = clean[std::min(t + shift, n - 1)];
                    rec.variant = "phase_shift";
                    rec.magnitude = static_cast<double>(shift);
                } else {
                    const double factor = rng.uniform(ip.periodic_amp_red_min, ip.periodic_amp_red_max);
                    const double m = seg_mean(start, end);
                    for (std::size_t t = start; t <= end; ++t) out.signal[t] = m + (clean[t] - m) * factor;
                    rec.variant = "amplitude_reduction";
                    rec.magnitude = factor;
                }
                break;
            }
            case AnomalyFamily::contextual: {
                if (rng.bernoulli(0.5) && n > 2 * ev.length) {
                    // copy a clean stretch from a different time
                    std::size_t src = rng.index(n - ev.length + 1);
                    for (int attempt = 0; attempt < 100 && src <= end && src + ev.length > start; ++attempt)
                        src = rng.index(n - ev.length + 1);
                    for (std::size_t t = start; t <= end; ++t) out.signal[t] = clean[src + (t - start)];
                    rec.variant = "misplacement";
                    rec.magnitude = static_cast<double>(src);
                } else {
                    const double factor = rng.uniform(ip.contextual_scale_min, ip.contextual_scale_max);
                    const std::size_t ctx_lo = start >= 50 ? start - 50 : 0;
                    const double m = start > ctx_lo ? seg_mean(ctx_lo, start - 1) : seg_mean(start, end);
                    for (std::size_t t = start; t <= end; ++t) out.signal[t] = m + (clean[t] - m) * factor;
                    rec.variant = "amplitude_distortion";
                    rec.magnitude = factor;
                }
                break;
            }
        }
        for (std::size_t t = start; t <= end; ++t) out.labels[t] = 1;
        out.events.push_back(rec);
    }
    return out;
}

inline GeneratedDataset generate(const SynthConfig& cfg) {
    return inject_anomalies(generate_base_signal(cfg.length, cfg.seed, cfg.base), cfg);
}

// Stable per-cell seed: depends only on the cell coordinates, never on the
// iteration order. Contamination is keyed on a 1e-6 grid.
inline std::uint64_t cell_seed(std::uint64_t base_seed, std::size_t length, double contamination,
                               std::size_t repetition) {
    std::uint64_t h = splitmix64(base_seed);
    h = hash_combine(h, static_cast<std::uint64_t>(length));
    h = hash_combine(h, static_cast<std::uint64_t>(std::llround(contamination * 1e6)));
    h = hash_combine(h, static_cast<std::uint64_t>(repetition));
    return h;
}

inline std::vector<SynthConfig> grid_expand(const std::vector<std::size_t>& lengths,
                                            const std::vector<double>& contaminations, std::size_t repetitions,
                                            std::uint64_t base_seed) {
    if (lengths.empty() || contaminations.empty() || repetitions == 0)
        throw ShapeError("grid axes must be non-empty");
    std::vector<SynthConfig> grid;
    for (std::size_t length : lengths)
        for (double c : contaminations)
            for (std::size_t rep = 0; rep < repetitions; ++rep) {
                SynthConfig cfg;
                cfg.length = length;
                cfg.contamination = c;
                cfg.seed = cell_seed(base_seed, length, c, rep);
                grid.push_back(cfg);
            }
    return grid;
}

}  // namespace tsadm
