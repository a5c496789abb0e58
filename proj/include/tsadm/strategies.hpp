#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "tsadm/labels.hpp"
#include "tsadm/registry.hpp"
#include "tsadm/rng.hpp"

namespace tsadm {

enum class Strategy { genuine, gradient, uniform_random, clustered_random, bernoulli_random, oracle };

inline const char* strategy_name(Strategy s) {
    switch (s) {
        case Strategy::genuine: return "genuine";
        case Strategy::gradient: return "gradient";
        case Strategy::uniform_random: return "uniform_random";
        case Strategy::clustered_random: return "clustered_random";
        case Strategy::bernoulli_random: return "bernoulli_random";
        case Strategy::oracle: return "oracle";
    }
    return "?";
}

struct PredictionRun {
    ScoreSeries scores;
    BinaryLabelSeries predictions;
    Strategy strategy = Strategy::genuine;
    double alpha = 0;  // quality level, gradient only
    std::uint64_t seed = 0;
};

enum class Detector { moving_average, seasonal_naive, ar };

inline const char* detector_name(Detector d) {
    switch (d) {
        case Detector::moving_average: return "moving_average";
        case Detector::seasonal_naive: return "seasonal_naive";
        case Detector::ar: return "ar";
    }
    return "?";
}

namespace strat_detail {

constexpr std::size_t kWarmup = 300;

// Two-band score assignment shared by every binary strategy so threshold-free
// metrics see comparable score geometry.
inline ScoreSeries two_band_scores(const BinaryLabelSeries& preds, Rng& rng) {
    ScoreSeries s(preds.size());
    for (std::size_t t = 0; t < preds.size(); ++t)
        s[t] = preds[t] ? rng.uniform(0.7, 1.0) : rng.uniform(0.0, 0.3);
    return s;
}

// Alarm set = the k highest-scoring positions (ties by earlier index).
inline BinaryLabelSeries top_k_alarms(const ScoreSeries& scores, std::size_t k) {
    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return scores[a] > scores[b] || (scores[a] == scores[b] && a < b);
    });
    BinaryLabelSeries preds(scores.size(), 0);
    for (std::size_t i = 0; i < std::min(k, order.size()); ++i) preds[order[i]] = 1;
    return preds;
}

inline std::size_t alarm_budget(const BinaryLabelSeries& labels) {
    std::size_t pos = 0;
    for (auto v : labels) pos += v;
    const double p = static_cast<double>(pos) / static_cast<double>(labels.size());
    return static_cast<std::size_t>(std::llround(p * static_cast<double>(labels.size())));
}

// Dominant seasonal lag by autocorrelation over a prefix.
inline std::size_t estimate_period(const std::vector<double>& x) {
    const std::size_t n = std::min<std::size_t>(x.size(), 4000);
    const std::size_t max_lag = std::min<std::size_t>(500, n / 3);
    double mean = 0;
    for (std::size_t t = 0; t < n; ++t) mean += x[t];
    mean /= static_cast<double>(n);
    double var = 1e-12;
    for (std::size_t t = 0; t < n; ++t) var += (x[t] - mean) * (x[t] - mean);
    std::size_t best_lag = 20;
    double best = -2;
    for (std::size_t lag = 20; lag <= max_lag; ++lag) {
        double acc = 0;
        for (std::size_t t = lag; t < n; ++t) acc += (x[t] - mean) * (x[t - lag] - mean);
        if (acc / var > best) {
            best = acc / var;
            best_lag = lag;
        }
    }
    return best_lag;
}

// AR(p) coefficients via Levinson-Durbin on prefix autocovariances.
inline std::vector<double> fit_ar(const std::vector<double>& x, std::size_t p) {
    const std::size_t n = std::min<std::size_t>(x.size(), 4000);
    double mean = 0;
    for (std::size_t t = 0; t < n; ++t) mean += x[t];
    mean /= static_cast<double>(n);
    std::vector<double> r(p + 1, 0.0);
    for (std::size_t lag = 0; lag <= p; ++lag) {
        for (std::size_t t = lag; t < n; ++t) r[lag] += (x[t] - mean) * (x[t - lag] - mean);
        r[lag] /= static_cast<double>(n);
    }
    std::vector<double> a(p + 1, 0.0), prev(p + 1, 0.0);
    double e = r[0] + 1e-12;
    for (std::size_t k = 1; k <= p; ++k) {
        double acc = r[k];
        for (std::size_t j = 1; j < k; ++j) acc -= a[j] * r[k - j];
        const double kappa = acc / e;
        prev = a;
        a[k] = kappa;
        for (std::size_t j = 1; j < k; ++j) a[j] = prev[j] - kappa * prev[k - j];
        e *= 1.0 - kappa * kappa;
        if (e <= 0) break;
    }
    a[0] = mean;
    return a;  // a[0] holds the mean, a[1..p] the coefficients
}

}  // namespace strat_detail

// Forecast-residual anomaly scores: |x_t - forecast_t| normalized by a
// rolling local std of the residuals (window 100, floor 1e-8), then min-max
// mapped to [0,1]. Deterministic.
inline ScoreSeries genuine_scores(const std::vector<double>& signal, const BinaryLabelSeries& labels,
                                  Detector detector) {
    if (signal.size() != labels.size()) throw LengthMismatch(signal.size(), labels.size());
    const std::size_t n = signal.size();
    if (n < strat_detail::kWarmup) throw SeriesTooShort(n, strat_detail::kWarmup);

    // Forecasts condition on a lag-gapped past so that an unfolding anomaly
    // does not immediately fold into its own baseline; the gap also produces
    // the recovery spill right after events that real detectors show.
    constexpr std::size_t kLag = 50;
    std::vector<double> residual(n, 0.0);
    std::size_t warmup = 0;  // residuals before this index are undefined
    switch (detector) {
        case Detector::moving_average: {
            const std::size_t w = 60;
            warmup = kLag + w;
            double acc = 0;
            for (std::size_t t = 0; t + kLag < n; ++t) {
                if (t >= w) {
                    residual[t + kLag] = std::abs(signal[t + kLag] - acc / static_cast<double>(w));
                    acc -= signal[t - w];
                }
                acc += signal[t];
            }
            break;
        }
        case Detector::seasonal_naive: {
            const std::size_t period = strat_detail::estimate_period(signal);
            warmup = period;
            for (std::size_t t = period; t < n; ++t) {
                // median over up to three past seasons resists anomalous refs
                double a = signal[t - period];
                if (t >= 3 * period) {
                    double b = signal[t - 2 * period];
                    double c = signal[t - 3 * period];
                    const double ref = std::max(std::min(a, b), std::min(std::max(a, b), c));
                    residual[t] = std::abs(signal[t] - ref);
                } else {
                    residual[t] = std::abs(signal[t] - a);
                }
            }
            break;
        }
        case Detector::ar: {
            const std::size_t p = 16;
            const std::size_t horizon = 40;
            warmup = horizon + p;
            const auto coef = strat_detail::fit_ar(signal, p);
            const double mean = coef[0];
            // horizon-step-ahead forecast iterated from the lagged state
            std::vector<double> state(p);
            for (std::size_t t = warmup; t < n; ++t) {
                for (std::size_t j = 0; j < p; ++j) state[j] = signal[t - horizon - j] - mean;
                double pred = 0;
                for (std::size_t h = 0; h < horizon; ++h) {
                    pred = 0;
                    for (std::size_t j = 1; j <= p; ++j) pred += coef[j] * state[j - 1];
                    for (std::size_t j = p; j-- > 1;) state[j] = state[j - 1];
                    state[0] = pred;
                }
                residual[t] = std::abs(signal[t] - (mean + pred));
            }
            break;
        }
    }

    // rolling std over 100 residuals ending kLag before t (floor 1e-8); the
    // warm-up region scores zero and never enters a window, so it cannot
    // distort the scale
    ScoreSeries scores(n, 0.0);
    const std::size_t w = 100;
    double sum = 0, sq = 0;
    std::size_t have = 0;
    for (std::size_t t = warmup; t < n; ++t) {
        if (t >= warmup + kLag) {
            const std::size_t u = t - kLag;  // window covers [u-100, u)
            if (have >= 10) {
                const double mu = sum / static_cast<double>(have);
                const double var = std::max(0.0, sq / static_cast<double>(have) - mu * mu);
                scores[t] = residual[t] / std::max(std::sqrt(var), 1e-8);
            }
            sum += residual[u];
            sq += residual[u] * residual[u];
            ++have;
            if (have > w) {
                sum -= residual[u - w];
                sq -= residual[u - w] * residual[u - w];
                --have;
            }
        }
    }
    // light smoothing keeps alarm runs contiguous
    ScoreSeries smoothed(n, 0.0);
    for (std::size_t t = 0; t < n; ++t) {
        double acc = 0;
        std::size_t m = 0;
        const std::size_t lo = t >= 2 ? t - 2 : 0;
        for (std::size_t u = lo; u <= std::min(t + 2, n - 1); ++u) {
            acc += scores[u];
            ++m;
        }
        smoothed[t] = acc / static_cast<double>(m);
    }
    double lo = smoothed[0], hi = smoothed[0];
    for (double v : smoothed) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (hi > lo)
        for (double& v : smoothed) v = (v - lo) / (hi - lo);
    else
        std::fill(smoothed.begin(), smoothed.end(), 0.0);
    return smoothed;
}

// Genuine run: detector scores with alarms at the label rate.
inline PredictionRun genuine_run(const std::vector<double>& signal, const BinaryLabelSeries& labels,
                                 Detector detector, std::uint64_t seed = 0) {
    PredictionRun run;
    run.strategy = Strategy::genuine;
    run.seed = seed;
    run.scores = genuine_scores(signal, labels, detector);
    run.predictions = strat_detail::top_k_alarms(run.scores, strat_detail::alarm_budget(labels));
    return run;
}

// Quality gradient: start from the ground truth, flip anomalous points off at
// rate 1-alpha and normal points on at rate (1-alpha)*p, then apply two-band
// scores with uniform noise of amplitude 0.1*(1-alpha).
inline PredictionRun quality_gradient(const BinaryLabelSeries& labels, double alpha, std::uint64_t seed) {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw InvalidAlpha(alpha);
    Rng rng(splitmix64(seed ^ 0x6a11ULL));
    std::size_t pos = 0;
    for (auto v : labels) pos += v;
    const double p = static_cast<double>(pos) / static_cast<double>(labels.size());
    PredictionRun run;
    run.strategy = Strategy::gradient;
    run.alpha = alpha;
    run.seed = seed;
    run.predictions.assign(labels.size(), 0);
    const double flip_on = (1.0 - alpha) * p;
    for (std::size_t t = 0; t < labels.size(); ++t) {
        if (labels[t])
            run.predictions[t] = rng.bernoulli(1.0 - alpha) ? 0 : 1;
        else
            run.predictions[t] = rng.bernoulli(flip_on) ? 1 : 0;
    }
    run.scores = strat_detail::two_band_scores(run.predictions, rng);
    const double eta = 0.1 * (1.0 - alpha);
    if (eta > 0)
        for (double& s : run.scores) s = std::clamp(s + rng.uniform(-eta, eta), 0.0, 1.0);
    return run;
}

// Uniform score random: U(0,1) draws pick the top-k alarm positions at the
// expected anomaly rate; the returned scores follow the two-band rule.
inline PredictionRun uniform_random(const BinaryLabelSeries& labels, std::uint64_t seed) {
    Rng rng(splitmix64(seed ^ 0x7e21ULL));
    ScoreSeries u(labels.size());
    for (double& v : u) v = rng.uniform01();
    PredictionRun run;
    run.strategy = Strategy::uniform_random;
    run.seed = seed;
    run.predictions = strat_detail::top_k_alarms(u, strat_detail::alarm_budget(labels));
    run.scores = strat_detail::two_band_scores(run.predictions, rng);
    return run;
}

// Clustered random: Poisson cluster starts at rate p/mean_len, geometric
// cluster lengths (mean 10), calibrated so the expected alarm mass is p*T.
inline PredictionRun clustered_random(const BinaryLabelSeries& labels, std::uint64_t seed) {
    Rng rng(splitmix64(seed ^ 0x8c31ULL));
    std::size_t pos = 0;
    for (auto v : labels) pos += v;
    const double p = static_cast<double>(pos) / static_cast<double>(labels.size());
    const double mean_len = 10.0;
    const double rate = p / mean_len;
    PredictionRun run;
    run.strategy = Strategy::clustered_random;
    run.seed = seed;
    run.predictions.assign(labels.size(), 0);
    std::size_t t = 0;
    while (t < labels.size()) {
        if (rng.bernoulli(rate)) {
            const std::size_t len = rng.geometric(mean_len);
            for (std::size_t u2 = t; u2 < std::min(t + len, labels.size()); ++u2) run.predictions[u2] = 1;
            t += len;
        } else {
            ++t;
        }
    }
    run.scores = strat_detail::two_band_scores(run.predictions, rng);
    return run;
}

// Pure Bernoulli random alarms at the anomaly rate.
inline PredictionRun bernoulli_random(const BinaryLabelSeries& labels, std::uint64_t seed) {
    Rng rng(splitmix64(seed ^ 0x9d41ULL));
    std::size_t pos = 0;
    for (auto v : labels) pos += v;
    const double p = static_cast<double>(pos) / static_cast<double>(labels.size());
    PredictionRun run;
    run.strategy = Strategy::bernoulli_random;
    run.seed = seed;
    run.predictions.assign(labels.size(), 0);
    for (auto& v : run.predictions) v = rng.bernoulli(p) ? 1 : 0;
    run.scores = strat_detail::two_band_scores(run.predictions, rng);
    return run;
}

// Ground-truth-aware hill climbing that maximizes the target metric under an
// alarm budget. Moves: toggle a point, grow/shrink a predicted segment by
// one, relocate a segment. Deterministic mid-band scores stand in for the
// two-band draw during the search; the returned run carries sampled two-band
// scores.
inline PredictionRun oracle_attack(const BinaryLabelSeries& labels, const std::string& metric_id,
                                   double alarm_budget = 0.1, std::size_t iterations = 2000,
                                   std::size_t restarts = 5, std::uint64_t seed = 0,
                                   const MetricParams& params = {}) {
    const MetricDef& def = find_metric(metric_id);
    if (!(alarm_budget > 0.0 && alarm_budget < 1.0)) throw ShapeError("alarm budget must lie in (0,1)");
    const std::size_t n = labels.size();
    const auto budget = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::floor(alarm_budget * static_cast<double>(n) + 1e-9)));

    auto value_of = [&](const BinaryLabelSeries& yhat) {
        if (def.input == MetricInput::predictions) return def.eval(labels, &yhat, nullptr, params);
        ScoreSeries s(n);
        for (std::size_t t = 0; t < n; ++t) s[t] = yhat[t] ? 0.85 : 0.15;
        return def.eval(labels, nullptr, &s, params);
    };
    auto oriented = [&](double v) { return def.higher_is_better ? v : -v; };

    BinaryLabelSeries best_pred(n, 0);
    double best_val = oriented(value_of(best_pred));

    for (std::size_t r = 0; r < restarts; ++r) {
        Rng rng(hash_combine(splitmix64(seed ^ 0xab51ULL), r));
        BinaryLabelSeries cur(n, 0);
        std::size_t cur_count = 0;
        double cur_val = oriented(value_of(cur));
        for (std::size_t it = 0; it < iterations; ++it) {
            BinaryLabelSeries cand = cur;
            std::size_t cand_count = cur_count;
            const std::size_t move = rng.index(3);
            if (move == 0 || cur_count == 0) {
                const std::size_t t = rng.index(n);
                if (cand[t]) {
                    cand[t] = 0;
                    --cand_count;
                } else {
                    if (cur_count >= budget) continue;
                    cand[t] = 1;
                    ++cand_count;
                }
            } else {
                const SegmentSet segs = segments_from_labels(cur);
                const Segment seg = segs.segments()[rng.index(segs.size())];
                if (move == 1) {
                    // grow or shrink one endpoint
                    if (rng.bernoulli(0.5)) {
                        const bool left = rng.bernoulli(0.5);
                        if (left && seg.start > 0 && !cand[seg.start - 1] && cand_count < budget) {
                            cand[seg.start - 1] = 1;
                            ++cand_count;
                        } else if (!left && seg.end + 1 < n && !cand[seg.end + 1] && cand_count < budget) {
                            cand[seg.end + 1] = 1;
                            ++cand_count;
                        } else {
                            continue;
                        }
                    } else {
                        cand[rng.bernoulli(0.5) ? seg.start : seg.end] = 0;
                        --cand_count;
                    }
                } else {
                    // relocate the whole segment
                    const std::size_t len = seg.length();
                    const std::size_t dst = rng.index(n - len + 1);
                    for (std::size_t t = seg.start; t <= seg.end; ++t) cand[t] = 0;
                    bool free_slot = true;
                    for (std::size_t t = dst; t < dst + len; ++t) free_slot &= cand[t] == 0;
                    if (!free_slot) continue;
                    for (std::size_t t = dst; t < dst + len; ++t) cand[t] = 1;
                }
            }
            const double v = oriented(value_of(cand));
            if (v > cur_val) {
                cur = std::move(cand);
                cur_count = cand_count;
                cur_val = v;
            }
        }
        if (cur_val > best_val) {
            best_val = cur_val;
            best_pred = cur;
        }
    }

    PredictionRun run;
    run.strategy = Strategy::oracle;
    run.seed = seed;
    run.predictions = std::move(best_pred);
    Rng score_rng(splitmix64(seed ^ 0xbc61ULL));
    run.scores = strat_detail::two_band_scores(run.predictions, score_rng);
    return run;
}

}  // namespace tsadm
