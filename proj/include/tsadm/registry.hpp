#pragma once

#include <functional>
#include <string>
#include <vector>

#include "tsadm/labels.hpp"
#include "tsadm/metrics_affiliation.hpp"
#include "tsadm/metrics_curve.hpp"
#include "tsadm/metrics_event.hpp"
#include "tsadm/metrics_lsf.hpp"
#include "tsadm/metrics_nab.hpp"
#include "tsadm/metrics_pate.hpp"
#include "tsadm/metrics_point.hpp"
#include "tsadm/metrics_range.hpp"
#include "tsadm/metrics_taf.hpp"

namespace tsadm {

// One record of defaults for every parameterized metric, so a whole
// evaluation run can be configured (and audited) in one place.
struct MetricParams {
    double beta = 1.0;
    double k_coverage = 0.5;    // kpaf
    std::size_t k_delay = 10;   // dtpaf
    std::size_t tf_tolerance = 5;
    RangeFParams rf{0.0, PositionalBias::flat, CardinalityPenalty::inverse};
    TaFParams taf{0.5, 0.5, 10};
    ETaFParams etaf{0.5, 0.5, 10};
    LsfParams lsf{100, LsfActivation::segment_start};
    NabParams nab{};
    PateParams pate{{100, 200}, {100, 200}};
    VusParams vus{};
};

enum class MetricInput { predictions, scores };

struct MetricDef {
    std::string id;
    MetricInput input;
    bool higher_is_better;
    std::function<double(const BinaryLabelSeries& y, const BinaryLabelSeries* yhat, const ScoreSeries* scores,
                         const MetricParams& params)>
        eval;
};

inline const std::vector<MetricDef>& metric_registry() {
    using B = const BinaryLabelSeries;
    using S = const ScoreSeries;
    using P = const MetricParams;
    static const std::vector<MetricDef> defs = {
        {"pwf", MetricInput::predictions, true,
         [](B& y, B* yh, S*, P& p) { return pw_f(y, *yh, p.beta); }},
        {"paf", MetricInput::predictions, true,
         [](B& y, B* yh, S*, P& p) { return pa_f(y, *yh, p.beta); }},
        {"kpaf", MetricInput::predictions, true,
         [](B& y, B* yh, S*, P& p) { return k_pa_f(y, *yh, p.k_coverage, p.beta); }},
        {"dtpaf", MetricInput::predictions, true,
         [](B& y, B* yh, S*, P& p) { return dt_pa_f(y, *yh, p.k_delay, p.beta); }},
        {"sf", MetricInput::predictions, true,
         [](B& y, B* yh, S*, P& p) { return segment_f(y, *yh, p.beta); }},
        {"cf", MetricInput::predictions, true,
         [](B& y, B* yh, S*, P& p) { return composite_f(y, *yh, p.beta); }},
        {"rf.flat", MetricInput::predictions, true,
         [](B& y, B* yh, S*, P& p) {
             RangeFParams rp = p.rf;
             rp.positional_bias = PositionalBias::flat;
             return range_f(y, *yh, rp, p.beta);
         }},
        {"rf.front", MetricInput::predictions, true,
         [](B& y, B* yh, S*, P& p) {
             RangeFParams rp = p.rf;
             rp.positional_bias = PositionalBias::front;
             return range_f(y, *yh, rp, p.beta);
         }},
        {"tf", MetricInput::predictions, true,
         [](B& y, B* yh, S*, P& p) { return time_tolerant_f(y, *yh, p.tf_tolerance, p.beta); }},
        {"td", MetricInput::predictions, false,
         [](B& y, B* yh, S*, P&) { return temporal_distance(y, *yh); }},
        {"af", MetricInput::predictions, true,
         [](B& y, B* yh, S*, P& p) { return affiliation_f(y, *yh, p.beta); }},
        {"taf", MetricInput::predictions, true,
         [](B& y, B* yh, S*, P& p) { return taf(y, *yh, p.taf, p.beta); }},
        {"etaf", MetricInput::predictions, true,
         [](B& y, B* yh, S*, P& p) { return etaf(y, *yh, p.etaf, p.beta); }},
        {"lsf", MetricInput::predictions, true,
         [](B& y, B* yh, S*, P& p) { return lsf(y, *yh, p.lsf); }},
        {"nab", MetricInput::predictions, true,
         [](B& y, B* yh, S*, P& p) { return nab_score(y, *yh, p.nab); }},
        {"pate", MetricInput::scores, true,
         [](B& y, B*, S* s, P& p) { return pate(y, *s, p.pate); }},
        {"pate_f1", MetricInput::predictions, true,
         [](B& y, B* yh, S*, P& p) { return pate_f1(y, *yh, p.pate); }},
        {"p_at_k", MetricInput::scores, true,
         [](B& y, B*, S* s, P&) { return p_at_k(y, *s); }},
        {"best_pwf", MetricInput::scores, true,
         [](B& y, B*, S* s, P& p) { return best_pwf(y, *s, p.beta); }},
        {"auc_roc", MetricInput::scores, true,
         [](B& y, B*, S* s, P&) { return auc_roc(y, *s); }},
        {"auc_pr", MetricInput::scores, true,
         [](B& y, B*, S* s, P&) { return auc_pr(y, *s); }},
        {"vus_roc", MetricInput::scores, true,
         [](B& y, B*, S* s, P& p) { return vus(y, *s, p.vus, CurveKind::roc); }},
        {"vus_pr", MetricInput::scores, true,
         [](B& y, B*, S* s, P& p) { return vus(y, *s, p.vus, CurveKind::pr); }},
    };
    return defs;
}

inline const MetricDef& find_metric(const std::string& id) {
    for (const MetricDef& def : metric_registry())
        if (def.id == id) return def;
    throw UnknownMetric(id);
}

inline std::vector<std::string> metric_ids() {
    std::vector<std::string> ids;
    for (const MetricDef& def : metric_registry()) ids.push_back(def.id);
    return ids;
}

inline double evaluate_metric(const std::string& id, const BinaryLabelSeries& y, const BinaryLabelSeries* yhat,
                              const ScoreSeries* scores, const MetricParams& params = {}) {
    const MetricDef& def = find_metric(id);
    if (def.input == MetricInput::predictions && yhat == nullptr)
        throw ShapeError("metric " + id + " requires binary predictions");
    if (def.input == MetricInput::scores && scores == nullptr)
        throw ShapeError("metric " + id + " requires anomaly scores");
    return def.eval(y, yhat, scores, params);
}

}  // namespace tsadm
