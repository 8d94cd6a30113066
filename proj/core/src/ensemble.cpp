#include "ecet/ensemble.hpp"

#include <algorithm>
#include <cmath>

namespace ecet {

EnsembleModel make_ensemble(std::vector<TrainedClassifier> pool, const Frame& frame,
                            const SensitivityFactor& sensitivity) {
    if (pool.size() < 2) throw InvalidArgumentError("ensemble needs at least 2 classifiers");
    for (const auto& tc : pool)
        if (static_cast<int>(tc.weights.size()) != frame.size())
            throw FrameMismatchError("classifier weights do not match the frame");
    EnsembleModel m;
    m.pool = std::move(pool);
    m.frame = frame;
    m.sensitivity = sensitivity;
    return m;
}

EnsembleDecision ensemble_predict(const EnsembleModel& model, const std::vector<double>& x) {
    std::vector<MassVector> masses;
    masses.reserve(model.pool.size());
    for (const auto& tc : model.pool) masses.push_back(tc.evidence(x, model.frame, model.sensitivity));

    EnsembleDecision d;
    const FusionResult yager = combine_many(masses, Rule::Yager);
    d.fused_yager = yager.fused;
    d.u_y = yager.conflict;
    try {
        const FusionResult dempster = combine_many(masses, Rule::Dempster);
        d.fused_dempster = dempster.fused;
        d.u_d = dempster.conflict;
        d.label = argmax_label(d.fused_dempster, model.frame);
    } catch (const TotalConflictError&) {
        d.total_conflict = true;
        d.u_d = 1.0;
        d.fused_dempster = d.fused_yager;
        d.label = argmax_label(d.fused_yager, model.frame);
    }
    return d;
}

double quantile(std::vector<double> values, double q) {
    if (values.empty()) throw EmptySequenceError("quantile of empty series");
    if (!(q >= 0.0 && q <= 1.0)) throw InvalidArgumentError("quantile outside [0,1]");
    std::sort(values.begin(), values.end());
    const double pos = q * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = static_cast<std::size_t>(std::ceil(pos));
    const double frac = pos - std::floor(pos);
    return values[lo] + frac * (values[hi] - values[lo]);
}

AnomalyThresholds calibrate_thresholds(const EnsembleModel& model, const Dataset& valid,
                                       double q_min, double q_max) {
    if (valid.rows() == 0) throw InvalidArgumentError("empty validation set");
    if (!(q_min >= 0.0 && q_min < q_max && q_max <= 1.0))
        throw InvalidArgumentError("need 0 <= q_min < q_max <= 1");
    std::vector<double> ud, uy;
    ud.reserve(valid.rows());
    uy.reserve(valid.rows());
    for (const auto& row : valid.X) {
        const auto d = ensemble_predict(model, row);
        ud.push_back(d.u_d);
        uy.push_back(d.u_y);
    }
    AnomalyThresholds t;
    t.tr_d_min = quantile(ud, q_min);
    t.tr_d_max = quantile(ud, q_max);
    t.tr_y_min = quantile(uy, q_min);
    t.tr_y_max = quantile(uy, q_max);
    return t;
}

AnomalyDecision classify_decision(const EnsembleDecision& d, const AnomalyThresholds& t) {
    AnomalyDecision out;
    out.basis = d;
    if (d.u_d < t.tr_d_min && d.u_y < t.tr_y_min) {
        out.branch = DecisionBranch::Confident;
        out.label = d.label;
    } else if (d.u_d > t.tr_d_max && d.u_y > t.tr_y_max) {
        out.branch = DecisionBranch::Anomalous;
        out.label = kAnomalyLabel;
    } else {
        out.branch = DecisionBranch::Undecided;
        out.label = d.label;
    }
    return out;
}

AnomalyDecision detect(const EnsembleModel& model, const std::vector<double>& x) {
    if (!model.calibrated) throw InvalidArgumentError("thresholds not calibrated");
    return classify_decision(ensemble_predict(model, x), model.thresholds);
}

}  // namespace ecet
