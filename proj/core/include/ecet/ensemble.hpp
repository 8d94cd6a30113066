#pragma once

#include <vector>

#include "ecet/classifier.hpp"
#include "ecet/selection.hpp"

namespace ecet {

// Empirical quantile bounds on the two conflict series; the detector
// fires only above both maxima.
struct AnomalyThresholds {
    double tr_d_min = 0.0;
    double tr_d_max = 1.0;
    double tr_y_min = 0.0;
    double tr_y_max = 1.0;
};

struct EnsembleModel {
    std::vector<TrainedClassifier> pool;  // fusion order
    Frame frame;
    SensitivityFactor sensitivity;
    AnomalyThresholds thresholds;  // meaningful after calibration
    bool calibrated = false;
};

EnsembleModel make_ensemble(std::vector<TrainedClassifier> pool, const Frame& frame,
                            const SensitivityFactor& sensitivity);

struct EnsembleDecision {
    int label = 0;  // frame label from the normalized fusion
    MassVector fused_dempster;
    MassVector fused_yager;
    double u_d = 0.0;  // final-step conflict per rule
    double u_y = 0.0;
    bool total_conflict = false;  // normalized fold collapsed; label fell back
};

// Per-sample fusion: every pool member's evidence folded in order under
// both rules. The normalized rule names the label; on its collapse u_d
// pins to 1 and the unnormalized argmax takes over.
EnsembleDecision ensemble_predict(const EnsembleModel& model, const std::vector<double>& x);

// Thresholds as empirical quantiles (linear interpolation) of the u_d and
// u_y series over the validation set. Defaults (0.5, 0.99).
AnomalyThresholds calibrate_thresholds(const EnsembleModel& model, const Dataset& valid,
                                       double q_min = 0.5, double q_max = 0.99);

// Sort-based empirical quantile with linear interpolation between order
// statistics (the common "type 7" estimator).
double quantile(std::vector<double> values, double q);

enum class DecisionBranch { Confident, Anomalous, Undecided };

struct AnomalyDecision {
    int label = 0;  // frame label or kAnomalyLabel
    DecisionBranch branch = DecisionBranch::Undecided;
    EnsembleDecision basis;
};

// Three-way rule: below both minima -> known label; above both maxima ->
// anomaly; otherwise known label. Anomaly requires BOTH exceedances.
AnomalyDecision detect(const EnsembleModel& model, const std::vector<double>& x);
AnomalyDecision classify_decision(const EnsembleDecision& d, const AnomalyThresholds& t);

}  // namespace ecet
