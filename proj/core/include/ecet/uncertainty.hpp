#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ecet/ensemble.hpp"

namespace ecet {

struct UQConfig {
    int batch_size = 20;
    int iterations = 50;
    std::uint64_t seed = 0;
};

struct UQIteration {
    std::optional<double> uq_p;  // absent for ensembles (truth unavailable)
    double uq_ds = 0.0;
    double uq_y = 0.0;
    std::vector<double> ds_steps;  // per-fold conflict traces
    std::vector<double> y_steps;
};

struct UQTrace {
    std::vector<UQIteration> iterations;
    std::optional<double> median_uq_p, max_uq_p;
    double median_uq_ds = 0.0, max_uq_ds = 0.0;
    double median_uq_y = 0.0, max_uq_y = 0.0;
};

// Product of performance complements.
double uq_performance(const std::vector<double>& per_class_perf);

// Repeated-batch uncertainty of one classifier: each iteration draws a
// seeded batch without replacement, turns every prediction into evidence
// and folds the evidences of samples sharing a true class; the iteration
// conflict is the size-weighted mean of those per-class folds (a
// collapsed normalized fold counts as 1). uq_p applies Eq-style
// complements to the batch per-class F1 over classes present.
UQTrace uq_batch(const TrainedClassifier& clf, const Dataset& valid, const UQConfig& cfg,
                 const SensitivityFactor& k = SensitivityFactor{});

// Ensemble variant: per-sample fusion conflicts averaged over the batch;
// uq_p is absent because the ensemble treats ground truth as unknown.
UQTrace uq_batch(const EnsembleModel& model, const Dataset& valid, const UQConfig& cfg);

}  // namespace ecet
