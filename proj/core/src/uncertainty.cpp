#include "ecet/uncertainty.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "ecet/metrics.hpp"

namespace ecet {

namespace {

void check_cfg(const UQConfig& cfg, const Dataset& valid) {
    if (cfg.batch_size < 1 || cfg.iterations < 1) throw InvalidArgumentError("invalid UQ config");
    if (static_cast<std::size_t>(cfg.batch_size) > valid.rows())
        throw InvalidArgumentError("batch larger than the validation set");
}

// First `batch` entries of a seeded partial Fisher-Yates over 0..n-1.
std::vector<std::size_t> draw_batch(std::size_t n, std::size_t batch, std::mt19937_64& rng) {
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    for (std::size_t i = 0; i < batch; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, n - 1);
        std::swap(idx[i], idx[pick(rng)]);
    }
    idx.resize(batch);
    return idx;
}

double fold_conflict(const std::vector<MassVector>& masses, Rule rule,
                     std::vector<double>* steps) {
    if (masses.size() < 2) return 0.0;
    try {
        return combine_many(masses, rule, steps).conflict;
    } catch (const TotalConflictError&) {
        return 1.0;  // collapse is itself the maximal-uncertainty signal
    }
}

double batch_uq_p(const std::vector<int>& truth, const std::vector<int>& pred) {
    const auto rep = classification_report(truth, pred);
    double v = 1.0;
    for (const auto& s : rep.per_class)
        if (s.support > 0) v *= 1.0 - s.f1;
    return v;
}

void summarize(UQTrace& trace) {
    std::vector<double> ds, y, p;
    for (const auto& it : trace.iterations) {
        ds.push_back(it.uq_ds);
        y.push_back(it.uq_y);
        if (it.uq_p) p.push_back(*it.uq_p);
    }
    trace.median_uq_ds = quantile(ds, 0.5);
    trace.max_uq_ds = *std::max_element(ds.begin(), ds.end());
    trace.median_uq_y = quantile(y, 0.5);
    trace.max_uq_y = *std::max_element(y.begin(), y.end());
    if (!p.empty()) {
        trace.median_uq_p = quantile(p, 0.5);
        trace.max_uq_p = *std::max_element(p.begin(), p.end());
    }
}

}  // namespace

double uq_performance(const std::vector<double>& per_class_perf) {
    if (per_class_perf.empty()) throw EmptySequenceError("empty performance vector");
    double v = 1.0;
    for (double p : per_class_perf) {
        if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgumentError("performance outside [0,1]");
        v *= 1.0 - p;
    }
    return v;
}

UQTrace uq_batch(const TrainedClassifier& clf, const Dataset& valid, const UQConfig& cfg,
                 const SensitivityFactor& k) {
    check_cfg(cfg, valid);
    const Frame frame = Frame::dense(static_cast<int>(clf.weights.size()));
    UQTrace trace;
    for (int it = 0; it < cfg.iterations; ++it) {
        std::mt19937_64 rng(cfg.seed + static_cast<std::uint64_t>(it));
        const auto batch = draw_batch(valid.rows(), static_cast<std::size_t>(cfg.batch_size), rng);

        std::vector<int> truth, pred;
        std::map<int, std::vector<MassVector>> by_class;
        for (std::size_t i : batch) {
            truth.push_back(valid.y[i]);
            pred.push_back(clf.predict(valid.X[i]));
            by_class[valid.y[i]].push_back(clf.evidence(valid.X[i], frame, k));
        }

        // Weighted mean of per-class fold conflicts: predictions for the
        // same underlying class should agree, so disagreement registers
        // as conflict without the cross-class clash a mixed batch bakes in.
        UQIteration out;
        double ds = 0.0, y = 0.0;
        for (const auto& [cls, masses] : by_class) {
            const double w = static_cast<double>(masses.size()) / static_cast<double>(batch.size());
            ds += w * fold_conflict(masses, Rule::Dempster, &out.ds_steps);
            y += w * fold_conflict(masses, Rule::Yager, &out.y_steps);
        }
        out.uq_ds = ds;
        out.uq_y = y;
        out.uq_p = batch_uq_p(truth, pred);
        trace.iterations.push_back(std::move(out));
    }
    summarize(trace);
    return trace;
}

UQTrace uq_batch(const EnsembleModel& model, const Dataset& valid, const UQConfig& cfg) {
    check_cfg(cfg, valid);
    UQTrace trace;
    for (int it = 0; it < cfg.iterations; ++it) {
        std::mt19937_64 rng(cfg.seed + static_cast<std::uint64_t>(it));
        const auto batch = draw_batch(valid.rows(), static_cast<std::size_t>(cfg.batch_size), rng);
        UQIteration out;
        double ds = 0.0, y = 0.0;
        for (std::size_t i : batch) {
            const auto d = ensemble_predict(model, valid.X[i]);
            ds += d.u_d;
            y += d.u_y;
            out.ds_steps.push_back(d.u_d);
            out.y_steps.push_back(d.u_y);
        }
        out.uq_ds = ds / static_cast<double>(batch.size());
        out.uq_y = y / static_cast<double>(batch.size());
        trace.iterations.push_back(std::move(out));
    }
    summarize(trace);
    return trace;
}

}  // namespace ecet
