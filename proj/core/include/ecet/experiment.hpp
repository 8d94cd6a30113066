#pragma once

#include <optional>
#include <string>

#include "json.hpp"

#include "ecet/ensemble.hpp"
#include "ecet/metrics.hpp"
#include "ecet/uncertainty.hpp"

namespace ecet {

// Declarative description of a full run. Parsed from a JSON file; every
// default is overridable there.
struct ExperimentConfig {
    std::uint64_t seed = 0;

    // data source: synthetic blobs or a CSV pair
    std::string source = "blobs";  // blobs | csv
    int classes = 5;
    int train_per_class = 300;
    int test_per_class = 200;
    int features = 2;
    double separation = 10.0;
    std::string train_csv, test_csv;
    std::string label_column = "label";

    double split_ratio = 0.7;  // train vs validation
    int f_sensitivity = 4;

    std::vector<ClassifierSpec> pool;  // empty -> default specs of pool_size
    int pool_size = 5;

    SelectionConfig selection;
    bool run_grid = false;

    double q_min = 0.5;
    double q_max = 0.99;

    bool inject = false;
    std::string anomaly_generator = "far_blob";  // far_blob | uniform
    double anomaly_fraction = 0.2;
    std::vector<double> anomaly_center;

    UQConfig uq;
    bool run_uq = false;
};

ExperimentConfig parse_experiment_config(const nlohmann::json& j);
ExperimentConfig load_experiment_config(const std::string& path);

struct ExperimentReport {
    nlohmann::json report;        // deterministic payload (report.json)
    nlohmann::json timing;        // wall clock, kept out of report.json
    std::string trace_csv;        // index, truth, pred, u_d, u_y, branch
    std::string confusion_csv;
    EnsembleModel model;
    ClassificationReport metrics;
};

// load -> split -> standardize -> train pool -> select -> calibrate ->
// evaluate (+ detect / UQ / grid per config).
ExperimentReport run_experiment(const ExperimentConfig& cfg);

// Writes report.json, trace.csv, confusion.csv and timing.json under dir.
void write_artifacts(const ExperimentReport& rep, const std::string& dir);

}  // namespace ecet
