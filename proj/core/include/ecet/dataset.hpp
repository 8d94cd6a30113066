#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ecet/frame.hpp"

namespace ecet {

using FeatureMatrix = std::vector<std::vector<double>>;

// Feature matrix plus dense integer labels. Labels are re-indexed to
// 0..n-1 at ingestion; label_map keeps the original codes (dense -> original).
struct Dataset {
    FeatureMatrix X;
    std::vector<int> y;
    std::vector<std::string> feature_names;
    std::vector<int> label_map;

    std::size_t rows() const { return X.size(); }
    std::size_t cols() const { return X.empty() ? 0 : X.front().size(); }

    int class_count() const;
    Frame frame() const;  // dense frame over the re-indexed labels
    int original_label(int dense) const;
};

// CSV with a header row; every cell numeric, labels integral. Labels are
// remapped to a dense 0..n-1 range in sorted order of the original codes.
Dataset load_csv(const std::string& path, const std::string& label_column);

// Tennessee-Eastman style .dat directory: whitespace separated, 52
// columns, files d00.dat..d21.dat (training) and d00_te.dat.. (testing).
// Files stored transposed (52 rows) are detected and flipped.
struct TeCase {
    int fault = 0;
    Dataset train;  // labeled with the fault number
    Dataset test;   // first 160 rows labeled 0 (normal), rest the fault
    std::size_t train_rows = 0;
    std::size_t test_rows = 0;
};
std::vector<TeCase> load_te(const std::string& dir);

// Stratified seeded split; per-class sizes within +-1 of the ratio.
std::pair<Dataset, Dataset> split_train_valid(const Dataset& ds, double ratio, std::uint64_t seed);

// Per-feature standardization fitted on the training split only.
// Constant columns pass through unscaled (stddev forced to 1) and are flagged.
struct Standardizer {
    std::vector<double> means;
    std::vector<double> stddevs;  // population formula
    std::vector<int> constant_columns;

    static Standardizer fit(const Dataset& train);
    Dataset apply(const Dataset& ds) const;
    std::vector<double> apply_row(const std::vector<double>& row) const;
};

// Gaussian blobs of unit variance, class means pairwise at least
// `separation` apart (placed on a circle in the first two features).
Dataset make_blobs(int n_classes, int n_per_class, int n_features, double separation,
                   std::uint64_t seed);

enum class AnomalyGenerator { FarBlob, UniformNoise };

// Appends anomalous rows labeled -1 after the original rows. fraction is
// relative to the incoming row count. For FarBlob a unit-variance blob is
// drawn around `center` (which callers should keep far from the training
// means); for UniformNoise rows are uniform over an inflated bounding box.
Dataset inject_anomaly(const Dataset& test, AnomalyGenerator generator, double fraction,
                       std::uint64_t seed, const std::vector<double>& center = {});

}  // namespace ecet
