#include "ecet/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

namespace ecet {

namespace {

constexpr int kTeColumns = 52;

double parse_cell(const std::string& cell, std::size_t row, std::size_t col) {
    try {
        std::size_t pos = 0;
        double v = std::stod(cell, &pos);
        if (pos != cell.size() || !std::isfinite(v))
            throw ParseError("non-numeric cell at row " + std::to_string(row) + ", column " +
                             std::to_string(col) + ": '" + cell + "'");
        return v;
    } catch (const std::invalid_argument&) {
        throw ParseError("non-numeric cell at row " + std::to_string(row) + ", column " +
                         std::to_string(col) + ": '" + cell + "'");
    } catch (const std::out_of_range&) {
        throw ParseError("out-of-range cell at row " + std::to_string(row));
    }
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
        while (!cell.empty() && cell.front() == ' ') cell.erase(cell.begin());
        cells.push_back(cell);
    }
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

// Remaps arbitrary integer labels to dense 0..n-1 in sorted order.
void densify_labels(Dataset& ds, const std::vector<int>& raw) {
    std::set<int> uniq(raw.begin(), raw.end());
    ds.label_map.assign(uniq.begin(), uniq.end());
    ds.y.resize(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        auto it = std::lower_bound(ds.label_map.begin(), ds.label_map.end(), raw[i]);
        ds.y[i] = static_cast<int>(it - ds.label_map.begin());
    }
}

FeatureMatrix read_whitespace_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    FeatureMatrix rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::stringstream ss(line);
        std::vector<double> row;
        std::string tok;
        while (ss >> tok) row.push_back(parse_cell(tok, lineno, row.size()));
        if (row.empty()) continue;
        if (!rows.empty() && row.size() != rows.front().size())
            throw ParseError(path + ": ragged row " + std::to_string(lineno));
        rows.push_back(std::move(row));
    }
    return rows;
}

FeatureMatrix transpose(const FeatureMatrix& m) {
    FeatureMatrix t(m.front().size(), std::vector<double>(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
    return t;
}

Dataset te_dataset(FeatureMatrix X, const std::vector<int>& raw_labels) {
    Dataset ds;
    ds.X = std::move(X);
    densify_labels(ds, raw_labels);
    for (int j = 0; j < kTeColumns; ++j) ds.feature_names.push_back("x" + std::to_string(j + 1));
    return ds;
}

}  // namespace

int Dataset::class_count() const { return static_cast<int>(label_map.size()); }

Frame Dataset::frame() const { return Frame::dense(class_count()); }

int Dataset::original_label(int dense) const {
    if (dense == kAnomalyLabel) return kAnomalyLabel;
    return label_map.at(static_cast<std::size_t>(dense));
}

Dataset load_csv(const std::string& path, const std::string& label_column) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::string line;
    if (!std::getline(in, line) || line.empty()) throw ParseError(path + ": empty file");
    const auto header = split_csv_line(line);
    std::ptrdiff_t label_idx = -1;
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == label_column) label_idx = static_cast<std::ptrdiff_t>(i);
    if (label_idx < 0) throw ParseError(path + ": missing label column '" + label_column + "'");

    Dataset ds;
    for (std::size_t i = 0; i < header.size(); ++i)
        if (static_cast<std::ptrdiff_t>(i) != label_idx) ds.feature_names.push_back(header[i]);

    std::vector<int> raw_labels;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        const auto cells = split_csv_line(line);
        if (cells.size() != header.size())
            throw ParseError(path + ": row " + std::to_string(lineno) + " has " +
                             std::to_string(cells.size()) + " cells, expected " +
                             std::to_string(header.size()));
        std::vector<double> row;
        row.reserve(header.size() - 1);
        for (std::size_t i = 0; i < cells.size(); ++i) {
            const double v = parse_cell(cells[i], lineno, i);
            if (static_cast<std::ptrdiff_t>(i) == label_idx) {
                if (v != std::floor(v))
                    throw ParseError(path + ": non-integer label at row " + std::to_string(lineno));
                raw_labels.push_back(static_cast<int>(v));
            } else {
                row.push_back(v);
            }
        }
        ds.X.push_back(std::move(row));
    }
    if (ds.X.empty()) throw ParseError(path + ": no data rows");
    densify_labels(ds, raw_labels);
    return ds;
}

std::vector<TeCase> load_te(const std::string& dir) {
    namespace fs = std::filesystem;
    std::vector<TeCase> cases;
    for (int fault = 0; fault <= 21; ++fault) {
        char name[16];
        std::snprintf(name, sizeof(name), "d%02d", fault);
        const fs::path train_path = fs::path(dir) / (std::string(name) + ".dat");
        const fs::path test_path = fs::path(dir) / (std::string(name) + "_te.dat");
        if (!fs::exists(train_path) || !fs::exists(test_path)) continue;

        auto load_one = [](const fs::path& p) {
            FeatureMatrix m = read_whitespace_matrix(p.string());
            if (m.empty()) throw ParseError(p.string() + ": empty file");
            if (m.front().size() != kTeColumns) {
                if (m.size() == kTeColumns) m = transpose(m);
                else
                    throw ParseError(p.string() + ": expected 52 columns, got " +
                                     std::to_string(m.front().size()));
            }
            return m;
        };

        TeCase c;
        c.fault = fault;
        FeatureMatrix train = load_one(train_path);
        FeatureMatrix test = load_one(test_path);
        c.train_rows = train.size();
        c.test_rows = test.size();

        c.train = te_dataset(std::move(train), std::vector<int>(c.train_rows, fault));
        std::vector<int> test_labels(c.test_rows, fault);
        // first 160 test samples run under the normal condition
        for (std::size_t i = 0; i < std::min<std::size_t>(160, c.test_rows); ++i) test_labels[i] = 0;
        c.test = te_dataset(std::move(test), test_labels);
        cases.push_back(std::move(c));
    }
    if (cases.empty()) throw ParseError("no TE .dat files found in " + dir);
    return cases;
}

std::pair<Dataset, Dataset> split_train_valid(const Dataset& ds, double ratio, std::uint64_t seed) {
    if (ds.rows() == 0) throw InvalidArgumentError("empty dataset");
    if (!(ratio > 0.0 && ratio < 1.0)) throw InvalidArgumentError("split ratio must be in (0,1)");

    std::map<int, std::vector<std::size_t>> by_class;
    for (std::size_t i = 0; i < ds.rows(); ++i) by_class[ds.y[i]].push_back(i);
    for (const auto& [cls, idx] : by_class)
        if (idx.size() < 2)
            throw DegenerateDataError("class " + std::to_string(ds.original_label(cls)) +
                                      " has fewer than 2 samples");

    std::mt19937_64 rng(seed);
    std::vector<std::size_t> train_idx, valid_idx;
    for (auto& [cls, idx] : by_class) {
        std::shuffle(idx.begin(), idx.end(), rng);
        auto n_train = static_cast<std::size_t>(std::llround(ratio * static_cast<double>(idx.size())));
        n_train = std::clamp<std::size_t>(n_train, 1, idx.size() - 1);
        train_idx.insert(train_idx.end(), idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(n_train));
        valid_idx.insert(valid_idx.end(), idx.begin() + static_cast<std::ptrdiff_t>(n_train), idx.end());
    }
    std::sort(train_idx.begin(), train_idx.end());
    std::sort(valid_idx.begin(), valid_idx.end());

    auto take = [&ds](const std::vector<std::size_t>& idx) {
        Dataset out;
        out.feature_names = ds.feature_names;
        out.label_map = ds.label_map;
        out.X.reserve(idx.size());
        out.y.reserve(idx.size());
        for (std::size_t i : idx) {
            out.X.push_back(ds.X[i]);
            out.y.push_back(ds.y[i]);
        }
        return out;
    };
    return {take(train_idx), take(valid_idx)};
}

Standardizer Standardizer::fit(const Dataset& train) {
    if (train.rows() == 0) throw InvalidArgumentError("cannot fit standardizer on empty data");
    const std::size_t d = train.cols();
    const auto n = static_cast<double>(train.rows());
    Standardizer s;
    s.means.assign(d, 0.0);
    s.stddevs.assign(d, 0.0);
    for (const auto& row : train.X)
        for (std::size_t j = 0; j < d; ++j) s.means[j] += row[j];
    for (std::size_t j = 0; j < d; ++j) s.means[j] /= n;
    for (const auto& row : train.X)
        for (std::size_t j = 0; j < d; ++j) {
            const double dv = row[j] - s.means[j];
            s.stddevs[j] += dv * dv;
        }
    for (std::size_t j = 0; j < d; ++j) {
        s.stddevs[j] = std::sqrt(s.stddevs[j] / n);
        if (s.stddevs[j] == 0.0) {
            s.stddevs[j] = 1.0;
            s.constant_columns.push_back(static_cast<int>(j));
        }
    }
    return s;
}

std::vector<double> Standardizer::apply_row(const std::vector<double>& row) const {
    if (row.size() != means.size()) throw DimensionMismatchError("row width does not match standardizer");
    std::vector<double> out(row.size());
    for (std::size_t j = 0; j < row.size(); ++j) out[j] = (row[j] - means[j]) / stddevs[j];
    return out;
}

Dataset Standardizer::apply(const Dataset& ds) const {
    Dataset out = ds;
    for (auto& row : out.X) row = apply_row(row);
    return out;
}

Dataset make_blobs(int n_classes, int n_per_class, int n_features, double separation,
                   std::uint64_t seed) {
    if (n_classes < 2 || n_per_class < 1 || n_features < 1 || !(separation > 0.0))
        throw InvalidArgumentError("invalid blob parameters");

    // Means on a circle in the first two features; the shortest chord
    // equals `separation`. One feature degenerates to a line.
    FeatureMatrix means(static_cast<std::size_t>(n_classes),
                        std::vector<double>(static_cast<std::size_t>(n_features), 0.0));
    if (n_features == 1) {
        for (int c = 0; c < n_classes; ++c) means[static_cast<std::size_t>(c)][0] = c * separation;
    } else {
        const double radius = separation / (2.0 * std::sin(std::numbers::pi / n_classes));
        for (int c = 0; c < n_classes; ++c) {
            const double angle = 2.0 * std::numbers::pi * c / n_classes;
            means[static_cast<std::size_t>(c)][0] = radius * std::cos(angle);
            means[static_cast<std::size_t>(c)][1] = radius * std::sin(angle);
        }
    }

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, 1.0);
    Dataset ds;
    for (int j = 0; j < n_features; ++j) ds.feature_names.push_back("f" + std::to_string(j));
    for (int c = 0; c < n_classes; ++c) ds.label_map.push_back(c);
    std::vector<int> raw;
    for (int c = 0; c < n_classes; ++c)
        for (int i = 0; i < n_per_class; ++i) {
            std::vector<double> row(static_cast<std::size_t>(n_features));
            for (int j = 0; j < n_features; ++j)
                row[static_cast<std::size_t>(j)] =
                    means[static_cast<std::size_t>(c)][static_cast<std::size_t>(j)] + noise(rng);
            ds.X.push_back(std::move(row));
            ds.y.push_back(c);
        }
    return ds;
}

Dataset inject_anomaly(const Dataset& test, AnomalyGenerator generator, double fraction,
                       std::uint64_t seed, const std::vector<double>& center) {
    if (fraction < 0.0) throw InvalidArgumentError("negative anomaly fraction");
    Dataset out = test;
    const auto n_inject =
        static_cast<std::size_t>(std::llround(fraction * static_cast<double>(test.rows())));
    if (n_inject == 0) return out;
    if (test.rows() == 0) throw InvalidArgumentError("cannot inject into empty dataset");

    const std::size_t d = test.cols();
    std::mt19937_64 rng(seed);

    if (generator == AnomalyGenerator::FarBlob) {
        std::vector<double> c = center;
        if (c.empty()) {
            // default: well outside the data bounding box along every axis
            c.assign(d, 0.0);
            for (std::size_t j = 0; j < d; ++j) {
                double hi = test.X[0][j];
                for (const auto& row : test.X) hi = std::max(hi, row[j]);
                c[j] = hi + 50.0;
            }
        }
        if (c.size() != d) throw DimensionMismatchError("anomaly center width mismatch");
        std::normal_distribution<double> noise(0.0, 1.0);
        for (std::size_t i = 0; i < n_inject; ++i) {
            std::vector<double> row(d);
            for (std::size_t j = 0; j < d; ++j) row[j] = c[j] + noise(rng);
            out.X.push_back(std::move(row));
            out.y.push_back(kAnomalyLabel);
        }
    } else {
        std::vector<double> lo(d), hi(d);
        for (std::size_t j = 0; j < d; ++j) {
            lo[j] = hi[j] = test.X[0][j];
            for (const auto& row : test.X) {
                lo[j] = std::min(lo[j], row[j]);
                hi[j] = std::max(hi[j], row[j]);
            }
            const double span = std::max(hi[j] - lo[j], 1.0);
            lo[j] -= span;
            hi[j] += span;
        }
        for (std::size_t i = 0; i < n_inject; ++i) {
            std::vector<double> row(d);
            for (std::size_t j = 0; j < d; ++j)
                row[j] = std::uniform_real_distribution<double>(lo[j], hi[j])(rng);
            out.X.push_back(std::move(row));
            out.y.push_back(kAnomalyLabel);
        }
    }
    return out;
}

}  // namespace ecet
