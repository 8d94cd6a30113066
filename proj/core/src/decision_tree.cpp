#include <algorithm>
#include <cmath>

#include "models.hpp"

namespace ecet::models {

namespace {

double gini(const std::vector<std::size_t>& counts, std::size_t total) {
    if (total == 0) return 0.0;
    double g = 1.0;
    for (std::size_t c : counts) {
        const double f = static_cast<double>(c) / static_cast<double>(total);
        g -= f * f;
    }
    return g;
}

std::vector<double> frequencies(const std::vector<std::size_t>& counts, std::size_t total) {
    std::vector<double> f(counts.size(), 0.0);
    for (std::size_t i = 0; i < counts.size(); ++i)
        f[i] = static_cast<double>(counts[i]) / static_cast<double>(total);
    return f;
}

}  // namespace

int DecisionTree::grow(const Dataset& train, std::vector<std::size_t>& idx, int depth,
                       int max_depth, int min_samples) {
    std::vector<std::size_t> counts(static_cast<std::size_t>(n_classes_), 0);
    for (std::size_t i : idx) ++counts[static_cast<std::size_t>(train.y[i])];
    const std::size_t total = idx.size();
    const double node_gini = gini(counts, total);

    const auto make_leaf = [&]() {
        Node leaf;
        leaf.dist = frequencies(counts, total);
        nodes_.push_back(std::move(leaf));
        return static_cast<int>(nodes_.size() - 1);
    };
    if (depth >= max_depth || total < static_cast<std::size_t>(min_samples) || node_gini == 0.0)
        return make_leaf();

    // Best split by weighted child gini; ties resolved toward the lower
    // feature index, then the lower threshold, for determinism.
    int best_feature = -1;
    double best_threshold = 0.0, best_score = node_gini;
    std::vector<std::pair<double, int>> column(total);
    for (int f = 0; f < n_features_; ++f) {
        for (std::size_t i = 0; i < total; ++i)
            column[i] = {train.X[idx[i]][static_cast<std::size_t>(f)], train.y[idx[i]]};
        std::sort(column.begin(), column.end());
        std::vector<std::size_t> left(static_cast<std::size_t>(n_classes_), 0);
        std::vector<std::size_t> right = counts;
        for (std::size_t i = 0; i + 1 < total; ++i) {
            ++left[static_cast<std::size_t>(column[i].second)];
            --right[static_cast<std::size_t>(column[i].second)];
            if (column[i].first == column[i + 1].first) continue;
            const std::size_t nl = i + 1, nr = total - nl;
            const double score = (static_cast<double>(nl) * gini(left, nl) +
                                  static_cast<double>(nr) * gini(right, nr)) /
                                 static_cast<double>(total);
            if (score + 1e-12 < best_score) {
                best_score = score;
                best_feature = f;
                best_threshold = 0.5 * (column[i].first + column[i + 1].first);
            }
        }
    }
    if (best_feature < 0) return make_leaf();

    std::vector<std::size_t> left_idx, right_idx;
    for (std::size_t i : idx) {
        if (train.X[i][static_cast<std::size_t>(best_feature)] <= best_threshold)
            left_idx.push_back(i);
        else
            right_idx.push_back(i);
    }
    if (left_idx.empty() || right_idx.empty()) return make_leaf();

    Node split;
    split.feature = best_feature;
    split.threshold = best_threshold;
    nodes_.push_back(std::move(split));
    const auto self = static_cast<int>(nodes_.size() - 1);
    const int l = grow(train, left_idx, depth + 1, max_depth, min_samples);
    const int r = grow(train, right_idx, depth + 1, max_depth, min_samples);
    nodes_[static_cast<std::size_t>(self)].left = l;
    nodes_[static_cast<std::size_t>(self)].right = r;
    return self;
}

std::unique_ptr<DecisionTree> DecisionTree::fit(const Dataset& train, const Hyper& h) {
    h.reject_unknown({"max_depth", "min_samples_split"});
    const int max_depth = h.integer("max_depth", 16);
    const int min_samples = h.integer("min_samples_split", 2);
    if (max_depth < 1 || min_samples < 2) throw ConfigError("invalid tree hyperparameters");

    auto m = std::make_unique<DecisionTree>();
    m->n_features_ = static_cast<int>(train.cols());
    m->n_classes_ = train.class_count();
    std::vector<std::size_t> idx(train.rows());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    m->grow(train, idx, 0, max_depth, min_samples);
    return m;
}

std::vector<double> DecisionTree::predict_proba(const std::vector<double>& x) const {
    if (static_cast<int>(x.size()) != n_features_)
        throw DimensionMismatchError("feature width mismatch");
    std::size_t node = 0;
    while (nodes_[node].feature >= 0) {
        node = static_cast<std::size_t>(x[static_cast<std::size_t>(nodes_[node].feature)] <=
                                                nodes_[node].threshold
                                            ? nodes_[node].left
                                            : nodes_[node].right);
    }
    return nodes_[node].dist;
}

nlohmann::json DecisionTree::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& n : nodes_)
        arr.push_back({{"feature", n.feature},
                       {"threshold", n.threshold},
                       {"left", n.left},
                       {"right", n.right},
                       {"dist", n.dist}});
    return nlohmann::json{
        {"kind", "tree"}, {"n_features", n_features_}, {"n_classes", n_classes_}, {"nodes", arr}};
}

std::unique_ptr<DecisionTree> DecisionTree::from_json(const nlohmann::json& j) {
    auto m = std::make_unique<DecisionTree>();
    m->n_features_ = j.at("n_features").get<int>();
    m->n_classes_ = j.at("n_classes").get<int>();
    for (const auto& nj : j.at("nodes")) {
        Node n;
        n.feature = nj.at("feature").get<int>();
        n.threshold = nj.at("threshold").get<double>();
        n.left = nj.at("left").get<int>();
        n.right = nj.at("right").get<int>();
        nj.at("dist").get_to(n.dist);
        m->nodes_.push_back(std::move(n));
    }
    if (m->nodes_.empty()) throw ParseError("inconsistent model payload");
    return m;
}

}  // namespace ecet::models
