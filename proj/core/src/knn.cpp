#include <algorithm>
#include <cmath>

#include "models.hpp"

namespace ecet::models {

std::unique_ptr<Knn> Knn::fit(const Dataset& train, const Hyper& h) {
    h.reject_unknown({"k"});
    auto m = std::make_unique<Knn>();
    m->k_ = h.integer("k", 5);
    if (m->k_ < 1) throw ConfigError("k must be at least 1");
    if (static_cast<std::size_t>(m->k_) > train.rows())
        throw ConfigError("k exceeds the training set size");
    m->n_classes_ = train.class_count();
    m->X_ = train.X;
    m->y_ = train.y;
    return m;
}

std::vector<double> Knn::predict_proba(const std::vector<double>& x) const {
    if (x.size() != X_.front().size()) throw DimensionMismatchError("feature width mismatch");
    // (distance, index) pairs keep equal-distance ordering stable.
    std::vector<std::pair<double, std::size_t>> dist(X_.size());
    for (std::size_t i = 0; i < X_.size(); ++i) {
        double d2 = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j) {
            const double dv = x[j] - X_[i][j];
            d2 += dv * dv;
        }
        dist[i] = {d2, i};
    }
    std::partial_sort(dist.begin(), dist.begin() + k_, dist.end());
    std::vector<double> p(static_cast<std::size_t>(n_classes_), 0.0);
    for (int i = 0; i < k_; ++i)
        p[static_cast<std::size_t>(y_[dist[static_cast<std::size_t>(i)].second])] += 1.0 / k_;
    double s = 0.0;
    for (double v : p) s += v;
    for (double& v : p) v /= s;
    return p;
}

nlohmann::json Knn::to_json() const {
    return nlohmann::json{{"kind", "knn"}, {"k", k_}, {"n_classes", n_classes_}, {"X", X_}, {"y", y_}};
}

std::unique_ptr<Knn> Knn::from_json(const nlohmann::json& j) {
    auto m = std::make_unique<Knn>();
    m->k_ = j.at("k").get<int>();
    m->n_classes_ = j.at("n_classes").get<int>();
    j.at("X").get_to(m->X_);
    j.at("y").get_to(m->y_);
    if (m->X_.empty() || m->X_.size() != m->y_.size() || m->k_ < 1 ||
        static_cast<std::size_t>(m->k_) > m->X_.size())
        throw ParseError("inconsistent model payload");
    return m;
}

}  // namespace ecet::models
