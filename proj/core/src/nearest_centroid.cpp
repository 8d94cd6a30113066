#include <algorithm>
#include <cmath>

#include "models.hpp"

namespace ecet::models {

std::unique_ptr<NearestCentroid> NearestCentroid::fit(const Dataset& train, const Hyper& h) {
    h.reject_unknown({});
    auto m = std::make_unique<NearestCentroid>();
    const std::size_t d = train.cols();
    m->centroids_.assign(static_cast<std::size_t>(train.class_count()),
                         std::vector<double>(d, 0.0));
    std::vector<std::size_t> counts(m->centroids_.size(), 0);
    for (std::size_t i = 0; i < train.rows(); ++i) {
        const auto c = static_cast<std::size_t>(train.y[i]);
        ++counts[c];
        for (std::size_t j = 0; j < d; ++j) m->centroids_[c][j] += train.X[i][j];
    }
    for (std::size_t c = 0; c < counts.size(); ++c) {
        if (counts[c] == 0) throw DegenerateDataError("class without samples");
        for (double& v : m->centroids_[c]) v /= static_cast<double>(counts[c]);
    }
    return m;
}

int NearestCentroid::predict(const std::vector<double>& x) const {
    if (x.size() != centroids_.front().size()) throw DimensionMismatchError("feature width mismatch");
    int best = 0;
    double best_d2 = 0.0;
    for (std::size_t c = 0; c < centroids_.size(); ++c) {
        double d2 = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j) {
            const double dv = x[j] - centroids_[c][j];
            d2 += dv * dv;
        }
        if (c == 0 || d2 < best_d2) {
            best = static_cast<int>(c);
            best_d2 = d2;
        }
    }
    return best;
}

std::vector<double> NearestCentroid::predict_proba(const std::vector<double>& x) const {
    // Softmax over negative distances; the argmax matches predict().
    if (x.size() != centroids_.front().size()) throw DimensionMismatchError("feature width mismatch");
    std::vector<double> z(centroids_.size());
    for (std::size_t c = 0; c < centroids_.size(); ++c) {
        double d2 = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j) {
            const double dv = x[j] - centroids_[c][j];
            d2 += dv * dv;
        }
        z[c] = -std::sqrt(d2);
    }
    return softmax(std::move(z));
}

nlohmann::json NearestCentroid::to_json() const {
    return nlohmann::json{{"kind", "centroid"}, {"centroids", centroids_}};
}

std::unique_ptr<NearestCentroid> NearestCentroid::from_json(const nlohmann::json& j) {
    auto m = std::make_unique<NearestCentroid>();
    j.at("centroids").get_to(m->centroids_);
    if (m->centroids_.empty()) throw ParseError("inconsistent model payload");
    return m;
}

}  // namespace ecet::models
