#include <cmath>
#include <random>

#include "models.hpp"

namespace ecet::models {

std::unique_ptr<SoftmaxRegression> SoftmaxRegression::fit(const Dataset& train, const Hyper& h,
                                                          std::uint64_t seed) {
    h.reject_unknown({"epochs", "lr", "l2"});
    const int epochs = h.integer("epochs", 200);
    const double lr = h.number("lr", 0.1);
    const double l2 = h.number("l2", 1e-4);
    if (epochs < 1 || !(lr > 0.0) || l2 < 0.0) throw ConfigError("invalid training hyperparameters");

    const auto n = static_cast<double>(train.rows());
    const std::size_t d = train.cols();
    const auto c = static_cast<std::size_t>(train.class_count());

    auto m = std::make_unique<SoftmaxRegression>();
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> init(0.0, 0.01);
    m->W_.assign(c, std::vector<double>(d));
    m->b_.assign(c, 0.0);
    for (auto& row : m->W_)
        for (double& v : row) v = init(rng);

    // Full-batch gradient descent on cross entropy with L2 on the weights.
    std::vector<std::vector<double>> gW(c, std::vector<double>(d));
    std::vector<double> gb(c);
    for (int e = 0; e < epochs; ++e) {
        for (auto& row : gW) std::fill(row.begin(), row.end(), 0.0);
        std::fill(gb.begin(), gb.end(), 0.0);
        for (std::size_t i = 0; i < train.rows(); ++i) {
            auto p = m->predict_proba(train.X[i]);
            p[static_cast<std::size_t>(train.y[i])] -= 1.0;
            for (std::size_t k = 0; k < c; ++k) {
                gb[k] += p[k];
                for (std::size_t j = 0; j < d; ++j) gW[k][j] += p[k] * train.X[i][j];
            }
        }
        for (std::size_t k = 0; k < c; ++k) {
            m->b_[k] -= lr * gb[k] / n;
            for (std::size_t j = 0; j < d; ++j)
                m->W_[k][j] -= lr * (gW[k][j] / n + l2 * m->W_[k][j]);
        }
    }
    return m;
}

std::vector<double> SoftmaxRegression::predict_proba(const std::vector<double>& x) const {
    if (x.size() != W_.front().size()) throw DimensionMismatchError("feature width mismatch");
    std::vector<double> z(W_.size());
    for (std::size_t k = 0; k < W_.size(); ++k) {
        double v = b_[k];
        for (std::size_t j = 0; j < x.size(); ++j) v += W_[k][j] * x[j];
        z[k] = v;
    }
    return softmax(std::move(z));
}

nlohmann::json SoftmaxRegression::to_json() const {
    return nlohmann::json{{"kind", "softmax"}, {"W", W_}, {"b", b_}};
}

std::unique_ptr<SoftmaxRegression> SoftmaxRegression::from_json(const nlohmann::json& j) {
    auto m = std::make_unique<SoftmaxRegression>();
    j.at("W").get_to(m->W_);
    j.at("b").get_to(m->b_);
    if (m->W_.empty() || m->W_.size() != m->b_.size()) throw ParseError("inconsistent model payload");
    return m;
}

}  // namespace ecet::models
