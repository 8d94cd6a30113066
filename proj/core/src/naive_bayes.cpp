#include <cmath>

#include "models.hpp"

namespace ecet::models {

std::unique_ptr<GaussianNaiveBayes> GaussianNaiveBayes::fit(const Dataset& train, const Hyper& h) {
    h.reject_unknown({"var_smoothing"});
    const double smoothing = h.number("var_smoothing", 1e-9);

    const int n_classes = train.class_count();
    const std::size_t d = train.cols();
    auto m = std::make_unique<GaussianNaiveBayes>();
    m->log_priors_.assign(static_cast<std::size_t>(n_classes), 0.0);
    m->means_.assign(static_cast<std::size_t>(n_classes), std::vector<double>(d, 0.0));
    m->variances_.assign(static_cast<std::size_t>(n_classes), std::vector<double>(d, 0.0));

    std::vector<std::size_t> counts(static_cast<std::size_t>(n_classes), 0);
    for (std::size_t i = 0; i < train.rows(); ++i) {
        const auto c = static_cast<std::size_t>(train.y[i]);
        ++counts[c];
        for (std::size_t j = 0; j < d; ++j) m->means_[c][j] += train.X[i][j];
    }
    for (std::size_t c = 0; c < counts.size(); ++c) {
        if (counts[c] == 0) throw DegenerateDataError("class without samples");
        for (std::size_t j = 0; j < d; ++j) m->means_[c][j] /= static_cast<double>(counts[c]);
        m->log_priors_[c] =
            std::log(static_cast<double>(counts[c]) / static_cast<double>(train.rows()));
    }
    double max_var = 0.0;
    for (std::size_t i = 0; i < train.rows(); ++i) {
        const auto c = static_cast<std::size_t>(train.y[i]);
        for (std::size_t j = 0; j < d; ++j) {
            const double dv = train.X[i][j] - m->means_[c][j];
            m->variances_[c][j] += dv * dv;
        }
    }
    for (std::size_t c = 0; c < counts.size(); ++c)
        for (std::size_t j = 0; j < d; ++j) {
            m->variances_[c][j] /= static_cast<double>(counts[c]);
            max_var = std::max(max_var, m->variances_[c][j]);
        }
    const double eps = smoothing * std::max(max_var, 1.0);
    for (auto& row : m->variances_)
        for (double& v : row) v += eps;
    return m;
}

std::vector<double> GaussianNaiveBayes::predict_proba(const std::vector<double>& x) const {
    if (x.size() != means_.front().size()) throw DimensionMismatchError("feature width mismatch");
    std::vector<double> log_joint(means_.size());
    for (std::size_t c = 0; c < means_.size(); ++c) {
        double lj = log_priors_[c];
        for (std::size_t j = 0; j < x.size(); ++j) {
            const double dv = x[j] - means_[c][j];
            lj += -0.5 * (std::log(2.0 * M_PI * variances_[c][j]) + dv * dv / variances_[c][j]);
        }
        log_joint[c] = lj;
    }
    return softmax(std::move(log_joint));
}

nlohmann::json GaussianNaiveBayes::to_json() const {
    return nlohmann::json{{"kind", "gnb"},
                          {"log_priors", log_priors_},
                          {"means", means_},
                          {"variances", variances_}};
}

std::unique_ptr<GaussianNaiveBayes> GaussianNaiveBayes::from_json(const nlohmann::json& j) {
    auto m = std::make_unique<GaussianNaiveBayes>();
    j.at("log_priors").get_to(m->log_priors_);
    j.at("means").get_to(m->means_);
    j.at("variances").get_to(m->variances_);
    if (m->means_.empty() || m->means_.size() != m->variances_.size() ||
        m->means_.size() != m->log_priors_.size())
        throw ParseError("inconsistent model payload");
    return m;
}

}  // namespace ecet::models
