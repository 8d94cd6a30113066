#include <algorithm>
#include <cmath>
#include <random>

#include "models.hpp"

namespace ecet::models {

std::vector<double> Mlp::forward(const std::vector<double>& x,
                                 std::vector<std::vector<double>>* activations) const {
    std::vector<double> a = x;
    if (activations) {
        activations->clear();
        activations->push_back(a);
    }
    for (std::size_t l = 0; l < W_.size(); ++l) {
        std::vector<double> z(W_[l].size());
        for (std::size_t o = 0; o < W_[l].size(); ++o) {
            double v = b_[l][o];
            for (std::size_t in = 0; in < a.size(); ++in) v += W_[l][o][in] * a[in];
            z[o] = v;
        }
        if (l + 1 < W_.size()) {
            for (double& v : z) v = std::max(v, 0.0);  // ReLU
            a = z;
            if (activations) activations->push_back(a);
        } else {
            a = softmax(std::move(z));
        }
    }
    return a;
}

struct MlpTrainer {
    static void train(Mlp& m, const Dataset& ds, int epochs, double lr, std::size_t batch,
                      std::uint64_t seed) {
        std::mt19937_64 rng(seed);
        std::vector<std::size_t> order(ds.rows());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

        std::vector<std::vector<double>> acts;
        for (int e = 0; e < epochs; ++e) {
            std::shuffle(order.begin(), order.end(), rng);
            for (std::size_t start = 0; start < order.size(); start += batch) {
                const std::size_t stop = std::min(start + batch, order.size());
                // accumulated gradients for the mini batch
                std::vector<std::vector<std::vector<double>>> gW(m.W_.size());
                std::vector<std::vector<double>> gb(m.b_.size());
                for (std::size_t l = 0; l < m.W_.size(); ++l) {
                    gW[l].assign(m.W_[l].size(), std::vector<double>(m.W_[l].front().size(), 0.0));
                    gb[l].assign(m.b_[l].size(), 0.0);
                }
                for (std::size_t bi = start; bi < stop; ++bi) {
                    const std::size_t i = order[bi];
                    std::vector<double> delta = m.forward(ds.X[i], &acts);
                    delta[static_cast<std::size_t>(ds.y[i])] -= 1.0;  // softmax + CE
                    for (std::size_t l = m.W_.size(); l-- > 0;) {
                        const auto& a = acts[l];
                        for (std::size_t o = 0; o < delta.size(); ++o) {
                            gb[l][o] += delta[o];
                            for (std::size_t in = 0; in < a.size(); ++in)
                                gW[l][o][in] += delta[o] * a[in];
                        }
                        if (l == 0) break;
                        std::vector<double> prev(a.size(), 0.0);
                        for (std::size_t in = 0; in < a.size(); ++in) {
                            if (a[in] <= 0.0) continue;  // ReLU gate
                            double v = 0.0;
                            for (std::size_t o = 0; o < delta.size(); ++o)
                                v += m.W_[l][o][in] * delta[o];
                            prev[in] = v;
                        }
                        delta = std::move(prev);
                    }
                }
                const double scale = lr / static_cast<double>(stop - start);
                for (std::size_t l = 0; l < m.W_.size(); ++l)
                    for (std::size_t o = 0; o < m.W_[l].size(); ++o) {
                        m.b_[l][o] -= scale * gb[l][o];
                        for (std::size_t in = 0; in < m.W_[l][o].size(); ++in)
                            m.W_[l][o][in] -= scale * gW[l][o][in];
                    }
            }
        }
    }
};

std::unique_ptr<Mlp> Mlp::fit(const Dataset& train, const Hyper& h, std::uint64_t seed) {
    h.reject_unknown({"hidden", "epochs", "lr", "batch"});
    const std::vector<int> hidden = h.int_list("hidden", {32});
    const int epochs = h.integer("epochs", 20);
    const double lr = h.number("lr", 0.05);
    const int batch = h.integer("batch", 32);
    if (hidden.empty() || hidden.size() > 2) throw ConfigError("need 1 or 2 hidden layers");
    for (int w : hidden)
        if (w < 1) throw ConfigError("hidden width must be positive");
    if (epochs < 1 || !(lr > 0.0) || batch < 1) throw ConfigError("invalid training hyperparameters");

    auto m = std::make_unique<Mlp>();
    m->n_features_ = static_cast<int>(train.cols());
    m->n_classes_ = train.class_count();

    std::vector<int> widths{m->n_features_};
    widths.insert(widths.end(), hidden.begin(), hidden.end());
    widths.push_back(m->n_classes_);

    std::mt19937_64 rng(seed);
    for (std::size_t l = 0; l + 1 < widths.size(); ++l) {
        const auto in = static_cast<std::size_t>(widths[l]);
        const auto out = static_cast<std::size_t>(widths[l + 1]);
        std::normal_distribution<double> init(0.0, std::sqrt(2.0 / static_cast<double>(in)));
        m->W_.emplace_back(out, std::vector<double>(in));
        m->b_.emplace_back(out, 0.0);
        for (auto& row : m->W_.back())
            for (double& v : row) v = init(rng);
    }
    MlpTrainer::train(*m, train, epochs, lr, static_cast<std::size_t>(batch), seed ^ 0x9e3779b97f4a7c15ULL);
    return m;
}

std::vector<double> Mlp::predict_proba(const std::vector<double>& x) const {
    if (static_cast<int>(x.size()) != n_features_)
        throw DimensionMismatchError("feature width mismatch");
    return forward(x, nullptr);
}

nlohmann::json Mlp::to_json() const {
    return nlohmann::json{{"kind", "mlp"},
                          {"n_features", n_features_},
                          {"n_classes", n_classes_},
                          {"W", W_},
                          {"b", b_}};
}

std::unique_ptr<Mlp> Mlp::from_json(const nlohmann::json& j) {
    auto m = std::make_unique<Mlp>();
    m->n_features_ = j.at("n_features").get<int>();
    m->n_classes_ = j.at("n_classes").get<int>();
    j.at("W").get_to(m->W_);
    j.at("b").get_to(m->b_);
    if (m->W_.empty() || m->W_.size() != m->b_.size()) throw ParseError("inconsistent model payload");
    return m;
}

}  // namespace ecet::models
