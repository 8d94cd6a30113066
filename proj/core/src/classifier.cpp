#include "ecet/classifier.hpp"

#include <algorithm>
#include <cmath>

#include "ecet/metrics.hpp"
#include "models.hpp"

namespace ecet {

namespace models {

double Hyper::number(const char* key, double fallback) const {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number()) throw ConfigError(std::string("hyperparameter '") + key + "' must be numeric");
    return j.at(key).get<double>();
}

int Hyper::integer(const char* key, int fallback) const {
    const double v = number(key, fallback);
    if (v != std::floor(v)) throw ConfigError(std::string("hyperparameter '") + key + "' must be an integer");
    return static_cast<int>(v);
}

std::vector<int> Hyper::int_list(const char* key, std::vector<int> fallback) const {
    if (!j.contains(key)) return fallback;
    const auto& v = j.at(key);
    if (!v.is_array()) throw ConfigError(std::string("hyperparameter '") + key + "' must be an array");
    std::vector<int> out;
    for (const auto& e : v) {
        if (!e.is_number_integer()) throw ConfigError(std::string("hyperparameter '") + key + "' must hold integers");
        out.push_back(e.get<int>());
    }
    return out;
}

void Hyper::reject_unknown(std::initializer_list<const char*> known) const {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : known)
            if (it.key() == k) ok = true;
        if (!ok) throw ConfigError("unknown hyperparameter '" + it.key() + "'");
    }
}

std::vector<double> softmax(std::vector<double> z) {
    double hi = z.front();
    for (double v : z) hi = std::max(hi, v);
    double sum = 0.0;
    for (double& v : z) {
        v = std::exp(v - hi);
        sum += v;
    }
    for (double& v : z) v /= sum;
    return z;
}

}  // namespace models

int Model::predict(const std::vector<double>& x) const {
    const auto p = predict_proba(x);
    return static_cast<int>(std::max_element(p.begin(), p.end()) - p.begin());
}

std::vector<int> predict_all(const Model& model, const Dataset& ds) {
    std::vector<int> out;
    out.reserve(ds.rows());
    for (const auto& row : ds.X) out.push_back(model.predict(row));
    return out;
}

namespace {

void check_train(const Dataset& train) {
    if (train.rows() == 0) throw InvalidArgumentError("empty training set");
    if (train.class_count() < 2) throw DegenerateDataError("training set has fewer than 2 classes");
}

}  // namespace

std::unique_ptr<Model> fit(const ClassifierSpec& spec, const Dataset& train, std::uint64_t seed) {
    check_train(train);
    if (!spec.hyper.is_object()) throw ConfigError("hyperparameters must be a JSON object");
    const models::Hyper h{spec.hyper};
    if (spec.kind == "gnb") return models::GaussianNaiveBayes::fit(train, h);
    if (spec.kind == "knn") return models::Knn::fit(train, h);
    if (spec.kind == "tree") return models::DecisionTree::fit(train, h);
    if (spec.kind == "centroid") return models::NearestCentroid::fit(train, h);
    if (spec.kind == "softmax") return models::SoftmaxRegression::fit(train, h, seed);
    if (spec.kind == "mlp") return models::Mlp::fit(train, h, seed);
    throw ConfigError("unknown classifier kind '" + spec.kind + "'");
}

std::unique_ptr<Model> model_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("kind"))
        throw ParseError("model JSON needs a 'kind' field");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "gnb") return models::GaussianNaiveBayes::from_json(j);
    if (kind == "knn") return models::Knn::from_json(j);
    if (kind == "tree") return models::DecisionTree::from_json(j);
    if (kind == "centroid") return models::NearestCentroid::from_json(j);
    if (kind == "softmax") return models::SoftmaxRegression::from_json(j);
    if (kind == "mlp") return models::Mlp::from_json(j);
    throw ParseError("unknown model kind '" + kind + "'");
}

MassVector TrainedClassifier::evidence(const std::vector<double>& x, const Frame& frame,
                                       const SensitivityFactor& k) const {
    if (spec.probabilistic) return proba_to_evidence(model->predict_proba(x), weights);
    return label_to_evidence(frame.labels.at(static_cast<std::size_t>(model->predict(x))), frame,
                             weights, k);
}

std::vector<TrainedClassifier> train_pool(const std::vector<ClassifierSpec>& specs,
                                          const Dataset& train, const Dataset& valid,
                                          std::uint64_t seed) {
    if (specs.empty()) throw EmptySequenceError("no classifier specs");
    if (valid.rows() == 0) throw InvalidArgumentError("empty validation set");
    const Frame frame = train.frame();
    std::vector<TrainedClassifier> pool;
    pool.reserve(specs.size());
    for (std::size_t i = 0; i < specs.size(); ++i) {
        TrainedClassifier tc;
        tc.spec = specs[i];
        tc.model = fit(specs[i], train, seed + i);
        tc.valid_predictions = predict_all(*tc.model, valid);
        tc.weights = per_class_f1(valid.y, tc.valid_predictions, frame);
        tc.mean_f1 = 0.0;
        for (double f : tc.weights) tc.mean_f1 += f;
        tc.mean_f1 /= static_cast<double>(tc.weights.size());
        pool.push_back(std::move(tc));
    }
    return pool;
}

std::vector<std::vector<double>> performance_matrix(const std::vector<TrainedClassifier>& pool) {
    std::vector<std::vector<double>> m;
    m.reserve(pool.size());
    for (const auto& tc : pool) m.push_back(tc.weights);
    return m;
}

std::vector<ClassifierSpec> default_pool_specs(int count) {
    if (count < 1) throw InvalidArgumentError("pool size must be positive");
    // Cycle through the model kinds, nudging a hyperparameter each lap so
    // repeated kinds stay distinct.
    std::vector<ClassifierSpec> specs;
    for (int i = 0; i < count; ++i) {
        const int lap = i / 6;
        ClassifierSpec s;
        switch (i % 6) {
            case 0:
                s.kind = "gnb";
                break;
            case 1:
                s.kind = "knn";
                s.hyper["k"] = 5 + 2 * lap;
                break;
            case 2:
                s.kind = "tree";
                s.hyper["max_depth"] = 16 - 4 * std::min(lap, 3);
                break;
            case 3:
                s.kind = "centroid";
                s.probabilistic = false;
                break;
            case 4:
                s.kind = "softmax";
                s.hyper["epochs"] = 200;
                break;
            case 5:
                s.kind = "mlp";
                s.hyper["hidden"] = std::vector<int>{32 >> std::min(lap, 2)};
                break;
        }
        s.name = s.kind + "_" + std::to_string(i);
        specs.push_back(std::move(s));
    }
    return specs;
}

nlohmann::json spec_to_json(const ClassifierSpec& spec) {
    return nlohmann::json{{"name", spec.name},
                          {"kind", spec.kind},
                          {"hyper", spec.hyper},
                          {"probabilistic", spec.probabilistic}};
}

ClassifierSpec spec_from_json(const nlohmann::json& j) {
    ClassifierSpec s;
    if (!j.is_object() || !j.contains("kind")) throw ConfigError("classifier spec needs 'kind'");
    s.kind = j.at("kind").get<std::string>();
    s.name = j.value("name", s.kind);
    s.hyper = j.value("hyper", nlohmann::json::object());
    s.probabilistic = j.value("probabilistic", true);
    return s;
}

}  // namespace ecet
