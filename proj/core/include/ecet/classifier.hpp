#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"

#include "ecet/dataset.hpp"
#include "ecet/transform.hpp"

namespace ecet {

// A trained base model. Implementations are deterministic given the
// training seed and serialize losslessly through to_json/model_from_json.
class Model {
public:
    virtual ~Model() = default;

    virtual std::string kind() const = 0;
    virtual int feature_count() const = 0;
    virtual int class_count() const = 0;

    // Probability vector over the dense classes, sums to 1.
    virtual std::vector<double> predict_proba(const std::vector<double>& x) const = 0;

    // Argmax of predict_proba unless the model overrides with a native rule.
    virtual int predict(const std::vector<double>& x) const;

    virtual nlohmann::json to_json() const = 0;
};

std::vector<int> predict_all(const Model& model, const Dataset& ds);

// Recipe for one pool member. `hyper` is a free-form object; unknown keys
// are rejected at fit time. `probabilistic` selects the evidence path:
// probability outputs when true, hard labels when false.
struct ClassifierSpec {
    std::string name;
    std::string kind;  // gnb | knn | tree | centroid | softmax | mlp
    nlohmann::json hyper = nlohmann::json::object();
    bool probabilistic = true;
};

std::unique_ptr<Model> fit(const ClassifierSpec& spec, const Dataset& train, std::uint64_t seed);
std::unique_ptr<Model> model_from_json(const nlohmann::json& j);

// Pool member with its validation-derived confidence weights.
struct TrainedClassifier {
    ClassifierSpec spec;
    std::shared_ptr<const Model> model;
    ConfidenceWeights weights;  // per-class validation F1
    double mean_f1 = 0.0;
    std::vector<int> valid_predictions;  // on the shared validation split

    int predict(const std::vector<double>& x) const { return model->predict(x); }

    // Evidence for one sample: probability path scaled by the weights, or
    // the hard-label path through the sensitivity factor.
    MassVector evidence(const std::vector<double>& x, const Frame& frame,
                        const SensitivityFactor& k) const;
};

// Fits every spec on `train` (seed + index as the member seed), then
// scores on `valid` to fill weights, mean_f1 and cached predictions.
std::vector<TrainedClassifier> train_pool(const std::vector<ClassifierSpec>& specs,
                                          const Dataset& train, const Dataset& valid,
                                          std::uint64_t seed);

// Rows = pool members, columns = classes; entries are validation F1.
std::vector<std::vector<double>> performance_matrix(const std::vector<TrainedClassifier>& pool);

// A spread of default recipes cycling through every model kind.
std::vector<ClassifierSpec> default_pool_specs(int count);

nlohmann::json spec_to_json(const ClassifierSpec& spec);
ClassifierSpec spec_from_json(const nlohmann::json& j);

}  // namespace ecet
