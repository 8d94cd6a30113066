#pragma once

// Internal declarations for the built-in model family. Each class lives
// in its own translation unit; classifier.cpp owns the dispatch.

#include <cstdint>
#include <memory>
#include <vector>

#include "ecet/classifier.hpp"

namespace ecet::models {

struct Hyper {
    const nlohmann::json& j;
    double number(const char* key, double fallback) const;
    int integer(const char* key, int fallback) const;
    std::vector<int> int_list(const char* key, std::vector<int> fallback) const;
    void reject_unknown(std::initializer_list<const char*> known) const;
};

class GaussianNaiveBayes final : public Model {
public:
    static std::unique_ptr<GaussianNaiveBayes> fit(const Dataset& train, const Hyper& h);
    static std::unique_ptr<GaussianNaiveBayes> from_json(const nlohmann::json& j);

    std::string kind() const override { return "gnb"; }
    int feature_count() const override { return static_cast<int>(means_.front().size()); }
    int class_count() const override { return static_cast<int>(means_.size()); }
    std::vector<double> predict_proba(const std::vector<double>& x) const override;
    nlohmann::json to_json() const override;

private:
    std::vector<double> log_priors_;
    std::vector<std::vector<double>> means_;      // [class][feature]
    std::vector<std::vector<double>> variances_;  // smoothed
};

class Knn final : public Model {
public:
    static std::unique_ptr<Knn> fit(const Dataset& train, const Hyper& h);
    static std::unique_ptr<Knn> from_json(const nlohmann::json& j);

    std::string kind() const override { return "knn"; }
    int feature_count() const override { return static_cast<int>(X_.front().size()); }
    int class_count() const override { return n_classes_; }
    std::vector<double> predict_proba(const std::vector<double>& x) const override;
    nlohmann::json to_json() const override;

private:
    int k_ = 5;
    int n_classes_ = 0;
    FeatureMatrix X_;
    std::vector<int> y_;
};

class DecisionTree final : public Model {
public:
    static std::unique_ptr<DecisionTree> fit(const Dataset& train, const Hyper& h);
    static std::unique_ptr<DecisionTree> from_json(const nlohmann::json& j);

    std::string kind() const override { return "tree"; }
    int feature_count() const override { return n_features_; }
    int class_count() const override { return n_classes_; }
    std::vector<double> predict_proba(const std::vector<double>& x) const override;
    nlohmann::json to_json() const override;

    // Flat node array; children index into it, -1 marks a leaf.
    struct Node {
        int feature = -1;
        double threshold = 0.0;
        int left = -1;
        int right = -1;
        std::vector<double> dist;  // leaf class frequencies
    };

private:
    int n_features_ = 0;
    int n_classes_ = 0;
    std::vector<Node> nodes_;

    int grow(const Dataset& train, std::vector<std::size_t>& idx, int depth, int max_depth,
             int min_samples);
};

class NearestCentroid final : public Model {
public:
    static std::unique_ptr<NearestCentroid> fit(const Dataset& train, const Hyper& h);
    static std::unique_ptr<NearestCentroid> from_json(const nlohmann::json& j);

    std::string kind() const override { return "centroid"; }
    int feature_count() const override { return static_cast<int>(centroids_.front().size()); }
    int class_count() const override { return static_cast<int>(centroids_.size()); }
    std::vector<double> predict_proba(const std::vector<double>& x) const override;
    int predict(const std::vector<double>& x) const override;
    nlohmann::json to_json() const override;

private:
    std::vector<std::vector<double>> centroids_;
};

class SoftmaxRegression final : public Model {
public:
    static std::unique_ptr<SoftmaxRegression> fit(const Dataset& train, const Hyper& h,
                                                  std::uint64_t seed);
    static std::unique_ptr<SoftmaxRegression> from_json(const nlohmann::json& j);

    std::string kind() const override { return "softmax"; }
    int feature_count() const override { return static_cast<int>(W_.front().size()); }
    int class_count() const override { return static_cast<int>(W_.size()); }
    std::vector<double> predict_proba(const std::vector<double>& x) const override;
    nlohmann::json to_json() const override;

private:
    std::vector<std::vector<double>> W_;  // [class][feature]
    std::vector<double> b_;
};

class Mlp final : public Model {
public:
    static std::unique_ptr<Mlp> fit(const Dataset& train, const Hyper& h, std::uint64_t seed);
    static std::unique_ptr<Mlp> from_json(const nlohmann::json& j);

    std::string kind() const override { return "mlp"; }
    int feature_count() const override { return n_features_; }
    int class_count() const override { return n_classes_; }
    std::vector<double> predict_proba(const std::vector<double>& x) const override;
    nlohmann::json to_json() const override;

private:
    int n_features_ = 0;
    int n_classes_ = 0;
    // layer l maps widths_[l] -> widths_[l+1]; ReLU between hidden
    // layers, softmax after the last.
    std::vector<std::vector<std::vector<double>>> W_;  // [layer][out][in]
    std::vector<std::vector<double>> b_;               // [layer][out]

    std::vector<double> forward(const std::vector<double>& x,
                                std::vector<std::vector<double>>* activations) const;
    friend struct MlpTrainer;
};

std::vector<double> softmax(std::vector<double> z);

}  // namespace ecet::models
