#include <random>

#include "doctest.h"

#include "ecet/uncertainty.hpp"

using namespace ecet;

namespace {

class ConstantModel final : public Model {
public:
    explicit ConstantModel(std::vector<double> p) : p_(std::move(p)) {}
    std::string kind() const override { return "gnb"; }
    int feature_count() const override { return 1; }
    int class_count() const override { return static_cast<int>(p_.size()); }
    std::vector<double> predict_proba(const std::vector<double>&) const override { return p_; }
    nlohmann::json to_json() const override { return {}; }

private:
    std::vector<double> p_;
};

// Predicts the nearest integer class of the first feature, clamped.
class OracleModel final : public Model {
public:
    explicit OracleModel(int n) : n_(n) {}
    std::string kind() const override { return "gnb"; }
    int feature_count() const override { return 1; }
    int class_count() const override { return n_; }
    std::vector<double> predict_proba(const std::vector<double>& x) const override {
        std::vector<double> p(static_cast<std::size_t>(n_), 0.0);
        int c = static_cast<int>(std::llround(x[0]));
        c = std::clamp(c, 0, n_ - 1);
        p[static_cast<std::size_t>(c)] = 1.0;
        return p;
    }
    nlohmann::json to_json() const override { return {}; }

private:
    int n_;
};

// Seeded uniform-random labels, deterministic per input row.
class RandomModel final : public Model {
public:
    RandomModel(int n, std::uint64_t seed) : n_(n), seed_(seed) {}
    std::string kind() const override { return "gnb"; }
    int feature_count() const override { return 1; }
    int class_count() const override { return n_; }
    std::vector<double> predict_proba(const std::vector<double>& x) const override {
        std::mt19937_64 rng(seed_ ^ std::hash<double>{}(x[0]));
        std::vector<double> p(static_cast<std::size_t>(n_), 0.0);
        p[std::uniform_int_distribution<std::size_t>(0, static_cast<std::size_t>(n_) - 1)(rng)] =
            1.0;
        return p;
    }
    nlohmann::json to_json() const override { return {}; }

private:
    int n_;
    std::uint64_t seed_;
};

TrainedClassifier wrap(std::shared_ptr<Model> m, std::vector<double> weights) {
    TrainedClassifier tc;
    tc.spec.kind = "gnb";
    tc.spec.probabilistic = true;
    tc.model = std::move(m);
    tc.weights = std::move(weights);
    return tc;
}

Dataset blob_valid(std::uint64_t seed) {
    const auto ds = make_blobs(3, 60, 2, 10.0, seed);
    Dataset out;
    out.label_map = ds.label_map;
    for (std::size_t i = 0; i < ds.rows(); ++i) {
        // distinct rows within a class, but rounding still recovers the label
        out.X.push_back({static_cast<double>(ds.y[i]) + 0.002 * static_cast<double>(i), 0.0});
        out.y.push_back(ds.y[i]);
    }
    return out;
}

}  // namespace

TEST_CASE("performance product") {
    CHECK(uq_performance({1.0, 1.0, 1.0}) == 0.0);
    CHECK(uq_performance({0.9, 0.8}) == doctest::Approx(0.02).epsilon(1e-12));
    CHECK(uq_performance({0.0, 0.0}) == 1.0);
    CHECK(uq_performance({0.8, 0.9}) == doctest::Approx(uq_performance({0.9, 0.8})));
    CHECK_THROWS_AS(uq_performance({}), EmptySequenceError);
    CHECK_THROWS_AS(uq_performance({1.2}), InvalidArgumentError);
}

TEST_CASE("vacuous emitter never conflicts") {
    auto tc = wrap(std::make_shared<ConstantModel>(std::vector<double>{0.5, 0.5}), {0.0, 0.0});
    Dataset valid;
    for (int i = 0; i < 30; ++i) {
        valid.X.push_back({static_cast<double>(i)});
        valid.y.push_back(i % 2);
    }
    valid.label_map = {0, 1};
    UQConfig cfg;
    cfg.batch_size = 10;
    cfg.iterations = 5;
    const auto tr = uq_batch(tc, valid, cfg);
    for (const auto& it : tr.iterations) {
        CHECK(it.uq_ds == doctest::Approx(0.0).scale(1));
        CHECK(it.uq_y == doctest::Approx(0.0).scale(1));
    }
}

TEST_CASE("contradictory evidences within a class register total conflict") {
    // alternating one-hot predictions on a single-true-class batch
    auto tc = wrap(std::make_shared<RandomModel>(2, 99), {1.0, 1.0});
    Dataset valid;
    for (int i = 0; i < 24; ++i) {
        valid.X.push_back({static_cast<double>(i)});
        valid.y.push_back(0);  // one class only: every batch folds the lot
    }
    valid.y[0] = 1;  // keep 2 classes in the frame
    valid.label_map = {0, 1};
    UQConfig cfg;
    cfg.batch_size = 12;
    cfg.iterations = 8;
    const auto tr = uq_batch(tc, valid, cfg);
    CHECK(tr.median_uq_ds >= 0.9);  // one-hot disagreement saturates the fold
}

TEST_CASE("trained vs random separation on separable data") {
    const auto valid = blob_valid(31);
    UQConfig cfg;  // 20 x 50 defaults
    cfg.seed = 7;
    const auto trained = uq_batch(wrap(std::make_shared<OracleModel>(3), {1, 1, 1}), valid, cfg);
    const auto random = uq_batch(wrap(std::make_shared<RandomModel>(3, 5), {1, 1, 1}), valid, cfg);
    CHECK(trained.median_uq_ds <= 0.1);
    CHECK(random.median_uq_ds >= trained.median_uq_ds + 0.2);
    CHECK(*trained.median_uq_p <= *random.median_uq_p);
    for (const auto& it : trained.iterations) {
        CHECK(it.uq_ds >= 0.0);
        CHECK(it.uq_ds <= 1.0);
        CHECK(it.uq_y >= 0.0);
        CHECK(it.uq_y <= 1.0);
        REQUIRE(it.uq_p.has_value());
        CHECK(*it.uq_p >= 0.0);
        CHECK(*it.uq_p <= 1.0);
    }
}

TEST_CASE("identical seeds give identical traces") {
    const auto valid = blob_valid(32);
    UQConfig cfg;
    cfg.batch_size = 10;
    cfg.iterations = 20;
    cfg.seed = 123;
    auto tc = wrap(std::make_shared<OracleModel>(3), {0.9, 0.8, 0.7});
    const auto a = uq_batch(tc, valid, cfg);
    const auto b = uq_batch(tc, valid, cfg);
    REQUIRE(a.iterations.size() == b.iterations.size());
    for (std::size_t i = 0; i < a.iterations.size(); ++i) {
        CHECK(a.iterations[i].uq_ds == b.iterations[i].uq_ds);
        CHECK(a.iterations[i].uq_y == b.iterations[i].uq_y);
        CHECK(a.iterations[i].uq_p == b.iterations[i].uq_p);
    }
}

TEST_CASE("ensemble variant omits uq_p") {
    const auto valid = blob_valid(33);
    auto m = make_ensemble({wrap(std::make_shared<OracleModel>(3), {1, 1, 1}),
                            wrap(std::make_shared<OracleModel>(3), {1, 1, 1})},
                           Frame::dense(3), sensitivity_factor(4));
    UQConfig cfg;
    cfg.batch_size = 15;
    cfg.iterations = 10;
    const auto tr = uq_batch(m, valid, cfg);
    CHECK(!tr.median_uq_p.has_value());
    for (const auto& it : tr.iterations) {
        CHECK(!it.uq_p.has_value());
        CHECK(it.uq_ds <= 0.05);  // agreeing members on clean data
    }
}

TEST_CASE("config validation") {
    const auto valid = blob_valid(34);
    auto tc = wrap(std::make_shared<OracleModel>(3), {1, 1, 1});
    UQConfig bad;
    bad.batch_size = 0;
    CHECK_THROWS_AS(uq_batch(tc, valid, bad), InvalidArgumentError);
    bad.batch_size = static_cast<int>(valid.rows()) + 1;
    CHECK_THROWS_AS(uq_batch(tc, valid, bad), InvalidArgumentError);
}
