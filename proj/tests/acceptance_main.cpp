// End-to-end acceptance checks. Each check prints exactly one
// PASS/FAIL/SKIP line; the process exits nonzero if any check fails.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>

#include "ecet/experiment.hpp"
#include "support/powerset_oracle.hpp"

using namespace ecet;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int num, const std::string& what, bool ok) {
    std::cout << (ok ? "PASS" : "FAIL") << "  " << num << ": " << what << "\n";
    if (!ok) ++failures;
}

void skip(int num, const std::string& what, const std::string& why) {
    std::cout << "SKIP  " << num << ": " << what << " (" << why << ")\n";
}

MassVector random_mass(int n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> v(static_cast<std::size_t>(n) + 1);
    double s = 0.0;
    for (double& x : v) {
        x = u(rng);
        s += x;
    }
    for (double& x : v) x /= s;
    const double theta = v.back();
    v.pop_back();
    return make_mass(std::move(v), theta);
}

bool close(const MassVector& a, const MassVector& b, double tol) {
    if (a.size() != b.size()) return false;
    for (int i = 0; i < a.size(); ++i)
        if (std::abs(a.singleton[static_cast<std::size_t>(i)] -
                     b.singleton[static_cast<std::size_t>(i)]) > tol)
            return false;
    return std::abs(a.theta - b.theta) <= tol;
}

double elapsed(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---- 1: specialized combiners vs power-set oracle ----
void criterion_1() {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(4242);
    bool ok = true;
    for (int trial = 0; trial < 1000 && ok; ++trial) {
        const int n = 2 + trial % 5;
        const auto m1 = random_mass(n, rng);
        const auto m2 = random_mass(n, rng);
        const auto o1 = oracle::from_mass(m1);
        const auto o2 = oracle::from_mass(m2);
        const auto od = oracle::dempster(o1, o2);
        const auto d = combine_dempster(m1, m2);
        ok = ok && std::abs(d.conflict - od.conflict) <= 1e-12 &&
             close(d.fused, oracle::to_mass(od.fused, n), 1e-12);
        const auto oy = oracle::yager(o1, o2);
        const auto y = combine_yager(m1, m2);
        ok = ok && std::abs(y.conflict - oy.conflict) <= 1e-12 &&
             close(y.fused, oracle::to_mass(oy.fused, n), 1e-12);
    }
    ok = ok && elapsed(t0) < 5.0;
    report(1, "fusion-oracle equivalence on 1000 random pairs", ok);
}

// ---- 2: algebraic properties ----
void criterion_2() {
    std::mt19937_64 rng(777);
    bool ok = true;
    for (int trial = 0; trial < 500 && ok; ++trial) {
        const int n = 2 + trial % 4;
        const auto a = random_mass(n, rng);
        const auto b = random_mass(n, rng);
        const auto c = random_mass(n, rng);
        ok = ok && close(combine_dempster(a, b).fused, combine_dempster(b, a).fused, 1e-9);
        ok = ok && close(combine_yager(a, b).fused, combine_yager(b, a).fused, 1e-9);
        ok = ok && close(combine_dempster(combine_dempster(a, b).fused, c).fused,
                         combine_dempster(a, combine_dempster(b, c).fused).fused, 1e-9);
        ok = ok && close(combine_dempster(a, vacuous(n)).fused, a, 1e-9) &&
             close(combine_yager(a, vacuous(n)).fused, a, 1e-9);
        ok = ok && std::abs(combine_dempster(a, b).fused.sum() - 1.0) <= 1e-9 &&
             std::abs(combine_yager(a, b).fused.sum() - 1.0) <= 1e-9;
    }
    report(2, "commutativity/associativity/identity/normalization", ok);
}

// ---- 3: worked numbers ----
void criterion_3() {
    bool ok = true;
    const auto m1 = make_mass({0.6, 0.3}, 0.1);
    const auto m2 = make_mass({0.5, 0.4}, 0.1);
    const auto d = combine_dempster(m1, m2);
    ok = ok && std::abs(d.conflict - 0.39) <= 1e-12;
    ok = ok && std::abs(d.fused.singleton[0] - 0.41 / 0.61) <= 1e-12 &&
         std::abs(d.fused.singleton[1] - 0.19 / 0.61) <= 1e-12 &&
         std::abs(d.fused.theta - 0.01 / 0.61) <= 1e-12;
    const auto y = combine_yager(m1, m2);
    ok = ok && std::abs(y.conflict - 0.39) <= 1e-12 && std::abs(y.fused.singleton[0] - 0.41) <= 1e-12 &&
         std::abs(y.fused.singleton[1] - 0.19) <= 1e-12 &&
         std::abs(y.fused.theta - 0.40) <= 1e-12;
    ok = ok && std::abs(sensitivity_factor(1).k - 0.9) <= 1e-12 &&
         std::abs(sensitivity_factor(4).k - 0.9999) <= 1e-12;
    ok = ok && std::abs(uq_performance({0.9, 0.8}) - 0.02) <= 1e-12;
    report(3, "worked fusion pair, sensitivity factors, performance product", ok);
}

// ---- 4: combinatorics, grid, pre-cut ----
void criterion_4() {
    bool ok = combination_count(5, 3) == 10 && combination_count(10, 5) == 252;
    const auto grid = selection_grid(5);
    ok = ok && grid.size() == 10;
    const bool expect[10][4] = {{0, 0, 0, 0}, {0, 1, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0},
                                {0, 1, 1, 1}, {1, 0, 0, 0}, {1, 1, 0, 0}, {1, 1, 0, 1},
                                {1, 1, 1, 0}, {1, 1, 1, 1}};
    for (std::size_t i = 0; ok && i < 10; ++i)
        ok = grid[i].exp == expect[i][0] && grid[i].div == expect[i][1] &&
             grid[i].ver == expect[i][2] && grid[i].pc == expect[i][3];
    std::vector<int> ranked{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
    ok = ok && apply_precut(ranked, 5).size() == 6;
    report(4, "combination counts, ten-row grid, pre-cut size", ok);
}

// ---- 5: expert / diversity hand cases ----
void criterion_5() {
    bool ok = true;
    auto e = expert_scores({{1.0, 0.0}, {0.0, 1.0}});
    ok = ok && std::abs(e[0] - 0.5) <= 1e-9 && std::abs(e[1] - 0.5) <= 1e-9;
    e = expert_scores({{1.0, 1.0}, {0.0, 0.0}});
    ok = ok && std::abs(e[0] - 1.0 / (1.0 + std::exp(-18.0))) <= 1e-9;

    const std::vector<int> truth{0, 0, 0, 0}, pi{1, 0, 0, 0}, pj{0, 1, 0, 0};
    ok = ok && std::abs(pairwise_diversity(pi, pj, truth, false) - 0.0) <= 1e-9 &&
         std::abs(pairwise_diversity(pi, pj, truth, true) - 0.5) <= 1e-9;

    std::mt19937_64 rng(31337);
    std::uniform_int_distribution<int> lab(0, 2);
    for (int trial = 0; trial < 1000 && ok; ++trial) {
        std::vector<int> t(16), a(16), b(16);
        for (int i = 0; i < 16; ++i) {
            const auto u = static_cast<std::size_t>(i);
            t[u] = lab(rng);
            a[u] = lab(rng);
            b[u] = lab(rng);
        }
        ok = pairwise_diversity(a, b, t, false) <= pairwise_diversity(a, b, t, true);
    }
    report(5, "expert and diversity hand cases, variant ordering", ok);
}

// shared fixture for 6-8: the separable 5-class blob suite
struct BlobSuite {
    Dataset train, valid, test;
    std::vector<TrainedClassifier> pool;
    Standardizer standardizer;
    Frame frame = Frame::dense(5);
    std::uint64_t seed = 2024;

    BlobSuite() {
        const auto full = make_blobs(5, 300, 2, 10.0, seed);
        test = make_blobs(5, 200, 2, 10.0, seed + 1);
        std::tie(train, valid) = split_train_valid(full, 0.7, seed + 2);
        standardizer = Standardizer::fit(train);
        train = standardizer.apply(train);
        valid = standardizer.apply(valid);
        test = standardizer.apply(test);
        pool = train_pool(default_pool_specs(5), train, valid, seed + 3);
    }
};

// ---- 6: end-to-end classification ----
void criterion_6(const BlobSuite& s) {
    const auto t0 = std::chrono::steady_clock::now();
    SelectionConfig co1;  // all-false baseline row
    co1.ensemble_size = 5;
    const auto chosen = select_pool(s.pool, co1, s.valid.y);
    std::vector<TrainedClassifier> members;
    for (int i : chosen) members.push_back(s.pool[static_cast<std::size_t>(i)]);
    const auto model = make_ensemble(members, s.frame, sensitivity_factor(4));

    std::vector<int> pred;
    for (const auto& row : s.test.X) pred.push_back(ensemble_predict(model, row).label);
    const double en_f1 = classification_report(s.test.y, pred).macro_f1;

    double best_individual = 0.0;
    for (const auto& tc : s.pool) {
        const auto p = predict_all(*tc.model, s.test);
        best_individual = std::max(best_individual, classification_report(s.test.y, p).macro_f1);
    }
    const bool ok = en_f1 >= 0.95 && en_f1 >= best_individual - 0.02 && elapsed(t0) < 60.0;
    report(6, "ensemble macro-F1 on separable blobs vs best individual", ok);
}

// ---- 7: anomaly detection ----
void criterion_7(const BlobSuite& s) {
    const auto t0 = std::chrono::steady_clock::now();
    // Fusion order: distance-consensus members first, the axis-partition
    // and far-extrapolation members last so an outlier's structural
    // disagreement lands on the final fold step of both rules.
    std::vector<TrainedClassifier> members{s.pool[0], s.pool[1], s.pool[3],
                                           s.pool[4], s.pool[2]};
    auto model = make_ensemble(members, s.frame, sensitivity_factor(4));
    model.thresholds = calibrate_thresholds(model, s.valid, 0.5, 0.99);
    model.calibrated = true;

    // held-out blob on the bisector between the first two class means,
    // far enough that every training mean is >= 20 sigma away
    const double r = 10.0 / (2.0 * std::sin(std::numbers::pi / 5.0));
    const double mid = std::numbers::pi / 5.0;  // between 0 and 72 degrees
    std::vector<double> center{30.0 * std::cos(mid), 30.0 * std::sin(mid)};
    const auto injected = inject_anomaly(s.test, AnomalyGenerator::FarBlob,
                                         200.0 / static_cast<double>(s.test.rows()), s.seed + 9,
                                         center);
    // sanity: the raw center clears 20 sigma from every class mean
    bool geometry_ok = true;
    for (int c = 0; c < 5; ++c) {
        const double ang = 2.0 * std::numbers::pi * c / 5.0;
        const double dx = center[0] - r * std::cos(ang), dy = center[1] - r * std::sin(ang);
        geometry_ok = geometry_ok && std::sqrt(dx * dx + dy * dy) >= 20.0;
    }

    std::size_t anom = 0, hit = 0, in_dist = 0, false_pos = 0;
    for (std::size_t i = 0; i < injected.rows(); ++i) {
        const bool is_anom = injected.y[i] == kAnomalyLabel;
        const auto row = is_anom && i >= s.test.rows()
                             ? s.standardizer.apply_row(injected.X[i])
                             : injected.X[i];
        const auto d = detect(model, row);
        if (is_anom) {
            ++anom;
            if (d.label == kAnomalyLabel) ++hit;
        } else {
            ++in_dist;
            if (d.label == kAnomalyLabel) ++false_pos;
        }
    }
    const double recall = static_cast<double>(hit) / static_cast<double>(anom);
    const double far_rate = static_cast<double>(false_pos) / static_cast<double>(in_dist);
    const bool ok =
        geometry_ok && anom == 200 && recall >= 0.8 && far_rate <= 0.05 && elapsed(t0) < 60.0;
    if (!ok)
        std::cout << "      (recall=" << recall << " false_rate=" << far_rate << ")\n";
    report(7, "far-blob anomaly recall >= 0.8 with in-distribution false rate <= 0.05", ok);
}

// seeded uniform-random stand-in predictor
class RandomModel final : public Model {
public:
    RandomModel(int n, std::uint64_t seed) : n_(n), seed_(seed) {}
    std::string kind() const override { return "gnb"; }
    int feature_count() const override { return 2; }
    int class_count() const override { return n_; }
    std::vector<double> predict_proba(const std::vector<double>& x) const override {
        std::size_t h = seed_;
        for (double v : x) h ^= std::hash<double>{}(v) + 0x9e3779b9 + (h << 6) + (h >> 2);
        std::mt19937_64 rng(h);
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

// ---- 8: UQ separation ----
void criterion_8(const BlobSuite& s) {
    UQConfig cfg;  // 20 samples x 50 iterations
    cfg.seed = 91;
    const auto trained = uq_batch(s.pool[0], s.valid, cfg, sensitivity_factor(4));

    TrainedClassifier rnd;
    rnd.spec.kind = "gnb";
    rnd.spec.probabilistic = true;
    rnd.model = std::make_shared<RandomModel>(5, 17);
    rnd.weights.assign(5, 1.0);
    const auto random = uq_batch(rnd, s.valid, cfg, sensitivity_factor(4));

    const bool ok = trained.median_uq_ds <= 0.1 &&
                    random.median_uq_ds >= trained.median_uq_ds + 0.2;
    if (!ok)
        std::cout << "      (trained=" << trained.median_uq_ds
                  << " random=" << random.median_uq_ds << ")\n";
    report(8, "batch-conflict separation between trained and random predictors", ok);
}

// ---- 9: optional TE spot check ----
void criterion_9() {
    const char* env = std::getenv("ECET_TE_DIR");
    std::vector<std::string> candidates;
    if (env) candidates.push_back(env);
    candidates.push_back("data/te");
    candidates.push_back("/root/proj/data/te");
    std::string dir;
    for (const auto& c : candidates)
        if (fs::exists(fs::path(c) / "d06.dat") && fs::exists(fs::path(c) / "d00.dat")) {
            dir = c;
            break;
        }
    if (dir.empty()) {
        skip(9, "fault-6 detection rate on plant benchmark data", "dataset not supplied");
        return;
    }
    const auto cases = load_te(dir);
    const TeCase* normal = nullptr;
    const TeCase* fault6 = nullptr;
    for (const auto& c : cases) {
        if (c.fault == 0) normal = &c;
        if (c.fault == 6) fault6 = &c;
    }
    if (!normal || !fault6) {
        skip(9, "fault-6 detection rate on plant benchmark data", "required cases missing");
        return;
    }
    Dataset full;
    full.label_map = {0, 1};
    auto append = [&full](const Dataset& src, int label) {
        for (std::size_t i = 0; i < src.rows(); ++i) {
            full.X.push_back(src.X[i]);
            full.y.push_back(label);
        }
    };
    append(normal->train, 0);
    append(fault6->train, 1);
    auto [train, valid] = split_train_valid(full, 0.7, 6);
    const auto std_ = Standardizer::fit(train);
    train = std_.apply(train);
    valid = std_.apply(valid);
    const auto pool = train_pool(default_pool_specs(5), train, valid, 6);
    const auto model = make_ensemble(pool, Frame::dense(2), sensitivity_factor(4));

    std::size_t fault_total = 0, fault_hit = 0;
    for (std::size_t i = 0; i < fault6->test.rows(); ++i) {
        if (i < 160) continue;  // leading normal stretch
        ++fault_total;
        const auto d = ensemble_predict(model, std_.apply_row(fault6->test.X[i]));
        if (d.label == 1) ++fault_hit;
    }
    const double fdr = static_cast<double>(fault_hit) / static_cast<double>(fault_total);
    report(9, "fault-6 detection rate >= 0.99 on plant benchmark data", fdr >= 0.99);
}

// ---- 10: determinism ----
void criterion_10() {
    ExperimentConfig cfg;
    cfg.seed = 5;
    cfg.classes = 4;
    cfg.train_per_class = 80;
    cfg.test_per_class = 50;
    cfg.pool_size = 5;
    cfg.selection.ensemble_size = 3;
    cfg.inject = true;
    cfg.run_uq = true;
    cfg.uq.batch_size = 15;
    cfg.uq.iterations = 10;
    const auto a = run_experiment(cfg);
    const auto b = run_experiment(cfg);
    const bool ok = a.report.dump() == b.report.dump() && a.trace_csv == b.trace_csv &&
                    a.confusion_csv == b.confusion_csv;
    report(10, "byte-identical reports for identical config and seed", ok);
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    const BlobSuite suite;
    criterion_6(suite);
    criterion_7(suite);
    criterion_8(suite);
    criterion_9();
    criterion_10();
    if (failures) std::cout << failures << " criterion(s) failed\n";
    return failures == 0 ? 0 : 1;
}
