#include "ecet/experiment.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace ecet {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Rounds through a fixed decimal representation so the report JSON stays
// byte-stable across platforms' printf corner cases.
double stable(double v) { return std::round(v * 1e12) / 1e12; }

nlohmann::json selection_to_json(const SelectionConfig& s) {
    return {{"exp", s.exp},
            {"div", s.div},
            {"ver", s.ver},
            {"pc", s.pc},
            {"ensemble_size", s.ensemble_size}};
}

nlohmann::json metrics_to_json(const ClassificationReport& rep) {
    nlohmann::json classes = nlohmann::json::array();
    for (const auto& s : rep.per_class)
        classes.push_back({{"label", s.label},
                           {"precision", stable(s.precision)},
                           {"recall", stable(s.recall)},
                           {"f1", stable(s.f1)},
                           {"support", s.support}});
    return {{"accuracy", stable(rep.accuracy)},
            {"macro_precision", stable(rep.macro_precision)},
            {"macro_recall", stable(rep.macro_recall)},
            {"macro_f1", stable(rep.macro_f1)},
            {"per_class", classes}};
}

std::string confusion_to_csv(const ConfusionMatrix& cm) {
    std::ostringstream out;
    out << "truth\\pred";
    for (int l : cm.labels) out << ',' << l;
    out << '\n';
    for (std::size_t i = 0; i < cm.labels.size(); ++i) {
        out << cm.labels[i];
        for (std::size_t j = 0; j < cm.labels.size(); ++j) out << ',' << cm.counts[i][j];
        out << '\n';
    }
    return out.str();
}

const char* branch_name(DecisionBranch b) {
    switch (b) {
        case DecisionBranch::Confident: return "confident";
        case DecisionBranch::Anomalous: return "anomalous";
        default: return "undecided";
    }
}

}  // namespace

ExperimentConfig parse_experiment_config(const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    ExperimentConfig c;
    c.seed = j.value("seed", 0ULL);

    if (j.contains("data")) {
        const auto& d = j.at("data");
        c.source = d.value("source", c.source);
        c.classes = d.value("classes", c.classes);
        c.train_per_class = d.value("train_per_class", c.train_per_class);
        c.test_per_class = d.value("test_per_class", c.test_per_class);
        c.features = d.value("features", c.features);
        c.separation = d.value("separation", c.separation);
        c.train_csv = d.value("train_csv", c.train_csv);
        c.test_csv = d.value("test_csv", c.test_csv);
        c.label_column = d.value("label_column", c.label_column);
    }
    if (c.source != "blobs" && c.source != "csv")
        throw ConfigError("data.source must be 'blobs' or 'csv'");
    if (c.source == "csv" && (c.train_csv.empty() || c.test_csv.empty()))
        throw ConfigError("csv source needs data.train_csv and data.test_csv");

    c.split_ratio = j.value("split_ratio", c.split_ratio);
    c.f_sensitivity = j.value("f_sensitivity", c.f_sensitivity);

    if (j.contains("pool")) {
        const auto& p = j.at("pool");
        if (p.is_array())
            for (const auto& s : p) c.pool.push_back(spec_from_json(s));
        else if (p.is_object())
            c.pool_size = p.value("size", c.pool_size);
        else
            throw ConfigError("pool must be an array of specs or {\"size\": n}");
    }
    if (j.contains("selection")) {
        const auto& s = j.at("selection");
        c.selection.exp = s.value("exp", false);
        c.selection.div = s.value("div", false);
        c.selection.ver = s.value("ver", false);
        c.selection.pc = s.value("pc", false);
        c.selection.ensemble_size = s.value("ensemble_size", c.selection.ensemble_size);
    }
    c.run_grid = j.value("grid", false);
    if (j.contains("quantiles")) {
        c.q_min = j.at("quantiles").value("q_min", c.q_min);
        c.q_max = j.at("quantiles").value("q_max", c.q_max);
    }
    if (j.contains("anomaly")) {
        const auto& a = j.at("anomaly");
        c.inject = a.value("inject", true);
        c.anomaly_generator = a.value("generator", c.anomaly_generator);
        c.anomaly_fraction = a.value("fraction", c.anomaly_fraction);
        if (a.contains("center")) a.at("center").get_to(c.anomaly_center);
        if (c.anomaly_generator != "far_blob" && c.anomaly_generator != "uniform")
            throw ConfigError("anomaly.generator must be 'far_blob' or 'uniform'");
    }
    if (j.contains("uq")) {
        c.run_uq = true;
        c.uq.batch_size = j.at("uq").value("batch_size", c.uq.batch_size);
        c.uq.iterations = j.at("uq").value("iterations", c.uq.iterations);
        c.uq.seed = j.at("uq").value("seed", c.seed);
    }
    return c;
}

ExperimentConfig load_experiment_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config parse failure: " + std::string(e.what()));
    }
    return parse_experiment_config(j);
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
    ExperimentReport rep;
    nlohmann::json& out = rep.report;
    const auto t_start = Clock::now();

    // --- load ---
    Dataset full_train, test;
    if (cfg.source == "blobs") {
        full_train =
            make_blobs(cfg.classes, cfg.train_per_class, cfg.features, cfg.separation, cfg.seed);
        test = make_blobs(cfg.classes, cfg.test_per_class, cfg.features, cfg.separation,
                          cfg.seed + 1);
    } else {
        full_train = load_csv(cfg.train_csv, cfg.label_column);
        test = load_csv(cfg.test_csv, cfg.label_column);
    }
    if (cfg.inject)
        test = inject_anomaly(test,
                              cfg.anomaly_generator == "uniform" ? AnomalyGenerator::UniformNoise
                                                                 : AnomalyGenerator::FarBlob,
                              cfg.anomaly_fraction, cfg.seed + 2, cfg.anomaly_center);
    rep.timing["load_s"] = seconds_since(t_start);

    // --- split + standardize (training statistics only) ---
    auto t = Clock::now();
    auto [train, valid] = split_train_valid(full_train, cfg.split_ratio, cfg.seed + 3);
    const Standardizer std_ = Standardizer::fit(train);
    train = std_.apply(train);
    valid = std_.apply(valid);
    test = std_.apply(test);
    rep.timing["preprocess_s"] = seconds_since(t);

    // --- pool ---
    t = Clock::now();
    const auto specs = cfg.pool.empty() ? default_pool_specs(cfg.pool_size) : cfg.pool;
    const auto pool = train_pool(specs, train, valid, cfg.seed + 4);
    rep.timing["train_s"] = seconds_since(t);

    nlohmann::json pool_json = nlohmann::json::array();
    for (const auto& tc : pool) {
        nlohmann::json w = nlohmann::json::array();
        for (double v : tc.weights) w.push_back(stable(v));
        pool_json.push_back({{"name", tc.spec.name},
                             {"kind", tc.spec.kind},
                             {"probabilistic", tc.spec.probabilistic},
                             {"mean_f1", stable(tc.mean_f1)},
                             {"weights", w}});
    }
    out["pool"] = pool_json;
    out["seed"] = cfg.seed;

    const Frame frame = train.frame();
    const SensitivityFactor k = sensitivity_factor(cfg.f_sensitivity);

    auto build = [&](const SelectionConfig& sel) {
        const auto chosen = select_pool(pool, sel, valid.y);
        std::vector<TrainedClassifier> members;
        for (int i : chosen) members.push_back(pool[static_cast<std::size_t>(i)]);
        EnsembleModel m = make_ensemble(std::move(members), frame, k);
        m.thresholds = calibrate_thresholds(m, valid, cfg.q_min, cfg.q_max);
        m.calibrated = true;
        return std::pair{chosen, std::move(m)};
    };

    // --- optional grid sweep: macro F1 of every canonical config ---
    if (cfg.run_grid) {
        t = Clock::now();
        nlohmann::json grid = nlohmann::json::array();
        int row = 1;
        for (const auto& sel : selection_grid(cfg.selection.ensemble_size)) {
            auto [chosen, model] = build(sel);
            std::vector<int> truth, pred;
            for (std::size_t i = 0; i < test.rows(); ++i) {
                truth.push_back(test.original_label(test.y[i]));
                const auto d = detect(model, test.X[i]);
                pred.push_back(d.label == kAnomalyLabel ? kAnomalyLabel
                                                        : test.original_label(d.label));
            }
            const auto m = classification_report(truth, pred);
            grid.push_back({{"row", row++},
                            {"config", selection_to_json(sel)},
                            {"selected", chosen},
                            {"macro_f1", stable(m.macro_f1)},
                            {"accuracy", stable(m.accuracy)}});
        }
        out["grid"] = grid;
        rep.timing["grid_s"] = seconds_since(t);
    }

    // --- main configuration ---
    t = Clock::now();
    auto [chosen, model] = build(cfg.selection);
    out["selection"] = selection_to_json(cfg.selection);
    out["selected"] = chosen;
    out["thresholds"] = {{"tr_d_min", stable(model.thresholds.tr_d_min)},
                         {"tr_d_max", stable(model.thresholds.tr_d_max)},
                         {"tr_y_min", stable(model.thresholds.tr_y_min)},
                         {"tr_y_max", stable(model.thresholds.tr_y_max)}};
    rep.timing["select_calibrate_s"] = seconds_since(t);

    // --- evaluate + detect ---
    t = Clock::now();
    std::vector<int> truth, pred;
    std::ostringstream trace;
    trace << "index,truth,pred,u_d,u_y,branch\n";
    for (std::size_t i = 0; i < test.rows(); ++i) {
        const int y_true = test.original_label(test.y[i]);
        const auto d = detect(model, test.X[i]);
        const int y_pred =
            d.label == kAnomalyLabel ? kAnomalyLabel : test.original_label(d.label);
        truth.push_back(y_true);
        pred.push_back(y_pred);
        trace << i << ',' << y_true << ',' << y_pred << ',' << stable(d.basis.u_d) << ','
              << stable(d.basis.u_y) << ',' << branch_name(d.branch) << '\n';
    }
    rep.trace_csv = trace.str();
    rep.metrics = classification_report(truth, pred);
    out["metrics"] = metrics_to_json(rep.metrics);
    rep.confusion_csv = confusion_to_csv(confusion_matrix(truth, pred));

    if (cfg.inject) {
        std::size_t anom_total = 0, anom_hit = 0, in_total = 0, in_flagged = 0;
        for (std::size_t i = 0; i < truth.size(); ++i) {
            if (truth[i] == kAnomalyLabel) {
                ++anom_total;
                if (pred[i] == kAnomalyLabel) ++anom_hit;
            } else {
                ++in_total;
                if (pred[i] == kAnomalyLabel) ++in_flagged;
            }
        }
        out["anomaly"] = {
            {"recall", stable(anom_total ? static_cast<double>(anom_hit) / anom_total : 0.0)},
            {"false_rate", stable(in_total ? static_cast<double>(in_flagged) / in_total : 0.0)},
            {"injected", anom_total}};
    }
    rep.timing["evaluate_s"] = seconds_since(t);

    // --- optional batch UQ on the ensemble and each pool member ---
    if (cfg.run_uq) {
        t = Clock::now();
        nlohmann::json uq = nlohmann::json::object();
        nlohmann::json per_clf = nlohmann::json::array();
        for (const auto& tc : pool) {
            const auto tr = uq_batch(tc, valid, cfg.uq, k);
            per_clf.push_back({{"name", tc.spec.name},
                               {"median_uq_ds", stable(tr.median_uq_ds)},
                               {"median_uq_y", stable(tr.median_uq_y)},
                               {"median_uq_p", stable(tr.median_uq_p.value_or(0.0))}});
        }
        const auto tr = uq_batch(model, valid, cfg.uq);
        uq["classifiers"] = per_clf;
        uq["ensemble"] = {{"median_uq_ds", stable(tr.median_uq_ds)},
                          {"median_uq_y", stable(tr.median_uq_y)}};
        out["uq"] = uq;
        rep.timing["uq_s"] = seconds_since(t);
    }

    rep.timing["total_s"] = seconds_since(t_start);
    rep.model = std::move(model);
    return rep;
}

void write_artifacts(const ExperimentReport& rep, const std::string& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    auto dump = [&dir](const std::string& name, const std::string& body) {
        std::ofstream out(fs::path(dir) / name, std::ios::binary);
        if (!out) throw Error("cannot write " + name + " under " + dir);
        out << body;
    };
    dump("report.json", rep.report.dump(2) + "\n");
    dump("timing.json", rep.timing.dump(2) + "\n");
    dump("trace.csv", rep.trace_csv);
    dump("confusion.csv", rep.confusion_csv);
}

}  // namespace ecet
