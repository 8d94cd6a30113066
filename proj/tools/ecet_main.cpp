// Command-line surface: train/select/uq/evaluate/detect/synth/grid over
// the ensemble-evidence toolkit.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "ecet/experiment.hpp"

namespace {

namespace fs = std::filesystem;

struct CommonOpts {
    std::string config_path;
    std::string out_dir = "out";
    std::int64_t seed = -1;  // -1: config value or ECET_SEED
    int ensemble_size = 0;
    int f_sensitivity = 0;
    double q_min = -1.0, q_max = -1.0;
    std::string rule = "dempster";
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--config", o.config_path, "experiment config JSON");
    cmd->add_option("--seed", o.seed, "seed override (falls back to ECET_SEED)");
    cmd->add_option("--out", o.out_dir, "output directory");
    cmd->add_option("--ensemble-size", o.ensemble_size, "ensemble size override");
    cmd->add_option("--rule", o.rule, "uncertainty series to summarize")
        ->check(CLI::IsMember({"dempster", "yager"}));
    cmd->add_option("--f-sensitivity", o.f_sensitivity, "sensitivity exponent override");
    cmd->add_option("--q-min", o.q_min, "lower calibration quantile");
    cmd->add_option("--q-max", o.q_max, "upper calibration quantile");
}

ecet::ExperimentConfig resolve(const CommonOpts& o) {
    ecet::ExperimentConfig cfg;
    if (!o.config_path.empty()) cfg = ecet::load_experiment_config(o.config_path);
    if (o.seed >= 0)
        cfg.seed = static_cast<std::uint64_t>(o.seed);
    else if (o.config_path.empty()) {
        if (const char* env = std::getenv("ECET_SEED")) cfg.seed = std::strtoull(env, nullptr, 10);
    }
    if (o.ensemble_size > 0) cfg.selection.ensemble_size = o.ensemble_size;
    if (o.f_sensitivity > 0) cfg.f_sensitivity = o.f_sensitivity;
    if (o.q_min >= 0.0) cfg.q_min = o.q_min;
    if (o.q_max >= 0.0) cfg.q_max = o.q_max;
    return cfg;
}

void write_file(const fs::path& path, const std::string& body) {
    fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ecet::Error("cannot write " + path.string());
    out << body;
}

// Shared front half of every data-driven subcommand.
struct Prepared {
    ecet::Dataset train, valid, test;
    ecet::Standardizer standardizer;
    std::vector<ecet::TrainedClassifier> pool;
};

Prepared prepare(const ecet::ExperimentConfig& cfg) {
    Prepared p;
    ecet::Dataset full_train;
    if (cfg.source == "blobs") {
        full_train = ecet::make_blobs(cfg.classes, cfg.train_per_class, cfg.features,
                                      cfg.separation, cfg.seed);
        p.test = ecet::make_blobs(cfg.classes, cfg.test_per_class, cfg.features, cfg.separation,
                                  cfg.seed + 1);
    } else {
        full_train = ecet::load_csv(cfg.train_csv, cfg.label_column);
        p.test = ecet::load_csv(cfg.test_csv, cfg.label_column);
    }
    std::tie(p.train, p.valid) = ecet::split_train_valid(full_train, cfg.split_ratio, cfg.seed + 3);
    p.standardizer = ecet::Standardizer::fit(p.train);
    p.train = p.standardizer.apply(p.train);
    p.valid = p.standardizer.apply(p.valid);
    p.test = p.standardizer.apply(p.test);
    const auto specs = cfg.pool.empty() ? ecet::default_pool_specs(cfg.pool_size) : cfg.pool;
    p.pool = ecet::train_pool(specs, p.train, p.valid, cfg.seed + 4);
    return p;
}

int cmd_train(const CommonOpts& o) {
    const auto cfg = resolve(o);
    const auto p = prepare(cfg);
    nlohmann::json bundle;
    bundle["seed"] = cfg.seed;
    nlohmann::json members = nlohmann::json::array();
    for (const auto& tc : p.pool)
        members.push_back({{"spec", ecet::spec_to_json(tc.spec)},
                           {"model", tc.model->to_json()},
                           {"weights", tc.weights},
                           {"mean_f1", tc.mean_f1}});
    bundle["pool"] = members;
    write_file(fs::path(o.out_dir) / "models.json", bundle.dump(2) + "\n");
    for (const auto& tc : p.pool)
        std::cout << tc.spec.name << " mean_f1=" << tc.mean_f1 << "\n";
    std::cout << "wrote " << (fs::path(o.out_dir) / "models.json").string() << "\n";
    return 0;
}

int cmd_select(const CommonOpts& o) {
    const auto cfg = resolve(o);
    const auto p = prepare(cfg);
    const auto chosen = ecet::select_pool(p.pool, cfg.selection, p.valid.y);
    std::cout << "config exp=" << cfg.selection.exp << " div=" << cfg.selection.div
              << " ver=" << cfg.selection.ver << " pc=" << cfg.selection.pc << "\nselected:";
    for (int i : chosen) std::cout << ' ' << p.pool[static_cast<std::size_t>(i)].spec.name;
    std::cout << "\n";
    int row = 1;
    for (const auto& g : ecet::selection_grid(cfg.selection.ensemble_size)) {
        if (g.exp == cfg.selection.exp && g.div == cfg.selection.div &&
            g.ver == cfg.selection.ver && g.pc == cfg.selection.pc)
            std::cout << "grid row: Co" << row << "\n";
        ++row;
    }
    return 0;
}

int cmd_uq(const CommonOpts& o) {
    auto cfg = resolve(o);
    const auto p = prepare(cfg);
    const auto k = ecet::sensitivity_factor(cfg.f_sensitivity);
    if (!cfg.run_uq) cfg.uq.seed = cfg.seed;

    std::ostringstream csv;
    csv << "subject,iteration,uq_p,uq_ds,uq_y\n";
    for (const auto& tc : p.pool) {
        const auto tr = ecet::uq_batch(tc, p.valid, cfg.uq, k);
        for (std::size_t i = 0; i < tr.iterations.size(); ++i) {
            const auto& it = tr.iterations[i];
            csv << tc.spec.name << ',' << i << ',' << it.uq_p.value_or(-1.0) << ',' << it.uq_ds
                << ',' << it.uq_y << '\n';
        }
        std::cout << tc.spec.name << " median uq_ds=" << tr.median_uq_ds
                  << " uq_y=" << tr.median_uq_y << "\n";
    }
    ecet::SelectionConfig sel = cfg.selection;
    auto chosen = ecet::select_pool(p.pool, sel, p.valid.y);
    std::vector<ecet::TrainedClassifier> members;
    for (int i : chosen) members.push_back(p.pool[static_cast<std::size_t>(i)]);
    const auto model = ecet::make_ensemble(std::move(members), p.train.frame(), k);
    const auto tr = ecet::uq_batch(model, p.valid, cfg.uq);
    for (std::size_t i = 0; i < tr.iterations.size(); ++i)
        csv << "ensemble," << i << ",," << tr.iterations[i].uq_ds << ',' << tr.iterations[i].uq_y
            << '\n';
    std::cout << "ensemble median uq_" << (o.rule == "yager" ? "y=" : "ds=")
              << (o.rule == "yager" ? tr.median_uq_y : tr.median_uq_ds) << "\n";
    write_file(fs::path(o.out_dir) / "uq_trace.csv", csv.str());
    return 0;
}

int run_and_write(ecet::ExperimentConfig cfg, const CommonOpts& o) {
    const auto rep = ecet::run_experiment(cfg);
    ecet::write_artifacts(rep, o.out_dir);
    std::cout << "macro_f1=" << rep.metrics.macro_f1 << " accuracy=" << rep.metrics.accuracy;
    if (rep.report.contains("anomaly"))
        std::cout << " anomaly_recall=" << rep.report["anomaly"]["recall"].get<double>()
                  << " false_rate=" << rep.report["anomaly"]["false_rate"].get<double>();
    std::cout << "\nartifacts in " << o.out_dir << "\n";
    return 0;
}

int cmd_evaluate(const CommonOpts& o) {
    auto cfg = resolve(o);
    cfg.inject = false;
    cfg.run_grid = false;
    return run_and_write(std::move(cfg), o);
}

int cmd_detect(const CommonOpts& o) {
    auto cfg = resolve(o);
    cfg.inject = true;
    return run_and_write(std::move(cfg), o);
}

int cmd_grid(const CommonOpts& o) {
    auto cfg = resolve(o);
    cfg.run_grid = true;
    const auto rep = ecet::run_experiment(cfg);
    ecet::write_artifacts(rep, o.out_dir);
    std::cout << "row config(exp,div,ver,pc) macro_f1 accuracy\n";
    for (const auto& r : rep.report["grid"]) {
        const auto& c = r["config"];
        std::cout << "Co" << r["row"].get<int>() << "  " << c["exp"].get<bool>() << ','
                  << c["div"].get<bool>() << ',' << c["ver"].get<bool>() << ','
                  << c["pc"].get<bool>() << "  " << r["macro_f1"].get<double>() << "  "
                  << r["accuracy"].get<double>() << "\n";
    }
    std::cout << "artifacts in " << o.out_dir << "\n";
    return 0;
}

int cmd_synth(const CommonOpts& o) {
    const auto cfg = resolve(o);
    auto dump = [&](const ecet::Dataset& ds, const char* name) {
        std::ostringstream csv;
        for (std::size_t j = 0; j < ds.cols(); ++j) csv << ds.feature_names[j] << ',';
        csv << "label\n";
        for (std::size_t i = 0; i < ds.rows(); ++i) {
            for (double v : ds.X[i]) csv << v << ',';
            csv << ds.original_label(ds.y[i]) << '\n';
        }
        write_file(fs::path(o.out_dir) / name, csv.str());
    };
    dump(ecet::make_blobs(cfg.classes, cfg.train_per_class, cfg.features, cfg.separation, cfg.seed),
         "train.csv");
    dump(ecet::make_blobs(cfg.classes, cfg.test_per_class, cfg.features, cfg.separation,
                          cfg.seed + 1),
         "test.csv");
    std::cout << "wrote train.csv and test.csv in " << o.out_dir << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Evidence-fusion ensemble classification toolkit"};
    app.require_subcommand(1);

    CommonOpts opts;
    int (*handler)(const CommonOpts&) = nullptr;
    const std::pair<const char*, std::pair<const char*, int (*)(const CommonOpts&)>> cmds[] = {
        {"train", {"fit the classifier pool and export the model bundle", cmd_train}},
        {"select", {"run pool selection and print the chosen ensemble", cmd_select}},
        {"uq", {"batch uncertainty traces for pool and ensemble", cmd_uq}},
        {"evaluate", {"end-to-end classification metrics", cmd_evaluate}},
        {"detect", {"anomaly-injection run", cmd_detect}},
        {"synth", {"generate synthetic blob CSVs", cmd_synth}},
        {"grid", {"sweep all ten selection configurations", cmd_grid}},
    };
    for (const auto& [name, entry] : cmds) {
        auto* sub = app.add_subcommand(name, entry.first);
        add_common(sub, opts);
        auto fn = entry.second;
        sub->callback([&handler, fn] { handler = fn; });
    }

    CLI11_PARSE(app, argc, argv);
    try {
        return handler(opts);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
