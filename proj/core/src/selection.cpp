#include "ecet/selection.hpp"

#include <algorithm>
#include <cmath>

#include "ecet/errors.hpp"

namespace ecet {

std::uint64_t combination_count(int n_p, int n_es) {
    if (n_es <= 0 || n_es > n_p) throw InvalidArgumentError("need 0 < ensemble size <= pool size");
    const int k = std::min(n_es, n_p - n_es);
    std::uint64_t c = 1;
    for (int i = 1; i <= k; ++i) {
        // multiply before divide stays exact: c is always a binomial coefficient
        c = c * static_cast<std::uint64_t>(n_p - k + i) / static_cast<std::uint64_t>(i);
    }
    return c;
}

std::vector<double> expert_scores(const std::vector<std::vector<double>>& perf, double va_max,
                                  double va_min) {
    if (perf.empty() || perf.front().empty()) throw EmptySequenceError("empty performance matrix");
    if (!(va_max > 0.0) || va_min < 0.0 || !(va_max > va_min))
        throw InvalidArgumentError("need va_max > va_min >= 0");
    const std::size_t n_cls = perf.size();
    const std::size_t n_classes = perf.front().size();
    for (const auto& row : perf)
        if (row.size() != n_classes) throw DimensionMismatchError("ragged performance matrix");

    std::vector<double> sums(n_cls, 0.0);
    for (std::size_t k = 0; k < n_classes; ++k) {
        // Column softmax only picks out the maximizers; equal entries stay
        // equal through it, so the mask can read the raw column.
        double hi = perf[0][k];
        for (std::size_t i = 1; i < n_cls; ++i) hi = std::max(hi, perf[i][k]);
        std::size_t n_ties = 0;
        for (std::size_t i = 0; i < n_cls; ++i)
            if (perf[i][k] == hi) ++n_ties;
        for (std::size_t i = 0; i < n_cls; ++i)
            sums[i] += perf[i][k] == hi ? va_max / static_cast<double>(n_ties) : va_min;
    }
    double top = sums.front();
    for (double v : sums) top = std::max(top, v);
    double z = 0.0;
    for (double& v : sums) {
        v = std::exp(v - top);
        z += v;
    }
    for (double& v : sums) v /= z;
    return sums;
}

double pairwise_diversity(const std::vector<int>& pred_i, const std::vector<int>& pred_j,
                          const std::vector<int>& truth, bool ver) {
    if (pred_i.size() != truth.size() || pred_j.size() != truth.size())
        throw DimensionMismatchError("prediction/truth lengths differ");
    if (truth.empty()) throw EmptySequenceError("no samples");
    std::size_t n_diff = 0;
    for (std::size_t s = 0; s < truth.size(); ++s) {
        const bool wi = pred_i[s] != truth[s], wj = pred_j[s] != truth[s];
        if (ver ? (wi || wj) : (wi && wj)) ++n_diff;
    }
    return static_cast<double>(n_diff) / static_cast<double>(truth.size());
}

DiversityReport ensemble_diversity(const std::vector<std::vector<int>>& predictions,
                                   const std::vector<int>& truth, bool ver) {
    const std::size_t k = predictions.size();
    if (k < 2) throw InvalidArgumentError("diversity needs at least 2 classifiers");
    DiversityReport rep;
    rep.pairwise.assign(k, std::vector<double>(k, 0.0));
    double sum = 0.0;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) {
            const double d = pairwise_diversity(predictions[i], predictions[j], truth, ver);
            rep.pairwise[i][j] = rep.pairwise[j][i] = d;
            sum += 2.0 * d;  // ordered pairs (i,j) and (j,i)
        }
    rep.ensemble_value = sum / static_cast<double>(k);
    return rep;
}

std::vector<int> apply_precut(const std::vector<int>& ranked_pool, int n_es) {
    if (static_cast<int>(ranked_pool.size()) < n_es + 1)
        throw InvalidArgumentError("pool too small for pre-cut");
    return {ranked_pool.begin(), ranked_pool.begin() + n_es + 1};
}

std::vector<int> select_pool(const std::vector<TrainedClassifier>& pool,
                             const SelectionConfig& cfg, const std::vector<int>& truth) {
    const int n_es = cfg.ensemble_size;
    if (n_es < 2) throw InvalidArgumentError("ensemble size must be at least 2");
    const int need = cfg.pc && cfg.div ? n_es + 1 : n_es;
    if (static_cast<int>(pool.size()) < need) throw InvalidArgumentError("pool too small");
    if ((cfg.ver || cfg.pc) && !cfg.div)
        throw InvalidArgumentError("ver/pc apply only with diversity enabled");

    // (1) performance ranking: mean F1 descending, pool index breaks ties.
    std::vector<int> ranking(pool.size());
    for (std::size_t i = 0; i < pool.size(); ++i) ranking[i] = static_cast<int>(i);
    std::stable_sort(ranking.begin(), ranking.end(), [&pool](int a, int b) {
        return pool[static_cast<std::size_t>(a)].mean_f1 > pool[static_cast<std::size_t>(b)].mean_f1;
    });

    // (2) expert re-ranking replaces the performance order.
    if (cfg.exp) {
        const auto scores = expert_scores(performance_matrix(pool));
        std::stable_sort(ranking.begin(), ranking.end(), [&scores](int a, int b) {
            return scores[static_cast<std::size_t>(a)] > scores[static_cast<std::size_t>(b)];
        });
    }

    // (3) pre-cut shrinks the candidate set before diversity growth.
    if (cfg.div && cfg.pc) ranking = apply_precut(ranking, n_es);

    if (!cfg.div) return {ranking.begin(), ranking.begin() + n_es};

    // (4) seed with the most diverse pair, then grow by best ensemble
    // diversity; candidate order follows the ranking, so ties favor
    // better-ranked classifiers.
    std::vector<std::vector<int>> preds;
    preds.reserve(ranking.size());
    for (int i : ranking) preds.push_back(pool[static_cast<std::size_t>(i)].valid_predictions);

    std::size_t best_a = 0, best_b = 1;
    double best_div = -1.0;
    for (std::size_t a = 0; a < ranking.size(); ++a)
        for (std::size_t b = a + 1; b < ranking.size(); ++b) {
            const double d = pairwise_diversity(preds[a], preds[b], truth, cfg.ver);
            if (d > best_div) {
                best_div = d;
                best_a = a;
                best_b = b;
            }
        }
    std::vector<std::size_t> chosen{best_a, best_b};
    std::vector<bool> used(ranking.size(), false);
    used[best_a] = used[best_b] = true;

    while (static_cast<int>(chosen.size()) < n_es) {
        std::size_t best_c = 0;
        double best_en = -1.0;
        for (std::size_t c = 0; c < ranking.size(); ++c) {
            if (used[c]) continue;
            std::vector<std::vector<int>> grown;
            for (std::size_t i : chosen) grown.push_back(preds[i]);
            grown.push_back(preds[c]);
            const double en = ensemble_diversity(grown, truth, cfg.ver).ensemble_value;
            if (en > best_en) {
                best_en = en;
                best_c = c;
            }
        }
        used[best_c] = true;
        chosen.push_back(best_c);
    }
    std::vector<int> out;
    out.reserve(chosen.size());
    for (std::size_t i : chosen) out.push_back(ranking[i]);
    return out;
}

std::vector<SelectionConfig> selection_grid(int n_es) {
    if (n_es < 2) throw InvalidArgumentError("ensemble size must be at least 2");
    // exp, div, ver, pc per canonical row order
    constexpr bool rows[10][4] = {
        {false, false, false, false}, {false, true, false, false}, {false, true, false, true},
        {false, true, true, false},   {false, true, true, true},   {true, false, false, false},
        {true, true, false, false},   {true, true, false, true},   {true, true, true, false},
        {true, true, true, true},
    };
    std::vector<SelectionConfig> grid;
    for (const auto& r : rows) grid.push_back({r[0], r[1], r[2], r[3], n_es});
    return grid;
}

}  // namespace ecet
