#pragma once

#include <cstdint>
#include <vector>

#include "ecet/classifier.hpp"

namespace ecet {

// Pool-selection switches: expert re-ranking, diversity-driven growth,
// the disagreement diversity variant, and the pre-cut truncation.
struct SelectionConfig {
    bool exp = false;
    bool div = false;
    bool ver = false;  // meaningful only when div is set
    bool pc = false;   // meaningful only when div is set
    int ensemble_size = 2;
};

struct DiversityReport {
    std::vector<std::vector<double>> pairwise;  // symmetric, diagonal 0
    double ensemble_value = 0.0;
};

// Binomial coefficient via the multiplicative rule (exact in uint64 for
// the supported range).
std::uint64_t combination_count(int n_p, int n_es);

// Per-classifier expertness from the per-class performance matrix:
// column softmax -> maximizer mask (va_max split across ties, va_min for
// the rest) -> row sums -> softmax. Output is a probability vector.
std::vector<double> expert_scores(const std::vector<std::vector<double>>& perf, double va_max = 10.0,
                                  double va_min = 1.0);

// Fraction of samples misclassified by both classifiers (ver=false) or by
// at least one of them (ver=true).
double pairwise_diversity(const std::vector<int>& pred_i, const std::vector<int>& pred_j,
                          const std::vector<int>& truth, bool ver);

// Full pairwise matrix plus the (1/K)-normalized ordered-pair sum.
DiversityReport ensemble_diversity(const std::vector<std::vector<int>>& predictions,
                                   const std::vector<int>& truth, bool ver);

// Keeps the top n_es+1 entries of an incoming ranking.
std::vector<int> apply_precut(const std::vector<int>& ranked_pool, int n_es);

// Deterministic pipeline: mean-F1 ranking, optional expert re-ranking,
// optional pre-cut, then either diversity-greedy growth or a plain
// truncation. Returns indices into `pool` in selection order.
std::vector<int> select_pool(const std::vector<TrainedClassifier>& pool,
                             const SelectionConfig& cfg, const std::vector<int>& truth);

// The ten canonical flag combinations, in their fixed order.
std::vector<SelectionConfig> selection_grid(int n_es);

}  // namespace ecet
