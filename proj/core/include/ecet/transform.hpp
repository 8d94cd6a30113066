#pragma once

#include <vector>

#include "ecet/mass.hpp"

namespace ecet {

// Per-class confidence weights in [0,1], one per frame label. Derived
// from validation F1 when attached to a trained classifier.
using ConfidenceWeights = std::vector<double>;

// k = 1 - 10^-F, the near-one stand-in for a hard 1 so that orthogonal
// products never annihilate the inactive classes.
struct SensitivityFactor {
    int exponent = 4;
    double k = 0.9999;
};

SensitivityFactor sensitivity_factor(int exponent);

// Hard-label path: the active class gets k*w, each inactive class gets
// ((1-k)/(n-1))*w, theta absorbs the remainder.
MassVector label_to_evidence(int active_label, const Frame& frame, const ConfidenceWeights& w,
                             const SensitivityFactor& k);

// Probability path: elementwise product p[i]*w[i]; theta = 1 - dot(p, w).
// p must sum to 1 within 1e-6 (renormalized inside that tolerance).
MassVector proba_to_evidence(const std::vector<double>& p, const ConfidenceWeights& w);

}  // namespace ecet
