#pragma once

#include <vector>

#include "ecet/frame.hpp"

namespace ecet {

// Mass vector restricted to the n singletons plus the full frame.
// singleton[i] is the belief committed exactly to class i, theta the
// belief left on the whole frame (the uncertainty term).
struct MassVector {
    std::vector<double> singleton;
    double theta = 0.0;

    int size() const { return static_cast<int>(singleton.size()); }
    double sum() const;
};

enum class Rule { Dempster, Yager };

struct FusionResult {
    MassVector fused;
    double conflict = 0.0;  // b_k for Dempster, q(phi) for Yager
    Rule rule = Rule::Dempster;
};

// Validates non-negativity and unit sum (1e-9 tolerance). Drift up to
// 1e-6 is renormalized, anything larger is rejected.
MassVector make_mass(std::vector<double> singleton, double theta);

// All mass on the frame: total ignorance.
MassVector vacuous(int n);
inline MassVector vacuous(const Frame& frame) { return vacuous(frame.size()); }

FusionResult combine_dempster(const MassVector& m1, const MassVector& m2);
FusionResult combine_yager(const MassVector& m1, const MassVector& m2);

// Left fold in sequence order. A single input comes back with conflict 0;
// the reported conflict is that of the final pairwise step. When
// step_conflicts is given, the per-step conflict trace is appended to it.
FusionResult combine_many(const std::vector<MassVector>& masses, Rule rule,
                          std::vector<double>* step_conflicts = nullptr);

// Index of the maximal singleton mass; theta never wins, ties go to the
// lowest index.
int argmax_index(const MassVector& m);
int argmax_label(const MassVector& m, const Frame& frame);

}  // namespace ecet
