#include "ecet/transform.hpp"

#include <cmath>

namespace ecet {

namespace {

void check_weights(const ConfidenceWeights& w, int n) {
    if (static_cast<int>(w.size()) != n)
        throw DimensionMismatchError("confidence weights do not match frame size");
    for (double v : w)
        if (!(v >= 0.0 && v <= 1.0)) throw InvalidArgumentError("confidence weight outside [0,1]");
}

}  // namespace

SensitivityFactor sensitivity_factor(int exponent) {
    if (exponent < 1) throw InvalidArgumentError("sensitivity exponent must be >= 1");
    return SensitivityFactor{exponent, 1.0 - std::pow(10.0, -exponent)};
}

MassVector label_to_evidence(int active_label, const Frame& frame, const ConfidenceWeights& w,
                             const SensitivityFactor& k) {
    const int n = frame.size();
    check_weights(w, n);
    const int active = frame.index_of(active_label);
    std::vector<double> mass(static_cast<std::size_t>(n));
    const double inactive = (1.0 - k.k) / static_cast<double>(n - 1);
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        mass[ui] = (i == active ? k.k : inactive) * w[ui];
        total += mass[ui];
    }
    double theta = 1.0 - total;
    if (theta < 0.0) theta = 0.0;  // sub-epsilon float residue only
    return make_mass(std::move(mass), theta);
}

MassVector proba_to_evidence(const std::vector<double>& p, const ConfidenceWeights& w) {
    const int n = static_cast<int>(p.size());
    if (n < 2) throw InvalidArgumentError("probability vector needs at least 2 classes");
    check_weights(w, n);
    double sum = 0.0;
    for (double v : p) {
        if (!(v >= 0.0) || !std::isfinite(v))
            throw InvalidArgumentError("not a probability vector");
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-6) throw InvalidArgumentError("probability vector does not sum to 1");
    std::vector<double> mass(p.size());
    double total = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        mass[i] = (p[i] / sum) * w[i];
        total += mass[i];
    }
    double theta = 1.0 - total;
    if (theta < 0.0) theta = 0.0;
    return make_mass(std::move(mass), theta);
}

}  // namespace ecet
