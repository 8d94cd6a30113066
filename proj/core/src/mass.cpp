#include "ecet/mass.hpp"

#include <cmath>

namespace ecet {

namespace {

constexpr double kSumTolerance = 1e-9;
constexpr double kRenormTolerance = 1e-6;
constexpr double kTotalConflictEps = 1e-12;

void check_same_frame(const MassVector& m1, const MassVector& m2) {
    if (m1.size() != m2.size())
        throw FrameMismatchError("mass vectors defined over frames of different size");
}

// Unnormalized intersection products for singleton+theta mass vectors:
//   num[i] = m1[i]*m2[i] + m1[i]*m2(theta) + m1(theta)*m2[i]
//   num_theta = m1(theta)*m2(theta)
//   conflict  = sum over i != j of m1[i]*m2[j]
struct Products {
    std::vector<double> num;
    double num_theta;
    double conflict;
};

Products intersect(const MassVector& m1, const MassVector& m2) {
    const int n = m1.size();
    Products p;
    p.num.resize(static_cast<std::size_t>(n));
    double s1 = 0.0, s2 = 0.0, agree = 0.0;
    for (int i = 0; i < n; ++i) {
        const double a = m1.singleton[static_cast<std::size_t>(i)];
        const double b = m2.singleton[static_cast<std::size_t>(i)];
        p.num[static_cast<std::size_t>(i)] = a * b + a * m2.theta + m1.theta * b;
        s1 += a;
        s2 += b;
        agree += a * b;
    }
    p.num_theta = m1.theta * m2.theta;
    p.conflict = s1 * s2 - agree;
    if (p.conflict < 0.0) p.conflict = 0.0;
    if (p.conflict > 1.0) p.conflict = 1.0;
    return p;
}

}  // namespace

double MassVector::sum() const {
    double s = theta;
    for (double v : singleton) s += v;
    return s;
}

MassVector make_mass(std::vector<double> singleton, double theta) {
    MassVector m{std::move(singleton), theta};
    if (m.singleton.empty()) throw InvalidMassError("mass vector needs at least one singleton");
    for (double v : m.singleton)
        if (!(v >= 0.0)) throw InvalidMassError("negative singleton mass");
    if (!(m.theta >= 0.0)) throw InvalidMassError("negative theta mass");
    const double s = m.sum();
    if (std::abs(s - 1.0) > kRenormTolerance)
        throw InvalidMassError("mass vector does not sum to 1");
    if (std::abs(s - 1.0) > kSumTolerance) {
        for (double& v : m.singleton) v /= s;
        m.theta /= s;
    }
    return m;
}

MassVector vacuous(int n) {
    MassVector m;
    m.singleton.assign(static_cast<std::size_t>(n), 0.0);
    m.theta = 1.0;
    return m;
}

FusionResult combine_dempster(const MassVector& m1, const MassVector& m2) {
    check_same_frame(m1, m2);
    Products p = intersect(m1, m2);
    if (p.conflict >= 1.0 - kTotalConflictEps)
        throw TotalConflictError("total conflict, Dempster combination undefined");
    const double norm = 1.0 - p.conflict;
    FusionResult r;
    r.rule = Rule::Dempster;
    r.conflict = p.conflict;
    r.fused.singleton.resize(p.num.size());
    for (std::size_t i = 0; i < p.num.size(); ++i) r.fused.singleton[i] = p.num[i] / norm;
    r.fused.theta = p.num_theta / norm;
    return r;
}

FusionResult combine_yager(const MassVector& m1, const MassVector& m2) {
    check_same_frame(m1, m2);
    Products p = intersect(m1, m2);
    FusionResult r;
    r.rule = Rule::Yager;
    r.conflict = p.conflict;
    r.fused.singleton = std::move(p.num);
    r.fused.theta = p.num_theta + p.conflict;  // q(theta) + q(phi)
    return r;
}

FusionResult combine_many(const std::vector<MassVector>& masses, Rule rule,
                          std::vector<double>* step_conflicts) {
    if (masses.empty()) throw EmptySequenceError("no mass vectors to combine");
    FusionResult acc;
    acc.rule = rule;
    acc.fused = masses.front();
    acc.conflict = 0.0;
    for (std::size_t i = 1; i < masses.size(); ++i) {
        acc = rule == Rule::Dempster ? combine_dempster(acc.fused, masses[i])
                                     : combine_yager(acc.fused, masses[i]);
        if (step_conflicts) step_conflicts->push_back(acc.conflict);
    }
    return acc;
}

int argmax_index(const MassVector& m) {
    int best = 0;
    for (int i = 1; i < m.size(); ++i)
        if (m.singleton[static_cast<std::size_t>(i)] > m.singleton[static_cast<std::size_t>(best)])
            best = i;
    return best;
}

int argmax_label(const MassVector& m, const Frame& frame) {
    if (m.size() != frame.size())
        throw FrameMismatchError("mass vector does not match frame size");
    return frame.labels[static_cast<std::size_t>(argmax_index(m))];
}

}  // namespace ecet
