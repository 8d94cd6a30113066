#include "ecet/metrics.hpp"

#include <algorithm>
#include <set>

#include "ecet/errors.hpp"

namespace ecet {

namespace {

double safe_div(double num, double den) { return den == 0.0 ? 0.0 : num / den; }

void check_lengths(const std::vector<int>& y_true, const std::vector<int>& y_pred) {
    if (y_true.size() != y_pred.size())
        throw DimensionMismatchError("label vectors differ in length");
    if (y_true.empty()) throw EmptySequenceError("no labels to score");
}

}  // namespace

const ClassScore& ClassificationReport::for_label(int label) const {
    for (const auto& s : per_class)
        if (s.label == label) return s;
    throw InvalidArgumentError("label " + std::to_string(label) + " not present in report");
}

ClassificationReport classification_report(const std::vector<int>& y_true,
                                           const std::vector<int>& y_pred) {
    check_lengths(y_true, y_pred);
    std::set<int> labels(y_true.begin(), y_true.end());
    labels.insert(y_pred.begin(), y_pred.end());

    ClassificationReport rep;
    std::size_t correct = 0;
    for (std::size_t i = 0; i < y_true.size(); ++i)
        if (y_true[i] == y_pred[i]) ++correct;
    rep.accuracy = static_cast<double>(correct) / static_cast<double>(y_true.size());

    std::size_t supported = 0;
    for (int label : labels) {
        std::size_t tp = 0, fp = 0, fn = 0, support = 0;
        for (std::size_t i = 0; i < y_true.size(); ++i) {
            const bool t = y_true[i] == label, p = y_pred[i] == label;
            if (t) ++support;
            if (t && p) ++tp;
            else if (!t && p) ++fp;
            else if (t && !p) ++fn;
        }
        ClassScore s;
        s.label = label;
        s.support = support;
        s.precision = safe_div(static_cast<double>(tp), static_cast<double>(tp + fp));
        s.recall = safe_div(static_cast<double>(tp), static_cast<double>(tp + fn));
        s.f1 = safe_div(2.0 * s.precision * s.recall, s.precision + s.recall);
        if (support > 0) {
            ++supported;
            rep.macro_precision += s.precision;
            rep.macro_recall += s.recall;
            rep.macro_f1 += s.f1;
        }
        rep.per_class.push_back(s);
    }
    if (supported > 0) {
        rep.macro_precision /= static_cast<double>(supported);
        rep.macro_recall /= static_cast<double>(supported);
        rep.macro_f1 /= static_cast<double>(supported);
    }
    return rep;
}

ConfusionMatrix confusion_matrix(const std::vector<int>& y_true, const std::vector<int>& y_pred) {
    check_lengths(y_true, y_pred);
    std::set<int> uniq(y_true.begin(), y_true.end());
    uniq.insert(y_pred.begin(), y_pred.end());
    ConfusionMatrix cm;
    cm.labels.assign(uniq.begin(), uniq.end());
    cm.counts.assign(cm.labels.size(), std::vector<std::size_t>(cm.labels.size(), 0));
    auto idx = [&cm](int label) {
        return static_cast<std::size_t>(
            std::lower_bound(cm.labels.begin(), cm.labels.end(), label) - cm.labels.begin());
    };
    for (std::size_t i = 0; i < y_true.size(); ++i) ++cm.counts[idx(y_true[i])][idx(y_pred[i])];
    return cm;
}

double accuracy(const std::vector<int>& y_true, const std::vector<int>& y_pred) {
    check_lengths(y_true, y_pred);
    std::size_t correct = 0;
    for (std::size_t i = 0; i < y_true.size(); ++i)
        if (y_true[i] == y_pred[i]) ++correct;
    return static_cast<double>(correct) / static_cast<double>(y_true.size());
}

std::vector<double> per_class_f1(const std::vector<int>& y_true, const std::vector<int>& y_pred,
                                 const Frame& frame) {
    const auto rep = classification_report(y_true, y_pred);
    std::vector<double> out(static_cast<std::size_t>(frame.size()), 0.0);
    for (const auto& s : rep.per_class)
        if (frame.contains(s.label))
            out[static_cast<std::size_t>(frame.index_of(s.label))] = s.f1;
    return out;
}

}  // namespace ecet
