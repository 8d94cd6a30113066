#pragma once

#include <map>
#include <vector>

#include "ecet/frame.hpp"

namespace ecet {

// Per-class precision/recall/F1. 0/0 counts as 0 everywhere. Label -1
// participates as a class of its own when present in either vector.
struct ClassScore {
    int label = 0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    std::size_t support = 0;  // true occurrences
};

struct ClassificationReport {
    std::vector<ClassScore> per_class;  // sorted by label
    double accuracy = 0.0;
    double macro_precision = 0.0;  // averaged over classes with support
    double macro_recall = 0.0;
    double macro_f1 = 0.0;

    const ClassScore& for_label(int label) const;
};

ClassificationReport classification_report(const std::vector<int>& y_true,
                                           const std::vector<int>& y_pred);

// Row = true label, column = predicted label; `labels` gives the shared
// ordering of both axes (sorted union of the two vectors).
struct ConfusionMatrix {
    std::vector<int> labels;
    std::vector<std::vector<std::size_t>> counts;
};

ConfusionMatrix confusion_matrix(const std::vector<int>& y_true, const std::vector<int>& y_pred);

double accuracy(const std::vector<int>& y_true, const std::vector<int>& y_pred);

// F1 for each frame label in frame order (0 for labels never seen).
std::vector<double> per_class_f1(const std::vector<int>& y_true, const std::vector<int>& y_pred,
                                 const Frame& frame);

}  // namespace ecet
