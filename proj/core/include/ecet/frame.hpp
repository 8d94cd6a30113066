#pragma once

#include <algorithm>
#include <vector>

#include "ecet/errors.hpp"

namespace ecet {

// Label code reserved for the anomaly bucket in an extended frame.
inline constexpr int kAnomalyLabel = -1;

// Frame of discernment: an ordered set of mutually exclusive class labels.
struct Frame {
    std::vector<int> labels;

    Frame() = default;
    explicit Frame(std::vector<int> l) : labels(std::move(l)) {
        if (labels.size() < 2) throw InvalidArgumentError("frame needs at least 2 labels");
        for (std::size_t i = 0; i < labels.size(); ++i)
            for (std::size_t j = i + 1; j < labels.size(); ++j)
                if (labels[i] == labels[j]) throw InvalidArgumentError("frame labels must be unique");
    }

    // Dense frame 0..n-1.
    static Frame dense(int n) {
        std::vector<int> l(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) l[static_cast<std::size_t>(i)] = i;
        return Frame(std::move(l));
    }

    int size() const { return static_cast<int>(labels.size()); }

    bool contains(int label) const {
        return std::find(labels.begin(), labels.end(), label) != labels.end();
    }

    int index_of(int label) const {
        auto it = std::find(labels.begin(), labels.end(), label);
        if (it == labels.end()) throw InvalidArgumentError("label not in frame");
        return static_cast<int>(it - labels.begin());
    }
};

// Frame grown by the single anomaly bucket. Idempotent.
inline Frame extend_frame(const Frame& frame) {
    if (frame.contains(kAnomalyLabel)) return frame;
    Frame out = frame;
    out.labels.push_back(kAnomalyLabel);
    return out;
}

}  // namespace ecet
