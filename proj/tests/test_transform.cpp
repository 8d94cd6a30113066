#include "doctest.h"

#include "ecet/transform.hpp"

using namespace ecet;

TEST_CASE("sensitivity factor") {
    CHECK(sensitivity_factor(1).k == doctest::Approx(0.9).epsilon(1e-12));
    CHECK(sensitivity_factor(4).k == doctest::Approx(0.9999).epsilon(1e-12));
    CHECK_THROWS_AS(sensitivity_factor(0), InvalidArgumentError);
}

TEST_CASE("label path hand cases") {
    const Frame f2 = Frame::dense(2);
    const auto k4 = sensitivity_factor(4);

    auto m = label_to_evidence(0, f2, {1.0, 1.0}, k4);
    CHECK(m.singleton[0] == doctest::Approx(0.9999).epsilon(1e-12));
    CHECK(m.singleton[1] == doctest::Approx(0.0001).epsilon(1e-9));
    CHECK(m.theta == doctest::Approx(0.0).scale(1).epsilon(1e-12));

    m = label_to_evidence(0, f2, {0.9, 0.8}, k4);
    CHECK(m.singleton[0] == doctest::Approx(0.89991).epsilon(1e-12));
    CHECK(m.singleton[1] == doctest::Approx(0.00008).epsilon(1e-9));
    CHECK(m.theta == doctest::Approx(0.10001).epsilon(1e-9));

    const Frame f3 = Frame::dense(3);
    m = label_to_evidence(1, f3, {1.0, 1.0, 1.0}, sensitivity_factor(1));
    CHECK(m.singleton[0] == doctest::Approx(0.05).epsilon(1e-12));
    CHECK(m.singleton[1] == doctest::Approx(0.9).epsilon(1e-12));
    CHECK(m.singleton[2] == doctest::Approx(0.05).epsilon(1e-12));
}

TEST_CASE("label path errors") {
    const Frame f = Frame::dense(2);
    CHECK_THROWS_AS(label_to_evidence(5, f, {1.0, 1.0}, sensitivity_factor(4)),
                    InvalidArgumentError);
    CHECK_THROWS_AS(label_to_evidence(0, f, {1.0}, sensitivity_factor(4)),
                    DimensionMismatchError);
    CHECK_THROWS_AS(label_to_evidence(0, f, {1.5, 1.0}, sensitivity_factor(4)),
                    InvalidArgumentError);
}

TEST_CASE("probability path hand cases") {
    auto m = proba_to_evidence({0.7, 0.3}, {0.9, 0.8});
    CHECK(m.singleton[0] == doctest::Approx(0.63).epsilon(1e-12));
    CHECK(m.singleton[1] == doctest::Approx(0.24).epsilon(1e-12));
    CHECK(m.theta == doctest::Approx(0.13).epsilon(1e-12));

    m = proba_to_evidence({1.0, 0.0}, {1.0, 1.0});
    CHECK(m.singleton[0] == doctest::Approx(1.0));
    CHECK(m.theta == doctest::Approx(0.0));

    m = proba_to_evidence({0.5, 0.5}, {0.0, 0.0});
    CHECK(m.theta == doctest::Approx(1.0));
}

TEST_CASE("probability path errors and drift") {
    CHECK_THROWS_AS(proba_to_evidence({0.7, 0.2}, {1.0, 1.0}), InvalidArgumentError);
    CHECK_THROWS_AS(proba_to_evidence({0.5, 0.5}, {1.0}), DimensionMismatchError);
    CHECK_THROWS_AS(proba_to_evidence({-0.1, 1.1}, {1.0, 1.0}), InvalidArgumentError);
    // softmax drift within 1e-6 is renormalized
    const auto m = proba_to_evidence({0.5, 0.5 + 5e-7}, {1.0, 1.0});
    CHECK(m.sum() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("lower weights never decrease theta") {
    const Frame f = Frame::dense(3);
    const auto k = sensitivity_factor(4);
    const auto hi = label_to_evidence(0, f, {0.9, 0.9, 0.9}, k);
    const auto lo = label_to_evidence(0, f, {0.9, 0.4, 0.9}, k);
    CHECK(lo.theta >= hi.theta);
    const auto ph = proba_to_evidence({0.6, 0.3, 0.1}, {0.9, 0.9, 0.9});
    const auto pl = proba_to_evidence({0.6, 0.3, 0.1}, {0.5, 0.9, 0.9});
    CHECK(pl.theta >= ph.theta);
}

TEST_CASE("one-hot probability keeps its argmax through the transform") {
    const Frame f = Frame::dense(3);
    const auto m = proba_to_evidence({0.0, 0.0, 1.0}, {0.3, 0.9, 0.2});
    CHECK(argmax_label(m, f) == 2);
}
