#include <random>

#include "doctest.h"

#include "ecet/mass.hpp"
#include "support/powerset_oracle.hpp"

using namespace ecet;

namespace {

MassVector random_mass(int n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> v(static_cast<std::size_t>(n) + 1);
    double s = 0.0;
    for (double& x : v) {
        x = u(rng);
        s += x;
    }
    for (double& x : v) x /= s;
    const double theta = v.back();
    v.pop_back();
    return make_mass(std::move(v), theta);
}

void check_close(const MassVector& a, const MassVector& b, double tol) {
    REQUIRE(a.size() == b.size());
    for (int i = 0; i < a.size(); ++i)
        CHECK(a.singleton[static_cast<std::size_t>(i)] ==
              doctest::Approx(b.singleton[static_cast<std::size_t>(i)]).epsilon(0).scale(1).epsilon(tol));
    CHECK(a.theta == doctest::Approx(b.theta).scale(1).epsilon(tol));
}

}  // namespace

TEST_CASE("construction validates and renormalizes") {
    CHECK_THROWS_AS(make_mass({}, 1.0), InvalidMassError);
    CHECK_THROWS_AS(make_mass({-0.1, 1.1}, 0.0), InvalidMassError);
    CHECK_THROWS_AS(make_mass({0.5, 0.1}, 0.0), InvalidMassError);  // sum 0.6
    const auto m = make_mass({0.5, 0.5 + 5e-7}, 0.0);               // drift renormalized
    CHECK(m.sum() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(vacuous(3).theta == 1.0);
    CHECK(vacuous(Frame::dense(4)).size() == 4);
}

TEST_CASE("worked pair matches hand numbers under both rules") {
    const auto m1 = make_mass({0.6, 0.3}, 0.1);
    const auto m2 = make_mass({0.5, 0.4}, 0.1);

    // num0 = 0.30 + 0.06 + 0.05, num1 = 0.12 + 0.03 + 0.04, theta = 0.01
    // conflict = 0.9*0.9 - (0.30 + 0.12) = 0.39
    const auto d = combine_dempster(m1, m2);
    CHECK(d.conflict == doctest::Approx(0.39).epsilon(1e-12));
    CHECK(d.fused.singleton[0] == doctest::Approx(0.41 / 0.61).epsilon(1e-12));
    CHECK(d.fused.singleton[1] == doctest::Approx(0.19 / 0.61).epsilon(1e-12));
    CHECK(d.fused.theta == doctest::Approx(0.01 / 0.61).epsilon(1e-12));

    const auto y = combine_yager(m1, m2);
    CHECK(y.conflict == doctest::Approx(0.39).epsilon(1e-12));
    CHECK(y.fused.singleton[0] == doctest::Approx(0.41).epsilon(1e-12));
    CHECK(y.fused.singleton[1] == doctest::Approx(0.19).epsilon(1e-12));
    CHECK(y.fused.theta == doctest::Approx(0.01 + 0.39).epsilon(1e-12));
}

TEST_CASE("oracle equivalence on random pairs") {
    std::mt19937_64 rng(20240817);
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 2 + trial % 5;
        const auto m1 = random_mass(n, rng);
        const auto m2 = random_mass(n, rng);
        const auto o1 = oracle::from_mass(m1);
        const auto o2 = oracle::from_mass(m2);

        const auto od = oracle::dempster(o1, o2);
        const auto d = combine_dempster(m1, m2);
        CHECK(d.conflict == doctest::Approx(od.conflict).scale(1).epsilon(1e-12));
        check_close(d.fused, oracle::to_mass(od.fused, n), 1e-12);

        const auto oy = oracle::yager(o1, o2);
        const auto y = combine_yager(m1, m2);
        CHECK(y.conflict == doctest::Approx(oy.conflict).scale(1).epsilon(1e-12));
        check_close(y.fused, oracle::to_mass(oy.fused, n), 1e-12);
    }
}

TEST_CASE("algebraic properties") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 500; ++trial) {
        const int n = 2 + trial % 4;
        const auto a = random_mass(n, rng);
        const auto b = random_mass(n, rng);
        const auto c = random_mass(n, rng);

        // commutativity
        check_close(combine_dempster(a, b).fused, combine_dempster(b, a).fused, 1e-9);
        check_close(combine_yager(a, b).fused, combine_yager(b, a).fused, 1e-9);

        // Dempster associativity
        const auto left = combine_dempster(combine_dempster(a, b).fused, c).fused;
        const auto right = combine_dempster(a, combine_dempster(b, c).fused).fused;
        check_close(left, right, 1e-9);

        // vacuous identity and normalization
        const auto v = vacuous(n);
        check_close(combine_dempster(a, v).fused, a, 1e-9);
        check_close(combine_yager(a, v).fused, a, 1e-9);
        CHECK(combine_dempster(a, b).fused.sum() == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(combine_yager(a, b).fused.sum() == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("total conflict raises for Dempster, not Yager") {
    const auto a = make_mass({1.0, 0.0}, 0.0);
    const auto b = make_mass({0.0, 1.0}, 0.0);
    CHECK_THROWS_AS(combine_dempster(a, b), TotalConflictError);
    const auto y = combine_yager(a, b);
    CHECK(y.conflict == doctest::Approx(1.0));
    CHECK(y.fused.theta == doctest::Approx(1.0));
}

TEST_CASE("frame mismatch and empty sequence") {
    const auto a = make_mass({1.0, 0.0}, 0.0);
    const auto b = make_mass({0.0, 0.0, 1.0}, 0.0);
    CHECK_THROWS_AS(combine_dempster(a, b), FrameMismatchError);
    CHECK_THROWS_AS(combine_yager(a, b), FrameMismatchError);
    CHECK_THROWS_AS(combine_many({}, Rule::Dempster), EmptySequenceError);
}

TEST_CASE("combine_many folds left with per-step trace") {
    const auto m1 = make_mass({0.6, 0.3}, 0.1);
    const auto m2 = make_mass({0.5, 0.4}, 0.1);
    const auto single = combine_many({m1}, Rule::Dempster);
    CHECK(single.conflict == 0.0);
    check_close(single.fused, m1, 1e-15);

    std::vector<double> steps;
    const auto triple = combine_many({m1, m2, vacuous(2)}, Rule::Dempster, &steps);
    REQUIRE(steps.size() == 2);
    CHECK(steps[0] == doctest::Approx(0.39).epsilon(1e-12));
    CHECK(steps[1] == doctest::Approx(0.0).scale(1).epsilon(1e-12));
    CHECK(triple.conflict == doctest::Approx(steps.back()).scale(1));
}

TEST_CASE("argmax ignores theta and breaks ties low") {
    const auto m = make_mass({0.2, 0.2, 0.1}, 0.5);
    CHECK(argmax_index(m) == 0);
    const Frame f({7, 3, 9});
    CHECK(argmax_label(m, f) == 7);
    CHECK_THROWS_AS(argmax_label(m, Frame::dense(2)), FrameMismatchError);
}
