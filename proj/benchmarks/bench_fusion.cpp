#include <random>

#include <benchmark/benchmark.h>

#include "ecet/ensemble.hpp"

namespace {

std::vector<ecet::MassVector> random_masses(int n, std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<ecet::MassVector> out;
    for (std::size_t i = 0; i < count; ++i) {
        std::vector<double> v(static_cast<std::size_t>(n) + 1);
        double s = 0.0;
        for (double& x : v) {
            x = u(rng);
            s += x;
        }
        for (double& x : v) x /= s;
        const double theta = v.back();
        v.pop_back();
        out.push_back(ecet::make_mass(std::move(v), theta));
    }
    return out;
}

void BM_CombineDempster(benchmark::State& state) {
    const auto masses = random_masses(static_cast<int>(state.range(0)), 2, 42);
    for (auto _ : state) benchmark::DoNotOptimize(ecet::combine_dempster(masses[0], masses[1]));
}
BENCHMARK(BM_CombineDempster)->Arg(3)->Arg(10)->Arg(50);

void BM_CombineYager(benchmark::State& state) {
    const auto masses = random_masses(static_cast<int>(state.range(0)), 2, 42);
    for (auto _ : state) benchmark::DoNotOptimize(ecet::combine_yager(masses[0], masses[1]));
}
BENCHMARK(BM_CombineYager)->Arg(3)->Arg(10)->Arg(50);

void BM_CombineMany(benchmark::State& state) {
    const auto masses = random_masses(5, static_cast<std::size_t>(state.range(0)), 7);
    for (auto _ : state)
        benchmark::DoNotOptimize(ecet::combine_many(masses, ecet::Rule::Dempster));
}
BENCHMARK(BM_CombineMany)->Arg(5)->Arg(20)->Arg(100);

void BM_EnsemblePredict(benchmark::State& state) {
    const auto train = ecet::make_blobs(5, 100, 2, 10.0, 11);
    const auto valid = ecet::make_blobs(5, 40, 2, 10.0, 12);
    const auto pool =
        ecet::train_pool(ecet::default_pool_specs(static_cast<int>(state.range(0))), train, valid, 3);
    const auto model =
        ecet::make_ensemble(pool, train.frame(), ecet::sensitivity_factor(4));
    const std::vector<double> x{0.5, -0.5};
    for (auto _ : state) benchmark::DoNotOptimize(ecet::ensemble_predict(model, x));
}
BENCHMARK(BM_EnsemblePredict)->Arg(3)->Arg(5);

}  // namespace

BENCHMARK_MAIN();
