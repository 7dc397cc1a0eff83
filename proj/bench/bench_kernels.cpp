#include "ccd/kernels.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

Eigen::MatrixXd random_samples(int rows, int cols) {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> g;
    Eigen::MatrixXd m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = g(rng);
    return m;
}

void BM_CorrelationSerial(benchmark::State& state) {
    auto x = random_samples(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
    for (auto _ : state) benchmark::DoNotOptimize(ccd::correlation_matrix_serial(x));
}

void BM_CorrelationParallel(benchmark::State& state) {
    auto x = random_samples(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
    for (auto _ : state) benchmark::DoNotOptimize(ccd::correlation_matrix_parallel(x));
}

}  // namespace

BENCHMARK(BM_CorrelationSerial)->Args({1000, 15})->Args({10000, 50})->Args({10000, 200});
BENCHMARK(BM_CorrelationParallel)->Args({1000, 15})->Args({10000, 50})->Args({10000, 200});

BENCHMARK_MAIN();
