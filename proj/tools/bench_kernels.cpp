// Compares the OpenMP matrix kernels against their serial reference
// implementations on deterministic inputs large enough to cross the
// parallel-dispatch thresholds.
#include <benchmark/benchmark.h>

#include <cstdint>

#include "tbi/matrix.hpp"

using tbi::IntegerMatrix;

namespace {

// Deterministic small-entry matrix; a linear congruential walk keeps runs
// comparable without pulling in a seeded RNG.
IntegerMatrix dense_matrix(std::size_t n, std::uint64_t seed) {
    IntegerMatrix m(n, n);
    std::uint64_t state = seed * 6364136223846793005ULL + 1442695040888963407ULL;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            state = state * 6364136223846793005ULL + 1442695040888963407ULL;
            m(i, j) = static_cast<long>((state >> 33) % 7) - 3;
        }
    return m;
}

void bm_multiply_serial(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const IntegerMatrix a = dense_matrix(n, 1), b = dense_matrix(n, 2);
    for (auto _ : state) benchmark::DoNotOptimize(tbi::serial::multiply(a, b));
}

void bm_multiply_openmp(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const IntegerMatrix a = dense_matrix(n, 1), b = dense_matrix(n, 2);
    for (auto _ : state) benchmark::DoNotOptimize(a * b);
}

void bm_kron_serial(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const IntegerMatrix a = dense_matrix(n, 3), b = dense_matrix(n, 4);
    for (auto _ : state) benchmark::DoNotOptimize(tbi::serial::kron_tensor(a, b));
}

void bm_kron_openmp(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const IntegerMatrix a = dense_matrix(n, 3), b = dense_matrix(n, 4);
    for (auto _ : state) benchmark::DoNotOptimize(tbi::kron_tensor(a, b));
}

void bm_exterior_serial(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const IntegerMatrix a = dense_matrix(n, 5);
    const auto r = static_cast<std::size_t>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(tbi::serial::exterior_power_matrix(a, r));
}

void bm_exterior_openmp(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const IntegerMatrix a = dense_matrix(n, 5);
    const auto r = static_cast<std::size_t>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(tbi::exterior_power_matrix(a, r));
}

}  // namespace

BENCHMARK(bm_multiply_serial)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_multiply_openmp)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_kron_serial)->Arg(16)->Arg(24)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_kron_openmp)->Arg(16)->Arg(24)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_exterior_serial)->Args({10, 3})->Args({12, 4})->Unit(benchmark::kMillisecond);
BENCHMARK(bm_exterior_openmp)->Args({10, 3})->Args({12, 4})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
