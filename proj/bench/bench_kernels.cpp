// Serial reference kernels vs their OpenMP forms, plus the FFT route for the
// transform. Run with --benchmark_filter to pick a family.

#include "salemap/apcount.hpp"
#include "salemap/kernels.hpp"
#include "salemap/spectral.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace salemap;
namespace k = salemap::kernels;

namespace {

DiscreteSet random_set(Int n, double p, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution keep(p);
    std::vector<Int> e;
    for (Int x = 0; x < n; ++x)
        if (keep(rng)) e.push_back(x);
    return DiscreteSet(n, std::move(e));
}

std::vector<Complex> values_of(const DiscreteSet& s) {
    std::vector<Complex> v(static_cast<std::size_t>(s.ambient()));
    for (Int e : s.elements()) v[static_cast<std::size_t>(e)] = 1.0;
    return v;
}

void BM_dft_serial(benchmark::State& state) {
    const auto v = values_of(random_set(state.range(0), 0.3, 1));
    for (auto _ : state) benchmark::DoNotOptimize(k::serial::dft_direct(v));
}

void BM_dft_parallel(benchmark::State& state) {
    const auto v = values_of(random_set(state.range(0), 0.3, 1));
    for (auto _ : state) benchmark::DoNotOptimize(k::parallel::dft_direct(v));
}

void BM_dft_fftw(benchmark::State& state) {
    const auto v = values_of(random_set(state.range(0), 0.3, 1));
    for (auto _ : state) benchmark::DoNotOptimize(dft(v));
}

void BM_lambda3_serial(benchmark::State& state) {
    const auto v = values_of(random_set(state.range(0), 0.3, 2));
    for (auto _ : state) benchmark::DoNotOptimize(k::serial::lambda3_direct(v, v, v));
}

void BM_lambda3_parallel(benchmark::State& state) {
    const auto v = values_of(random_set(state.range(0), 0.3, 2));
    for (auto _ : state) benchmark::DoNotOptimize(k::parallel::lambda3_direct(v, v, v));
}

void BM_lambda3_spectral(benchmark::State& state) {
    const auto v = values_of(random_set(state.range(0), 0.3, 2));
    for (auto _ : state) benchmark::DoNotOptimize(lambda3(v, v, v, Method::spectral));
}

void BM_genuine_serial(benchmark::State& state) {
    const auto s = random_set(state.range(0), 0.3, 3);
    const auto mask = s.indicator();
    for (auto _ : state) benchmark::DoNotOptimize(k::serial::genuine_count(s.elements(), mask));
}

void BM_genuine_parallel(benchmark::State& state) {
    const auto s = random_set(state.range(0), 0.3, 3);
    const auto mask = s.indicator();
    for (auto _ : state) benchmark::DoNotOptimize(k::parallel::genuine_count(s.elements(), mask));
}

void BM_congruence_serial(benchmark::State& state) {
    const auto s = random_set(state.range(0), 0.3, 4);
    const auto mask = s.indicator();
    for (auto _ : state) benchmark::DoNotOptimize(k::serial::congruence_count(s.elements(), mask));
}

void BM_congruence_parallel(benchmark::State& state) {
    const auto s = random_set(state.range(0), 0.3, 4);
    const auto mask = s.indicator();
    for (auto _ : state) benchmark::DoNotOptimize(k::parallel::congruence_count(s.elements(), mask));
}

}  // namespace

BENCHMARK(BM_dft_serial)->Arg(1023)->Arg(4097);
BENCHMARK(BM_dft_parallel)->Arg(1023)->Arg(4097);
BENCHMARK(BM_dft_fftw)->Arg(1023)->Arg(4097);
BENCHMARK(BM_lambda3_serial)->Arg(1023)->Arg(4097);
BENCHMARK(BM_lambda3_parallel)->Arg(1023)->Arg(4097);
BENCHMARK(BM_lambda3_spectral)->Arg(1023)->Arg(4097);
BENCHMARK(BM_genuine_serial)->Arg(4097)->Arg(16385);
BENCHMARK(BM_genuine_parallel)->Arg(4097)->Arg(16385);
BENCHMARK(BM_congruence_serial)->Arg(4097)->Arg(16385);
BENCHMARK(BM_congruence_parallel)->Arg(4097)->Arg(16385);

BENCHMARK_MAIN();
