#include <benchmark/benchmark.h>

#include <cstdint>
#include <numeric>

#include "qphase/bostconnes.hpp"
#include "qphase/hilbert.hpp"
#include "qphase/numtheory.hpp"
#include "qphase/phaselock.hpp"
#include "qphase/spectral.hpp"

namespace {

void BM_MultOrder(benchmark::State& state)
{
    const auto q = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        std::uint64_t acc = 0;
        for (std::uint64_t a = 2; a < 200; ++a) {
            if (std::gcd(a, q) == 1) {
                acc += qphase::numtheory::mult_order(a, q);
            }
        }
        benchmark::DoNotOptimize(acc);
    }
}
BENCHMARK(BM_MultOrder)->Arg(9973)->Arg(999'983)->Arg(1'000'000);

void BM_KmsSurface(benchmark::State& state)
{
    const auto betas = qphase::bostconnes::uniform_grid(0.5, 1.5, 41);
    for (auto _ : state) {
        benchmark::DoNotOptimize(qphase::bostconnes::thermal_surface(static_cast<std::uint64_t>(state.range(0)), betas));
    }
}
BENCHMARK(BM_KmsSurface)->Arg(40)->Arg(400);

void BM_DirichletOracle(benchmark::State& state)
{
    const qphase::bostconnes::ReducedFraction f(1, 12);
    for (auto _ : state) {
        benchmark::DoNotOptimize(qphase::bostconnes::dirichlet_oracle(f, 2.0, static_cast<std::uint64_t>(state.range(0))));
    }
}
BENCHMARK(BM_DirichletOracle)->Arg(100'000)->Arg(1'000'000)->Unit(benchmark::kMillisecond);

void BM_Periodogram(benchmark::State& state)
{
    const auto series = qphase::spectral::normalized_cumsum(
        [](std::uint64_t n) { return static_cast<double>(qphase::numtheory::carmichael(n)); },
        static_cast<std::uint64_t>(state.range(0)), 1.90);
    for (auto _ : state) {
        benchmark::DoNotOptimize(qphase::spectral::periodogram(series));
    }
}
// 10000 exercises the non-radix-2 path
BENCHMARK(BM_Periodogram)->Arg(1 << 14)->Arg(1 << 16)->Arg(10'000);

void BM_CircleMap(benchmark::State& state)
{
    const auto n = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(qphase::phaselock::winding_number({0.37, 0.8, 0.0, n}));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
}
BENCHMARK(BM_CircleMap)->Arg(10'000)->Arg(100'000);

void BM_PhaseOperator(benchmark::State& state)
{
    for (auto _ : state) {
        benchmark::DoNotOptimize(qphase::hilbert::phase_operator(static_cast<std::uint64_t>(state.range(0))));
    }
}
BENCHMARK(BM_PhaseOperator)->Arg(16)->Arg(64);

} // namespace

BENCHMARK_MAIN();
