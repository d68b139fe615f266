#include <benchmark/benchmark.h>

#include <cstdint>

#include "zlab/arith.hpp"
#include "zlab/character.hpp"
#include "zlab/sift.hpp"
#include "zlab/survey.hpp"
#include "zlab/zimmert.hpp"

using namespace zlab;

namespace {

const FactorTable& table() {
    static const FactorTable t(1'000'000);
    return t;
}

void BM_Jacobi(benchmark::State& state) {
    std::int64_t a = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(jacobi(-a, 999'983));
        a = a % 999'983 + 1;
    }
}
BENCHMARK(BM_Jacobi);

void BM_FactorTable(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(FactorTable(static_cast<std::uint64_t>(state.range(0))).primes().size());
}
BENCHMARK(BM_FactorTable)->RangeMultiplier(10)->Range(10'000, 10'000'000)->Unit(benchmark::kMillisecond);

void BM_ZimmertSet(benchmark::State& state) {
    const std::int64_t d = -state.range(0);
    for (auto _ : state) benchmark::DoNotOptimize(zimmert_set(d, table()).size());
}
BENCHMARK(BM_ZimmertSet)->Arg(163)->Arg(99'991)->Arg(999'983);

void BM_CorollaryCheck(benchmark::State& state) {
    const std::int64_t d = -state.range(0);
    for (auto _ : state) benchmark::DoNotOptimize(corollary_check(d, table()).holds);
}
BENCHMARK(BM_CorollaryCheck)->Arg(163)->Arg(99'991)->Arg(999'983);

void BM_Decompose(benchmark::State& state) {
    const auto chi = make_character(-99'991, true);
    const auto z = zimmert_set(-99'991, table());
    const double x = static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(decompose(chi, x, z.prime_support, x / 4).sifted);
}
BENCHMARK(BM_Decompose)->Arg(100)->Arg(1000)->Arg(10000);

void BM_Survey(benchmark::State& state) {
    SurveyOptions opts;
    opts.table = &table();
    for (auto _ : state)
        benchmark::DoNotOptimize(run_survey({1000, 1'000'000, 50, DiscriminantFilter::kAll}, opts).size());
}
BENCHMARK(BM_Survey)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
