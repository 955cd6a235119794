#include <benchmark/benchmark.h>

#include "rittkit/kernels.hpp"
#include "rittkit/parse.hpp"

using namespace rittkit;

namespace {

void modp(benchmark::State& state, kernels::Exec exec) {
    const Poly F1 = parse_poly("x^2 + 3/7"), F2 = parse_poly("2x^3 - x + 1");
    const BivarCurve C = parse_curve("y^2 - x^3 - x");
    const Point alpha{Scalar(Field(), mpq_class(1, 3)), Scalar(Field(), mpq_class(2))};
    const auto primes = kernels::odd_primes(3, static_cast<std::uint64_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(kernels::modp_return_sets(F1, F2, alpha, C, primes, 2000, exec));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(primes.size()));
}

void preperiodic(benchmark::State& state, kernels::Exec exec) {
    const Poly f = parse_poly("x^2 - 3/4");
    std::vector<Scalar> starts;
    for (long a = -state.range(0); a <= state.range(0); ++a)
        for (long b = 1; b <= 6; ++b) starts.push_back(Scalar(Field(), mpq_class(a, b)));
    for (auto _ : state) benchmark::DoNotOptimize(kernels::preperiodic_scan(f, starts, 40, 4096, exec));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(starts.size()));
}

}  // namespace

BENCHMARK_CAPTURE(modp, serial, kernels::Exec::Serial)->Arg(2000)->Arg(20000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(modp, openmp, kernels::Exec::Parallel)->Arg(2000)->Arg(20000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(preperiodic, serial, kernels::Exec::Serial)->Arg(20)->Arg(80)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(preperiodic, openmp, kernels::Exec::Parallel)->Arg(20)->Arg(80)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
