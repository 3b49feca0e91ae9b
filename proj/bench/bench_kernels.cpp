// Serial reference kernels against their OpenMP counterparts.
// OMP_NUM_THREADS controls the parallel side; results are identical by construction.

#include <benchmark/benchmark.h>

#include "regcert/oracle.hpp"
#include "regcert/polynomial.hpp"
#include "regcert/units.hpp"

using namespace regcert;

namespace {

oracle::Request oracle_request(oracle::Target t, std::int64_t samples)
{
    oracle::Request r;
    r.target = t;
    r.samples = static_cast<std::uint64_t>(samples);
    return r;
}

template <bool Parallel>
void bm_oracle(benchmark::State& state, oracle::Target target)
{
    const auto req = oracle_request(target, state.range(0));
    const auto obj = oracle::make_objective(req);
    for (auto _ : state) {
        const auto res = Parallel ? oracle::maximize_parallel(obj, req) : oracle::maximize_serial(obj, req);
        benchmark::DoNotOptimize(res.best);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void bm_units(benchmark::State& state)
{
    const auto f = parse_poly("x^7-3x^5-x^4+x^3+3x^2+x-1");
    const int h = static_cast<int>(state.range(0));
    EnumerationStats stats;
    for (auto _ : state) {
        const auto u = Parallel ? enumerate_units(f, h, &stats) : enumerate_units_serial(f, h, &stats);
        benchmark::DoNotOptimize(u.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(stats.candidates));
}

void bm_oracle_serial(benchmark::State& s, oracle::Target t) { bm_oracle<false>(s, t); }
void bm_oracle_parallel(benchmark::State& s, oracle::Target t) { bm_oracle<true>(s, t); }

} // namespace

BENCHMARK_CAPTURE(bm_oracle_serial, p7, oracle::Target::p7)->Arg(20000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_oracle_parallel, p7, oracle::Target::p7)->Arg(20000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_oracle_serial, p7_global, oracle::Target::p7_global)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_oracle_parallel, p7_global, oracle::Target::p7_global)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_units<false>)->Name("enumerate_units/serial")->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_units<true>)->Name("enumerate_units/parallel")->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
