#include <benchmark/benchmark.h>

#include "qmpower/moments.hpp"
#include "qmpower/network.hpp"
#include "qmpower/oracle.hpp"
#include "qmpower/qfi.hpp"

using namespace qmpower;

static void BM_BuildTable(benchmark::State& st) {
  const auto sq = make_squeezed_vacuum(0.5, 0.0, static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(build_table(sq, 8));
}
BENCHMARK(BM_BuildTable)->Arg(60)->Arg(200)->Arg(800);

static void BM_SchemeQfi(benchmark::State& st) {
  const int m = static_cast<int>(st.range(0));
  const auto spec = st.range(1) == 2 ? GeneratorSpec::phase() : GeneratorSpec::kerr();
  const auto table = build_table(make_squeezed_vacuum(0.3, 0.0, 80), spec.p);
  const auto net = sample_random_network(m, Topology::serial, 100.0,
                                         uniform_weights(m), 1);
  for (auto _ : st) benchmark::DoNotOptimize(scheme_qfi_matrix(table, net, spec));
}
BENCHMARK(BM_SchemeQfi)->Args({2, 2})->Args({8, 2})->Args({2, 4})->Args({8, 4});

static void BM_OracleTwoModes(benchmark::State& st) {
  const auto sq = make_squeezed_vacuum(0.3, 0.0, 30);
  const auto net = sample_random_network(2, Topology::parallel, 1.0,
                                         uniform_weights(2), 3);
  const int d = choose_per_mode_dim(sq, net, 2);
  for (auto _ : st) {
    const auto multi = simulate_scheme(sq, net, d, 2);
    benchmark::DoNotOptimize(brute_qfi_matrix(multi, GeneratorSpec::phase()));
  }
  st.counters["per_mode_dim"] = d;
}
BENCHMARK(BM_OracleTwoModes)->Unit(benchmark::kMillisecond);

static void BM_OptimizeZ(benchmark::State& st) {
  const int m = static_cast<int>(st.range(0));
  const auto net = sample_random_network(m, Topology::serial, 1.0,
                                         uniform_weights(m), 7);
  for (auto _ : st) benchmark::DoNotOptimize(numeric_optimize_z(net));
}
BENCHMARK(BM_OptimizeZ)->Arg(2)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
