// Compares the OpenMP kernels against the serial reference implementations.
// With OMP_NUM_THREADS=1 the two paths should track each other; the parallel
// path wins once threads are available.

#include <benchmark/benchmark.h>

#include "polyagev/corpus.hpp"
#include "polyagev/kernels.hpp"

using namespace polyagev;

namespace {

NAnalyticPoly make_poly(int order, int degree) { return random_poly(order, degree, 42); }

void bm_sup_on_disk_omp(benchmark::State& state) {
  NAnalyticPoly p = make_poly(3, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    double v = sup_on_disk(p, Complex(0.0), 1.0, 32, 1024);
    benchmark::DoNotOptimize(v);
  }
}

void bm_sup_on_disk_ref(benchmark::State& state) {
  NAnalyticPoly p = make_poly(3, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    double v = ref::sup_on_disk(p, Complex(0.0), 1.0, 32, 1024);
    benchmark::DoNotOptimize(v);
  }
}

void bm_map_cells_omp(benchmark::State& state) {
  NAnalyticPoly p = make_poly(2, 64);
  int m = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto v = map_cells(m, 1.2, [&](int, int, Complex z) { return p.eval(z); });
    benchmark::DoNotOptimize(v.data());
  }
}

void bm_map_cells_ref(benchmark::State& state) {
  NAnalyticPoly p = make_poly(2, 64);
  int m = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto v = ref::map_cells(m, 1.2, [&](int, int, Complex z) { return p.eval(z); });
    benchmark::DoNotOptimize(v.data());
  }
}

}  // namespace

BENCHMARK(bm_sup_on_disk_omp)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_sup_on_disk_ref)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_map_cells_omp)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_map_cells_ref)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
