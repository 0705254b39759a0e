#include <benchmark/benchmark.h>

#include "curvehall/curve.hpp"
#include "curvehall/flatpoly.hpp"
#include "curvehall/shuffle.hpp"

using namespace curvehall;

namespace {

ZPoly bench_payload(RingPtr ring, int rank) {
  // Dense-ish staircase monomial, the usual shape entering the kernels.
  ZExp e = zero_zexp();
  for (int i = 0; i < rank; ++i) e[i] = static_cast<int16_t>(rank - i);
  ZPoly p = ZPoly::monomial(ring, rank, e, Scalar(ring, 1));
  ZExp f = zero_zexp();
  for (int i = 0; i < rank; ++i) f[i] = static_cast<int16_t>(i % 2);
  p.add_term(f, Scalar(ring, 2));
  return p;
}

void bm_psi_packed_serial(benchmark::State& state) {
  auto ring = Ring::curve(2);
  Kernel k = g_kernel(ring);
  ZPoly p = bench_payload(ring, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(psi(p, k, false));
}

void bm_psi_packed_parallel(benchmark::State& state) {
  auto ring = Ring::curve(2);
  Kernel k = g_kernel(ring);
  ZPoly p = bench_payload(ring, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(psi(p, k, true));
}

void bm_psi_reference(benchmark::State& state) {
  auto ring = Ring::curve(2);
  Kernel k = g_kernel(ring);
  ZPoly p = bench_payload(ring, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(psi_reference(p, k));
}

}  // namespace

BENCHMARK(bm_psi_packed_serial)->Arg(3)->Arg(4);
BENCHMARK(bm_psi_packed_parallel)->Arg(3)->Arg(4);
BENCHMARK(bm_psi_reference)->Arg(3);

BENCHMARK_MAIN();
