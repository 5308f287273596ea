// Serial reference vs OpenMP elimination over Z/N.
#include <benchmark/benchmark.h>

#include <random>

#include "gradalg/group.hpp"
#include "gradalg/modlinear.hpp"

using namespace gradalg;

namespace {

ModMatrix random_matrix(int rows, int cols, std::int64_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> d(0, n - 1);
  ModMatrix a(rows, cols, n);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) a.at(r, c) = d(rng);
  return a;
}

void BM_Kernel(benchmark::State& state, Exec exec) {
  const int size = static_cast<int>(state.range(0));
  const auto a = random_matrix(size, size, 64, 7);
  for (auto _ : state) benchmark::DoNotOptimize(kernel_mod(a, exec).rank);
  state.SetComplexityN(size);
}

// The normalized cocycle identity of a group of order n: (n-1)^3 rows in
// (n-1)^2 unknowns r(a, b), a, b != e.
ModMatrix cocycle_system(const FiniteGroup& g, std::int64_t modulus) {
  const int n = g.order(), k = n - 1;
  ModMatrix a(0, k * k, modulus);
  auto col = [&](Elem x, Elem y) { return (x - 1) * k + (y - 1); };
  std::vector<std::int64_t> row(static_cast<std::size_t>(k) * k);
  for (Elem x = 1; x < n; ++x)
    for (Elem y = 1; y < n; ++y)
      for (Elem z = 1; z < n; ++z) {
        std::fill(row.begin(), row.end(), 0);
        // r(y,z) - r(xy,z) + r(x,yz) - r(x,y)
        row[col(y, z)] += 1;
        if (g.mul(x, y) != 0) row[col(g.mul(x, y), z)] -= 1;
        if (g.mul(y, z) != 0) row[col(x, g.mul(y, z))] += 1;
        row[col(x, y)] -= 1;
        for (auto& v : row) v = mod_norm(v, modulus);
        a.append_row(row);
      }
  return a;
}

void BM_CocycleSystem(benchmark::State& state, Exec exec, const char* name) {
  const auto g = build_group(name);
  const auto a = cocycle_system(*g, g->order());
  for (auto _ : state) benchmark::DoNotOptimize(kernel_mod(a, exec).rank);
}

}  // namespace

BENCHMARK_CAPTURE(BM_Kernel, serial, Exec::serial)->RangeMultiplier(2)->Range(32, 256)->Complexity();
BENCHMARK_CAPTURE(BM_Kernel, parallel, Exec::parallel)->RangeMultiplier(2)->Range(32, 256)->Complexity();
BENCHMARK_CAPTURE(BM_CocycleSystem, serial_D4, Exec::serial, "D4")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_CocycleSystem, parallel_D4, Exec::parallel, "D4")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_CocycleSystem, serial_C2xC2xC4, Exec::serial, "C2xC2xC4")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_CocycleSystem, parallel_C2xC2xC4, Exec::parallel, "C2xC2xC4")->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
