#include "deakit/lp.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

/// Dense random packing LP: max c.x s.t. Ax <= b, x >= 0.
deakit::LinearProgram packing(int rows, int cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.1, 1.0);
  deakit::LinearProgram lp(deakit::Direction::maximize, 0);
  for (int j = 0; j < cols; ++j) lp.add_var("x" + std::to_string(j), u(rng));
  for (int i = 0; i < rows; ++i) {
    Eigen::VectorXd a(cols);
    for (int j = 0; j < cols; ++j) a(j) = u(rng);
    lp.add_row(a, deakit::Sense::le, 1.0 + u(rng));
  }
  return lp;
}

void BM_SimplexPacking(benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  const auto lp = packing(n, n, 42);
  for (auto _ : state) benchmark::DoNotOptimize(deakit::solve(lp).objective);
  state.SetComplexityN(n);
}
BENCHMARK(BM_SimplexPacking)->RangeMultiplier(2)->Range(8, 128)->Complexity();

}  // namespace
