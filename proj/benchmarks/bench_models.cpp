#include "deakit/deakit.hpp"
#include "support/fixtures.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace deakit;

DeaData instance(int n) {
  std::mt19937_64 rng(7);
  return testing::random_instance(rng, n, 3, 2);
}

void BM_BasicVrs(benchmark::State& state) {
  const auto d = instance(static_cast<int>(state.range(0)));
  BasicOptions o;
  o.rts = RtsSpec::vrs();
  for (auto _ : state) benchmark::DoNotOptimize(model_basic(d, o).dmus.size());
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BasicVrs)->Arg(25)->Arg(50)->Arg(100)->Arg(200);

void BM_Multiplier(benchmark::State& state) {
  const auto d = instance(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(model_multiplier(d).dmus.size());
}
BENCHMARK(BM_Multiplier)->Arg(25)->Arg(100);

void BM_Sbm(benchmark::State& state) {
  const auto d = instance(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(model_sbmeff(d).dmus.size());
}
BENCHMARK(BM_Sbm)->Arg(25)->Arg(100);

void BM_MaximalFriends(benchmark::State& state) {
  const auto d = instance(static_cast<int>(state.range(0)));
  FrontierOptions o;
  o.rts = RtsSpec::vrs();
  for (auto _ : state) benchmark::DoNotOptimize(maximal_friends(d, o).size());
}
BENCHMARK(BM_MaximalFriends)->Arg(10)->Arg(20);

void BM_CrossEfficiency(benchmark::State& state) {
  const auto d = instance(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(cross_efficiency(d).efficiency.size());
}
BENCHMARK(BM_CrossEfficiency)->Arg(25);

void BM_MetaFrontier(benchmark::State& state) {
  const auto d = testing::meta();
  const auto g = parse_grouping(testing::meta_groups(), d.n_dmus());
  BasicOptions o;
  o.rts = RtsSpec::vrs();
  for (auto _ : state) benchmark::DoNotOptimize(metafrontier(d, g, o).nonconcave.size());
}
BENCHMARK(BM_MetaFrontier);

void BM_Bootstrap(benchmark::State& state) {
  const auto d = testing::meta();
  BootstrapOptions o;
  o.rts = RtsSpec::vrs();
  o.B = 100;
  o.threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(bootstrap_basic(d, o).score_bc.size());
}
BENCHMARK(BM_Bootstrap)->Arg(1)->Arg(4)->UseRealTime();

}  // namespace
