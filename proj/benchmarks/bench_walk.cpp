#include <benchmark/benchmark.h>

#include "qwalk/asympt.hpp"
#include "qwalk/cavity.hpp"
#include "qwalk/walk.hpp"

namespace {

qwalk::WalkConfig config(int n) {
  qwalk::WalkConfig c;
  c.k = 2;
  c.n_steps = n;
  c.coin = qwalk::coin_state_from_angle(qwalk::kPi / 8);
  return c;
}

void BM_Evolve(benchmark::State& state) {
  const qwalk::WalkConfig cfg = config(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(qwalk::evolve(cfg));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Evolve)->RangeMultiplier(2)->Range(16, 128)->Unit(benchmark::kMillisecond)->Complexity();

void BM_PhaseDistribution(benchmark::State& state) {
  const qwalk::WalkConfig cfg = config(static_cast<int>(state.range(0)));
  const int grid = qwalk::default_grid_points(cfg);
  for (auto _ : state) benchmark::DoNotOptimize(qwalk::distribution_via_phase(cfg, grid));
}
BENCHMARK(BM_PhaseDistribution)->RangeMultiplier(2)->Range(16, 128)->Unit(benchmark::kMillisecond);

void BM_ApplyCavity(benchmark::State& state) {
  const qwalk::CavityModel model = qwalk::make_cavity(qwalk::CavityVariant::JCM, 5, 1.0, 0.3);
  const qwalk::CoinState coin = qwalk::coin_state_from_angle(0.4);
  for (auto _ : state) benchmark::DoNotOptimize(qwalk::apply_cavity(coin, model));
}
BENCHMARK(BM_ApplyCavity);

void BM_ChannelViaUnitary(benchmark::State& state) {
  const qwalk::CavityModel model =
      qwalk::make_cavity(qwalk::CavityVariant::JCM, static_cast<int>(state.range(0)), 1.0, 0.3);
  const qwalk::CoinState coin = qwalk::coin_state_from_angle(0.4);
  for (auto _ : state) benchmark::DoNotOptimize(qwalk::channel_via_unitary(coin, model));
}
BENCHMARK(BM_ChannelViaUnitary)->Arg(0)->Arg(6)->Arg(30);

void BM_KsDistance(benchmark::State& state) {
  const int n = 144;
  const qwalk::PositionDistribution d = qwalk::position_distribution(qwalk::evolve(config(n)));
  const qwalk::LimitLaw law(1.0);
  for (auto _ : state) benchmark::DoNotOptimize(qwalk::ks_distance(d, n, law));
}
BENCHMARK(BM_KsDistance);

}  // namespace

BENCHMARK_MAIN();
