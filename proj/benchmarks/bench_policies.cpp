#include <benchmark/benchmark.h>

#include "risplit/channel.hpp"
#include "risplit/energy.hpp"
#include "risplit/policies.hpp"

using namespace risplit;

namespace {

// One representative mmWave scenario, sized by the benchmark argument.
struct Fixture {
  RisGeometry geom;
  Placement placement;
  FadingParams fading{0.0, 0.3};
  HarvesterModel harvester{120.0, 1e-3, 20e-3, 0.5};
  ChannelRealization channels;
  ProblemSpec spec;

  explicit Fixture(int cells) {
    const double f = 28e9;
    const double lam = 299792458.0 / f;
    geom = RisGeometry::make(cells, 1, lam / 2, lam / 2, f);
    placement.d_t = 17.0;
    placement.d_r = 20.0;
    placement.theta_inc = 0.7853981633974483;  // 45 deg
    placement.theta_dep = 1.0471975511965976;  // 60 deg
    placement.g_t = 1e4;
    placement.g_r = 158.48931924611142;
    channels = draw_channels(geom, placement, fading, 7);
    spec.kind = ProblemKind::A;
    spec.p_ris = 1e-5 * cells;  // per-cell draw scaled with the surface
    spec.gamma_0 = 100.0;
    spec.p_t = 1.0;
    spec.sigma_sq = 4.0038821e-11;
  }
};

void BM_BruteForceA(benchmark::State& state) {
  Fixture fx(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto out = brute_force_a(fx.channels, fx.spec, fx.harvester);
    benchmark::DoNotOptimize(out);
  }
}
BENCHMARK(BM_BruteForceA)->Arg(10)->Arg(15)->Arg(20)->Unit(
    benchmark::kMillisecond);

void BM_BruteForceB(benchmark::State& state) {
  Fixture fx(static_cast<int>(state.range(0)));
  fx.spec.kind = ProblemKind::B;
  for (auto _ : state) {
    auto out = brute_force_b(fx.channels, fx.spec, fx.harvester);
    benchmark::DoNotOptimize(out);
  }
}
BENCHMARK(BM_BruteForceB)->Arg(10)->Arg(15)->Arg(20)->Unit(
    benchmark::kMillisecond);

void BM_GreedySolve(benchmark::State& state) {
  Fixture fx(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto out = solve_problem_a(PolicyId::A1, fx.channels, fx.spec,
                               fx.harvester);
    benchmark::DoNotOptimize(out);
  }
}
BENCHMARK(BM_GreedySolve)->Arg(10)->Arg(100)->Arg(400);

void BM_DrawChannels(benchmark::State& state) {
  Fixture fx(static_cast<int>(state.range(0)));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    auto ch = draw_channels(fx.geom, fx.placement, fx.fading, seed++);
    benchmark::DoNotOptimize(ch);
  }
}
BENCHMARK(BM_DrawChannels)->Arg(10)->Arg(100)->Arg(400);

}  // namespace

BENCHMARK_MAIN();
