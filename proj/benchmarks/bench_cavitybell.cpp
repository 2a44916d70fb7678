// Copyright 2026 The cavitybell Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "cavitybell/bell_analysis.hpp"
#include "cavitybell/cavity_models.hpp"
#include "cavitybell/montecarlo.hpp"
#include "cavitybell/protocols.hpp"
#include "cavitybell/trajectory.hpp"

using namespace cavitybell;

namespace {

TwoLevelParams drive(double om) {
  TwoLevelParams p;
  p.gamma = 1e-2;
  p.omega1 = om;
  p.omega2 = -om;
  return p;
}

}  // namespace

static void BM_PrepareTwoLevel(benchmark::State& state) {
  const TwoLevelParams p = drive(1e-3 * static_cast<double>(state.range(0)));
  const PulseSpec pulse = PulseSpec::of_duration(std::numbers::pi / std::abs(p.omega_minus()));
  for (auto _ : state) benchmark::DoNotOptimize(prepare_two_level(p, pulse));
}
BENCHMARK(BM_PrepareTwoLevel)->Arg(1)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

// ~1e10 RK4 steps folded by powering
static void BM_PrepareFourLevel(benchmark::State& state) {
  FourLevelParams p;
  for (auto _ : state) benchmark::DoNotOptimize(prepare_four_level(p));
}
BENCHMARK(BM_PrepareFourLevel)->Unit(benchmark::kMillisecond);

static void BM_Trajectory(benchmark::State& state) {
  const TwoLevelParams p = drive(0.1);
  const HilbertDims d = two_atom_dims(2, 2);
  const TrajectorySimulator sim(h_cond_two_level(p, d) + h_laser_two_level(p, d), jump_channels_two_level(p, d),
                                std::numbers::pi / std::abs(p.omega_minus()));
  std::uint64_t run = 0;
  for (auto _ : state) {
    RandomStream rng(7, run++, stage_tag("bench"));
    benchmark::DoNotOptimize(sim.run(ground_state(d), rng));
  }
}
BENCHMARK(BM_Trajectory)->Unit(benchmark::kMicrosecond);

static void BM_EstimateCorrelation(benchmark::State& state) {
  const PreparedSource src = source_from_alpha({0.0, -1.0});
  const auto jobs = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(estimate_correlation(src, std::numbers::pi / 4.0, 100000, 1, FailurePolicy::discard, jobs));
  state.SetItemsProcessed(state.iterations() * 100000);
}
BENCHMARK(BM_EstimateCorrelation)->Arg(1)->Arg(4)->UseRealTime()->Unit(benchmark::kMillisecond);

static void BM_BellSurface(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(bell_surface());
}
BENCHMARK(BM_BellSurface)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
