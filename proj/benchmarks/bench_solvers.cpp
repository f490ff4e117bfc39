// Copyright 2026 The noma-ee Authors
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

#include <vector>

#include "noma_ee/experiments.hpp"

namespace {

using namespace noma_ee;

// Feasible default-settings instances, drawn once.
const std::vector<OutageCoefficients>& instances() {
  static const std::vector<OutageCoefficients> pool = [] {
    const RunConfig config;
    std::vector<OutageCoefficients> out;
    for (std::uint64_t seed = 1; out.size() < 16; ++seed) {
      Rng rng(seed);
      const Scenario s = generate_scenario(config.scenario, rng);
      OutageCoefficients c = compute_coefficients(s.rsus[0], config.scenario);
      if (qos_power_floor(c, config.scenario.r_min_bps_per_hz,
                          config.scenario.rsu_power_low_w(),
                          config.scenario.rsu_power_high_w())) {
        out.push_back(std::move(c));
      }
    }
    return out;
  }();
  return pool;
}

void BM_GabsDinkelbach(benchmark::State& state) {
  const RunConfig config;
  const auto& pool = instances();
  std::size_t i = 0;
  for (auto _ : state) {
    RsuOutcome r = solve_rsu(pool[i++ % pool.size()], config, Solver::gabs_dinkelbach);
    benchmark::DoNotOptimize(r.ee);
  }
}
BENCHMARK(BM_GabsDinkelbach)->Unit(benchmark::kMicrosecond);

void BM_GabsExhaustive(benchmark::State& state) {
  RunConfig config;
  config.solver.grid_resolution = static_cast<int>(state.range(0));
  const auto& pool = instances();
  std::size_t i = 0;
  for (auto _ : state) {
    RsuOutcome r = solve_rsu(pool[i++ % pool.size()], config, Solver::gabs_exhaustive);
    benchmark::DoNotOptimize(r.ee);
  }
}
BENCHMARK(BM_GabsExhaustive)->Arg(50)->Arg(100)->Arg(200)->Unit(benchmark::kMicrosecond);

void BM_ExhaustiveFullGrid(benchmark::State& state) {
  // No QoS pruning: every simplex point is scored.
  const RunConfig config;
  const EeParams params = ee_params(config.scenario);
  const auto& c = instances().front();
  const GridSpec grid{static_cast<int>(state.range(0)), 1e-12};
  for (auto _ : state) {
    BaselineResult r = exhaustive_search(c, 0.5, params, 0.0, grid);
    benchmark::DoNotOptimize(r.ee);
  }
}
BENCHMARK(BM_ExhaustiveFullGrid)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_Quantile(benchmark::State& state) {
  double p = 0.001;
  for (auto _ : state) {
    benchmark::DoNotOptimize(noncentral_chi2_sq_magnitude_quantile(p, 0.8, 0.01));
    p = p < 0.2 ? p * 1.1 : 0.001;
  }
}
BENCHMARK(BM_Quantile);

void BM_CoefficientsPerRsu(benchmark::State& state) {
  const RunConfig config;
  Rng rng(3);
  const Scenario s = generate_scenario(config.scenario, rng);
  for (auto _ : state) {
    OutageCoefficients c = compute_coefficients(s.rsus[0], config.scenario);
    benchmark::DoNotOptimize(c.x.data());
  }
}
BENCHMARK(BM_CoefficientsPerRsu);

}  // namespace

BENCHMARK_MAIN();
