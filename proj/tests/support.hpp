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

// Instance generators shared by the unit and acceptance tests.

#ifndef NOMA_EE_TESTS_SUPPORT_HPP
#define NOMA_EE_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "noma_ee/experiments.hpp"

namespace noma_ee::testing {

// Coefficients of the first RSU of a scenario draw.
inline OutageCoefficients draw_coefficients(std::uint64_t seed,
                                            const ScenarioConfig& config = {}) {
  Rng rng(seed);
  const Scenario s = generate_scenario(config, rng);
  return compute_coefficients(s.rsus[0], config);
}

// Uniform point on the open simplex.
inline std::vector<double> random_simplex(Rng& rng, std::size_t k_count) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> a(k_count);
  double total = 0.0;
  for (double& v : a) {
    v = e(rng) + 1e-3;
    total += v;
  }
  for (double& v : a) v /= total;
  return a;
}

struct FeasibleInstance {
  OutageCoefficients coeffs;
  double p_w = 0.0;
  std::uint64_t seed = 0;
};

// Draws whose QoS is reachable, solved for P by GABS as in a trial.
inline std::vector<FeasibleInstance> feasible_instances(std::size_t count,
                                                        std::uint64_t seed,
                                                        const RunConfig& config = {}) {
  std::vector<FeasibleInstance> out;
  for (std::uint64_t i = 0; out.size() < count; ++i) {
    const std::uint64_t s = mix_seed(seed, i);
    OutageCoefficients c = draw_coefficients(s, config.scenario);
    const RsuOutcome r = solve_rsu(c, config, Solver::gabs_dinkelbach);
    if (r.feasible) out.push_back({std::move(c), r.p_star_w, s});
  }
  return out;
}

inline double rel_diff(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

}  // namespace noma_ee::testing

#endif  // NOMA_EE_TESTS_SUPPORT_HPP
