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

#ifndef NOMA_EE_BASELINES_HPP
#define NOMA_EE_BASELINES_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "noma_ee/gabs.hpp"
#include "noma_ee/outage.hpp"

namespace noma_ee {

// Per free dimension: zero plus resolution - 1 log-spaced levels in
// [min_fraction, 1]. Going from resolution r to 2r - 2 nests the grids.
struct GridSpec {
  int resolution = 200;
  double min_fraction = 1e-12;
};

std::vector<double> grid_levels(const GridSpec& grid);

struct BaselineResult {
  std::vector<double> alpha;
  double ee = 0.0;
  double sumrate_bps = 0.0;
  bool feasible = false;
  std::size_t evaluated = 0;
};

constexpr std::size_t kMaxExhaustiveVehicles = 4;

// Vehicle 1 takes the remainder of the budget; the others range over the
// grid. Only allocations meeting the QoS target are scored, with the exact
// transformed rates.
BaselineResult exhaustive_search(const OutageCoefficients& coeffs, double p_w,
                                 const EeParams& params, double r_min,
                                 const GridSpec& grid = {});

// K equal sub-bands. Noise and B-VU interference in a sub-band scale with
// its width, so SINR_k = K X_k P beta_k / Y_k on a BW / K channel.
double ofdma_sumrate(double p_w, std::span<const double> beta,
                     const OutageCoefficients& coeffs, const EeParams& params);

double ofdma_ee(double p_w, std::span<const double> beta,
                const OutageCoefficients& coeffs, const EeParams& params);

double ofdma_ee_derivative(double p_w, std::span<const double> beta,
                           const OutageCoefficients& coeffs,
                           const EeParams& params);

// Smallest P in [p_low, p_high] at which every sub-band can meet the QoS
// rate r_min * BW within the power budget.
std::optional<double> ofdma_power_floor(const OutageCoefficients& coeffs,
                                        double r_min, double p_low,
                                        double p_high);

BaselineResult ofdma_baseline(const OutageCoefficients& coeffs, double p_w,
                              const EeParams& params, double r_min,
                              const GridSpec& grid = {});

double fixed_power_noma(std::span<const double> fractions,
                        const OutageCoefficients& coeffs, double p_w,
                        const EeParams& params);

}  // namespace noma_ee

#endif  // NOMA_EE_BASELINES_HPP
