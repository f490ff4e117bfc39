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

#ifndef NOMA_EE_OUTAGE_HPP
#define NOMA_EE_OUTAGE_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "noma_ee/channel.hpp"

namespace noma_ee {

// Transformed-SINR coefficients, one entry per vehicle in SIC order.
// gamma_k = X_k P a_k / (Y_k + Z_k P sum_{m>k} a_m)
struct OutageCoefficients {
  std::vector<double> x;
  std::vector<double> y;  // watts
  std::vector<double> z;

  std::size_t size() const { return x.size(); }
};

struct VehicleCoefficients {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

// Q_1(a, b), the first-order Marcum Q function.
double marcum_q1(double a, double b);

// p-quantile of |h|^2 for h ~ CN(h_est, variance), given |h_est|^2.
double noncentral_chi2_sq_magnitude_quantile(double p, double est_mag_sq,
                                             double variance);

VehicleCoefficients compute_xyz(const LinkState& link,
                                const ScenarioConfig& config);

OutageCoefficients compute_coefficients(const RsuState& rsu,
                                        const ScenarioConfig& config);

// s[k] = sum_{m>k} alpha[m].
std::vector<double> interference_sums(std::span<const double> alpha);

double transformed_sinr(const OutageCoefficients& coeffs, std::size_t k,
                        double p_w, std::span<const double> alpha);

std::vector<double> transformed_sinrs(const OutageCoefficients& coeffs,
                                      double p_w,
                                      std::span<const double> alpha);

double scheduled_rate(double sinr, double bandwidth_hz);
double achievable_rate(double sinr, double bandwidth_hz);

double rsu_average_sumrate(std::span<const double> rates, double p_out);

// Estimated SINR with the channel estimates in place of the true gains.
double estimated_sinr(std::span<const LinkState> links, std::size_t k,
                      double p_w, std::span<const double> alpha,
                      double bs_power_total_w, double noise_w);

// SINR after SIC under the true gains.
double true_sinr(std::span<const LinkState> links, std::size_t k, double p_w,
                 std::span<const double> alpha, double bs_power_total_w,
                 double noise_w);

// Per-vehicle fraction of conditional redraws (h ~ CN(h_est, s2_rsu),
// g ~ CN(g_est, s2_bs)) in which the scheduled rate exceeds capacity.
std::vector<double> monte_carlo_outage(std::span<const double> alpha,
                                       double p_w, const RsuState& rsu,
                                       const ScenarioConfig& config,
                                       std::size_t n_draws, Rng& rng);

}  // namespace noma_ee

#endif  // NOMA_EE_OUTAGE_HPP
