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

#ifndef NOMA_EE_GABS_HPP
#define NOMA_EE_GABS_HPP

#include <functional>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "noma_ee/outage.hpp"

namespace noma_ee {

struct EeParams {
  double bandwidth_hz = 10e6;
  double p_out = 0.05;
  double circuit_w = 1.0;

  // (1 - P_out) * BW, the prefactor of every rate sum.
  double rate_scale() const { return (1.0 - p_out) * bandwidth_hz; }
};

EeParams ee_params(const ScenarioConfig& config);

// Outage-weighted sum rate (1 - P_out) BW sum_k log2(1 + gamma_k).
double sumrate(double p_w, std::span<const double> alpha,
               const OutageCoefficients& coeffs, const EeParams& params);

double consumed_power(double p_w, std::span<const double> alpha,
                      const EeParams& params);

double ee_of_power(double p_w, std::span<const double> alpha,
                   const OutageCoefficients& coeffs, const EeParams& params);

double sumrate_derivative(double p_w, std::span<const double> alpha,
                          const OutageCoefficients& coeffs,
                          const EeParams& params);

double sumrate_second_derivative(double p_w, std::span<const double> alpha,
                                 const OutageCoefficients& coeffs,
                                 const EeParams& params);

double ee_derivative(double p_w, std::span<const double> alpha,
                     const OutageCoefficients& coeffs, const EeParams& params);

// alpha_k proportional to 2^(K-k), normalized to sum 1.
std::vector<double> descending_fractions(std::size_t k_count);

struct GabsConfig {
  double step_factor = 2.0;
  double tolerance_w = 1e-4;
  double p_low_w = 0.0316227766016838;
  double p_high_w = 1.0;
  int max_iterations = 200;
  std::optional<double> start_w;  // default: midpoint of the box
};

struct GabsTraceRow {
  int iteration = 0;
  double p_w = 0.0;
  double de_dp = 0.0;
  double ee = 0.0;
};

struct GabsResult {
  double p_star = 0.0;
  double ee_star = 0.0;
  int iterations = 0;
  int expansion_steps = 0;
  int bisection_steps = 0;
  bool converged = false;
  // Final bracket, dE/dP >= 0 at the low end and <= 0 at the high end.
  // Both equal p_star when the search ends on a boundary or a zero.
  double bracket_low_w = 0.0;
  double bracket_high_w = 0.0;
  std::vector<GabsTraceRow> trace;
};

GabsResult gabs_optimize(const std::function<double(double)>& ee,
                         const std::function<double(double)>& de_dp,
                         const GabsConfig& config);

GabsResult gabs_optimize(const OutageCoefficients& coeffs,
                         std::span<const double> alpha,
                         const GabsConfig& config, const EeParams& params);

// ceil(log2((c - 1) p* / delta - 1)); domain_error when the log argument
// is not positive.
int iteration_bound(double c, double delta, double p_star);

void write_gabs_trace_csv(std::ostream& out,
                          std::span<const GabsTraceRow> trace);

}  // namespace noma_ee

#endif  // NOMA_EE_GABS_HPP
