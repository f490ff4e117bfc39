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

#ifndef NOMA_EE_ALLOC_HPP
#define NOMA_EE_ALLOC_HPP

#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "noma_ee/gabs.hpp"
#include "noma_ee/outage.hpp"

namespace noma_ee {

// Lower bound pi*log2(gamma) + phi <= log2(1 + gamma), tight at the anchor.
struct ScaPoint {
  std::vector<double> pi;
  std::vector<double> phi;
  std::vector<double> anchor;

  std::size_t size() const { return pi.size(); }
};

constexpr double kScaSinrFloor = 1e-12;

// Anchors below kScaSinrFloor are raised to it; negative or non-finite
// anchors throw std::domain_error.
ScaPoint sca_coefficients(std::span<const double> gamma);

double sca_bound(double pi, double phi, double gamma);

// SINR threshold that makes the SCA rate bound equal r_min.
std::vector<double> sca_thresholds(const ScaPoint& sca, double r_min);

// Everything the allocation sub-problem holds fixed.
struct AllocContext {
  const OutageCoefficients& coeffs;
  double p_w;
  EeParams params;
  double r_min;
};

// c * sum_k (pi_k log2(gamma_k) + phi_k).
double surrogate_sumrate(std::span<const double> alpha, const ScaPoint& sca,
                         const AllocContext& ctx);

struct DualState {
  std::vector<double> mu;
  double lambda = 0.0;
  double omega1 = 0.1;
  double omega2 = 0.1;
  int iteration = 1;
};

double theta(std::size_t l, std::span<const double> alpha,
             const DualState& dual, const ScaPoint& sca,
             std::span<const double> thresholds, const AllocContext& ctx);

// Stationary point of L in alpha_k with the interference terms of the
// weaker vehicles frozen at alpha_prev, clamped to [0, 1]. Empty when the
// denominator is not positive.
std::optional<double> closed_form_alpha(std::size_t k, double q,
                                        const DualState& dual,
                                        const ScaPoint& sca,
                                        const AllocContext& ctx,
                                        std::span<const double> alpha_prev);

// Same condition solved self-consistently: the weaker vehicles'
// interference terms are evaluated at the returned alpha_k rather than
// alpha_prev. Not clamped, so the result may exceed 1.
std::optional<double> closed_form_alpha_exact(
    std::size_t k, double q, const DualState& dual, const ScaPoint& sca,
    const AllocContext& ctx, std::span<const double> alpha_prev);

DualState subgradient_update(const DualState& dual,
                             std::span<const double> alpha,
                             const ScaPoint& sca, const AllocContext& ctx);

double lagrangian_value(std::span<const double> alpha, const DualState& dual,
                        double q, const ScaPoint& sca,
                        const AllocContext& ctx);

std::vector<double> lagrangian_gradient(std::span<const double> alpha,
                                        const DualState& dual, double q,
                                        const ScaPoint& sca,
                                        const AllocContext& ctx);

struct QosReport {
  std::vector<bool> pass;
  // X P a_k - (2^r_min - 1)(Y + Z P s_k), divided by the right-hand side.
  std::vector<double> relative_margin;
  bool all_pass = true;
};

QosReport qos_check(std::span<const double> alpha,
                    const OutageCoefficients& coeffs, double p_w,
                    double r_min, double rel_tol = 0.0);

// Smallest allocation meeting gamma_k >= thresholds[k] for every vehicle.
std::vector<double> qos_minimal_allocation(const OutageCoefficients& coeffs,
                                           double p_w,
                                           std::span<const double> thresholds);

// Smallest P in [p_low, p_high] at which the QoS-minimal allocation fits in
// the simplex; empty if none does.
std::optional<double> qos_power_floor(const OutageCoefficients& coeffs,
                                      double r_min, double p_low,
                                      double p_high);

// 2^(K-k) fractions when they meet QoS, otherwise the QoS-minimal
// allocation with vehicle 1 taking the remaining budget.
std::optional<std::vector<double>> initial_allocation(
    const OutageCoefficients& coeffs, double p_w, double r_min);

enum class InnerMethod { barrier, dual_subgradient };

struct DinkelbachConfig {
  double delta_max = 1e-6;
  int max_iterations = 50;
  InnerMethod inner = InnerMethod::barrier;
  double omega0 = 0.1;
  int inner_max_iterations = 2000;
};

struct DinkelbachTraceRow {
  int iteration = 0;
  double q = 0.0;
  double f_q = 0.0;
  double alpha_sum = 0.0;
  double max_qos_violation = 0.0;
};

struct AllocResult {
  std::vector<double> alpha;
  double q_star = 0.0;  // true EE at alpha
  double sumrate_bps = 0.0;
  int dinkelbach_iterations = 0;
  int inner_iterations = 0;
  bool feasible = false;
  bool converged = false;
  std::vector<double> spectral_efficiency;
  // Relative QoS shortfall per vehicle of the best attempt when infeasible.
  std::vector<double> shortfall;
  DualState dual;
  // Largest relative gap between the closed form evaluated on the final
  // multipliers and the returned alpha. Empty for the subgradient inner
  // solver and when the QoS constraints leave no interior.
  std::optional<double> certificate_error;
  std::vector<DinkelbachTraceRow> trace;
};

struct ScaSubproblemSolution {
  std::vector<double> alpha;
  DualState dual;  // in the form used by closed_form_alpha
  int newton_steps = 0;
  bool ok = false;
  bool interior = true;  // false when only the threshold-tight point exists
};

// Maximizes the SCA surrogate rate over the saturated simplex subject to
// gamma_k >= thresholds. Exact up to the barrier tolerance.
ScaSubproblemSolution solve_sca_subproblem(const ScaPoint& sca, double q,
                                           const AllocContext& ctx);

AllocResult dinkelbach_solve(const OutageCoefficients& coeffs, double p_w,
                             const EeParams& params, double r_min,
                             const DinkelbachConfig& config = {});

void write_dinkelbach_trace_csv(std::ostream& out,
                                std::span<const DinkelbachTraceRow> trace);

}  // namespace noma_ee

#endif  // NOMA_EE_ALLOC_HPP
