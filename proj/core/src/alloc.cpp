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

#include "noma_ee/alloc.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace noma_ee {

namespace {

constexpr double kLn2 = std::numbers::ln2;

double sum_of(std::span<const double> v) {
  return std::accumulate(v.begin(), v.end(), 0.0);
}

double qos_target(double r_min) { return std::exp2(r_min) - 1.0; }

}  // namespace

ScaPoint sca_coefficients(std::span<const double> gamma) {
  ScaPoint sca;
  for (double g : gamma) {
    if (!std::isfinite(g) || g < 0.0) {
      throw std::domain_error("sca_coefficients: SINR must be finite and >= 0");
    }
    const double g0 = std::max(g, kScaSinrFloor);
    const double pi = g0 / (1.0 + g0);
    sca.pi.push_back(pi);
    sca.phi.push_back(std::log2(1.0 + g0) - pi * std::log2(g0));
    sca.anchor.push_back(g0);
  }
  return sca;
}

double sca_bound(double pi, double phi, double gamma) {
  return pi * std::log2(gamma) + phi;
}

std::vector<double> sca_thresholds(const ScaPoint& sca, double r_min) {
  std::vector<double> t(sca.size());
  for (std::size_t k = 0; k < sca.size(); ++k) {
    t[k] = std::exp2((r_min - sca.phi[k]) / sca.pi[k]);
  }
  return t;
}

double surrogate_sumrate(std::span<const double> alpha, const ScaPoint& sca,
                         const AllocContext& ctx) {
  const std::vector<double> gamma =
      transformed_sinrs(ctx.coeffs, ctx.p_w, alpha);
  double bits = 0.0;
  for (std::size_t k = 0; k < alpha.size(); ++k) {
    bits += sca_bound(sca.pi[k], sca.phi[k], gamma[k]);
  }
  return ctx.params.rate_scale() * bits;
}

double theta(std::size_t l, std::span<const double> alpha,
             const DualState& dual, const ScaPoint& sca,
             std::span<const double> thresholds, const AllocContext& ctx) {
  const auto& c = ctx.coeffs;
  double s = 0.0;
  for (std::size_t m = l + 1; m < alpha.size(); ++m) s += alpha[m];
  const double p = ctx.p_w;
  return ctx.params.rate_scale() * sca.pi[l] * c.z[l] * p /
             (c.y[l] + c.z[l] * p * s) +
         kLn2 * dual.mu[l] * c.z[l] * p * thresholds[l];
}

namespace {

double own_denominator(std::size_t k, double q, const DualState& dual,
                       const AllocContext& ctx) {
  const double p = ctx.p_w;
  return kLn2 * (q * p + dual.lambda - dual.mu[k] * ctx.coeffs.x[k] * p);
}

}  // namespace

std::optional<double> closed_form_alpha(std::size_t k, double q,
                                        const DualState& dual,
                                        const ScaPoint& sca,
                                        const AllocContext& ctx,
                                        std::span<const double> alpha_prev) {
  const std::vector<double> t = sca_thresholds(sca, ctx.r_min);
  double den = own_denominator(k, q, dual, ctx);
  for (std::size_t l = 0; l < k; ++l) {
    den += theta(l, alpha_prev, dual, sca, t, ctx);
  }
  if (!(den > 0.0)) return std::nullopt;
  return std::clamp(ctx.params.rate_scale() * sca.pi[k] / den, 0.0, 1.0);
}

std::optional<double> closed_form_alpha_exact(
    std::size_t k, double q, const DualState& dual, const ScaPoint& sca,
    const AllocContext& ctx, std::span<const double> alpha_prev) {
  const std::vector<double> t = sca_thresholds(sca, ctx.r_min);
  const double numer = ctx.params.rate_scale() * sca.pi[k];
  if (numer == 0.0) return 0.0;
  std::vector<double> trial(alpha_prev.begin(), alpha_prev.end());
  const double base = own_denominator(k, q, dual, ctx);
  auto residual = [&](double a) {
    trial[k] = a;
    double den = base;
    for (std::size_t l = 0; l < k; ++l) den += theta(l, trial, dual, sca, t, ctx);
    return a * den - numer;
  };
  // Grow from the frozen-Theta estimate so the bracket holds the root
  // nearest to it rather than a distant one.
  const auto frozen = closed_form_alpha(k, q, dual, sca, ctx, alpha_prev);
  // A touching root (large QoS multiplier) has no sign change to bracket.
  if (frozen && *frozen > 0.0 && *frozen < 1.0 &&
      std::abs(residual(*frozen)) <= 1e-9 * numer) {
    return *frozen;
  }
  double hi = frozen && *frozen > 0.0 ? *frozen : 1e-300;
  int grow = 0;
  while (residual(hi) <= 0.0) {
    if (++grow > 2000) return std::nullopt;
    hi *= 1.5;
  }
  if (!std::isfinite(residual(hi))) return std::nullopt;
  std::uintmax_t max_iter = 300;
  const auto bracket = boost::math::tools::toms748_solve(
      residual, 0.0, hi, -numer, residual(hi),
      boost::math::tools::eps_tolerance<double>(52), max_iter);
  return 0.5 * (bracket.first + bracket.second);
}

DualState subgradient_update(const DualState& dual,
                             std::span<const double> alpha,
                             const ScaPoint& sca, const AllocContext& ctx) {
  const auto& c = ctx.coeffs;
  const std::vector<double> t = sca_thresholds(sca, ctx.r_min);
  const std::vector<double> s = interference_sums(alpha);
  const double decay = std::sqrt(static_cast<double>(std::max(dual.iteration, 1)));
  DualState next = dual;
  next.lambda =
      std::max(0.0, dual.lambda - dual.omega1 / decay * (1.0 - sum_of(alpha)));
  for (std::size_t k = 0; k < alpha.size(); ++k) {
    const double slack = c.x[k] * ctx.p_w * alpha[k] -
                         t[k] * (c.y[k] + c.z[k] * ctx.p_w * s[k]);
    next.mu[k] = std::max(0.0, dual.mu[k] - dual.omega2 / decay * slack);
  }
  next.iteration = dual.iteration + 1;
  return next;
}

double lagrangian_value(std::span<const double> alpha, const DualState& dual,
                        double q, const ScaPoint& sca,
                        const AllocContext& ctx) {
  const auto& c = ctx.coeffs;
  const std::vector<double> t = sca_thresholds(sca, ctx.r_min);
  const std::vector<double> s = interference_sums(alpha);
  double value = surrogate_sumrate(alpha, sca, ctx) -
                 q * consumed_power(ctx.p_w, alpha, ctx.params) +
                 dual.lambda * (1.0 - sum_of(alpha));
  for (std::size_t k = 0; k < alpha.size(); ++k) {
    value += dual.mu[k] * (c.x[k] * ctx.p_w * alpha[k] -
                           t[k] * (c.y[k] + c.z[k] * ctx.p_w * s[k]));
  }
  return value;
}

std::vector<double> lagrangian_gradient(std::span<const double> alpha,
                                        const DualState& dual, double q,
                                        const ScaPoint& sca,
                                        const AllocContext& ctx) {
  const auto& c = ctx.coeffs;
  const double p = ctx.p_w;
  const double scale = ctx.params.rate_scale() / kLn2;
  const std::vector<double> t = sca_thresholds(sca, ctx.r_min);
  const std::vector<double> s = interference_sums(alpha);
  std::vector<double> grad(alpha.size());
  // Vehicles l < j see alpha_j as interference.
  double carried = 0.0;
  for (std::size_t j = 0; j < alpha.size(); ++j) {
    grad[j] = scale * sca.pi[j] / alpha[j] - carried - q * p +
              dual.mu[j] * c.x[j] * p - dual.lambda;
    carried += scale * sca.pi[j] * c.z[j] * p / (c.y[j] + c.z[j] * p * s[j]) +
               dual.mu[j] * t[j] * c.z[j] * p;
  }
  return grad;
}

QosReport qos_check(std::span<const double> alpha,
                    const OutageCoefficients& coeffs, double p_w, double r_min,
                    double rel_tol) {
  const double target = qos_target(r_min);
  const std::vector<double> s = interference_sums(alpha);
  QosReport report;
  for (std::size_t k = 0; k < alpha.size(); ++k) {
    const double lhs = coeffs.x[k] * p_w * alpha[k];
    const double rhs = target * (coeffs.y[k] + coeffs.z[k] * p_w * s[k]);
    const bool ok = lhs >= rhs * (1.0 - rel_tol);
    report.pass.push_back(ok);
    report.relative_margin.push_back(rhs > 0.0 ? (lhs - rhs) / rhs
                                               : (lhs > 0.0 ? 1.0 : 0.0));
    report.all_pass = report.all_pass && ok;
  }
  return report;
}

std::vector<double> qos_minimal_allocation(const OutageCoefficients& coeffs,
                                           double p_w,
                                           std::span<const double> thresholds) {
  const std::size_t k_count = coeffs.size();
  std::vector<double> alpha(k_count, 0.0);
  double s = 0.0;
  for (std::size_t k = k_count; k-- > 0;) {
    alpha[k] = thresholds[k] * (coeffs.y[k] + coeffs.z[k] * p_w * s) /
               (coeffs.x[k] * p_w);
    s += alpha[k];
  }
  return alpha;
}

std::optional<double> qos_power_floor(const OutageCoefficients& coeffs,
                                      double r_min, double p_low,
                                      double p_high) {
  const std::vector<double> t(coeffs.size(), qos_target(r_min));
  auto fits = [&](double p) {
    return sum_of(qos_minimal_allocation(coeffs, p, t)) <= 1.0;
  };
  if (fits(p_low)) return p_low;
  if (!fits(p_high)) return std::nullopt;
  double lo = p_low;
  double hi = p_high;
  while (hi - lo > 1e-12 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (fits(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

std::optional<std::vector<double>> initial_allocation(
    const OutageCoefficients& coeffs, double p_w, double r_min) {
  std::vector<double> alpha = descending_fractions(coeffs.size());
  if (qos_check(alpha, coeffs, p_w, r_min).all_pass) return alpha;
  const std::vector<double> t(coeffs.size(), qos_target(r_min));
  alpha = qos_minimal_allocation(coeffs, p_w, t);
  const double total = sum_of(alpha);
  if (total > 1.0) return std::nullopt;
  alpha[0] += 1.0 - total;
  return alpha;
}

namespace {

// Sum of alpha as a function of v_k = ln(gamma_k / T_k), with first and
// second derivatives. alpha_k = e^{v_k} (c_k + r_k s_k) by back-substitution.
struct AlphaSum {
  double value = 0.0;
  std::vector<double> alpha;
  Eigen::VectorXd grad;
  Eigen::MatrixXd hess;
};

AlphaSum eval_alpha_sum(const Eigen::VectorXd& v, const std::vector<double>& cc,
                        const std::vector<double>& rr, bool derivatives) {
  const auto k_count = static_cast<Eigen::Index>(v.size());
  AlphaSum out;
  out.alpha.assign(static_cast<std::size_t>(k_count), 0.0);
  Eigen::VectorXd grad = Eigen::VectorXd::Zero(k_count);
  Eigen::MatrixXd hess = Eigen::MatrixXd::Zero(k_count, k_count);
  double s = 0.0;
  for (Eigen::Index k = k_count; k-- > 0;) {
    const auto ku = static_cast<std::size_t>(k);
    const double e = std::exp(v[k]);
    const double a = e * (cc[ku] + rr[ku] * s);
    out.alpha[ku] = a;
    if (derivatives) {
      const double ds = 1.0 + e * rr[ku];
      const double cross = e * rr[ku];
      hess *= ds;
      hess(k, k) += a;
      for (Eigen::Index j = 0; j < k_count; ++j) {
        hess(k, j) += cross * grad[j];
        hess(j, k) += cross * grad[j];
      }
      grad *= ds;
      grad[k] += a;
    }
    s += a;
  }
  out.value = s;
  out.grad = std::move(grad);
  out.hess = std::move(hess);
  return out;
}

}  // namespace

ScaSubproblemSolution solve_sca_subproblem(const ScaPoint& sca, double q,
                                           const AllocContext& ctx) {
  const auto& c = ctx.coeffs;
  const std::size_t k_count = c.size();
  const auto kn = static_cast<Eigen::Index>(k_count);
  const std::vector<double> t = sca_thresholds(sca, ctx.r_min);
  const double p = ctx.p_w;
  const double scale = ctx.params.rate_scale() / kLn2;

  std::vector<double> cc(k_count);
  std::vector<double> rr(k_count);
  for (std::size_t k = 0; k < k_count; ++k) {
    cc[k] = t[k] * c.y[k] / (c.x[k] * p);
    rr[k] = t[k] * c.z[k] / c.x[k];
  }
  Eigen::VectorXd pi(kn);
  for (std::size_t k = 0; k < k_count; ++k) pi[static_cast<Eigen::Index>(k)] = sca.pi[k];

  ScaSubproblemSolution sol;
  sol.dual.mu.assign(k_count, 0.0);

  Eigen::VectorXd v = Eigen::VectorXd::Zero(kn);
  const double a0 = eval_alpha_sum(v, cc, rr, false).value;
  if (a0 > 1.0 + 1e-12) return sol;
  if (a0 >= 1.0 - 1e-9) {
    // No interior: the threshold-tight allocation is the only candidate.
    sol.alpha = eval_alpha_sum(v, cc, rr, false).alpha;
    sol.alpha[0] += 1.0 - a0;
    sol.dual.lambda = -q * p;
    sol.ok = true;
    sol.interior = false;
    return sol;
  }
  v.setConstant(std::log((1.0 + a0) / (2.0 * a0)) / static_cast<double>(k_count));

  auto barrier = [&](const Eigen::VectorXd& x, double tt) {
    if ((x.array() <= 0.0).any()) return -std::numeric_limits<double>::infinity();
    const double a = eval_alpha_sum(x, cc, rr, false).value;
    if (!(a < 1.0)) return -std::numeric_limits<double>::infinity();
    return tt * pi.dot(x) + x.array().log().sum() + std::log1p(-a);
  };

  const double constraints = static_cast<double>(k_count + 1);
  double tt = 1.0;
  for (;;) {
    double last_decrement = std::numeric_limits<double>::infinity();
    for (int newton = 0; newton < 100; ++newton) {
      const AlphaSum as = eval_alpha_sum(v, cc, rr, true);
      const double slack = 1.0 - as.value;
      const Eigen::VectorXd g =
          tt * pi + v.cwiseInverse() - as.grad / slack;
      Eigen::MatrixXd neg_h = as.hess / slack +
                              as.grad * as.grad.transpose() / (slack * slack);
      neg_h.diagonal() += v.cwiseInverse().cwiseAbs2();
      const Eigen::VectorXd d = neg_h.ldlt().solve(g);
      const double decrement = g.dot(d);
      ++sol.newton_steps;
      if (!(decrement > 1e-20)) break;
      // Near the center the barrier value is dominated by rounding, so the
      // Armijo test is replaced by requiring the decrement to keep shrinking.
      if (decrement < 1e-4) {
        if (!(decrement < last_decrement)) break;
        last_decrement = decrement;
        const Eigen::VectorXd trial = v + d;
        if (!std::isfinite(barrier(trial, tt))) break;
        v = trial;
        continue;
      }
      last_decrement = decrement;
      const double f0 = barrier(v, tt);
      double step = 1.0;
      bool moved = false;
      for (int ls = 0; ls < 80; ++ls, step *= 0.5) {
        const Eigen::VectorXd trial = v + step * d;
        const double f1 = barrier(trial, tt);
        if (f1 >= f0 + 0.01 * step * decrement) {
          v = trial;
          moved = true;
          break;
        }
      }
      if (!moved) break;
    }
    if (constraints / tt < 1e-11) break;
    tt *= 10.0;
  }

  const AlphaSum as = eval_alpha_sum(v, cc, rr, true);
  sol.alpha = as.alpha;
  sol.alpha[0] += 1.0 - as.value;
  // 1 - A is too close to zero here to give the multiplier directly, so it
  // comes from the stationarity row with the largest dA/dv_k.
  Eigen::Index pivot = 0;
  as.grad.maxCoeff(&pivot);
  const double lambda_v =
      (pi[pivot] + 1.0 / (tt * v[pivot])) / as.grad[pivot];
  sol.dual.lambda = scale * lambda_v - q * p;
  // The remaining rows give the QoS multipliers; 1/(t v_k) would lose the
  // digits of v_k that rounding leaves uncentered.
  for (std::size_t k = 0; k < k_count; ++k) {
    const auto ki = static_cast<Eigen::Index>(k);
    const double nu =
        ki == pivot ? 1.0 / (tt * v[ki])
                    : std::max(0.0, lambda_v * as.grad[ki] - pi[ki]);
    sol.dual.mu[k] = scale * nu / (c.x[k] * p * sol.alpha[k]);
  }
  sol.ok = true;
  return sol;
}

namespace {

bool sca_feasible(std::span<const double> alpha, std::span<const double> t,
                  const AllocContext& ctx) {
  const std::vector<double> gamma =
      transformed_sinrs(ctx.coeffs, ctx.p_w, alpha);
  for (std::size_t k = 0; k < alpha.size(); ++k) {
    if (gamma[k] < t[k] * (1.0 - 1e-12)) return false;
  }
  return true;
}

// Closed-form sweep with projected subgradient dual steps. Returns the best
// SCA-feasible iterate, never worse than the anchor.
std::vector<double> dual_subgradient_inner(const ScaPoint& sca, double q,
                                           const AllocContext& ctx,
                                           std::span<const double> anchor,
                                           const DinkelbachConfig& config,
                                           DualState& dual, int& iterations) {
  const auto& c = ctx.coeffs;
  const std::size_t k_count = c.size();
  const std::vector<double> t = sca_thresholds(sca, ctx.r_min);
  auto objective = [&](std::span<const double> a) {
    return surrogate_sumrate(a, sca, ctx) -
           q * consumed_power(ctx.p_w, a, ctx.params);
  };
  // Multiplier scale at which mu_k X_k P is comparable to the closed-form
  // denominator.
  std::vector<double> mu_scale(k_count);
  for (std::size_t k = 0; k < k_count; ++k) {
    mu_scale[k] = ctx.params.rate_scale() * sca.pi[k] /
                  (kLn2 * c.x[k] * ctx.p_w * std::max(anchor[k], 1e-300));
  }
  dual.mu.assign(k_count, 0.0);
  dual.lambda = 0.0;
  dual.iteration = 1;
  std::vector<double> alpha(anchor.begin(), anchor.end());
  std::vector<double> best = alpha;
  double best_value = objective(best);

  for (int it = 1; it <= config.inner_max_iterations; ++it) {
    ++iterations;
    for (std::size_t k = 1; k < k_count; ++k) {
      if (auto a = closed_form_alpha(k, q, dual, sca, ctx, alpha)) alpha[k] = *a;
    }
    double rest = 0.0;
    for (std::size_t k = 1; k < k_count; ++k) rest += alpha[k];
    if (rest > 1.0) {
      for (std::size_t k = 1; k < k_count; ++k) alpha[k] /= rest;
      alpha[0] = 0.0;
    } else {
      alpha[0] = 1.0 - rest;
    }
    if (sca_feasible(alpha, t, ctx)) {
      const double value = objective(alpha);
      if (value > best_value) {
        best_value = value;
        best = alpha;
      }
    }
    const std::vector<double> s = interference_sums(alpha);
    const double step = config.omega0 / std::sqrt(static_cast<double>(it));
    for (std::size_t k = 0; k < k_count; ++k) {
      const double need = t[k] * (c.y[k] + c.z[k] * ctx.p_w * s[k]);
      const double rel = (c.x[k] * ctx.p_w * alpha[k] - need) / need;
      dual.mu[k] = std::max(0.0, dual.mu[k] - step * rel * mu_scale[k]);
    }
    dual.iteration = it + 1;
  }
  return best;
}

double max_violation(std::span<const double> alpha,
                     const OutageCoefficients& coeffs, double p_w,
                     double r_min) {
  const QosReport report = qos_check(alpha, coeffs, p_w, r_min);
  double worst = 0.0;
  for (double m : report.relative_margin) worst = std::max(worst, -m);
  return worst;
}

void finalize(AllocResult& result, const OutageCoefficients& coeffs,
              double p_w, const EeParams& params) {
  const std::vector<double> gamma = transformed_sinrs(coeffs, p_w, result.alpha);
  result.spectral_efficiency.clear();
  for (double g : gamma) result.spectral_efficiency.push_back(std::log2(1.0 + g));
  result.sumrate_bps = sumrate(p_w, result.alpha, coeffs, params);
  result.q_star = ee_of_power(p_w, result.alpha, coeffs, params);
}

}  // namespace

AllocResult dinkelbach_solve(const OutageCoefficients& coeffs, double p_w,
                             const EeParams& params, double r_min,
                             const DinkelbachConfig& config) {
  AllocResult result;
  const std::size_t k_count = coeffs.size();
  if (k_count == 0) throw std::invalid_argument("dinkelbach_solve: no vehicles");

  if (k_count == 1) {
    result.alpha = {1.0};
    result.dinkelbach_iterations = 1;
    result.converged = true;
    result.feasible = qos_check(result.alpha, coeffs, p_w, r_min).all_pass;
    finalize(result, coeffs, p_w, params);
    result.trace.push_back({1, result.q_star, 0.0, 1.0,
                            max_violation(result.alpha, coeffs, p_w, r_min)});
    if (!result.feasible) {
      result.shortfall = {-qos_check(result.alpha, coeffs, p_w, r_min)
                              .relative_margin[0]};
    }
    return result;
  }

  auto start = initial_allocation(coeffs, p_w, r_min);
  if (!start) {
    const std::vector<double> t(k_count, qos_target(r_min));
    std::vector<double> alpha = qos_minimal_allocation(coeffs, p_w, t);
    const double total = sum_of(alpha);
    for (double& a : alpha) a /= total;
    result.alpha = alpha;
    for (double m : qos_check(alpha, coeffs, p_w, r_min).relative_margin) {
      result.shortfall.push_back(std::max(0.0, -m));
    }
    finalize(result, coeffs, p_w, params);
    return result;
  }

  const AllocContext ctx{coeffs, p_w, params, r_min};
  std::vector<double> alpha = *start;
  for (int n = 1; n <= config.max_iterations; ++n) {
    const ScaPoint sca =
        sca_coefficients(transformed_sinrs(coeffs, p_w, alpha));
    const double q = ee_of_power(p_w, alpha, coeffs, params);
    std::vector<double> next;
    if (config.inner == InnerMethod::barrier) {
      ScaSubproblemSolution sol = solve_sca_subproblem(sca, q, ctx);
      result.inner_iterations += sol.newton_steps;
      if (!sol.ok) break;
      next = std::move(sol.alpha);
      result.dual = std::move(sol.dual);
      result.certificate_error.reset();
      if (!sol.interior) {
        alpha = std::move(next);
        result.trace.push_back({n, q, 0.0, sum_of(alpha),
                                max_violation(alpha, coeffs, p_w, r_min)});
        result.dinkelbach_iterations = n;
        result.converged = true;
        break;
      }
      double worst = 0.0;
      for (std::size_t k = 0; k < k_count; ++k) {
        if (auto cf = closed_form_alpha(k, q, result.dual, sca, ctx, next)) {
          worst = std::max(worst, std::abs(*cf - next[k]) / next[k]);
        } else {
          worst = std::numeric_limits<double>::infinity();
        }
      }
      result.certificate_error = worst;
    } else {
      next = dual_subgradient_inner(sca, q, ctx, alpha, config, result.dual,
                                    result.inner_iterations);
    }
    const double power = consumed_power(p_w, next, params);
    const double f = surrogate_sumrate(next, sca, ctx) - q * power;
    result.trace.push_back({n, q, f, sum_of(next),
                            max_violation(next, coeffs, p_w, r_min)});
    alpha = std::move(next);
    result.dinkelbach_iterations = n;
    if (f <= config.delta_max * q * power) {
      result.converged = true;
      break;
    }
  }
  result.alpha = alpha;
  result.feasible = qos_check(alpha, coeffs, p_w, r_min, 1e-9).all_pass;
  finalize(result, coeffs, p_w, params);
  return result;
}

void write_dinkelbach_trace_csv(std::ostream& out,
                                std::span<const DinkelbachTraceRow> trace) {
  out << "iteration,q,f_q,alpha_sum,max_qos_violation\n";
  const auto old_precision = out.precision(17);
  for (const DinkelbachTraceRow& r : trace) {
    out << r.iteration << ',' << r.q << ',' << r.f_q << ',' << r.alpha_sum
        << ',' << r.max_qos_violation << '\n';
  }
  out.precision(old_precision);
}

}  // namespace noma_ee
