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

#include "noma_ee/gabs.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace noma_ee {

namespace {

constexpr double kLn2 = std::numbers::ln2;

double alpha_sum(std::span<const double> alpha) {
  return std::accumulate(alpha.begin(), alpha.end(), 0.0);
}

}  // namespace

EeParams ee_params(const ScenarioConfig& config) {
  return {config.bandwidth_hz, config.p_out, config.circuit_power_w()};
}

double sumrate(double p_w, std::span<const double> alpha,
               const OutageCoefficients& coeffs, const EeParams& params) {
  const std::vector<double> gamma = transformed_sinrs(coeffs, p_w, alpha);
  double bits = 0.0;
  for (double g : gamma) bits += std::log2(1.0 + g);
  return params.rate_scale() * bits;
}

double consumed_power(double p_w, std::span<const double> alpha,
                      const EeParams& params) {
  return p_w * alpha_sum(alpha) + params.circuit_w;
}

double ee_of_power(double p_w, std::span<const double> alpha,
                   const OutageCoefficients& coeffs, const EeParams& params) {
  return sumrate(p_w, alpha, coeffs, params) /
         consumed_power(p_w, alpha, params);
}

double sumrate_derivative(double p_w, std::span<const double> alpha,
                          const OutageCoefficients& coeffs,
                          const EeParams& params) {
  const std::vector<double> s = interference_sums(alpha);
  double total = 0.0;
  for (std::size_t k = 0; k < alpha.size(); ++k) {
    const double xa = coeffs.x[k] * alpha[k];
    const double zs = coeffs.z[k] * s[k];
    const double y = coeffs.y[k];
    total += xa * y / (kLn2 * (zs * p_w + xa * p_w + y) * (zs * p_w + y));
  }
  return params.rate_scale() * total;
}

double sumrate_second_derivative(double p_w, std::span<const double> alpha,
                                 const OutageCoefficients& coeffs,
                                 const EeParams& params) {
  const std::vector<double> s = interference_sums(alpha);
  double total = 0.0;
  for (std::size_t k = 0; k < alpha.size(); ++k) {
    const double xa = coeffs.x[k] * alpha[k];
    const double zs = coeffs.z[k] * s[k];
    const double y = coeffs.y[k];
    const double num =
        xa * y * (2.0 * zs * zs * p_w + 2.0 * zs * (xa * p_w + y) + xa * y);
    const double inner = (zs * p_w + y) * (zs * p_w + xa * p_w + y);
    total -= num / (kLn2 * inner * inner);
  }
  return params.rate_scale() * total;
}

double ee_derivative(double p_w, std::span<const double> alpha,
                     const OutageCoefficients& coeffs, const EeParams& params) {
  const double r = sumrate(p_w, alpha, coeffs, params);
  const double dr = sumrate_derivative(p_w, alpha, coeffs, params);
  const double power = consumed_power(p_w, alpha, params);
  return (dr * power - r * alpha_sum(alpha)) / (power * power);
}

std::vector<double> descending_fractions(std::size_t k_count) {
  std::vector<double> alpha(k_count);
  double total = 0.0;
  for (std::size_t k = 0; k < k_count; ++k) {
    alpha[k] = std::ldexp(1.0, static_cast<int>(k_count - 1 - k));
    total += alpha[k];
  }
  for (double& a : alpha) a /= total;
  return alpha;
}

GabsResult gabs_optimize(const std::function<double(double)>& ee,
                         const std::function<double(double)>& de_dp,
                         const GabsConfig& config) {
  if (!(config.step_factor > 1.0) || !(config.tolerance_w > 0.0)) {
    throw std::invalid_argument("gabs: need step_factor > 1 and tolerance > 0");
  }
  GabsResult result;
  const double lo = config.p_low_w;
  const double hi = config.p_high_w;
  if (!(lo <= hi)) throw std::invalid_argument("gabs: p_low above p_high");

  int row = 0;
  auto probe = [&](double p) {
    const double d = de_dp(p);
    result.trace.push_back({row++, p, d, ee(p)});
    return d;
  };
  auto finish = [&](double p, bool converged) {
    result.p_star = p;
    if (result.bisection_steps == 0 && result.bracket_high_w == 0.0) {
      result.bracket_low_w = p;
      result.bracket_high_w = p;
    }
    result.ee_star = ee(p);
    result.iterations = result.expansion_steps + result.bisection_steps;
    result.converged = converged;
    return result;
  };

  if (hi - lo <= config.tolerance_w) {
    probe(0.5 * (lo + hi));
    return finish(0.5 * (lo + hi), true);
  }

  double p = std::clamp(config.start_w.value_or(0.5 * (lo + hi)), lo, hi);
  double d = probe(p);
  if (d == 0.0) return finish(p, true);
  const bool rising = d > 0.0;

  double a = 0.0;  // bracket with dE/dP >= 0 at a and <= 0 at b
  double b = 0.0;
  for (;;) {
    if (result.expansion_steps >= config.max_iterations) {
      return finish(p, false);
    }
    const double next = rising ? std::min(p * config.step_factor, hi)
                               : std::max(p / config.step_factor, lo);
    if (next == p) return finish(p, true);  // boundary optimum
    ++result.expansion_steps;
    const double dn = probe(next);
    if (dn == 0.0) return finish(next, true);
    if ((dn > 0.0) != rising) {
      a = rising ? p : next;
      b = rising ? next : p;
      result.bracket_low_w = a;
      result.bracket_high_w = b;
      break;
    }
    p = next;
  }

  while (b - a > config.tolerance_w) {
    if (result.expansion_steps + result.bisection_steps >=
        config.max_iterations) {
      return finish(0.5 * (a + b), false);
    }
    ++result.bisection_steps;
    const double m = 0.5 * (a + b);
    if (probe(m) > 0.0) {
      a = m;
    } else {
      b = m;
    }
    result.bracket_low_w = a;
    result.bracket_high_w = b;
  }
  return finish(0.5 * (a + b), true);
}

GabsResult gabs_optimize(const OutageCoefficients& coeffs,
                         std::span<const double> alpha,
                         const GabsConfig& config, const EeParams& params) {
  return gabs_optimize(
      [&](double p) { return ee_of_power(p, alpha, coeffs, params); },
      [&](double p) { return ee_derivative(p, alpha, coeffs, params); },
      config);
}

int iteration_bound(double c, double delta, double p_star) {
  if (!(c > 1.0) || !(delta > 0.0) || !(p_star > 0.0)) {
    throw std::domain_error("iteration_bound: need c > 1, delta > 0, p* > 0");
  }
  const double arg = (c - 1.0) * p_star / delta - 1.0;
  if (!(arg > 0.0)) {
    throw std::domain_error("iteration_bound: log argument is not positive");
  }
  return std::max(0, static_cast<int>(std::ceil(std::log2(arg))));
}

void write_gabs_trace_csv(std::ostream& out,
                          std::span<const GabsTraceRow> trace) {
  out << "iteration,p_w,de_dp,ee_bits_per_joule\n";
  const auto old_precision = out.precision(17);
  for (const GabsTraceRow& r : trace) {
    out << r.iteration << ',' << r.p_w << ',' << r.de_dp << ',' << r.ee
        << '\n';
  }
  out.precision(old_precision);
}

}  // namespace noma_ee
