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

#include "noma_ee/outage.hpp"

#include <boost/math/distributions/non_central_chi_squared.hpp>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace noma_ee {

namespace {

constexpr double kQuantileTolerance = 1e-10;
constexpr int kQuantileMaxIterations = 200;

// CDF of |h|^2 for h ~ CN(h_est, variance).
double magnitude_sq_cdf(double x, double est_mag_sq, double variance) {
  if (x <= 0) return 0.0;
  const double a = std::sqrt(2.0 * est_mag_sq / variance);
  const double b = std::sqrt(2.0 * x / variance);
  return 1.0 - marcum_q1(a, b);
}

}  // namespace

double marcum_q1(double a, double b) {
  if (a < 0 || b < 0) throw std::domain_error("marcum_q1: negative argument");
  if (b == 0) return 1.0;
  if (a == 0) return std::exp(-0.5 * b * b);
  boost::math::non_central_chi_squared_distribution<double> dist(2.0, a * a);
  return boost::math::cdf(boost::math::complement(dist, b * b));
}

double noncentral_chi2_sq_magnitude_quantile(double p, double est_mag_sq,
                                             double variance) {
  if (!(p > 0 && p < 1)) {
    throw std::domain_error("quantile: probability must lie in (0, 1)");
  }
  if (est_mag_sq < 0 || variance < 0) {
    throw std::domain_error("quantile: negative magnitude or variance");
  }
  if (variance == 0) return est_mag_sq;

  double lo = 0.0;
  double hi = 2.0 * (est_mag_sq + variance);
  for (int i = 0; i < kQuantileMaxIterations &&
                  magnitude_sq_cdf(hi, est_mag_sq, variance) < p;
       ++i) {
    lo = hi;
    hi *= 2.0;
  }
  double mid = 0.5 * (lo + hi);
  for (int i = 0; i < kQuantileMaxIterations; ++i) {
    mid = 0.5 * (lo + hi);
    const double f = magnitude_sq_cdf(mid, est_mag_sq, variance);
    if (std::abs(f - p) <= kQuantileTolerance) break;
    if (f < p) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return mid;
}

VehicleCoefficients compute_xyz(const LinkState& link,
                                const ScenarioConfig& config) {
  const double est_h = std::norm(link.h_est);
  const double est_g = std::norm(link.g_est);
  const double quantile = noncentral_chi2_sq_magnitude_quantile(
      config.p_out / 2.0, est_h, config.sigma2_rsu);
  VehicleCoefficients out;
  out.x = config.p_out * quantile * link.large_scale_rsu;
  out.y = 2.0 * link.large_scale_bs * (est_g + config.sigma2_bs) *
              config.bs_power_total_w() +
          config.p_out * config.noise_w();
  out.z = 2.0 * link.large_scale_rsu * (est_h + config.sigma2_rsu);
  return out;
}

OutageCoefficients compute_coefficients(const RsuState& rsu,
                                        const ScenarioConfig& config) {
  OutageCoefficients coeffs;
  for (const LinkState& link : rsu.vehicles) {
    const VehicleCoefficients v = compute_xyz(link, config);
    coeffs.x.push_back(v.x);
    coeffs.y.push_back(v.y);
    coeffs.z.push_back(v.z);
  }
  return coeffs;
}

std::vector<double> interference_sums(std::span<const double> alpha) {
  std::vector<double> s(alpha.size(), 0.0);
  double acc = 0.0;
  for (std::size_t k = alpha.size(); k-- > 0;) {
    s[k] = acc;
    acc += alpha[k];
  }
  return s;
}

double transformed_sinr(const OutageCoefficients& coeffs, std::size_t k,
                        double p_w, std::span<const double> alpha) {
  double tail = 0.0;
  for (std::size_t m = k + 1; m < alpha.size(); ++m) tail += alpha[m];
  return coeffs.x[k] * p_w * alpha[k] / (coeffs.y[k] + coeffs.z[k] * p_w * tail);
}

std::vector<double> transformed_sinrs(const OutageCoefficients& coeffs,
                                      double p_w,
                                      std::span<const double> alpha) {
  const std::vector<double> s = interference_sums(alpha);
  std::vector<double> gamma(alpha.size());
  for (std::size_t k = 0; k < alpha.size(); ++k) {
    gamma[k] = coeffs.x[k] * p_w * alpha[k] /
               (coeffs.y[k] + coeffs.z[k] * p_w * s[k]);
  }
  return gamma;
}

double scheduled_rate(double sinr, double bandwidth_hz) {
  return bandwidth_hz * std::log2(1.0 + sinr);
}

double achievable_rate(double sinr, double bandwidth_hz) {
  return bandwidth_hz * std::log2(1.0 + sinr);
}

double rsu_average_sumrate(std::span<const double> rates, double p_out) {
  return (1.0 - p_out) * std::accumulate(rates.begin(), rates.end(), 0.0);
}

namespace {

double sinr_with(double own_gain, double bs_gain, std::size_t k, double p_w,
                 std::span<const double> alpha, double bs_power_total_w,
                 double noise_w) {
  double tail = 0.0;
  for (std::size_t m = k + 1; m < alpha.size(); ++m) tail += alpha[m];
  return p_w * alpha[k] * own_gain /
         (own_gain * p_w * tail + bs_gain * bs_power_total_w + noise_w);
}

}  // namespace

double estimated_sinr(std::span<const LinkState> links, std::size_t k,
                      double p_w, std::span<const double> alpha,
                      double bs_power_total_w, double noise_w) {
  const LinkState& v = links[k];
  return sinr_with(v.large_scale_rsu * std::norm(v.h_est),
                   v.large_scale_bs * std::norm(v.g_est), k, p_w, alpha,
                   bs_power_total_w, noise_w);
}

double true_sinr(std::span<const LinkState> links, std::size_t k, double p_w,
                 std::span<const double> alpha, double bs_power_total_w,
                 double noise_w) {
  return sinr_with(links[k].gain_rsu(), links[k].gain_bs(), k, p_w, alpha,
                   bs_power_total_w, noise_w);
}

std::vector<double> monte_carlo_outage(std::span<const double> alpha,
                                       double p_w, const RsuState& rsu,
                                       const ScenarioConfig& config,
                                       std::size_t n_draws, Rng& rng) {
  if (n_draws == 0) {
    throw std::invalid_argument("monte_carlo_outage: n_draws must be >= 1");
  }
  const std::size_t k_count = rsu.vehicles.size();
  const OutageCoefficients coeffs = compute_coefficients(rsu, config);
  const std::vector<double> gamma = transformed_sinrs(coeffs, p_w, alpha);
  const double bw = config.bandwidth_hz;
  const double pb = config.bs_power_total_w();
  const double noise = config.noise_w();

  std::vector<double> scheduled(k_count);
  for (std::size_t k = 0; k < k_count; ++k) {
    scheduled[k] = scheduled_rate(gamma[k], bw);
  }

  std::vector<std::size_t> outages(k_count, 0);
  for (std::size_t draw = 0; draw < n_draws; ++draw) {
    for (std::size_t k = 0; k < k_count; ++k) {
      const LinkState& v = rsu.vehicles[k];
      const auto h = v.h_est + draw_cn(config.sigma2_rsu, rng);
      const auto g = v.g_est + draw_cn(config.sigma2_bs, rng);
      const double sinr =
          sinr_with(v.large_scale_rsu * std::norm(h),
                    v.large_scale_bs * std::norm(g), k, p_w, alpha, pb, noise);
      if (scheduled[k] > achievable_rate(sinr, bw)) ++outages[k];
    }
  }
  std::vector<double> rate(k_count);
  for (std::size_t k = 0; k < k_count; ++k) {
    rate[k] = static_cast<double>(outages[k]) / static_cast<double>(n_draws);
  }
  return rate;
}

}  // namespace noma_ee
