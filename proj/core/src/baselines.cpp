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

#include "noma_ee/baselines.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace noma_ee {

namespace {

// Walks the grid from the strongest vehicle down. A vehicle's QoS depends
// only on its own share and the shares above it, so failing branches are
// cut as soon as that vehicle is placed.
class SimplexWalker {
 public:
  using Accept = std::function<bool(std::size_t k, double share, double tail)>;
  using Score = std::function<void(std::span<const double> alpha)>;

  SimplexWalker(std::size_t k_count, std::vector<double> levels, Accept accept,
                Score score)
      : levels_(std::move(levels)),
        accept_(std::move(accept)),
        score_(std::move(score)),
        alpha_(k_count, 0.0) {}

  void run() { place(alpha_.size() - 1, 0.0); }

 private:
  void place(std::size_t k, double tail) {
    if (k == 0) {
      const double share = 1.0 - tail;
      if (share < 0.0 || !accept_(0, share, tail)) return;
      alpha_[0] = share;
      score_(alpha_);
      return;
    }
    for (double level : levels_) {
      if (tail + level > 1.0) break;
      if (!accept_(k, level, tail)) continue;
      alpha_[k] = level;
      place(k - 1, tail + level);
    }
  }

  std::vector<double> levels_;
  Accept accept_;
  Score score_;
  std::vector<double> alpha_;
};

}  // namespace

std::vector<double> grid_levels(const GridSpec& grid) {
  if (grid.resolution < 2) {
    throw std::invalid_argument("grid resolution must be at least 2");
  }
  if (!(grid.min_fraction > 0.0 && grid.min_fraction < 1.0)) {
    throw std::invalid_argument("grid min_fraction must lie in (0, 1)");
  }
  std::vector<double> levels{0.0};
  const int n = grid.resolution - 1;
  const double lo = std::log10(grid.min_fraction);
  for (int i = 0; i < n; ++i) {
    const double e = n == 1 ? 0.0 : lo * (1.0 - static_cast<double>(i) / (n - 1));
    levels.push_back(std::pow(10.0, e));
  }
  levels.back() = 1.0;
  return levels;
}

BaselineResult exhaustive_search(const OutageCoefficients& coeffs, double p_w,
                                 const EeParams& params, double r_min,
                                 const GridSpec& grid) {
  const std::size_t k_count = coeffs.size();
  if (k_count == 0 || k_count > kMaxExhaustiveVehicles) {
    throw std::invalid_argument("exhaustive_search: need 1 <= K <= 4");
  }
  const double target = std::exp2(r_min) - 1.0;
  BaselineResult best;
  auto accept = [&](std::size_t k, double share, double tail) {
    return coeffs.x[k] * p_w * share >=
           target * (coeffs.y[k] + coeffs.z[k] * p_w * tail);
  };
  auto score = [&](std::span<const double> alpha) {
    ++best.evaluated;
    const double ee = ee_of_power(p_w, alpha, coeffs, params);
    if (!best.feasible || ee > best.ee) {
      best.feasible = true;
      best.ee = ee;
      best.alpha.assign(alpha.begin(), alpha.end());
    }
  };
  SimplexWalker(k_count, grid_levels(grid), accept, score).run();
  if (best.feasible) best.sumrate_bps = sumrate(p_w, best.alpha, coeffs, params);
  return best;
}

double ofdma_sumrate(double p_w, std::span<const double> beta,
                     const OutageCoefficients& coeffs, const EeParams& params) {
  const double k_count = static_cast<double>(beta.size());
  double bits = 0.0;
  for (std::size_t k = 0; k < beta.size(); ++k) {
    bits += std::log2(1.0 + k_count * coeffs.x[k] * p_w * beta[k] / coeffs.y[k]);
  }
  return params.rate_scale() * bits / k_count;
}

double ofdma_ee(double p_w, std::span<const double> beta,
                const OutageCoefficients& coeffs, const EeParams& params) {
  return ofdma_sumrate(p_w, beta, coeffs, params) /
         consumed_power(p_w, beta, params);
}

double ofdma_ee_derivative(double p_w, std::span<const double> beta,
                           const OutageCoefficients& coeffs,
                           const EeParams& params) {
  const double k_count = static_cast<double>(beta.size());
  double d_bits = 0.0;
  for (std::size_t k = 0; k < beta.size(); ++k) {
    const double a = k_count * coeffs.x[k] * beta[k] / coeffs.y[k];
    d_bits += a / (std::numbers::ln2 * (1.0 + a * p_w));
  }
  const double dr = params.rate_scale() * d_bits / k_count;
  const double r = ofdma_sumrate(p_w, beta, coeffs, params);
  const double used = std::accumulate(beta.begin(), beta.end(), 0.0);
  const double power = consumed_power(p_w, beta, params);
  return (dr * power - r * used) / (power * power);
}

std::optional<double> ofdma_power_floor(const OutageCoefficients& coeffs,
                                        double r_min, double p_low,
                                        double p_high) {
  const double k_count = static_cast<double>(coeffs.size());
  const double target = std::exp2(k_count * r_min) - 1.0;
  double need = 0.0;  // watts needed to meet every sub-band target
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    need += target * coeffs.y[k] / (k_count * coeffs.x[k]);
  }
  if (need > p_high) return std::nullopt;
  return std::max(need, p_low);
}

BaselineResult ofdma_baseline(const OutageCoefficients& coeffs, double p_w,
                              const EeParams& params, double r_min,
                              const GridSpec& grid) {
  const std::size_t k_count = coeffs.size();
  if (k_count == 0 || k_count > kMaxExhaustiveVehicles) {
    throw std::invalid_argument("ofdma_baseline: need 1 <= K <= 4");
  }
  const double kd = static_cast<double>(k_count);
  const double target = std::exp2(kd * r_min) - 1.0;
  BaselineResult best;
  auto accept = [&](std::size_t k, double share, double) {
    return kd * coeffs.x[k] * p_w * share >= target * coeffs.y[k];
  };
  auto score = [&](std::span<const double> beta) {
    ++best.evaluated;
    const double ee = ofdma_ee(p_w, beta, coeffs, params);
    if (!best.feasible || ee > best.ee) {
      best.feasible = true;
      best.ee = ee;
      best.alpha.assign(beta.begin(), beta.end());
    }
  };
  SimplexWalker(k_count, grid_levels(grid), accept, score).run();
  if (best.feasible) {
    best.sumrate_bps = ofdma_sumrate(p_w, best.alpha, coeffs, params);
  }
  return best;
}

double fixed_power_noma(std::span<const double> fractions,
                        const OutageCoefficients& coeffs, double p_w,
                        const EeParams& params) {
  return ee_of_power(p_w, fractions, coeffs, params);
}

}  // namespace noma_ee
