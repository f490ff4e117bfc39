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

#include "noma_ee/channel.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <numeric>

#include "json.hpp"

namespace noma_ee {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void require(bool ok, const char* field, const char* what) {
  if (!ok) throw ConfigError(std::string(field) + ": " + what);
}

bool finite(double v) { return std::isfinite(v); }

}  // namespace

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double watts_to_dbm(double watts) { return 10.0 * std::log10(watts) + 30.0; }

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

std::string to_string(PathlossModel model) {
  return model == PathlossModel::table1 ? "table1" : "generic_exponent";
}

PathlossModel pathloss_model_from_string(const std::string& name) {
  if (name == "table1") return PathlossModel::table1;
  if (name == "generic_exponent") return PathlossModel::generic_exponent;
  throw ConfigError("pathloss_model: unknown model '" + name + "'");
}

void validate(const ScenarioConfig& c) {
  require(finite(c.bandwidth_hz) && c.bandwidth_hz > 0, "bandwidth_hz",
          "must be positive");
  require(finite(c.noise_power_dbm), "noise_power_dbm", "must be finite");
  require(finite(c.bs_tx_power_dbm), "bs_tx_power_dbm", "must be finite");
  require(c.num_bvus >= 1, "num_bvus", "must be at least 1");
  require(finite(c.rsu_power_low_dbm), "rsu_power_low_dbm", "must be finite");
  require(finite(c.rsu_power_high_dbm), "rsu_power_high_dbm",
          "must be finite");
  require(c.rsu_power_low_dbm < c.rsu_power_high_dbm, "rsu_power_low_dbm",
          "must be below rsu_power_high_dbm");
  require(finite(c.circuit_power_dbm), "circuit_power_dbm", "must be finite");
  require(finite(c.r_min_bps_per_hz) && c.r_min_bps_per_hz >= 0,
          "r_min_bps_per_hz", "must be non-negative");
  require(c.num_rsus >= 1, "num_rsus", "must be at least 1");
  require(c.vehicles_per_rsu >= 1, "vehicles_per_rsu", "must be at least 1");
  require(c.sigma2_rsu >= 0 && c.sigma2_rsu < 1, "sigma2_rsu",
          "must lie in [0, 1)");
  require(c.sigma2_bs >= 0 && c.sigma2_bs < 1, "sigma2_bs",
          "must lie in [0, 1)");
  require(c.p_out > 0 && c.p_out < 1, "p_out", "must lie in (0, 1)");
  require(finite(c.bs_radius_m) && c.bs_radius_m > 0, "bs_radius_m",
          "must be positive");
  require(finite(c.rsu_radius_m) && c.rsu_radius_m > 0, "rsu_radius_m",
          "must be positive");
  require(c.min_bs_vehicle_dist_m > 0 &&
              c.min_bs_vehicle_dist_m <= c.bs_radius_m,
          "min_bs_vehicle_dist_m", "must lie in (0, bs_radius_m]");
  require(finite(c.min_rsu_vehicle_dist_m) && c.min_rsu_vehicle_dist_m > 0,
          "min_rsu_vehicle_dist_m", "must be positive");
  require(finite(c.vehicle_speed_kmh) && c.vehicle_speed_kmh > 0,
          "vehicle_speed_kmh", "must be positive");
  require(finite(c.shadowing_std_db) && c.shadowing_std_db >= 0,
          "shadowing_std_db", "must be non-negative");
  require(finite(c.pathloss_exponent) && c.pathloss_exponent > 0,
          "pathloss_exponent", "must be positive");
}

double pathloss_linear(double distance_m, PathlossModel model,
                       double exponent) {
  if (!(distance_m > 0)) {
    throw std::domain_error("pathloss_linear: distance must be positive");
  }
  if (model == PathlossModel::table1) {
    const double loss_db = 128.1 + 37.6 * std::log10(distance_m / 1000.0);
    return std::pow(10.0, -loss_db / 10.0);
  }
  return std::pow(distance_m, -exponent);
}

double sic_metric(const LinkState& link, double bs_power_total_w,
                  double noise_w) {
  return link.gain_rsu() / (link.gain_bs() * bs_power_total_w + noise_w);
}

std::vector<std::size_t> order_vehicles(std::span<const LinkState> links,
                                        double bs_power_total_w,
                                        double noise_w) {
  std::vector<double> metric(links.size());
  for (std::size_t k = 0; k < links.size(); ++k) {
    metric[k] = sic_metric(links[k], bs_power_total_w, noise_w);
  }
  std::vector<std::size_t> perm(links.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
    return metric[a] < metric[b];
  });
  return perm;
}

std::complex<double> draw_cn(double variance, Rng& rng) {
  if (variance <= 0) return {0.0, 0.0};
  std::normal_distribution<double> normal(0.0, std::sqrt(variance / 2.0));
  const double re = normal(rng);
  const double im = normal(rng);
  return {re, im};
}

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  return splitmix64(a ^ splitmix64(b + 0x632be59bd9b4e019ULL));
}

RsuState generate_rsu(const ScenarioConfig& config, std::uint64_t stream_seed,
                      int rsu_index) {
  Rng rng(mix_seed(stream_seed, static_cast<std::uint64_t>(rsu_index)));
  const auto k_count = static_cast<std::size_t>(config.vehicles_per_rsu);
  const double radius = config.rsu_radius_m;

  std::exponential_distribution<double> spacing(
      1.0 / config.mean_vehicle_spacing_m());
  std::vector<double> drop;
  while (drop.size() < k_count) {
    drop.clear();
    double x = -radius + spacing(rng);
    while (x < radius) {
      drop.push_back(x);
      x += spacing(rng);
    }
  }
  std::vector<double> chosen;
  chosen.reserve(k_count);
  std::sample(drop.begin(), drop.end(), std::back_inserter(chosen), k_count,
              rng);

  std::uniform_real_distribution<double> bs_dist(config.min_bs_vehicle_dist_m,
                                                 config.bs_radius_m);
  std::normal_distribution<double> shadow_db(0.0, config.shadowing_std_db);

  RsuState rsu;
  rsu.position_m = (2.0 * rsu_index + 1.0) * radius;
  rsu.vehicles.resize(k_count);
  for (std::size_t k = 0; k < k_count; ++k) {
    LinkState& v = rsu.vehicles[k];
    v.dist_rsu_m = std::max(std::abs(chosen[k]), config.min_rsu_vehicle_dist_m);
    v.dist_bs_m = bs_dist(rng);
    v.shadow_rsu = db_to_linear(shadow_db(rng));
    v.shadow_bs = db_to_linear(shadow_db(rng));
    v.large_scale_rsu =
        pathloss_linear(v.dist_rsu_m, config.pathloss_model,
                        config.pathloss_exponent) *
        v.shadow_rsu;
    v.large_scale_bs =
        pathloss_linear(v.dist_bs_m, config.pathloss_model,
                        config.pathloss_exponent) *
        v.shadow_bs;
    v.h_est = draw_cn(1.0 - config.sigma2_rsu, rng);
    v.g_est = draw_cn(1.0 - config.sigma2_bs, rng);
    v.h_true = v.h_est + draw_cn(config.sigma2_rsu, rng);
    v.g_true = v.g_est + draw_cn(config.sigma2_bs, rng);
  }

  const auto perm = order_vehicles(rsu.vehicles, config.bs_power_total_w(),
                                   config.noise_w());
  std::vector<LinkState> ordered;
  ordered.reserve(k_count);
  for (std::size_t idx : perm) ordered.push_back(rsu.vehicles[idx]);
  rsu.vehicles = std::move(ordered);
  return rsu;
}

Scenario generate_scenario(const ScenarioConfig& config, Rng& rng) {
  validate(config);
  const std::uint64_t stream_seed = rng();
  Scenario scenario;
  scenario.config = config;
  scenario.rsus.reserve(static_cast<std::size_t>(config.num_rsus));
  for (int i = 0; i < config.num_rsus; ++i) {
    scenario.rsus.push_back(generate_rsu(config, stream_seed, i));
  }
  return scenario;
}

std::string scenario_to_json(const Scenario& scenario) {
  using nlohmann::json;
  const ScenarioConfig& c = scenario.config;
  json cfg = {
      {"bandwidth_hz", c.bandwidth_hz},
      {"noise_power_dbm", c.noise_power_dbm},
      {"bs_tx_power_dbm", c.bs_tx_power_dbm},
      {"num_bvus", c.num_bvus},
      {"rsu_power_low_dbm", c.rsu_power_low_dbm},
      {"rsu_power_high_dbm", c.rsu_power_high_dbm},
      {"circuit_power_dbm", c.circuit_power_dbm},
      {"r_min_bps_per_hz", c.r_min_bps_per_hz},
      {"num_rsus", c.num_rsus},
      {"vehicles_per_rsu", c.vehicles_per_rsu},
      {"sigma2_rsu", c.sigma2_rsu},
      {"sigma2_bs", c.sigma2_bs},
      {"p_out", c.p_out},
      {"bs_radius_m", c.bs_radius_m},
      {"rsu_radius_m", c.rsu_radius_m},
      {"min_bs_vehicle_dist_m", c.min_bs_vehicle_dist_m},
      {"min_rsu_vehicle_dist_m", c.min_rsu_vehicle_dist_m},
      {"vehicle_speed_kmh", c.vehicle_speed_kmh},
      {"shadowing_std_db", c.shadowing_std_db},
      {"pathloss_exponent", c.pathloss_exponent},
      {"pathloss_model", to_string(c.pathloss_model)},
      {"rng_seed", c.rng_seed},
  };
  auto cplx = [](std::complex<double> z) { return json::array({z.real(), z.imag()}); };
  json rsus = json::array();
  for (const RsuState& rsu : scenario.rsus) {
    json vehicles = json::array();
    for (const LinkState& v : rsu.vehicles) {
      vehicles.push_back({
          {"dist_rsu_m", v.dist_rsu_m},
          {"dist_bs_m", v.dist_bs_m},
          {"shadow_rsu", v.shadow_rsu},
          {"shadow_bs", v.shadow_bs},
          {"large_scale_rsu", v.large_scale_rsu},
          {"large_scale_bs", v.large_scale_bs},
          {"h_true", cplx(v.h_true)},
          {"g_true", cplx(v.g_true)},
          {"h_est", cplx(v.h_est)},
          {"g_est", cplx(v.g_est)},
          {"gain_rsu", v.gain_rsu()},
          {"gain_bs", v.gain_bs()},
      });
    }
    rsus.push_back({{"position_m", rsu.position_m}, {"vehicles", vehicles}});
  }
  return json{{"config", cfg}, {"rsus", rsus}}.dump(2);
}

}  // namespace noma_ee
