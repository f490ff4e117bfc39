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

#ifndef NOMA_EE_CHANNEL_HPP
#define NOMA_EE_CHANNEL_HPP

#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace noma_ee {

using Rng = std::mt19937_64;

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);
double db_to_linear(double db);

enum class PathlossModel { table1, generic_exponent };

std::string to_string(PathlossModel model);
PathlossModel pathloss_model_from_string(const std::string& name);

struct ScenarioConfig {
  double bandwidth_hz = 10e6;
  double noise_power_dbm = -114.0;
  double bs_tx_power_dbm = 40.0;  // total over all B-VUs
  int num_bvus = 4;
  double rsu_power_low_dbm = 15.0;
  double rsu_power_high_dbm = 30.0;
  double circuit_power_dbm = 30.0;
  double r_min_bps_per_hz = 1.5;
  int num_rsus = 1;
  int vehicles_per_rsu = 3;
  double sigma2_rsu = 0.01;
  double sigma2_bs = 0.1;
  double p_out = 0.05;
  double bs_radius_m = 500.0;
  double rsu_radius_m = 30.0;
  double min_bs_vehicle_dist_m = 250.0;
  double min_rsu_vehicle_dist_m = 1.0;
  double vehicle_speed_kmh = 60.0;
  double shadowing_std_db = 8.0;
  double pathloss_exponent = 3.76;
  PathlossModel pathloss_model = PathlossModel::table1;
  std::uint64_t rng_seed = 1;

  double noise_w() const { return dbm_to_watts(noise_power_dbm); }
  double bs_power_total_w() const { return dbm_to_watts(bs_tx_power_dbm); }
  double rsu_power_low_w() const { return dbm_to_watts(rsu_power_low_dbm); }
  double rsu_power_high_w() const { return dbm_to_watts(rsu_power_high_dbm); }
  double circuit_power_w() const { return dbm_to_watts(circuit_power_dbm); }
  // Mean inter-vehicle spacing: 2.5 s of travel at the configured speed.
  double mean_vehicle_spacing_m() const { return 2.5 * vehicle_speed_kmh / 3.6; }

  bool operator==(const ScenarioConfig&) const = default;
};

// Throws ConfigError naming the first offending field.
void validate(const ScenarioConfig& config);

struct LinkState {
  double dist_rsu_m = 0.0;
  double dist_bs_m = 0.0;
  double shadow_rsu = 1.0;
  double shadow_bs = 1.0;
  double large_scale_rsu = 0.0;  // D^2: path loss times shadowing
  double large_scale_bs = 0.0;
  std::complex<double> h_true;
  std::complex<double> g_true;
  std::complex<double> h_est;
  std::complex<double> g_est;

  double gain_rsu() const { return large_scale_rsu * std::norm(h_true); }
  double gain_bs() const { return large_scale_bs * std::norm(g_true); }
};

struct RsuState {
  double position_m = 0.0;
  std::vector<LinkState> vehicles;  // SIC order, weakest first
};

struct Scenario {
  ScenarioConfig config;
  std::vector<RsuState> rsus;
};

double pathloss_linear(double distance_m, PathlossModel model,
                       double exponent = 3.76);

// Ascending permutation of the SIC metric |H|^2 / (|G|^2 sum(P_b) + noise).
std::vector<std::size_t> order_vehicles(std::span<const LinkState> links,
                                        double bs_power_total_w,
                                        double noise_w);

double sic_metric(const LinkState& link, double bs_power_total_w,
                  double noise_w);

// Draws a zero-mean circularly symmetric complex Gaussian with the given
// total variance.
std::complex<double> draw_cn(double variance, Rng& rng);

// Consumes exactly one value from rng; RSU i then draws from its own stream,
// so a given RSU's realization does not depend on num_rsus.
Scenario generate_scenario(const ScenarioConfig& config, Rng& rng);

RsuState generate_rsu(const ScenarioConfig& config, std::uint64_t stream_seed,
                      int rsu_index);

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

std::string scenario_to_json(const Scenario& scenario);

}  // namespace noma_ee

#endif  // NOMA_EE_CHANNEL_HPP
