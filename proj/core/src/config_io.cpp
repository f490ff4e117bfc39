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

#include "noma_ee/config_io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

namespace noma_ee {

bool SolverSettings::operator==(const SolverSettings& o) const {
  const DinkelbachConfig& a = dinkelbach;
  const DinkelbachConfig& b = o.dinkelbach;
  return gabs_step_factor == o.gabs_step_factor &&
         gabs_tolerance_w == o.gabs_tolerance_w &&
         gabs_max_iterations == o.gabs_max_iterations &&
         a.delta_max == b.delta_max && a.max_iterations == b.max_iterations &&
         a.inner == b.inner && a.omega0 == b.omega0 &&
         a.inner_max_iterations == b.inner_max_iterations &&
         grid_resolution == o.grid_resolution &&
         grid_min_fraction == o.grid_min_fraction &&
         fixed_rsu_power_dbm == o.fixed_rsu_power_dbm;
}

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

double parse_double(const std::string& key, const std::string& text) {
  double value = 0.0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw ConfigError(key + ": expected a number, got '" + text + "'");
  }
  return value;
}

template <typename Int>
Int parse_int(const std::string& key, const std::string& text) {
  Int value{};
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError(key + ": expected an integer, got '" + text + "'");
  }
  return value;
}

struct Field {
  const char* name;
  std::function<std::string(const RunConfig&)> get;
  std::function<void(RunConfig&, const std::string&)> set;
};

Field real(const char* name, double ScenarioConfig::*member) {
  return {name,
          [member](const RunConfig& c) { return format_double(c.scenario.*member); },
          [name, member](RunConfig& c, const std::string& v) {
            c.scenario.*member = parse_double(name, v);
          }};
}

Field integer(const char* name, int ScenarioConfig::*member) {
  return {name,
          [member](const RunConfig& c) { return std::to_string(c.scenario.*member); },
          [name, member](RunConfig& c, const std::string& v) {
            c.scenario.*member = parse_int<int>(name, v);
          }};
}

std::string inner_name(InnerMethod m) {
  return m == InnerMethod::barrier ? "barrier" : "dual_subgradient";
}

const std::vector<Field>& fields() {
  static const std::vector<Field> table = {
      real("bandwidth_hz", &ScenarioConfig::bandwidth_hz),
      real("noise_power_dbm", &ScenarioConfig::noise_power_dbm),
      real("bs_tx_power_dbm", &ScenarioConfig::bs_tx_power_dbm),
      integer("num_bvus", &ScenarioConfig::num_bvus),
      real("rsu_power_low_dbm", &ScenarioConfig::rsu_power_low_dbm),
      real("rsu_power_high_dbm", &ScenarioConfig::rsu_power_high_dbm),
      real("circuit_power_dbm", &ScenarioConfig::circuit_power_dbm),
      real("r_min_bps_per_hz", &ScenarioConfig::r_min_bps_per_hz),
      integer("num_rsus", &ScenarioConfig::num_rsus),
      integer("vehicles_per_rsu", &ScenarioConfig::vehicles_per_rsu),
      real("sigma2_rsu", &ScenarioConfig::sigma2_rsu),
      real("sigma2_bs", &ScenarioConfig::sigma2_bs),
      real("p_out", &ScenarioConfig::p_out),
      real("bs_radius_m", &ScenarioConfig::bs_radius_m),
      real("rsu_radius_m", &ScenarioConfig::rsu_radius_m),
      real("min_bs_vehicle_dist_m", &ScenarioConfig::min_bs_vehicle_dist_m),
      real("min_rsu_vehicle_dist_m", &ScenarioConfig::min_rsu_vehicle_dist_m),
      real("vehicle_speed_kmh", &ScenarioConfig::vehicle_speed_kmh),
      real("shadowing_std_db", &ScenarioConfig::shadowing_std_db),
      real("pathloss_exponent", &ScenarioConfig::pathloss_exponent),
      {"pathloss_model",
       [](const RunConfig& c) { return to_string(c.scenario.pathloss_model); },
       [](RunConfig& c, const std::string& v) {
         c.scenario.pathloss_model = pathloss_model_from_string(v);
       }},
      {"rng_seed",
       [](const RunConfig& c) { return std::to_string(c.scenario.rng_seed); },
       [](RunConfig& c, const std::string& v) {
         c.scenario.rng_seed = parse_int<std::uint64_t>("rng_seed", v);
       }},
      {"gabs_step_factor",
       [](const RunConfig& c) { return format_double(c.solver.gabs_step_factor); },
       [](RunConfig& c, const std::string& v) {
         c.solver.gabs_step_factor = parse_double("gabs_step_factor", v);
       }},
      {"gabs_tolerance_w",
       [](const RunConfig& c) { return format_double(c.solver.gabs_tolerance_w); },
       [](RunConfig& c, const std::string& v) {
         c.solver.gabs_tolerance_w = parse_double("gabs_tolerance_w", v);
       }},
      {"gabs_max_iterations",
       [](const RunConfig& c) { return std::to_string(c.solver.gabs_max_iterations); },
       [](RunConfig& c, const std::string& v) {
         c.solver.gabs_max_iterations = parse_int<int>("gabs_max_iterations", v);
       }},
      {"dinkelbach_delta_max",
       [](const RunConfig& c) { return format_double(c.solver.dinkelbach.delta_max); },
       [](RunConfig& c, const std::string& v) {
         c.solver.dinkelbach.delta_max = parse_double("dinkelbach_delta_max", v);
       }},
      {"dinkelbach_max_iterations",
       [](const RunConfig& c) {
         return std::to_string(c.solver.dinkelbach.max_iterations);
       },
       [](RunConfig& c, const std::string& v) {
         c.solver.dinkelbach.max_iterations =
             parse_int<int>("dinkelbach_max_iterations", v);
       }},
      {"inner_method",
       [](const RunConfig& c) { return inner_name(c.solver.dinkelbach.inner); },
       [](RunConfig& c, const std::string& v) {
         if (v == "barrier") {
           c.solver.dinkelbach.inner = InnerMethod::barrier;
         } else if (v == "dual_subgradient") {
           c.solver.dinkelbach.inner = InnerMethod::dual_subgradient;
         } else {
           throw ConfigError("inner_method: expected barrier or dual_subgradient");
         }
       }},
      {"subgradient_step",
       [](const RunConfig& c) { return format_double(c.solver.dinkelbach.omega0); },
       [](RunConfig& c, const std::string& v) {
         c.solver.dinkelbach.omega0 = parse_double("subgradient_step", v);
       }},
      {"inner_max_iterations",
       [](const RunConfig& c) {
         return std::to_string(c.solver.dinkelbach.inner_max_iterations);
       },
       [](RunConfig& c, const std::string& v) {
         c.solver.dinkelbach.inner_max_iterations =
             parse_int<int>("inner_max_iterations", v);
       }},
      {"grid_resolution",
       [](const RunConfig& c) { return std::to_string(c.solver.grid_resolution); },
       [](RunConfig& c, const std::string& v) {
         c.solver.grid_resolution = parse_int<int>("grid_resolution", v);
       }},
      {"grid_min_fraction",
       [](const RunConfig& c) { return format_double(c.solver.grid_min_fraction); },
       [](RunConfig& c, const std::string& v) {
         c.solver.grid_min_fraction = parse_double("grid_min_fraction", v);
       }},
      {"fixed_rsu_power_dbm",
       [](const RunConfig& c) {
         return c.solver.fixed_rsu_power_dbm
                    ? format_double(*c.solver.fixed_rsu_power_dbm)
                    : std::string("none");
       },
       [](RunConfig& c, const std::string& v) {
         if (v == "none") {
           c.solver.fixed_rsu_power_dbm.reset();
         } else {
           c.solver.fixed_rsu_power_dbm = parse_double("fixed_rsu_power_dbm", v);
         }
       }},
  };
  return table;
}

}  // namespace

std::string format_double(double value) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc()) throw std::runtime_error("format_double failed");
  return std::string(buf.data(), ptr);
}

void set_field(RunConfig& config, const std::string& key,
               const std::string& value) {
  for (const Field& f : fields()) {
    if (key == f.name) {
      f.set(config, value);
      return;
    }
  }
  throw ConfigError(key + ": unknown key");
}

std::vector<std::pair<std::string, std::string>> dump_fields(
    const RunConfig& config) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const Field& f : fields()) out.emplace_back(f.name, f.get(config));
  return out;
}

std::string dump_config(const RunConfig& config) {
  std::ostringstream out;
  for (const auto& [key, value] : dump_fields(config)) {
    out << key << " = " << value << '\n';
  }
  return out.str();
}

RunConfig parse_config(std::string_view text, RunConfig base) {
  std::istringstream in{std::string(text)};
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    const std::string body = trim(std::string_view(line).substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(number) +
                        ": expected 'key = value'");
    }
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    try {
      set_field(base, key, value);
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(number) + ": " + e.what());
    }
  }
  return base;
}

RunConfig load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string() + ": cannot open config file");
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return parse_config(text.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

std::pair<std::string, std::string> split_override(const std::string& item) {
  const auto eq = item.find('=');
  if (eq == std::string::npos) {
    throw ConfigError("override '" + item + "': expected key=value");
  }
  return {trim(std::string_view(item).substr(0, eq)),
          trim(std::string_view(item).substr(eq + 1))};
}

}  // namespace noma_ee
