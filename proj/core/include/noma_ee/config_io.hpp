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

#ifndef NOMA_EE_CONFIG_IO_HPP
#define NOMA_EE_CONFIG_IO_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "noma_ee/alloc.hpp"
#include "noma_ee/channel.hpp"

namespace noma_ee {

struct SolverSettings {
  double gabs_step_factor = 2.0;
  double gabs_tolerance_w = 1e-4;
  int gabs_max_iterations = 200;
  DinkelbachConfig dinkelbach;
  int grid_resolution = 200;
  double grid_min_fraction = 1e-12;
  // When set, every RSU transmits at this power and GABS is skipped.
  std::optional<double> fixed_rsu_power_dbm;

  bool operator==(const SolverSettings& other) const;
};

struct RunConfig {
  ScenarioConfig scenario;
  SolverSettings solver;

  bool operator==(const RunConfig&) const = default;
};

std::string format_double(double value);

// Throws ConfigError for unknown keys or values of the wrong type.
void set_field(RunConfig& config, const std::string& key,
               const std::string& value);

std::vector<std::pair<std::string, std::string>> dump_fields(
    const RunConfig& config);

// One "key = value" line per field, in a stable order.
std::string dump_config(const RunConfig& config);

// Flat "key = value" text with '#' comments. Errors carry the line number.
RunConfig parse_config(std::string_view text, RunConfig base = {});

RunConfig load_config_file(const std::filesystem::path& path);

// Parses "key=value" as used by --set.
std::pair<std::string, std::string> split_override(const std::string& item);

}  // namespace noma_ee

#endif  // NOMA_EE_CONFIG_IO_HPP
