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

#ifndef NOMA_EE_EXPERIMENTS_HPP
#define NOMA_EE_EXPERIMENTS_HPP

#include <cstdint>
#include <filesystem>
#include <istream>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "noma_ee/alloc.hpp"
#include "noma_ee/baselines.hpp"
#include "noma_ee/config_io.hpp"
#include "noma_ee/gabs.hpp"

namespace noma_ee {

enum class Solver { gabs_dinkelbach, gabs_exhaustive, ofdma, fixed };

std::string to_string(Solver solver);
Solver solver_from_string(const std::string& name);

enum class SweepAxis {
  rsu_power_dbm,
  p_out,
  sigma2_rsu,
  sigma2_bs,
  num_rsus,
  dinkelbach_iteration,
};

std::string to_string(SweepAxis axis);
SweepAxis sweep_axis_from_string(const std::string& name);

void apply_axis(RunConfig& config, SweepAxis axis, double value);

// A search that ran out of iterations. Infeasible QoS is not a failure.
class SolverFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RsuOutcome {
  double ee = 0.0;
  double sumrate_bps = 0.0;
  double p_star_w = 0.0;
  bool feasible = false;
  int dinkelbach_iterations = 0;
  std::vector<double> alpha;
  std::vector<GabsTraceRow> gabs_trace;
  std::vector<DinkelbachTraceRow> dinkelbach_trace;
};

// Runs one solver on one RSU: GABS for P (unless the power is fixed), then
// the solver's allocation at that power.
RsuOutcome solve_rsu(const OutageCoefficients& coeffs, const RunConfig& config,
                     Solver solver);

struct SolverOutcome {
  Solver solver = Solver::gabs_dinkelbach;
  double ee = 0.0;  // summed over RSUs
  double sumrate_bps = 0.0;
  int feasible_rsus = 0;
  double mean_dinkelbach_iterations = 0.0;
  bool failed = false;
  std::string error;
  std::vector<RsuOutcome> rsus;
};

struct TrialResult {
  std::uint64_t seed = 0;
  std::vector<SolverOutcome> outcomes;
};

TrialResult run_trial(const RunConfig& config, std::span<const Solver> solvers,
                      std::uint64_t seed);

struct SweepSpec {
  SweepAxis axis = SweepAxis::p_out;
  std::vector<double> values;
  int trials = 500;
  std::vector<Solver> solvers{Solver::gabs_dinkelbach};
  RunConfig base;
  std::uint64_t seed = 1;
  // Common random numbers across axis values; false mixes the axis index
  // into each trial seed.
  bool paired = true;
  bool keep_traces = false;
  int threads = 0;  // 0: NOMA_EE_THREADS or hardware concurrency
};

void validate(const SweepSpec& spec);

std::uint64_t trial_seed(std::uint64_t seed, int trial, int axis_index,
                         bool paired);

struct SweepRow {
  std::string axis_name;
  double axis_value = 0.0;
  std::string solver;
  double mean_ee = 0.0;
  double std_ee = 0.0;
  double mean_sumrate = 0.0;
  double std_sumrate = 0.0;
  int trials = 0;
  int failures = 0;
  double mean_dinkelbach_iters = 0.0;  // over trials with a feasible RSU

  bool operator==(const SweepRow&) const = default;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  // [axis index][trial], filled only when keep_traces is set.
  std::vector<std::vector<TrialResult>> trials;
};

int worker_count(int requested = 0);

SweepResult run_sweep(const SweepSpec& spec);

inline constexpr const char* kCsvHeader =
    "axis_name,axis_value,solver,mean_ee_bits_per_joule,std_ee,"
    "mean_sumrate_bps,std_sumrate,trials,failures,mean_dinkelbach_iters";

void write_csv(std::ostream& out, const SweepResult& result);
std::vector<SweepRow> read_csv(std::istream& in);
std::string to_json(const SweepResult& result);

// Writes csv_path and a JSON mirror next to it (same stem, .json).
void emit_results(const SweepResult& result,
                  const std::filesystem::path& csv_path);

}  // namespace noma_ee

#endif  // NOMA_EE_EXPERIMENTS_HPP
