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

#include "noma_ee_cli/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "noma_ee/experiments.hpp"

namespace noma_ee::cli {

namespace {

struct CommonOptions {
  std::string config_path;
  std::vector<std::string> overrides;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
  bool trace = false;
  bool dump_config = false;
};

RunConfig build_config(const CommonOptions& opts) {
  RunConfig config =
      opts.config_path.empty() ? RunConfig{} : load_config_file(opts.config_path);
  for (const std::string& item : opts.overrides) {
    const auto [key, value] = split_override(item);
    try {
      set_field(config, key, value);
    } catch (const ConfigError& e) {
      throw ConfigError("--set " + item + ": " + e.what());
    }
  }
  if (opts.seed) config.scenario.rng_seed = *opts.seed;
  validate(config.scenario);
  return config;
}

std::string format_vector(const std::vector<double>& values) {
  std::string text = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) text += ", ";
    text += format_double(values[i]);
  }
  return text + "]";
}

std::filesystem::path prepare_out_dir(const std::string& dir) {
  const std::filesystem::path path = dir.empty() ? "." : dir;
  std::filesystem::create_directories(path);
  return path;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream file(path);
  if (!file) throw std::runtime_error(path.string() + ": cannot open for writing");
  file << text;
  if (!file) throw std::runtime_error(path.string() + ": write failed");
}

struct SolvedRsu {
  OutageCoefficients coeffs;
  RsuOutcome outcome;
};

// Solves every RSU of the configured scenario with one solver.
std::vector<SolvedRsu> solve_scenario(const RunConfig& config, Solver solver,
                                      Scenario& scenario) {
  Rng rng(config.scenario.rng_seed);
  scenario = generate_scenario(config.scenario, rng);
  std::vector<SolvedRsu> solved;
  for (const RsuState& rsu : scenario.rsus) {
    OutageCoefficients coeffs = compute_coefficients(rsu, config.scenario);
    RsuOutcome outcome = solve_rsu(coeffs, config, solver);
    solved.push_back({std::move(coeffs), std::move(outcome)});
  }
  return solved;
}

int run_solve(const CommonOptions& opts, const std::string& solver_name,
              std::ostream& out) {
  const RunConfig config = build_config(opts);
  const Solver solver = solver_from_string(solver_name);
  Scenario scenario;
  const std::vector<SolvedRsu> solved = solve_scenario(config, solver, scenario);

  double system_ee = 0.0;
  double system_rate = 0.0;
  nlohmann::json report;
  report["solver"] = solver_name;
  report["rng_seed"] = config.scenario.rng_seed;
  report["rsus"] = nlohmann::json::array();
  for (std::size_t i = 0; i < solved.size(); ++i) {
    const RsuOutcome& r = solved[i].outcome;
    system_ee += r.ee;
    system_rate += r.sumrate_bps;
    out << "rsu " << i << ": ";
    if (r.p_star_w > 0.0) {
      out << "P* = " << format_double(r.p_star_w) << " W ("
          << format_double(watts_to_dbm(r.p_star_w)) << " dBm), ";
    } else {
      out << "QoS unreachable in the power box, ";
    }
    out << "feasible = " << (r.feasible ? "yes" : "no")
        << ", EE = " << format_double(r.ee) << " bit/J"
        << ", sum-rate = " << format_double(r.sumrate_bps) << " bit/s";
    if (solver == Solver::gabs_dinkelbach) {
      out << ", dinkelbach iterations = " << r.dinkelbach_iterations;
    }
    out << '\n';
    if (!r.alpha.empty()) out << "  alpha = " << format_vector(r.alpha) << '\n';
    report["rsus"].push_back({{"p_star_w", r.p_star_w},
                              {"feasible", r.feasible},
                              {"ee_bits_per_joule", r.ee},
                              {"sumrate_bps", r.sumrate_bps},
                              {"alpha", r.alpha},
                              {"dinkelbach_iterations", r.dinkelbach_iterations}});
  }
  out << "system: EE = " << format_double(system_ee)
      << " bit/J, sum-rate = " << format_double(system_rate) << " bit/s\n";
  report["system_ee_bits_per_joule"] = system_ee;
  report["system_sumrate_bps"] = system_rate;

  if (!opts.out_dir.empty() || opts.trace) {
    const auto dir = prepare_out_dir(opts.out_dir);
    report["scenario"] = nlohmann::json::parse(scenario_to_json(scenario));
    write_text(dir / "solve.json", report.dump(2) + "\n");
    if (opts.trace) {
      for (std::size_t i = 0; i < solved.size(); ++i) {
        const RsuOutcome& r = solved[i].outcome;
        const std::string suffix = "_rsu" + std::to_string(i) + ".csv";
        std::ofstream gabs(dir / ("gabs_trace" + suffix));
        write_gabs_trace_csv(gabs, r.gabs_trace);
        if (solver == Solver::gabs_dinkelbach) {
          std::ofstream dink(dir / ("dinkelbach_trace" + suffix));
          write_dinkelbach_trace_csv(dink, r.dinkelbach_trace);
        }
      }
    }
    out << "wrote " << (dir / "solve.json").string() << '\n';
  }
  return kExitOk;
}

int run_sweep_command(const CommonOptions& opts, const std::string& axis,
                      const std::vector<double>& values, int trials,
                      const std::vector<std::string>& solver_names,
                      bool unpaired, std::ostream& out) {
  SweepSpec spec;
  spec.base = build_config(opts);
  spec.axis = sweep_axis_from_string(axis);
  spec.values = values;
  spec.trials = trials;
  spec.solvers.clear();
  for (const std::string& name : solver_names) {
    spec.solvers.push_back(solver_from_string(name));
  }
  spec.seed = spec.base.scenario.rng_seed;
  spec.paired = !unpaired;
  spec.keep_traces = opts.trace;
  validate(spec);

  const SweepResult result = run_sweep(spec);
  const auto dir = prepare_out_dir(opts.out_dir);
  const auto csv = dir / ("sweep_" + axis + ".csv");
  emit_results(result, csv);
  for (const SweepRow& row : result.rows) {
    out << row.axis_name << " = " << format_double(row.axis_value) << "  "
        << row.solver << ": EE = " << format_double(row.mean_ee)
        << " bit/J over " << row.trials << " trials, " << row.failures
        << " failures\n";
  }
  out << "wrote " << csv.string() << '\n';
  return kExitOk;
}

int run_validate_outage(const CommonOptions& opts, std::size_t draws,
                        std::ostream& out) {
  const RunConfig config = build_config(opts);
  if (draws == 0) throw ConfigError("--draws: must be at least 1");
  Scenario scenario;
  const std::vector<SolvedRsu> solved =
      solve_scenario(config, Solver::gabs_dinkelbach, scenario);
  const double p_out = config.scenario.p_out;
  const double bound =
      p_out + 3.0 * std::sqrt(p_out * (1.0 - p_out) / static_cast<double>(draws));
  bool all_within = true;
  int checked = 0;
  for (std::size_t i = 0; i < solved.size(); ++i) {
    const RsuOutcome& r = solved[i].outcome;
    if (!r.feasible) {
      out << "rsu " << i << ": infeasible, skipped\n";
      continue;
    }
    Rng rng(mix_seed(config.scenario.rng_seed, i + 1));
    const std::vector<double> rates = monte_carlo_outage(
        r.alpha, r.p_star_w, scenario.rsus[i], config.scenario, draws, rng);
    for (std::size_t k = 0; k < rates.size(); ++k) {
      const bool ok = rates[k] <= bound;
      all_within = all_within && ok;
      ++checked;
      out << "rsu " << i << " vehicle " << k << ": outage = "
          << format_double(rates[k]) << ", bound = " << format_double(bound)
          << (ok ? "  ok" : "  EXCEEDED") << '\n';
    }
  }
  if (checked == 0) out << "no feasible RSU to validate\n";
  return all_within ? kExitOk : kExitSolver;
}

int run_bench(const CommonOptions& opts, int trials, std::ostream& out) {
  const RunConfig config = build_config(opts);
  if (trials < 1) throw ConfigError("--trials: must be at least 1");
  using Clock = std::chrono::steady_clock;
  double dink_s = 0.0;
  double exh_s = 0.0;
  int instances = 0;
  int compared = 0;
  double ratio_sum = 0.0;
  double ratio_min = 1.0;
  for (int t = 0; t < trials; ++t) {
    Rng rng(mix_seed(config.scenario.rng_seed, static_cast<std::uint64_t>(t)));
    const Scenario scenario = generate_scenario(config.scenario, rng);
    for (const RsuState& rsu : scenario.rsus) {
      const OutageCoefficients coeffs = compute_coefficients(rsu, config.scenario);
      const auto t0 = Clock::now();
      const RsuOutcome d = solve_rsu(coeffs, config, Solver::gabs_dinkelbach);
      const auto t1 = Clock::now();
      const RsuOutcome e = solve_rsu(coeffs, config, Solver::gabs_exhaustive);
      const auto t2 = Clock::now();
      dink_s += std::chrono::duration<double>(t1 - t0).count();
      exh_s += std::chrono::duration<double>(t2 - t1).count();
      ++instances;
      if (d.feasible && e.feasible) {
        ++compared;
        const double ratio = d.ee / e.ee;
        ratio_sum += ratio;
        ratio_min = std::min(ratio_min, ratio);
      }
    }
  }
  out << "instances: " << instances << '\n'
      << "gabs_dinkelbach: " << format_double(1e3 * dink_s / instances)
      << " ms per RSU\n"
      << "gabs_exhaustive: " << format_double(1e3 * exh_s / instances)
      << " ms per RSU\n";
  if (compared > 0) {
    out << "EE ratio over " << compared << " jointly feasible RSUs: mean "
        << format_double(ratio_sum / compared) << ", min "
        << format_double(ratio_min) << '\n';
  } else {
    out << "no jointly feasible RSU\n";
  }
  return kExitOk;
}

}  // namespace

int parse_and_dispatch(int argc, const char* const* argv, std::ostream& out,
                       std::ostream& err) {
  CLI::App app{"Energy-efficient NOMA power allocation for RSU-assisted V2X",
               "noma-ee"};
  app.fallthrough();
  app.require_subcommand(0, 1);

  CommonOptions opts;
  app.add_option("--config", opts.config_path, "key = value config file")
      ->check(CLI::ExistingFile);
  app.add_option("--set", opts.overrides, "Override one field, key=value")
      ->allow_extra_args(false);
  app.add_option("--seed", opts.seed, "Random seed (overrides rng_seed)");
  app.add_option("--out", opts.out_dir, "Output directory");
  app.add_flag("--trace", opts.trace, "Write per-iteration traces");
  app.add_flag("--dump-config", opts.dump_config,
               "Print the effective config and exit");

  std::string solver_name = "gabs_dinkelbach";
  CLI::App* solve = app.add_subcommand("solve", "Solve one scenario");
  solve->add_option("--solver", solver_name,
                    "gabs_dinkelbach, gabs_exhaustive, ofdma or fixed");

  std::string axis;
  std::vector<double> values;
  int sweep_trials = 500;
  std::vector<std::string> solver_names{"gabs_dinkelbach"};
  bool unpaired = false;
  CLI::App* sweep = app.add_subcommand("sweep", "Monte Carlo sweep over one axis");
  sweep->add_option("--axis", axis, "Sweep axis")->required();
  sweep->add_option("--values", values, "Comma-separated axis values")
      ->required()
      ->delimiter(',');
  sweep->add_option("--trials", sweep_trials, "Trials per axis value");
  sweep->add_option("--solvers", solver_names, "Comma-separated solvers")
      ->delimiter(',');
  sweep->add_flag("--unpaired", unpaired,
                  "Independent draws per axis value instead of common ones");

  std::size_t draws = 10000;
  CLI::App* outage = app.add_subcommand(
      "validate-outage", "Empirical outage of the solved allocation");
  outage->add_option("--draws", draws, "Conditional fading redraws");

  int bench_trials = 20;
  CLI::App* bench =
      app.add_subcommand("bench", "Time GABS-Dinkelbach against exhaustive search");
  bench->add_option("--trials", bench_trials, "Scenarios to time");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (opts.dump_config) {
      out << dump_config(build_config(opts));
      return kExitOk;
    }
    if (app.get_subcommands().empty()) {
      err << app.help();
      return kExitUsage;
    }
    if (solve->parsed()) return run_solve(opts, solver_name, out);
    if (sweep->parsed()) {
      return run_sweep_command(opts, axis, values, sweep_trials, solver_names,
                               unpaired, out);
    }
    if (outage->parsed()) return run_validate_outage(opts, draws, out);
    if (bench->parsed()) return run_bench(opts, bench_trials, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const SolverFailure& e) {
    err << "solver failure: " << e.what() << '\n';
    return kExitSolver;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitSolver;
  }
  return kExitUsage;
}

}  // namespace noma_ee::cli
