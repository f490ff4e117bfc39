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

#include "noma_ee/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

namespace noma_ee {

std::string to_string(Solver solver) {
  switch (solver) {
    case Solver::gabs_dinkelbach: return "gabs_dinkelbach";
    case Solver::gabs_exhaustive: return "gabs_exhaustive";
    case Solver::ofdma: return "ofdma";
    case Solver::fixed: return "fixed";
  }
  return "unknown";
}

Solver solver_from_string(const std::string& name) {
  for (Solver s : {Solver::gabs_dinkelbach, Solver::gabs_exhaustive,
                   Solver::ofdma, Solver::fixed}) {
    if (to_string(s) == name) return s;
  }
  throw ConfigError("unknown solver '" + name + "'");
}

std::string to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::rsu_power_dbm: return "rsu_power_dbm";
    case SweepAxis::p_out: return "p_out";
    case SweepAxis::sigma2_rsu: return "sigma2_rsu";
    case SweepAxis::sigma2_bs: return "sigma2_bs";
    case SweepAxis::num_rsus: return "num_rsus";
    case SweepAxis::dinkelbach_iteration: return "dinkelbach_iteration";
  }
  return "unknown";
}

SweepAxis sweep_axis_from_string(const std::string& name) {
  for (SweepAxis a : {SweepAxis::rsu_power_dbm, SweepAxis::p_out,
                      SweepAxis::sigma2_rsu, SweepAxis::sigma2_bs,
                      SweepAxis::num_rsus, SweepAxis::dinkelbach_iteration}) {
    if (to_string(a) == name) return a;
  }
  throw ConfigError("unknown sweep axis '" + name + "'");
}

namespace {

int as_count(double value, const char* what) {
  if (value < 1 || value != std::floor(value)) {
    throw ConfigError(std::string(what) + ": expected a positive integer");
  }
  return static_cast<int>(value);
}

}  // namespace

void apply_axis(RunConfig& config, SweepAxis axis, double value) {
  switch (axis) {
    case SweepAxis::rsu_power_dbm:
      config.solver.fixed_rsu_power_dbm = value;
      break;
    case SweepAxis::p_out: config.scenario.p_out = value; break;
    case SweepAxis::sigma2_rsu: config.scenario.sigma2_rsu = value; break;
    case SweepAxis::sigma2_bs: config.scenario.sigma2_bs = value; break;
    case SweepAxis::num_rsus:
      config.scenario.num_rsus = as_count(value, "num_rsus");
      break;
    case SweepAxis::dinkelbach_iteration:
      config.solver.dinkelbach.max_iterations =
          as_count(value, "dinkelbach_iteration");
      break;
  }
}

namespace {

GabsConfig gabs_config(const RunConfig& config, double p_low) {
  GabsConfig g;
  g.step_factor = config.solver.gabs_step_factor;
  g.tolerance_w = config.solver.gabs_tolerance_w;
  g.max_iterations = config.solver.gabs_max_iterations;
  g.p_low_w = p_low;
  g.p_high_w = config.scenario.rsu_power_high_w();
  return g;
}

GridSpec grid_spec(const RunConfig& config) {
  return {config.solver.grid_resolution, config.solver.grid_min_fraction};
}

}  // namespace

RsuOutcome solve_rsu(const OutageCoefficients& coeffs, const RunConfig& config,
                     Solver solver) {
  const ScenarioConfig& sc = config.scenario;
  const EeParams params = ee_params(sc);
  const double r_min = sc.r_min_bps_per_hz;
  const double p_low = sc.rsu_power_low_w();
  const double p_high = sc.rsu_power_high_w();
  const auto fixed_power = config.solver.fixed_rsu_power_dbm;
  RsuOutcome out;

  // Power box lower end for this solver; empty when QoS can never be met.
  std::optional<double> floor;
  switch (solver) {
    case Solver::gabs_dinkelbach:
    case Solver::gabs_exhaustive:
      floor = qos_power_floor(coeffs, r_min, p_low, p_high);
      break;
    case Solver::ofdma:
      floor = ofdma_power_floor(coeffs, r_min, p_low, p_high);
      break;
    case Solver::fixed: floor = p_low; break;
  }

  const std::size_t k_count = coeffs.size();
  const std::vector<double> start = solver == Solver::ofdma
                                        ? std::vector<double>(k_count, 1.0 / k_count)
                                        : descending_fractions(k_count);
  if (fixed_power) {
    out.p_star_w = dbm_to_watts(*fixed_power);
  } else {
    if (!floor) return out;
    GabsResult g =
        solver == Solver::ofdma
            ? gabs_optimize(
                  [&](double p) { return ofdma_ee(p, start, coeffs, params); },
                  [&](double p) {
                    return ofdma_ee_derivative(p, start, coeffs, params);
                  },
                  gabs_config(config, *floor))
            : gabs_optimize(coeffs, start, gabs_config(config, *floor), params);
    if (!g.converged) throw SolverFailure("GABS did not converge");
    out.p_star_w = g.p_star;
    out.gabs_trace = std::move(g.trace);
  }
  const double p = out.p_star_w;

  switch (solver) {
    case Solver::gabs_dinkelbach: {
      AllocResult r = dinkelbach_solve(coeffs, p, params, r_min,
                                       config.solver.dinkelbach);
      out.dinkelbach_iterations = r.dinkelbach_iterations;
      out.dinkelbach_trace = std::move(r.trace);
      if (r.feasible) {
        out.feasible = true;
        out.ee = r.q_star;
        out.sumrate_bps = r.sumrate_bps;
        out.alpha = std::move(r.alpha);
      }
      break;
    }
    case Solver::gabs_exhaustive: {
      BaselineResult r =
          exhaustive_search(coeffs, p, params, r_min, grid_spec(config));
      if (r.feasible) {
        out.feasible = true;
        out.ee = r.ee;
        out.sumrate_bps = r.sumrate_bps;
        out.alpha = std::move(r.alpha);
      }
      break;
    }
    case Solver::ofdma: {
      BaselineResult r =
          ofdma_baseline(coeffs, p, params, r_min, grid_spec(config));
      if (r.feasible) {
        out.feasible = true;
        out.ee = r.ee;
        out.sumrate_bps = r.sumrate_bps;
        out.alpha = std::move(r.alpha);
      }
      break;
    }
    case Solver::fixed:
      out.feasible = qos_check(start, coeffs, p, r_min).all_pass;
      out.ee = fixed_power_noma(start, coeffs, p, params);
      out.sumrate_bps = sumrate(p, start, coeffs, params);
      out.alpha = start;
      break;
  }
  return out;
}

TrialResult run_trial(const RunConfig& config, std::span<const Solver> solvers,
                      std::uint64_t seed) {
  TrialResult trial;
  trial.seed = seed;
  Rng rng(seed);
  const Scenario scenario = generate_scenario(config.scenario, rng);
  std::vector<OutageCoefficients> coeffs;
  coeffs.reserve(scenario.rsus.size());
  for (const RsuState& rsu : scenario.rsus) {
    coeffs.push_back(compute_coefficients(rsu, config.scenario));
  }
  for (Solver solver : solvers) {
    SolverOutcome outcome;
    outcome.solver = solver;
    try {
      int iter_total = 0;
      for (const OutageCoefficients& c : coeffs) {
        RsuOutcome rsu = solve_rsu(c, config, solver);
        outcome.ee += rsu.ee;
        outcome.sumrate_bps += rsu.sumrate_bps;
        if (rsu.feasible) {
          ++outcome.feasible_rsus;
          iter_total += rsu.dinkelbach_iterations;
        }
        outcome.rsus.push_back(std::move(rsu));
      }
      if (outcome.feasible_rsus > 0) {
        outcome.mean_dinkelbach_iterations =
            static_cast<double>(iter_total) / outcome.feasible_rsus;
      }
    } catch (const std::exception& e) {
      outcome = SolverOutcome{};
      outcome.solver = solver;
      outcome.failed = true;
      outcome.error = e.what();
    }
    trial.outcomes.push_back(std::move(outcome));
  }
  return trial;
}

void validate(const SweepSpec& spec) {
  if (spec.trials < 1) throw ConfigError("trials: must be at least 1");
  if (spec.solvers.empty()) throw ConfigError("solvers: none requested");
  if (!std::is_sorted(spec.values.begin(), spec.values.end())) {
    throw ConfigError("values: must be sorted ascending");
  }
  validate(spec.base.scenario);
}

std::uint64_t trial_seed(std::uint64_t seed, int trial, int axis_index,
                         bool paired) {
  const std::uint64_t base = mix_seed(seed, static_cast<std::uint64_t>(trial));
  if (paired) return base;
  return mix_seed(base, static_cast<std::uint64_t>(axis_index) + 1);
}

int worker_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("NOMA_EE_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

namespace {

struct Stats {
  double mean = 0.0;
  double std = 0.0;
};

Stats summarize(const std::vector<double>& xs) {
  Stats s;
  if (xs.empty()) return s;
  for (double x : xs) s.mean += x;
  s.mean /= static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - s.mean) * (x - s.mean);
    s.std = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  }
  return s;
}

}  // namespace

SweepResult run_sweep(const SweepSpec& spec) {
  validate(spec);
  const std::size_t n_axis = spec.values.size();
  const auto n_trials = static_cast<std::size_t>(spec.trials);

  std::vector<RunConfig> configs;
  for (double v : spec.values) {
    RunConfig c = spec.base;
    apply_axis(c, spec.axis, v);
    validate(c.scenario);
    configs.push_back(std::move(c));
  }

  std::vector<std::vector<TrialResult>> results(
      n_axis, std::vector<TrialResult>(n_trials));
  std::atomic<std::size_t> next{0};
  const std::size_t jobs = n_axis * n_trials;
  auto work = [&]() {
    for (std::size_t j = next++; j < jobs; j = next++) {
      const std::size_t a = j / n_trials;
      const std::size_t t = j % n_trials;
      results[a][t] = run_trial(
          configs[a], spec.solvers,
          trial_seed(spec.seed, static_cast<int>(t), static_cast<int>(a),
                     spec.paired));
    }
  };
  const int workers = std::min<int>(worker_count(spec.threads),
                                    static_cast<int>(std::max<std::size_t>(jobs, 1)));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& th : pool) th.join();
  }

  SweepResult result;
  for (std::size_t a = 0; a < n_axis; ++a) {
    for (std::size_t s = 0; s < spec.solvers.size(); ++s) {
      std::vector<double> ee;
      std::vector<double> rate;
      std::vector<double> iters;
      int failures = 0;
      for (const TrialResult& tr : results[a]) {
        const SolverOutcome& o = tr.outcomes[s];
        if (o.failed) {
          ++failures;
          continue;
        }
        ee.push_back(o.ee);
        rate.push_back(o.sumrate_bps);
        if (o.feasible_rsus > 0) iters.push_back(o.mean_dinkelbach_iterations);
      }
      const Stats e = summarize(ee);
      const Stats r = summarize(rate);
      SweepRow row;
      row.axis_name = to_string(spec.axis);
      row.axis_value = spec.values[a];
      row.solver = to_string(spec.solvers[s]);
      row.mean_ee = e.mean;
      row.std_ee = e.std;
      row.mean_sumrate = r.mean;
      row.std_sumrate = r.std;
      row.trials = spec.trials - failures;
      row.failures = failures;
      row.mean_dinkelbach_iters = summarize(iters).mean;
      result.rows.push_back(std::move(row));
    }
  }
  if (spec.keep_traces) result.trials = std::move(results);
  return result;
}

void write_csv(std::ostream& out, const SweepResult& result) {
  out << kCsvHeader << '\n';
  for (const SweepRow& r : result.rows) {
    out << r.axis_name << ',' << format_double(r.axis_value) << ',' << r.solver
        << ',' << format_double(r.mean_ee) << ',' << format_double(r.std_ee)
        << ',' << format_double(r.mean_sumrate) << ','
        << format_double(r.std_sumrate) << ',' << r.trials << ','
        << r.failures << ',' << format_double(r.mean_dinkelbach_iters) << '\n';
  }
}

std::vector<SweepRow> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw std::runtime_error("read_csv: header does not match schema");
  }
  std::vector<SweepRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 10) {
      throw std::runtime_error("read_csv: expected 10 columns");
    }
    SweepRow r;
    r.axis_name = cells[0];
    r.axis_value = std::stod(cells[1]);
    r.solver = cells[2];
    r.mean_ee = std::stod(cells[3]);
    r.std_ee = std::stod(cells[4]);
    r.mean_sumrate = std::stod(cells[5]);
    r.std_sumrate = std::stod(cells[6]);
    r.trials = std::stoi(cells[7]);
    r.failures = std::stoi(cells[8]);
    r.mean_dinkelbach_iters = std::stod(cells[9]);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string to_json(const SweepResult& result) {
  using nlohmann::json;
  json rows = json::array();
  for (const SweepRow& r : result.rows) {
    rows.push_back({{"axis_name", r.axis_name},
                    {"axis_value", r.axis_value},
                    {"solver", r.solver},
                    {"mean_ee_bits_per_joule", r.mean_ee},
                    {"std_ee", r.std_ee},
                    {"mean_sumrate_bps", r.mean_sumrate},
                    {"std_sumrate", r.std_sumrate},
                    {"trials", r.trials},
                    {"failures", r.failures},
                    {"mean_dinkelbach_iters", r.mean_dinkelbach_iters}});
  }
  json doc = {{"rows", rows}};
  if (!result.trials.empty()) {
    json traces = json::array();
    for (std::size_t a = 0; a < result.trials.size(); ++a) {
      for (std::size_t t = 0; t < result.trials[a].size(); ++t) {
        const TrialResult& tr = result.trials[a][t];
        for (const SolverOutcome& o : tr.outcomes) {
          json rsus = json::array();
          for (const RsuOutcome& rsu : o.rsus) {
            json gabs = json::array();
            for (const GabsTraceRow& g : rsu.gabs_trace) {
              gabs.push_back({{"iteration", g.iteration},
                              {"p_w", g.p_w},
                              {"de_dp", g.de_dp},
                              {"ee", g.ee}});
            }
            json dink = json::array();
            for (const DinkelbachTraceRow& d : rsu.dinkelbach_trace) {
              dink.push_back({{"iteration", d.iteration},
                              {"q", d.q},
                              {"f_q", d.f_q},
                              {"alpha_sum", d.alpha_sum},
                              {"max_qos_violation", d.max_qos_violation}});
            }
            rsus.push_back({{"ee", rsu.ee},
                            {"sumrate_bps", rsu.sumrate_bps},
                            {"p_star_w", rsu.p_star_w},
                            {"feasible", rsu.feasible},
                            {"alpha", rsu.alpha},
                            {"gabs_trace", gabs},
                            {"dinkelbach_trace", dink}});
          }
          traces.push_back({{"axis_index", a},
                            {"trial", t},
                            {"seed", tr.seed},
                            {"solver", to_string(o.solver)},
                            {"failed", o.failed},
                            {"error", o.error},
                            {"ee", o.ee},
                            {"sumrate_bps", o.sumrate_bps},
                            {"rsus", rsus}});
        }
      }
    }
    doc["traces"] = traces;
  }
  return doc.dump(2);
}

void emit_results(const SweepResult& result,
                  const std::filesystem::path& csv_path) {
  if (csv_path.has_parent_path()) {
    std::filesystem::create_directories(csv_path.parent_path());
  }
  {
    std::ofstream csv(csv_path, std::ios::binary);
    if (!csv) throw std::runtime_error(csv_path.string() + ": cannot write");
    write_csv(csv, result);
    if (!csv) throw std::runtime_error(csv_path.string() + ": write failed");
  }
  std::filesystem::path json_path = csv_path;
  json_path.replace_extension(".json");
  std::ofstream js(json_path, std::ios::binary);
  if (!js) throw std::runtime_error(json_path.string() + ": cannot write");
  js << to_json(result) << '\n';
  if (!js) throw std::runtime_error(json_path.string() + ": write failed");
}

}  // namespace noma_ee
