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

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "doctest.h"
#include "noma_ee/gabs.hpp"
#include "support.hpp"

namespace {

using namespace noma_ee;

double central_difference(const std::function<double(double)>& f, double x) {
  const double h = 1e-6 * x;
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

}  // namespace

TEST_SUITE("gabs") {

TEST_CASE("EE of a silent allocation is zero") {
  const OutageCoefficients co = testing::draw_coefficients(3);
  const std::vector<double> zero(3, 0.0);
  CHECK(ee_of_power(0.5, zero, co, EeParams{}) == 0.0);
}

TEST_CASE("single-vehicle EE closed form") {
  const OutageCoefficients co{{2.0}, {1.0}, {0.0}};
  const EeParams params{1.0, 0.0, 0.0};
  const std::vector<double> a{1.0};
  const double p = 0.5;  // X p / Y = 1
  CHECK(ee_of_power(p, a, co, params) == doctest::Approx(1.0 / p));
}

TEST_CASE("EE composes rates and consumed power") {
  const ScenarioConfig sc;
  const EeParams params = ee_params(sc);
  Rng rng(17);
  for (int i = 0; i < 20; ++i) {
    const OutageCoefficients co = testing::draw_coefficients(200 + i);
    const std::vector<double> a = testing::random_simplex(rng, 3);
    const double p = 0.1 + 0.8 * i / 20.0;
    std::vector<double> rates;
    for (std::size_t k = 0; k < 3; ++k) {
      rates.push_back(scheduled_rate(transformed_sinr(co, k, p, a), sc.bandwidth_hz));
    }
    const double expected = rsu_average_sumrate(rates, sc.p_out) /
                            (p * (a[0] + a[1] + a[2]) + sc.circuit_power_w());
    CHECK(testing::rel_diff(ee_of_power(p, a, co, params), expected) < 1e-12);
  }
}

TEST_CASE("analytic derivatives match finite differences") {
  const EeParams params = ee_params(ScenarioConfig{});
  Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    const OutageCoefficients co = testing::draw_coefficients(300 + i);
    const std::vector<double> a = testing::random_simplex(rng, 3);
    const double p = 0.0316 + 0.95 * std::uniform_real_distribution<double>()(rng);
    const double fd_rate = central_difference(
        [&](double x) { return sumrate(x, a, co, params); }, p);
    CHECK(testing::rel_diff(sumrate_derivative(p, a, co, params), fd_rate) < 1e-6);
    const double fd_ee = central_difference(
        [&](double x) { return ee_of_power(x, a, co, params); }, p);
    CHECK(testing::rel_diff(ee_derivative(p, a, co, params), fd_ee) < 1e-6);
    const double fd_second = central_difference(
        [&](double x) { return sumrate_derivative(x, a, co, params); }, p);
    CHECK(testing::rel_diff(sumrate_second_derivative(p, a, co, params),
                            fd_second) < 1e-5);
    CHECK(sumrate_second_derivative(p, a, co, params) < 0.0);
  }
}

TEST_CASE("single-vehicle derivative collapses to one term") {
  const OutageCoefficients co{{3e-5}, {2e-10}, {1e-3}};
  const EeParams params{1.0, 0.0, 1.0};
  const std::vector<double> a{0.8};
  const double p = 0.4;
  const double x = co.x[0];
  const double y = co.y[0];
  CHECK(sumrate_derivative(p, a, co, params) ==
        doctest::Approx(x * a[0] / (std::numbers::ln2 * (x * a[0] * p + y))));
}

TEST_CASE("descending fractions") {
  const std::vector<double> f = descending_fractions(3);
  CHECK(f[0] == doctest::Approx(4.0 / 7.0));
  CHECK(f[1] == doctest::Approx(2.0 / 7.0));
  CHECK(f[2] == doctest::Approx(1.0 / 7.0));
  CHECK(descending_fractions(1) == std::vector<double>{1.0});
}

TEST_CASE("synthetic unimodal function") {
  const double peak = 0.3712;
  auto ee = [&](double p) { return -(p - peak) * (p - peak); };
  auto de = [&](double p) { return -2.0 * (p - peak); };
  GabsConfig cfg;
  const GabsResult r = gabs_optimize(ee, de, cfg);
  CHECK(r.converged);
  CHECK(std::abs(r.p_star - peak) <= cfg.tolerance_w);
  CHECK(r.bracket_low_w <= peak);
  CHECK(r.bracket_high_w >= peak);
}

TEST_CASE("monotone objective clamps to the box") {
  GabsConfig cfg;
  const GabsResult up = gabs_optimize([](double p) { return p; },
                                      [](double) { return 1.0; }, cfg);
  CHECK(up.converged);
  CHECK(up.p_star == cfg.p_high_w);
  const GabsResult down = gabs_optimize([](double p) { return -p; },
                                        [](double) { return -1.0; }, cfg);
  CHECK(down.p_star == cfg.p_low_w);
}

TEST_CASE("iteration cap reports non-convergence with a trace") {
  auto de = [](double p) { return -2.0 * (p - 0.4); };
  GabsConfig cfg;
  cfg.max_iterations = 3;
  cfg.tolerance_w = 1e-12;
  const GabsResult r = gabs_optimize([](double) { return 0.0; }, de, cfg);
  CHECK_FALSE(r.converged);
  CHECK_FALSE(r.trace.empty());
}

TEST_CASE("invalid configuration is rejected") {
  GabsConfig cfg;
  cfg.step_factor = 1.0;
  auto f = [](double) { return 0.0; };
  CHECK_THROWS_AS(gabs_optimize(f, f, cfg), std::invalid_argument);
  cfg = {};
  cfg.tolerance_w = 0.0;
  CHECK_THROWS_AS(gabs_optimize(f, f, cfg), std::invalid_argument);
}

TEST_CASE("GABS matches a dense grid on random instances") {
  const EeParams params = ee_params(ScenarioConfig{});
  const std::vector<double> a = descending_fractions(3);
  GabsConfig cfg;
  const int n = 100000;
  const double spacing = (cfg.p_high_w - cfg.p_low_w) / (n - 1);
  for (int i = 0; i < 10; ++i) {
    const OutageCoefficients co = testing::draw_coefficients(400 + i);
    const GabsResult r = gabs_optimize(co, a, cfg, params);
    double best_p = cfg.p_low_w;
    double best = -1.0;
    for (int j = 0; j < n; ++j) {
      const double p = cfg.p_low_w + spacing * j;
      const double e = ee_of_power(p, a, co, params);
      if (e > best) {
        best = e;
        best_p = p;
      }
    }
    CHECK(std::abs(r.p_star - best_p) <= spacing + cfg.tolerance_w);
  }
}

TEST_CASE("bracket holds the derivative sign change") {
  const EeParams params = ee_params(ScenarioConfig{});
  const std::vector<double> a = descending_fractions(3);
  for (int i = 0; i < 50; ++i) {
    const OutageCoefficients co = testing::draw_coefficients(500 + i);
    const GabsResult r = gabs_optimize(co, a, GabsConfig{}, params);
    REQUIRE(r.converged);
    if (r.bracket_low_w < r.bracket_high_w) {
      CHECK(ee_derivative(r.bracket_low_w, a, co, params) >= 0.0);
      CHECK(ee_derivative(r.bracket_high_w, a, co, params) <= 0.0);
    }
  }
}

TEST_CASE("result does not depend on the interior start") {
  const EeParams params = ee_params(ScenarioConfig{});
  const std::vector<double> a = descending_fractions(3);
  for (int i = 0; i < 30; ++i) {
    const OutageCoefficients co = testing::draw_coefficients(600 + i);
    GabsConfig cfg;
    const double mid = gabs_optimize(co, a, cfg, params).p_star;
    for (double start : {0.05, 0.2, 0.9}) {
      cfg.start_w = start;
      CHECK(std::abs(gabs_optimize(co, a, cfg, params).p_star - mid) <=
            2.0 * cfg.tolerance_w);
    }
  }
}

TEST_CASE("iteration bound") {
  CHECK(iteration_bound(2.0, 1e-3, 1.0) == 10);
  CHECK_THROWS_AS(iteration_bound(2.0, 1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(iteration_bound(2.0, 2.0, 1.0), std::domain_error);
}

TEST_CASE("trace CSV") {
  std::vector<GabsTraceRow> rows{{0, 0.5, 1.5, 2.5}, {1, 0.25, -1.0, 3.0}};
  std::ostringstream out;
  write_gabs_trace_csv(out, rows);
  const std::string text = out.str();
  CHECK(text.rfind("iteration,p_w,de_dp,ee_bits_per_joule\n", 0) == 0);
  CHECK(text.find("1,0.25,-1,3") != std::string::npos);
}

}  // TEST_SUITE
