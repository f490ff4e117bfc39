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

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "doctest.h"
#include "noma_ee/alloc.hpp"
#include "support.hpp"

namespace {

using namespace noma_ee;

constexpr double kLn2 = std::numbers::ln2;

double sum(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0);
}

// Coefficients for which alpha is exactly QoS-tight under the given SCA point.
OutageCoefficients tight_coefficients(const std::vector<double>& alpha,
                                      const ScaPoint& sca, double p,
                                      double r_min) {
  OutageCoefficients c{{}, {1.0, 0.5, 0.25}, {2.0, 1.5, 1.0}};
  const std::vector<double> t = sca_thresholds(sca, r_min);
  const std::vector<double> s = interference_sums(alpha);
  for (std::size_t k = 0; k < alpha.size(); ++k) {
    c.x.push_back(t[k] * (c.y[k] + c.z[k] * p * s[k]) / (p * alpha[k]));
  }
  return c;
}

}  // namespace

TEST_SUITE("alloc") {

TEST_CASE("SCA coefficients at known anchors") {
  const std::vector<double> g{1.0, 3.0};
  const ScaPoint s = sca_coefficients(g);
  CHECK(s.pi[0] == doctest::Approx(0.5));
  CHECK(s.phi[0] == doctest::Approx(1.0));
  CHECK(s.pi[1] == doctest::Approx(0.75));
  CHECK(s.phi[1] == doctest::Approx(2.0 - 0.75 * std::log2(3.0)));
  CHECK(s.phi[1] == doctest::Approx(0.8113).epsilon(1e-4));
}

TEST_CASE("SCA anchor is floored and bad input rejected") {
  const std::vector<double> zero{0.0};
  const ScaPoint s = sca_coefficients(zero);
  CHECK(s.anchor[0] == kScaSinrFloor);
  CHECK(std::isfinite(s.phi[0]));
  const std::vector<double> neg{-1.0};
  CHECK_THROWS_AS(sca_coefficients(neg), std::domain_error);
  const std::vector<double> inf{INFINITY};
  CHECK_THROWS_AS(sca_coefficients(inf), std::domain_error);
}

TEST_CASE("SCA bound lies below the rate and touches it at the anchor") {
  Rng rng(12);
  std::uniform_real_distribution<double> u(-6.0, 4.0);
  for (int i = 0; i < 50; ++i) {
    const double g0 = std::pow(10.0, u(rng));
    const double g = std::pow(10.0, u(rng));
    const std::vector<double> a{g0};
    const ScaPoint s = sca_coefficients(a);
    CHECK(sca_bound(s.pi[0], s.phi[0], g) <= std::log2(1.0 + g) + 1e-15);
    CHECK(std::abs(sca_bound(s.pi[0], s.phi[0], g0) - std::log2(1.0 + g0)) < 1e-12);
  }
}

TEST_CASE("closed form for the first vehicle") {
  const OutageCoefficients c{{1.0}, {1.0}, {1.0}};
  const ScaPoint sca{{0.5}, {1.0}, {1.0}};
  const AllocContext ctx{c, 1.0, EeParams{1.0, 0.0, 1.0}, 0.0};
  DualState dual;
  dual.mu = {0.0};
  dual.lambda = 0.4;
  const std::vector<double> prev{1.0};
  const auto a = closed_form_alpha(0, 0.6, dual, sca, ctx, prev);
  REQUIRE(a.has_value());
  CHECK(*a == doctest::Approx(0.5 / kLn2));
  CHECK(*a == doctest::Approx(0.7213).epsilon(1e-4));
}

TEST_CASE("non-positive denominator is reported") {
  const OutageCoefficients c{{1.0}, {1.0}, {1.0}};
  const ScaPoint sca{{0.5}, {1.0}, {1.0}};
  const AllocContext ctx{c, 1.0, EeParams{1.0, 0.0, 1.0}, 0.0};
  DualState dual;
  dual.mu = {10.0};
  const std::vector<double> prev{1.0};
  CHECK_FALSE(closed_form_alpha(0, 0.1, dual, sca, ctx, prev).has_value());
}

TEST_CASE("theta vanishes without multiplier or weight") {
  const OutageCoefficients c{{1.0, 1.0}, {1.0, 1.0}, {1.0, 1.0}};
  const ScaPoint sca{{0.0, 0.5}, {0.0, 1.0}, {0.0, 1.0}};
  const AllocContext ctx{c, 1.0, EeParams{}, 1.0};
  DualState dual;
  dual.mu = {0.0, 3.0};
  const std::vector<double> a{0.5, 0.5};
  const std::vector<double> t{1.0, 1.0};
  CHECK(theta(0, a, dual, sca, t, ctx) == 0.0);
}

TEST_CASE("closed form is a stationary point of the Lagrangian") {
  const RunConfig config;
  const EeParams params = ee_params(config.scenario);
  Rng rng(21);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int checked = 0;
  for (const auto& inst : testing::feasible_instances(20, 21, config)) {
    const double p = inst.p_w;
    std::vector<double> a = *initial_allocation(inst.coeffs, p, 1.5);
    const ScaPoint sca = sca_coefficients(transformed_sinrs(inst.coeffs, p, a));
    const AllocContext ctx{inst.coeffs, p, params, 1.5};
    const double q = ee_of_power(p, a, inst.coeffs, params);
    DualState dual;
    dual.mu = {0.0, 0.0, 0.0};
    dual.lambda = params.rate_scale() * u(rng);
    for (std::size_t k = 1; k < 3; ++k) {
      const auto exact = closed_form_alpha_exact(k, q, dual, sca, ctx, a);
      if (!exact || *exact <= 0.0 || *exact >= 1.0) continue;
      a[k] = *exact;
      const double scale = params.rate_scale() * sca.pi[k] / (kLn2 * a[k]);
      CHECK(std::abs(lagrangian_gradient(a, dual, q, sca, ctx)[k]) / scale < 1e-8);
      // The frozen form reproduces a fixed point.
      const auto frozen = closed_form_alpha(k, q, dual, sca, ctx, a);
      REQUIRE(frozen.has_value());
      CHECK(testing::rel_diff(*frozen, a[k]) < 1e-9);
      ++checked;
    }
  }
  CHECK(checked > 20);
}

TEST_CASE("subgradient update: zero subgradient and projection") {
  const std::vector<double> a{0.6, 0.3, 0.1};
  const ScaPoint sca = sca_coefficients(std::vector<double>{2.0, 5.0, 9.0});
  const double p = 0.7;
  const OutageCoefficients co = tight_coefficients(a, sca, p, 1.5);
  const AllocContext ctx{co, p, EeParams{}, 1.5};
  DualState dual;
  dual.mu = {0.3, 1.2, 4.0};
  dual.lambda = 2.5;
  const DualState next = subgradient_update(dual, a, sca, ctx);
  CHECK(next.lambda == doctest::Approx(dual.lambda));
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(next.mu[k] == doctest::Approx(dual.mu[k]).epsilon(1e-9));
  }

  const std::vector<double> under{0.3, 0.2, 0.1};
  DualState zero;
  zero.mu = {0.0, 0.0, 0.0};
  zero.lambda = 0.0;
  CHECK(subgradient_update(zero, under, sca, ctx).lambda == 0.0);
}

TEST_CASE("dual loop reaches complementary slackness on a unit-scale instance") {
  const OutageCoefficients co{{4.0, 6.0, 9.0}, {1.0, 1.0, 1.0}, {1.0, 1.0, 1.0}};
  const double p = 1.0;
  const EeParams params{1.0, 0.0, 1.0};
  const double r_min = 0.2;
  std::vector<double> a{0.5, 0.3, 0.2};
  const ScaPoint sca = sca_coefficients(transformed_sinrs(co, p, a));
  const AllocContext ctx{co, p, params, r_min};
  const double q = ee_of_power(p, a, co, params);
  DualState dual;
  dual.mu = {0.0, 0.0, 0.0};
  dual.lambda = 0.0;
  for (int it = 0; it < 500; ++it) {
    for (std::size_t k = 1; k < 3; ++k) {
      if (auto v = closed_form_alpha(k, q, dual, sca, ctx, a)) a[k] = *v;
    }
    a[0] = std::max(0.0, 1.0 - a[1] - a[2]);
    dual = subgradient_update(dual, a, sca, ctx);
  }
  const std::vector<double> t = sca_thresholds(sca, r_min);
  const std::vector<double> s = interference_sums(a);
  for (std::size_t k = 0; k < 3; ++k) {
    const double slack = co.x[k] * p * a[k] - t[k] * (co.y[k] + co.z[k] * p * s[k]);
    CHECK(std::abs(dual.mu[k] * slack) < 1e-4);
    CHECK(dual.mu[k] >= 0.0);
  }
  CHECK(dual.lambda >= 0.0);
}

TEST_CASE("single vehicle takes the whole budget") {
  const OutageCoefficients co{{2e-5}, {1e-10}, {1e-3}};
  const EeParams params;
  const double p = 0.3;
  const AllocResult r = dinkelbach_solve(co, p, params, 1.5);
  CHECK(r.alpha == std::vector<double>{1.0});
  CHECK(r.dinkelbach_iterations == 1);
  CHECK(r.q_star == doctest::Approx(params.rate_scale() *
                                    std::log2(1.0 + co.x[0] * p / co.y[0]) /
                                    (p + params.circuit_w)));
}

TEST_CASE("symmetric pair without QoS matches a grid over the split") {
  const OutageCoefficients co{{3e-5, 3e-5}, {2e-10, 2e-10}, {4e-3, 4e-3}};
  const EeParams params;
  const double p = 0.25;
  const AllocResult r = dinkelbach_solve(co, p, params, 0.0);
  REQUIRE(r.feasible);
  double best = 0.0;
  const int n = 10000;
  for (int i = 0; i <= n; ++i) {
    const double a2 = static_cast<double>(i) / n;
    const std::vector<double> a{1.0 - a2, a2};
    best = std::max(best, ee_of_power(p, a, co, params));
  }
  CHECK(r.q_star >= best * (1.0 - 1e-4));
  CHECK(r.q_star <= best * (1.0 + 1e-4));
}

TEST_CASE("default-settings instances converge quickly and satisfy QoS") {
  const RunConfig config;
  const EeParams params = ee_params(config.scenario);
  for (const auto& inst : testing::feasible_instances(20, 3, config)) {
    const AllocResult r = dinkelbach_solve(inst.coeffs, inst.p_w, params, 1.5);
    CHECK(r.converged);
    CHECK(r.dinkelbach_iterations <= 10);
    REQUIRE(r.feasible);
    CHECK(qos_check(r.alpha, inst.coeffs, inst.p_w, 1.5, 1e-6).all_pass);
    for (double a : r.alpha) CHECK(a >= 0.0);
    CHECK(sum(r.alpha) <= 1.0 + 1e-9);
    if (r.certificate_error) CHECK(*r.certificate_error < 1e-6);
    double last = 0.0;
    for (const DinkelbachTraceRow& row : r.trace) {
      CHECK(row.q >= last * (1.0 - 1e-6));
      CHECK(row.alpha_sum <= 1.0 + 1e-9);
      last = row.q;
    }
  }
}

TEST_CASE("QoS check edge cases") {
  const OutageCoefficients co = testing::draw_coefficients(5);
  const std::vector<double> zero(3, 0.0);
  const QosReport none = qos_check(zero, co, 0.5, 1.5);
  CHECK_FALSE(none.all_pass);
  for (bool ok : none.pass) CHECK_FALSE(ok);
  CHECK(qos_check(zero, co, 0.5, 0.0).all_pass);
}

TEST_CASE("power floor makes the minimal allocation fill the simplex") {
  const ScenarioConfig sc;
  int interior = 0;
  for (std::uint64_t s = 1; s < 400 && interior < 10; ++s) {
    const OutageCoefficients co = testing::draw_coefficients(s);
    const auto floor =
        qos_power_floor(co, 1.5, sc.rsu_power_low_w(), sc.rsu_power_high_w());
    if (!floor || *floor == sc.rsu_power_low_w()) continue;
    ++interior;
    const std::vector<double> t(3, std::exp2(1.5) - 1.0);
    CHECK(sum(qos_minimal_allocation(co, *floor, t)) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(sum(qos_minimal_allocation(co, *floor * 0.99, t)) > 1.0);
    const auto start = initial_allocation(co, *floor * 1.01, 1.5);
    REQUIRE(start.has_value());
    CHECK(qos_check(*start, co, *floor * 1.01, 1.5, 1e-12).all_pass);
  }
  CHECK(interior == 10);
}

TEST_CASE("infeasible instance reports a shortfall") {
  const OutageCoefficients co = testing::draw_coefficients(5);
  const AllocResult r = dinkelbach_solve(co, 0.0316, EeParams{}, 6.0);
  CHECK_FALSE(r.feasible);
  REQUIRE(r.shortfall.size() == 3);
  CHECK(*std::max_element(r.shortfall.begin(), r.shortfall.end()) > 0.0);
}

TEST_CASE("Lagrangian without multipliers is the parametric objective") {
  const OutageCoefficients co = testing::draw_coefficients(8);
  const EeParams params;
  const std::vector<double> a{0.7, 0.2, 0.1};
  const double p = 0.4;
  const ScaPoint sca = sca_coefficients(std::vector<double>{1.5, 3.0, 8.0});
  const AllocContext ctx{co, p, params, 1.5};
  DualState dual;
  dual.mu = {0.0, 0.0, 0.0};
  dual.lambda = 0.0;
  const double q = 3e7;
  CHECK(lagrangian_value(a, dual, q, sca, ctx) ==
        doctest::Approx(surrogate_sumrate(a, sca, ctx) -
                        q * consumed_power(p, a, params)));
}

TEST_CASE("Lagrangian gradient matches finite differences") {
  const RunConfig config;
  const EeParams params = ee_params(config.scenario);
  Rng rng(44);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  // Anchors from reachable instances keep the QoS thresholds finite.
  for (const auto& inst : testing::feasible_instances(20, 44, config)) {
    const ScaPoint sca = sca_coefficients(
        transformed_sinrs(inst.coeffs, inst.p_w, *initial_allocation(inst.coeffs, inst.p_w, 1.5)));
    const AllocContext ctx{inst.coeffs, inst.p_w, params, 1.5};
    for (int rep = 0; rep < 5; ++rep) {
      const std::vector<double> a = testing::random_simplex(rng, 3);
      DualState dual;
      for (std::size_t k = 0; k < 3; ++k) {
        dual.mu.push_back(u(rng) * params.rate_scale() / (inst.coeffs.x[k] * inst.p_w));
      }
      dual.lambda = u(rng) * params.rate_scale();
      const double q = u(rng) * 5e7;
      const std::vector<double> grad = lagrangian_gradient(a, dual, q, sca, ctx);
      for (std::size_t k = 0; k < 3; ++k) {
        const double h = 1e-6 * a[k];
        std::vector<double> up = a;
        std::vector<double> down = a;
        up[k] += h;
        down[k] -= h;
        const double fd = (lagrangian_value(up, dual, q, sca, ctx) -
                           lagrangian_value(down, dual, q, sca, ctx)) /
                          (2.0 * h);
        CHECK(testing::rel_diff(grad[k], fd) < 1e-6);
      }
    }
  }
}

TEST_CASE("barrier solution is first-order stationary for the Lagrangian") {
  const RunConfig config;
  const EeParams params = ee_params(config.scenario);
  int interior = 0;
  for (const auto& inst : testing::feasible_instances(30, 17, config)) {
    const auto start = initial_allocation(inst.coeffs, inst.p_w, 1.5);
    REQUIRE(start.has_value());
    const ScaPoint sca = sca_coefficients(transformed_sinrs(inst.coeffs, inst.p_w, *start));
    const AllocContext ctx{inst.coeffs, inst.p_w, params, 1.5};
    const double q = ee_of_power(inst.p_w, *start, inst.coeffs, params);
    const ScaSubproblemSolution sol = solve_sca_subproblem(sca, q, ctx);
    REQUIRE(sol.ok);
    if (!sol.interior) continue;
    ++interior;
    const double base = lagrangian_value(sol.alpha, sol.dual, q, sca, ctx);
    const double tol = 1e-9 * surrogate_sumrate(sol.alpha, sca, ctx);
    for (std::size_t k = 0; k < 3; ++k) {
      for (double step : {-1e-5, 1e-5}) {
        std::vector<double> a = sol.alpha;
        a[k] *= 1.0 + step;
        CHECK(lagrangian_value(a, sol.dual, q, sca, ctx) - base <= tol);
      }
    }
  }
  CHECK(interior > 0);
}

TEST_CASE("closed form is a local coordinate maximum") {
  const RunConfig config;
  const EeParams params = ee_params(config.scenario);
  int checked = 0;
  int saddles = 0;  // stationary but not a coordinate maximum
  for (const auto& inst : testing::feasible_instances(30, 29, config)) {
    const auto start = initial_allocation(inst.coeffs, inst.p_w, 1.5);
    const ScaPoint sca = sca_coefficients(transformed_sinrs(inst.coeffs, inst.p_w, *start));
    const AllocContext ctx{inst.coeffs, inst.p_w, params, 1.5};
    const double q = ee_of_power(inst.p_w, *start, inst.coeffs, params);
    const ScaSubproblemSolution sol = solve_sca_subproblem(sca, q, ctx);
    if (!sol.interior) continue;
    for (std::size_t k = 0; k < 3; ++k) {
      const auto closed = closed_form_alpha_exact(k, q, sol.dual, sca, ctx, sol.alpha);
      REQUIRE(closed.has_value());
      std::vector<double> a = sol.alpha;
      auto along = [&](double log_a) {
        a[k] = std::exp(log_a);
        return lagrangian_value(a, sol.dual, q, sca, ctx);
      };
      const double centre = std::log(*closed);
      const double h = 1e-2;
      if (std::max(along(centre + h), along(centre - h)) >= along(centre)) {
        // Large multipliers on two adjacent QoS rows can leave L without a
        // maximum at the stationary point along this coordinate.
        ++saddles;
        continue;
      }
      const auto [arg, value] = boost::math::tools::brent_find_minima(
          [&](double x) { return -along(x); }, centre - 0.05, std::min(centre + 0.05, 0.0), 52);
      (void)value;
      CHECK(testing::rel_diff(*closed, std::exp(arg)) < 1e-6);
      ++checked;
    }
  }
  CHECK(checked > 20);
  MESSAGE("stationary points that are not coordinate maxima: ", saddles);
}

TEST_CASE("F(q) decreases in q") {
  const RunConfig config;
  const EeParams params = ee_params(config.scenario);
  const auto inst = testing::feasible_instances(1, 41, config).front();
  const auto start = initial_allocation(inst.coeffs, inst.p_w, 1.5);
  const ScaPoint sca = sca_coefficients(transformed_sinrs(inst.coeffs, inst.p_w, *start));
  const AllocContext ctx{inst.coeffs, inst.p_w, params, 1.5};
  double prev = INFINITY;
  for (double q : {1e6, 1e7, 3e7, 1e8}) {
    const ScaSubproblemSolution sol = solve_sca_subproblem(sca, q, ctx);
    const double f = surrogate_sumrate(sol.alpha, sca, ctx) -
                     q * consumed_power(inst.p_w, sol.alpha, params);
    CHECK(f < prev);
    prev = f;
  }
}

TEST_CASE("dual-subgradient inner method stays feasible") {
  RunConfig config;
  const EeParams params = ee_params(config.scenario);
  DinkelbachConfig sub;
  sub.inner = InnerMethod::dual_subgradient;
  sub.inner_max_iterations = 300;
  for (const auto& inst : testing::feasible_instances(5, 53, config)) {
    const AllocResult barrier = dinkelbach_solve(inst.coeffs, inst.p_w, params, 1.5);
    const AllocResult dual = dinkelbach_solve(inst.coeffs, inst.p_w, params, 1.5, sub);
    CHECK(dual.feasible);
    CHECK_FALSE(dual.certificate_error.has_value());
    CHECK(dual.q_star <= barrier.q_star * (1.0 + 1e-6));
  }
}

TEST_CASE("Dinkelbach trace CSV") {
  std::vector<DinkelbachTraceRow> rows{{1, 2.0, 0.5, 1.0, 0.0}};
  std::ostringstream out;
  write_dinkelbach_trace_csv(out, rows);
  CHECK(out.str() == "iteration,q,f_q,alpha_sum,max_qos_violation\n1,2,0.5,1,0\n");
}

}  // TEST_SUITE
