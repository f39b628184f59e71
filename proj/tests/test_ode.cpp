// Copyright 2026 The cntqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <vector>

#include "cntqc/ode.hpp"

using namespace cntqc;

namespace {

std::vector<double> uniform_grid(double t0, double t1, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = t0 + (t1 - t0) * static_cast<double>(i) / (n - 1);
  return g;
}

}  // namespace

TEST_CASE("dense output tracks an exponential decay") {
  auto rhs = [](double, const std::array<double, 1>& y) { return std::array<double, 1>{-2.0 * y[0]}; };
  const auto grid = uniform_grid(0.0, 5.0, 777);
  const auto sol = integrate_dense<1>(rhs, {1.0}, grid);
  REQUIRE(sol.size() == grid.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i)
    worst = std::max(worst, std::abs(sol[i][0] - std::exp(-2.0 * grid[i])));
  CHECK(worst < 1e-8);
}

TEST_CASE("dense output tracks a harmonic oscillator over many periods") {
  auto rhs = [](double, const std::array<double, 2>& y) {
    return std::array<double, 2>{y[1], -y[0]};
  };
  const auto grid = uniform_grid(0.0, 20.0 * std::numbers::pi, 1001);
  const auto sol = integrate_dense<2>(rhs, {1.0, 0.0}, grid);
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i)
    worst = std::max(worst, std::abs(sol[i][0] - std::cos(grid[i])));
  CHECK(worst < 1e-6);
}

TEST_CASE("tighter tolerances tighten the answer") {
  auto rhs = [](double t, const std::array<double, 1>& y) {
    return std::array<double, 1>{std::cos(t) * y[0]};
  };
  // y = exp(sin t)
  SimOptions loose{};
  loose.rel_tol = 1e-5;
  loose.abs_tol = 1e-5;
  SimOptions tight{};
  tight.rel_tol = 1e-11;
  tight.abs_tol = 1e-11;
  const double t_end = 12.0;
  const double exact = std::exp(std::sin(t_end));
  const auto y_loose = integrate_to<1>(rhs, {1.0}, 0.0, t_end, loose);
  const auto y_tight = integrate_to<1>(rhs, {1.0}, 0.0, t_end, tight);
  CHECK(std::abs(y_tight[0] - exact) < std::abs(y_loose[0] - exact));
  CHECK(std::abs(y_tight[0] - exact) < 1e-9);
}

TEST_CASE("constant solution stays constant") {
  auto rhs = [](double, const std::array<double, 3>& y) {
    return std::array<double, 3>{0.0 * y[0], 0.0, 0.0};
  };
  const auto grid = uniform_grid(0.0, 1.0, 11);
  const auto sol = integrate_dense<3>(rhs, {0.25, -0.5, 1.0}, grid);
  for (const auto& y : sol) {
    CHECK(y[0] == 0.25);
    CHECK(y[1] == -0.5);
    CHECK(y[2] == 1.0);
  }
}

TEST_CASE("max_step is honored") {
  int evals = 0;
  auto rhs = [&](double, const std::array<double, 1>& y) {
    ++evals;
    return std::array<double, 1>{-y[0]};
  };
  SimOptions opts{};
  opts.max_step_s = 1e-3;
  integrate_to<1>(rhs, {1.0}, 0.0, 1.0, opts);
  CHECK(evals >= 6 * 900);  // at least ~1000 steps of 6 fresh stages each
}

TEST_CASE("step-size underflow raises an integration error with the failing time") {
  // An extremely stiff decay forces the explicit method's step below the
  // representable minimum.
  auto rhs = [](double, const std::array<double, 1>& y) {
    return std::array<double, 1>{-1e300 * y[0] + 1e280};
  };
  try {
    integrate_to<1>(rhs, {1.0}, 0.0, 1.0);
    FAIL("expected IntegrationError");
  } catch (const IntegrationError& e) {
    CHECK(e.time_s() >= 0.0);
    CHECK(e.time_s() <= 1.0);
  }
}

TEST_CASE("grid validation") {
  auto rhs = [](double, const std::array<double, 1>& y) { return std::array<double, 1>{-y[0]}; };
  std::vector<double> bad = {0.0, 0.5, 0.5};
  CHECK_THROWS_AS(integrate_dense<1>(rhs, {1.0}, bad), std::invalid_argument);
  std::vector<double> empty;
  CHECK_THROWS_AS(integrate_dense<1>(rhs, {1.0}, empty), std::invalid_argument);
  std::vector<double> single = {0.0};
  const auto sol = integrate_dense<1>(rhs, {3.0}, single);
  REQUIRE(sol.size() == 1);
  CHECK(sol[0][0] == 3.0);
}
