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

#include "cntqc/device.hpp"
#include "cntqc/ramsey.hpp"
#include "cntqc/spectrum.hpp"

using namespace cntqc;

namespace {

RamseyConfig fringe_config(double delta, double t2, double phi0 = 0.0) {
  RamseyConfig cfg{};
  cfg.detuning_rad_s = delta;
  cfg.t2_s = t2;
  cfg.phi0_rad = phi0;
  return cfg;
}

}  // namespace

TEST_CASE("pi/2 rotation conventions") {
  const BlochVector south{0, 0, -1};
  const auto b = rotate_pi_half(south, 0.0);
  CHECK(b.x == Catch::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(b.y) < 1e-15);
  CHECK(std::abs(b.z) < 1e-15);

  // Four identical quarter turns are the identity on any state.
  BlochVector v{0.3, -0.4, 0.5};
  auto w = v;
  for (int i = 0; i < 4; ++i) w = rotate_pi_half(w, 1.1);
  CHECK(w.x == Catch::Approx(v.x).margin(1e-12));
  CHECK(w.y == Catch::Approx(v.y).margin(1e-12));
  CHECK(w.z == Catch::Approx(v.z).margin(1e-12));

  // Projection rule: the final Z is X cos(phase) + Y sin(phase).
  const auto z0 = rotate_pi_half(BlochVector{1, 0, 0}, 0.0);
  CHECK(z0.z == Catch::Approx(1.0).epsilon(1e-12));
  const BlochVector eq{0.6, -0.3, 0.0};
  for (double phase : {0.0, 0.7, 2.0, 4.5}) {
    const auto r = rotate_pi_half(eq, phase);
    CHECK(r.z ==
          Catch::Approx(eq.x * std::cos(phase) + eq.y * std::sin(phase)).margin(1e-12));
  }
}

TEST_CASE("free evolution closed form") {
  const auto rates = DissipationRates::from_decay_rates(0.0, 0.0, -1.0);

  // Pure precession by a quarter turn. The rotation sense follows the Bloch
  // equations (X' = +Delta Y, Y' = -Delta X), which is what composes into the
  // cos(Delta tau + phi0) fringe.
  const double delta = kTwoPi * 1e5;
  const double tau = 0.25 * kTwoPi / delta;
  const auto b = free_evolution(BlochVector{1, 0, 0}, delta, rates, tau);
  CHECK(b.x == Catch::Approx(0.0).margin(1e-12));
  CHECK(b.y == Catch::Approx(-1.0).epsilon(1e-12));

  // Pure decay at zero detuning.
  const auto damped = DissipationRates::from_decay_rates(2e5, 1e5, -1.0);
  const auto d = free_evolution(BlochVector{1, 0, 0.5}, 0.0, damped, 3e-6);
  CHECK(d.x == Catch::Approx(std::exp(-1e5 * 3e-6)).epsilon(1e-12));
  CHECK(d.y == 0.0);
  CHECK(d.z == Catch::Approx(-1.0 + 1.5 * std::exp(-2e5 * 3e-6)).epsilon(1e-12));

  // tau = 0 is the identity.
  const BlochVector v{0.2, 0.3, -0.4};
  const auto same = free_evolution(v, delta, damped, 0.0);
  CHECK(same.x == v.x);
  CHECK(same.y == v.y);
  CHECK(same.z == v.z);
}

TEST_CASE("free evolution agrees with the integrated Bloch equations") {
  const auto rates = DissipationRates::from_decay_rates(3e5, 2e5, -0.95);
  const auto drive = DriveParams::make(0.0, kTwoPi * 2.5e5, 1e10);
  const BlochVector init{0.7, -0.2, 0.1};
  std::vector<double> grid = {0.0, 2e-6, 5e-6};
  const auto traj = integrate_bloch(init, drive, rates, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto cf = free_evolution(init, drive.detuning_rad_s, rates, grid[i]);
    CHECK(traj[i].x == Catch::Approx(cf.x).margin(1e-8));
    CHECK(traj[i].y == Catch::Approx(cf.y).margin(1e-8));
    CHECK(traj[i].z == Catch::Approx(cf.z).margin(1e-8));
  }
}

TEST_CASE("analytic Ramsey fringe") {
  const auto cfg = fringe_config(kTwoPi * 3e5, 14.8e-6);
  CHECK(ramsey_probability_analytic(cfg, 0.0) == Catch::Approx(1.0).epsilon(1e-12));

  const auto inf = fringe_config(kTwoPi * 3e5, 14.8e-6);
  CHECK(ramsey_probability_analytic(inf, 50 * 14.8e-6) == Catch::Approx(0.5).margin(1e-6));

  // Anti-fringe at Delta tau = pi with no decay.
  const auto lossless = fringe_config(kTwoPi * 3e5, 1e6);
  const double tau_pi = std::numbers::pi / lossless.detuning_rad_s;
  CHECK(ramsey_probability_analytic(lossless, tau_pi) == Catch::Approx(0.0).margin(1e-9));
}

TEST_CASE("instantaneous-pulse sequence reproduces the analytic fringe") {
  const double t2 = 14.8e-6;
  const auto rates = DissipationRates::from_decay_rates(2.0 / t2, 1.0 / t2, -1.0);
  const auto drive = DriveParams::make(kTwoPi * 0.75e6, kTwoPi * 3e5, 1e10);
  const auto cfg = fringe_config(drive.detuning_rad_s, t2, 0.4);

  for (double tau : {0.0, 1e-6, 4.3e-6, 9e-6, 2.2e-5}) {
    const auto seq = make_ramsey_sequence(tau, 0.4, 0.0);  // zero-duration pulses
    const double p_sim = simulate_ramsey_sequence(seq, drive, rates);
    CHECK(p_sim == Catch::Approx(ramsey_probability_analytic(cfg, tau)).margin(1e-6));
  }
}

TEST_CASE("one pulse makes an equal superposition; opposed pulses cancel") {
  const auto lossless = DissipationRates::from_decay_rates(0.0, 0.0, -1.0);
  const auto drive = DriveParams::make(kTwoPi * 0.75e6, 0.0, 1e10);

  const PulseSequence one = {Rotation{std::numbers::pi / 2, 0.0, 0.0}};
  CHECK(simulate_ramsey_sequence(one, drive, lossless) == Catch::Approx(0.5).margin(1e-12));

  // {pi/2, tau, -pi/2}: the pi-phase-flipped pulse undoes the first.
  const PulseSequence cancel = {Rotation{std::numbers::pi / 2, 0.0, 0.0}, FreeEvolution{5e-6},
                                Rotation{std::numbers::pi / 2, std::numbers::pi, 0.0}};
  CHECK(simulate_ramsey_sequence(cancel, drive, lossless) == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("finite-pulse error shrinks monotonically with pulse duration") {
  const double t2 = 14.8e-6;
  const auto rates = DissipationRates::from_decay_rates(2.0 / t2, 1.0 / t2, -1.0);
  const auto drive = DriveParams::make(kTwoPi * 0.75e6, 0.0, 1e10);
  const auto cfg = fringe_config(0.0, t2, std::numbers::pi);

  std::vector<double> taus;
  for (int i = 0; i < 8; ++i) taus.push_back((0.1 + 0.3 * i) * t2);

  double prev = 1.0;
  for (double frac : {1e-2, 1e-3, 1e-4}) {
    double worst = 0.0;
    for (double tau : taus) {
      const auto seq = make_ramsey_sequence(tau, std::numbers::pi, frac * t2);
      const double p_sim = simulate_ramsey_sequence(seq, drive, rates);
      worst = std::max(worst, std::abs(p_sim - ramsey_probability_analytic(cfg, tau)));
    }
    INFO("t_pi2/T2 = " << frac << " -> max fringe error " << worst);
    CHECK(worst < prev);
    prev = worst;
  }
  // First-order convergence leaves ~4e-5 at the smallest ratio.
  CHECK(prev < 1e-4);
}

TEST_CASE("a parity window is a z-rotation at rate chi") {
  const auto lossless = DissipationRates::from_decay_rates(0.0, 0.0, -1.0);
  const auto drive = DriveParams::make(kTwoPi * 0.75e6, 0.0, 1e10);
  const double chi = kTwoPi * 1e5;
  const double t_pi = std::numbers::pi / chi;

  // {pi/2, parity window, -pi/2} flips the parity phase into population.
  const PulseSequence seq = {Rotation{std::numbers::pi / 2, 0.0, 0.0}, ParityWindow{t_pi},
                             Rotation{std::numbers::pi / 2, std::numbers::pi, 0.0}};
  CHECK(simulate_ramsey_sequence(seq, drive, lossless, SimOptions{}, chi) ==
        Catch::Approx(1.0).margin(1e-12));

  const PulseSequence with_disp = {Rotation{std::numbers::pi / 2, 0.0, 0.0},
                                   Displacement{{0.5, 0.0}}};
  CHECK_THROWS_AS(simulate_ramsey_sequence(with_disp, drive, lossless), std::invalid_argument);
}

TEST_CASE("fringe frequency sits at Delta/2pi and the envelope bounds hold") {
  const double t2 = 14.8e-6, delta = kTwoPi * 3e5;
  const auto cfg = fringe_config(delta, t2, 0.3);
  const int n = 1200;
  std::vector<double> taus(n), p(n);
  for (int i = 0; i < n; ++i) {
    taus[i] = 3.0 * t2 * static_cast<double>(i) / (n - 1);
    p[i] = ramsey_probability_analytic(cfg, taus[i]);
  }
  const auto f_peak = dominant_frequency(taus, p);
  REQUIRE(f_peak.has_value());
  const double bin = 1.0 / (3.0 * t2);
  CHECK(std::abs(*f_peak - delta / kTwoPi) < bin);

  for (int i = 0; i < n; ++i) {
    CHECK(std::abs(p[i] - 0.5) <= 0.5 * std::exp(-taus[i] / t2) + 1e-12);
  }
  // Equality at a fringe crest: Delta tau + phi0 = 2 pi k.
  const double tau_crest = (kTwoPi * 4 - 0.3) / delta;
  CHECK(std::abs(ramsey_probability_analytic(cfg, tau_crest) - 0.5) ==
        Catch::Approx(0.5 * std::exp(-tau_crest / t2)).epsilon(1e-9));
}

TEST_CASE("fringes from the two device lengths decay with their own T2") {
  // Devices of 800 nm and 250 nm with Q = 1e4, relaxation-limited T2 = 2 T1.
  for (double length : {800e-9, 250e-9}) {
    DeviceGeometry g{};
    g.length_m = length;
    const double t2 = 2.0 * ringdown_T1(g);
    const auto rates = DissipationRates::from_decay_rates(2.0 / t2, 1.0 / t2, -1.0);
    const auto drive = DriveParams::make(kTwoPi * 0.75e6, kTwoPi * 3e5, flexural_frequency(g));
    const auto cfg = fringe_config(drive.detuning_rad_s, t2);

    const int n = 600;
    std::vector<double> taus(n), p(n);
    for (int i = 0; i < n; ++i) {
      taus[i] = 3.0 * t2 * static_cast<double>(i) / (n - 1);
      p[i] = ramsey_probability_analytic(cfg, taus[i]);
    }
    const auto rate = envelope_decay_rate(taus, p, 0.5);
    REQUIRE(rate.has_value());
    CHECK(*rate == Catch::Approx(1.0 / t2).epsilon(0.02));

    // Finite-pulse simulation agrees with the ideal fringe at the percent
    // level once the pulses are short against T2.
    const auto seq = make_ramsey_sequence(0.5 * t2, 0.0, 2e-8);
    const double p_sim = simulate_ramsey_sequence(seq, drive, rates);
    CHECK(p_sim == Catch::Approx(ramsey_probability_analytic(cfg, 0.5 * t2)).margin(2e-2));
  }
}

TEST_CASE("ramsey config validation") {
  RamseyConfig bad{};
  bad.t2_s = -1.0;
  CHECK_THROWS_AS(ramsey_probability_analytic(bad, 0.0), std::domain_error);
  RamseyConfig grid = fringe_config(0.0, 1.0);
  grid.tau_grid_s = {0.0, 2.0, 1.0};
  CHECK_THROWS_AS(grid.validate(), std::domain_error);
}
