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

#ifndef CNTQC_RAMSEY_HPP
#define CNTQC_RAMSEY_HPP

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <variant>
#include <vector>

#include "cntqc/bloch.hpp"

namespace cntqc {

// Mechanical control primitives. A Rotation with duration 0 is applied as an
// instantaneous rotation; a positive duration is simulated with the drive on
// at Omega = angle / duration.
struct Rotation {
  double angle_rad = std::numbers::pi / 2;
  double phase_rad = 0.0;
  double duration_s = 0.0;
};
struct FreeEvolution {
  double duration_s = 0.0;
};
struct Displacement {
  std::complex<double> alpha{0.0, 0.0};
};
struct ParityWindow {
  double duration_s = 0.0;
};

using PulseElement = std::variant<Rotation, FreeEvolution, Displacement, ParityWindow>;
using PulseSequence = std::vector<PulseElement>;

struct RamseyConfig {
  double detuning_rad_s = 0.0;
  double t2_s = 0.0;
  double phi0_rad = 0.0;
  std::vector<double> tau_grid_s;

  void validate() const {
    if (!(t2_s > 0.0)) throw std::domain_error("ramsey: T2 must be > 0");
    for (std::size_t i = 0; i < tau_grid_s.size(); ++i) {
      if (!(tau_grid_s[i] >= 0.0)) throw std::domain_error("ramsey: delays must be >= 0");
      if (i > 0 && !(tau_grid_s[i] > tau_grid_s[i - 1]))
        throw std::domain_error("ramsey: delay grid must be strictly increasing");
    }
  }
};

/// Rotation by `angle` about the equatorial axis with azimuth `phase`, with the
/// convention that phase 0 maps the south pole (0,0,-1) onto (1,0,0). The
/// second-pulse projection is then Z_f = X cos(phase) + Y sin(phase).
inline BlochVector rotate_bloch(const BlochVector& b, double angle_rad, double phase_rad) {
  // Axis a = (sin p, -cos p, 0); Rodrigues rotation.
  const double ax = std::sin(phase_rad), ay = -std::cos(phase_rad);
  const double c = std::cos(angle_rad), s = std::sin(angle_rad);
  const double dot = ax * b.x + ay * b.y;
  // a x v with a_z = 0:
  const double cx = ay * b.z;
  const double cy = -ax * b.z;
  const double cz = ax * b.y - ay * b.x;
  return BlochVector{
      b.x * c + cx * s + ax * dot * (1.0 - c),
      b.y * c + cy * s + ay * dot * (1.0 - c),
      b.z * c + cz * s,
  };
}

inline BlochVector rotate_pi_half(const BlochVector& b, double phase_rad) {
  return rotate_bloch(b, std::numbers::pi / 2, phase_rad);
}

/// Drive-off evolution in closed form: the transverse components precess as
/// (X + iY)(tau) = e^{-(Gamma2 + i Delta) tau} (X0 + iY0) and Z relaxes toward
/// Z_eq at Gamma1. This is the exact solution of the Bloch equations with the
/// drive off.
inline BlochVector free_evolution(const BlochVector& b, double detuning_rad_s,
                                  const DissipationRates& rates, double tau_s) {
  if (!(tau_s >= 0.0)) throw std::domain_error("ramsey: free evolution time must be >= 0");
  const double e2 = std::exp(-rates.gamma2 * tau_s);
  const double c = std::cos(detuning_rad_s * tau_s), s = std::sin(detuning_rad_s * tau_s);
  return BlochVector{
      e2 * (b.x * c + b.y * s),
      e2 * (b.y * c - b.x * s),
      rates.z_eq + (b.z - rates.z_eq) * std::exp(-rates.gamma1 * tau_s),
  };
}

/// Ideal Ramsey fringe: P1(tau) = (1/2)[1 + e^{-tau/T2} cos(Delta tau + phi0)].
inline double ramsey_probability_analytic(const RamseyConfig& cfg, double tau_s) {
  if (!(tau_s >= 0.0)) throw std::domain_error("ramsey: delay must be >= 0");
  cfg.validate();
  return 0.5 * (1.0 + std::exp(-tau_s / cfg.t2_s) *
                          std::cos(cfg.detuning_rad_s * tau_s + cfg.phi0_rad));
}

namespace detail {

// Bloch rhs with the drive along the equatorial axis of azimuth `phase`
// (phase 0 rotates the south pole toward +x, matching rotate_bloch).
inline std::array<double, 3> driven_rhs(const std::array<double, 3>& y, double omega,
                                        double phase, double detuning,
                                        const DissipationRates& r) {
  const double c = std::cos(phase), s = std::sin(phase);
  return {
      -r.gamma2 * y[0] + detuning * y[1] - omega * y[2] * c,
      -r.gamma2 * y[1] - detuning * y[0] - omega * y[2] * s,
      -r.gamma1 * (y[2] - r.z_eq) + omega * (y[0] * c + y[1] * s),
  };
}

}  // namespace detail

/// Simulate a pulse sequence starting from the ground state (0,0,-1) and return
/// the final excited-state probability. Rotations with positive duration are
/// integrated with the drive on; free evolution uses the closed-form solution.
/// A parity window advances the relative phase at the extra rate chi. A
/// Displacement element acts on the oscillator amplitude and has no two-level
/// representation here; sequences containing one are rejected.
inline double simulate_ramsey_sequence(const PulseSequence& seq, const DriveParams& drive,
                                       const DissipationRates& rates, const SimOptions& opts = {},
                                       double chi_rad_s = 0.0) {
  BlochVector b{0.0, 0.0, -1.0};
  for (const PulseElement& el : seq) {
    if (const auto* rot = std::get_if<Rotation>(&el)) {
      if (!(rot->duration_s >= 0.0)) throw std::domain_error("ramsey: durations must be >= 0");
      if (rot->duration_s == 0.0) {
        b = rotate_bloch(b, rot->angle_rad, rot->phase_rad);
      } else {
        const double omega = rot->angle_rad / rot->duration_s;
        auto rhs = [&](double, const std::array<double, 3>& y) {
          return detail::driven_rhs(y, omega, rot->phase_rad, drive.detuning_rad_s, rates);
        };
        const auto y = integrate_to<3>(rhs, {b.x, b.y, b.z}, 0.0, rot->duration_s, opts);
        b = BlochVector{y[0], y[1], y[2]};
      }
    } else if (const auto* free = std::get_if<FreeEvolution>(&el)) {
      b = free_evolution(b, drive.detuning_rad_s, rates, free->duration_s);
    } else if (const auto* win = std::get_if<ParityWindow>(&el)) {
      b = free_evolution(b, drive.detuning_rad_s + chi_rad_s, rates, win->duration_s);
    } else {
      throw std::invalid_argument(
          "ramsey: displacement pulses act on the oscillator amplitude and cannot be "
          "simulated on the two-level Bloch sphere; use the tomography path");
    }
  }
  return excited_population(b);
}

/// Standard two-pulse Ramsey sequence {pi/2, tau, pi/2 with phase phi0}.
inline PulseSequence make_ramsey_sequence(double tau_s, double phi0_rad, double t_pi2_s) {
  return PulseSequence{
      Rotation{std::numbers::pi / 2, 0.0, t_pi2_s},
      FreeEvolution{tau_s},
      Rotation{std::numbers::pi / 2, phi0_rad, t_pi2_s},
  };
}

}  // namespace cntqc

#endif  // CNTQC_RAMSEY_HPP
