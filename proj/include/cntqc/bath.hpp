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

#ifndef CNTQC_BATH_HPP
#define CNTQC_BATH_HPP

#include <cmath>
#include <limits>
#include <stdexcept>

#include "cntqc/constants.hpp"

namespace cntqc {

/// Ohmic environment J(w) = 2 alpha w exp(-w/w_c) at temperature T.
struct OhmicBath {
  double alpha = 0.0;            // dimensionless coupling
  double cutoff_rad_s = 0.0;     // w_c
  double temperature_K = 0.0;    // T

  void validate() const {
    if (!(alpha >= 0.0)) throw std::domain_error("bath: alpha must be >= 0");
    if (!(cutoff_rad_s > 0.0)) throw std::domain_error("bath: cutoff must be > 0");
    if (!(temperature_K > 0.0)) throw std::domain_error("bath: temperature must be > 0");
  }
};

/// Rate bundle for a two-level mode coupled to a thermal bath.
///   Gamma1 = gamma_down + gamma_up,   Gamma2 = Gamma1/2 + 2 gamma_phi,
///   T1 = 1/Gamma1, T2 = 1/Gamma2,     Z_eq = (gamma_up - gamma_down)/Gamma1.
struct DissipationRates {
  double gamma_up = 0.0;
  double gamma_down = 0.0;
  double gamma_phi = 0.0;
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  double t1_s = std::numeric_limits<double>::infinity();
  double t2_s = std::numeric_limits<double>::infinity();
  double z_eq = -1.0;

  /// Build a rate bundle directly from decay rates (used when the
  /// environment is specified by Gamma1/Gamma2 instead of a bath model).
  static DissipationRates from_decay_rates(double gamma1, double gamma2, double z_eq = -1.0) {
    if (!(gamma1 >= 0.0) || !(gamma2 >= 0.0))
      throw std::domain_error("rates: decay rates must be >= 0");
    if (!(z_eq >= -1.0 && z_eq <= 1.0)) throw std::domain_error("rates: z_eq must be in [-1, 1]");
    DissipationRates r{};
    r.gamma1 = gamma1;
    r.gamma2 = gamma2;
    r.gamma_up = 0.5 * gamma1 * (1.0 + z_eq);
    r.gamma_down = 0.5 * gamma1 * (1.0 - z_eq);
    r.gamma_phi = 0.5 * (gamma2 - 0.5 * gamma1);  // may be negative for unphysical inputs
    r.t1_s = gamma1 > 0.0 ? 1.0 / gamma1 : std::numeric_limits<double>::infinity();
    r.t2_s = gamma2 > 0.0 ? 1.0 / gamma2 : std::numeric_limits<double>::infinity();
    r.z_eq = z_eq;
    return r;
  }
};

/// Ohmic spectral density J(w) = 2 alpha w exp(-w / w_c), in rad/s.
inline double spectral_density(const OhmicBath& bath, double omega_rad_s) {
  bath.validate();
  if (!(omega_rad_s >= 0.0)) throw std::domain_error("bath: omega must be >= 0");
  return 2.0 * bath.alpha * omega_rad_s * std::exp(-omega_rad_s / bath.cutoff_rad_s);
}

/// Bose occupation n(w) = 1 / (exp(hbar w / kB T) - 1), via expm1 so the
/// hbar*w >> kB*T tail does not cancel catastrophically.
inline double thermal_occupation(const OhmicBath& bath, double omega_rad_s) {
  bath.validate();
  if (!(omega_rad_s > 0.0)) throw std::domain_error("bath: omega must be > 0");
  const double x = kHBar * omega_rad_s / (kBoltzmann * bath.temperature_K);
  return 1.0 / std::expm1(x);
}

/// All environment-induced rates for a transition at omega0:
///   gamma_up = 2 pi J(w0) n(w0),  gamma_down = 2 pi J(w0) (n(w0) + 1).
/// Pure dephasing uses the Ohmic estimate gamma_phi = 2 pi alpha kB T / hbar
/// and is off by default (relaxation-limited regime, Gamma2 = Gamma1/2).
inline DissipationRates dissipation_rates(const OhmicBath& bath, double omega0_rad_s,
                                          bool include_pure_dephasing = false) {
  bath.validate();
  if (!(omega0_rad_s > 0.0)) throw std::domain_error("bath: omega0 must be > 0");

  DissipationRates r{};
  const double j0 = spectral_density(bath, omega0_rad_s);
  const double n0 = thermal_occupation(bath, omega0_rad_s);
  r.gamma_up = kTwoPi * j0 * n0;
  r.gamma_down = kTwoPi * j0 * (n0 + 1.0);
  r.gamma_phi =
      include_pure_dephasing ? kTwoPi * bath.alpha * kBoltzmann * bath.temperature_K / kHBar : 0.0;
  r.gamma1 = r.gamma_down + r.gamma_up;
  r.gamma2 = 0.5 * r.gamma1 + 2.0 * r.gamma_phi;
  r.t1_s = r.gamma1 > 0.0 ? 1.0 / r.gamma1 : std::numeric_limits<double>::infinity();
  r.t2_s = r.gamma2 > 0.0 ? 1.0 / r.gamma2 : std::numeric_limits<double>::infinity();
  r.z_eq = -std::tanh(0.5 * kHBar * omega0_rad_s / (kBoltzmann * bath.temperature_K));
  return r;
}

}  // namespace cntqc

#endif  // CNTQC_BATH_HPP
