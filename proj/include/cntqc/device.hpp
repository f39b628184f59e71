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

#ifndef CNTQC_DEVICE_HPP
#define CNTQC_DEVICE_HPP

#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "cntqc/constants.hpp"

namespace cntqc {

// Clamped-clamped Euler-Bernoulli beam, fundamental flexural mode.
inline constexpr double kFundamentalModeBeta = 4.7300;
// Effective-mass factor for the midpoint coordinate of the fundamental mode.
inline constexpr double kClampedModeMassFactor = 0.735;
// Default wall thickness of a single-walled tube (one graphene layer).
inline constexpr double kGrapheneWallThickness = 0.34e-9;  // m

/// Geometry and material parameters of a doubly clamped nanotube beam.
/// The cross section is thin-walled: A = 2*pi*r*t_wall.
struct DeviceGeometry {
  double length_m = 100e-9;
  double radius_m = 1e-9;
  double wall_thickness_m = kGrapheneWallThickness;
  double youngs_modulus_pa = 1e12;
  double density_kg_m3 = 2200.0;
  double quality_factor = 1e4;

  void validate() const {
    if (!(length_m > 0.0)) throw std::domain_error("device: length must be > 0");
    if (!(radius_m > 0.0)) throw std::domain_error("device: radius must be > 0");
    if (!(wall_thickness_m > 0.0) || wall_thickness_m > radius_m)
      throw std::domain_error("device: wall thickness must be in (0, radius]");
    if (!(youngs_modulus_pa > 0.0)) throw std::domain_error("device: Young's modulus must be > 0");
    if (!(density_kg_m3 > 0.0)) throw std::domain_error("device: density must be > 0");
    if (!(quality_factor > 0.0)) throw std::domain_error("device: quality factor must be > 0");
  }

  double cross_section_area() const { return kTwoPi * radius_m * wall_thickness_m; }
};

struct DerivedDeviceParams {
  double omega0_rad_s;
  double f0_hz;
  double effective_mass_kg;
  double x_zpf_m;
  double t1_ringdown_s;
};

/// Fundamental flexural angular frequency, omega0 = beta1^2 r / (sqrt(2) L^2) * sqrt(E/rho).
/// Scales as L^-2.
inline double flexural_frequency(const DeviceGeometry& g) {
  g.validate();
  const double beta2 = kFundamentalModeBeta * kFundamentalModeBeta;
  return beta2 * g.radius_m / (std::numbers::sqrt2 * g.length_m * g.length_m) *
         std::sqrt(g.youngs_modulus_pa / g.density_kg_m3);
}

/// Effective mass of the midpoint coordinate, m_eff = c * rho * A * L.
inline double effective_mass(const DeviceGeometry& g,
                             double mode_mass_factor = kClampedModeMassFactor) {
  g.validate();
  if (!(mode_mass_factor > 0.0)) throw std::domain_error("device: mode mass factor must be > 0");
  return mode_mass_factor * g.density_kg_m3 * g.cross_section_area() * g.length_m;
}

/// Zero-point amplitude x_zpf = sqrt(hbar / (2 m_eff omega0)). Scales as L^(1/2)
/// at fixed cross section.
inline double zero_point_motion(const DeviceGeometry& g) {
  return std::sqrt(kHBar / (2.0 * effective_mass(g) * flexural_frequency(g)));
}

/// Drive force amplitude that realizes a pi/2 rotation in time t_pi2:
/// F = pi * hbar / (2 t_pi2 x_zpf).
inline double pi_half_force(const DeviceGeometry& g, double t_pi2_s) {
  if (!(t_pi2_s > 0.0)) throw std::domain_error("device: t_pi2 must be > 0");
  return std::numbers::pi * kHBar / (2.0 * t_pi2_s * zero_point_motion(g));
}

/// Energy relaxation time of the free ringdown, T1 = Q / omega0.
inline double ringdown_T1(const DeviceGeometry& g) {
  return g.quality_factor / flexural_frequency(g);
}

inline DerivedDeviceParams derive_device_params(const DeviceGeometry& g) {
  DerivedDeviceParams p{};
  p.omega0_rad_s = flexural_frequency(g);
  p.f0_hz = p.omega0_rad_s / kTwoPi;
  p.effective_mass_kg = effective_mass(g);
  p.x_zpf_m = std::sqrt(kHBar / (2.0 * p.effective_mass_kg * p.omega0_rad_s));
  p.t1_ringdown_s = g.quality_factor / p.omega0_rad_s;
  return p;
}

/// One row of the design table, all values SI.
struct DeviceTableRow {
  double length_m;
  double f0_hz;
  double x_zpf_m;
  double pi_half_force_n;
  double t1_s;
  double t2_s;  // NaN unless T2 = 2 T1 was requested
};

/// Design table over a list of lengths; all other geometry fields are taken
/// from the template. T2 is filled as 2*T1 when assume_T2_eq_2T1 is set.
inline std::vector<DeviceTableRow> device_table(const std::vector<double>& lengths_m,
                                                DeviceGeometry geom_template, double t_pi2_s,
                                                bool assume_T2_eq_2T1 = true) {
  if (lengths_m.empty()) throw std::invalid_argument("device: length list must not be empty");
  std::vector<DeviceTableRow> rows;
  rows.reserve(lengths_m.size());
  for (double L : lengths_m) {
    DeviceGeometry g = geom_template;
    g.length_m = L;
    const DerivedDeviceParams p = derive_device_params(g);
    DeviceTableRow row{};
    row.length_m = L;
    row.f0_hz = p.f0_hz;
    row.x_zpf_m = p.x_zpf_m;
    row.pi_half_force_n = pi_half_force(g, t_pi2_s);
    row.t1_s = p.t1_ringdown_s;
    row.t2_s = assume_T2_eq_2T1 ? 2.0 * p.t1_ringdown_s
                                : std::numeric_limits<double>::quiet_NaN();
    rows.push_back(row);
  }
  return rows;
}

}  // namespace cntqc

#endif  // CNTQC_DEVICE_HPP
