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

#ifndef CNTQC_BLOCH_HPP
#define CNTQC_BLOCH_HPP

#include <array>
#include <cmath>
#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

#include "cntqc/bath.hpp"
#include "cntqc/ode.hpp"

namespace cntqc {

/// Resonant drive in the rotating frame. Detuning is defined as
/// delta = omega0 - omega_d.
struct DriveParams {
  double rabi_rad_s = 0.0;
  double detuning_rad_s = 0.0;
  double omega0_rad_s = 0.0;
  double omega_d_rad_s = 0.0;

  static DriveParams make(double rabi_rad_s, double detuning_rad_s, double omega0_rad_s) {
    DriveParams d{};
    d.rabi_rad_s = rabi_rad_s;
    d.detuning_rad_s = detuning_rad_s;
    d.omega0_rad_s = omega0_rad_s;
    d.omega_d_rad_s = omega0_rad_s - detuning_rad_s;
    if (!(rabi_rad_s >= 0.0)) throw std::domain_error("drive: Rabi frequency must be >= 0");
    return d;
  }

  /// Rotating-wave treatment is trustworthy for weak, near-resonant driving.
  bool rwa_valid() const {
    return omega0_rad_s > 0.0 && rabi_rad_s < 0.1 * omega0_rad_s &&
           std::abs(detuning_rad_s) < 0.1 * omega0_rad_s;
  }
};

struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double norm() const { return std::sqrt(x * x + y * y + z * z); }

  void validate() const {
    if (!(norm() <= 1.0 + 1e-9))
      throw std::domain_error("bloch: vector lies outside the unit ball");
  }
};

/// Two-level density matrix. rho01 is the <0|rho|1> element; rho10 is its
/// conjugate and is not stored.
struct TLSDensity {
  double rho00 = 1.0;
  double rho11 = 0.0;
  std::complex<double> rho01{0.0, 0.0};

  void validate() const {
    const double tol = 1e-9;
    if (std::abs(rho00 + rho11 - 1.0) > tol)
      throw std::domain_error("density: populations must sum to 1");
    if (rho00 < -tol || rho00 > 1.0 + tol || rho11 < -tol || rho11 > 1.0 + tol)
      throw std::domain_error("density: populations must lie in [0, 1]");
    if (std::norm(rho01) > rho00 * rho11 + tol)
      throw std::domain_error("density: coherence violates positivity");
  }
};

/// P1 = (1 + Z) / 2.
inline double excited_population(const BlochVector& b) { return 0.5 * (1.0 + b.z); }

inline TLSDensity bloch_to_density(const BlochVector& b) {
  b.validate();
  TLSDensity rho{};
  rho.rho00 = 0.5 * (1.0 - b.z);
  rho.rho11 = 0.5 * (1.0 + b.z);
  rho.rho01 = 0.5 * std::complex<double>(b.x, b.y);
  return rho;
}

inline BlochVector density_to_bloch(const TLSDensity& rho) {
  rho.validate();
  return BlochVector{2.0 * rho.rho01.real(), 2.0 * rho.rho01.imag(), rho.rho11 - rho.rho00};
}

/// Right-hand side of the driven, damped Bloch equations:
///   X' = -Gamma2 X + Delta Y
///   Y' = -Gamma2 Y - Delta X + Omega_R Z
///   Z' = -Gamma1 (Z - Z_eq) - Omega_R Y
inline BlochVector bloch_rhs(const BlochVector& s, const DriveParams& drive,
                             const DissipationRates& rates) {
  return BlochVector{
      -rates.gamma2 * s.x + drive.detuning_rad_s * s.y,
      -rates.gamma2 * s.y - drive.detuning_rad_s * s.x + drive.rabi_rad_s * s.z,
      -rates.gamma1 * (s.z - rates.z_eq) - drive.rabi_rad_s * s.y,
  };
}

/// Numerical trajectory of the Bloch equations sampled at t_grid, which must be
/// strictly increasing and start at 0.
inline std::vector<BlochVector> integrate_bloch(const BlochVector& initial,
                                                const DriveParams& drive,
                                                const DissipationRates& rates,
                                                std::span<const double> t_grid,
                                                const SimOptions& opts = {}) {
  if (t_grid.empty() || t_grid.front() != 0.0)
    throw std::invalid_argument("bloch: time grid must start at 0");
  auto rhs = [&](double, const std::array<double, 3>& y) {
    const BlochVector d = bloch_rhs(BlochVector{y[0], y[1], y[2]}, drive, rates);
    return std::array<double, 3>{d.x, d.y, d.z};
  };
  const auto raw =
      integrate_dense<3>(rhs, std::array<double, 3>{initial.x, initial.y, initial.z}, t_grid, opts);
  std::vector<BlochVector> out;
  out.reserve(raw.size());
  for (const auto& y : raw) out.push_back(BlochVector{y[0], y[1], y[2]});
  return out;
}

/// Choice of sine coefficient in the damped-Rabi closed form. The damped_sum
/// branch, (Gamma1+Gamma2)/(2 Omega_d), is the one consistent with the initial
/// conditions z(0)=0, z'(0)=0 and with the numerical Bloch solution; the
/// alternative (Gamma1-Gamma2)/(2 Omega_d) is kept selectable for comparison.
enum class RabiSineBranch { damped_sum, difference };

/// On-resonance excited-state probability of the driven, damped two-level
/// system starting from the ground state with Z_eq = -1:
///   P1(t) = A [1 - e^{-(G1+G2)t/2} (cos(Om_d t) + c_s sin(Om_d t))],
///   A = Om^2 / (2 (Om^2 + G1 G2)),  Om_d = sqrt(Om^2 - (G1-G2)^2/4).
/// The overdamped regime continues analytically to hyperbolic functions, and
/// the critically damped point is evaluated by series.
inline double rabi_population_analytic(double omega_r, double gamma1, double gamma2, double t,
                                       RabiSineBranch branch = RabiSineBranch::damped_sum) {
  if (!(t >= 0.0)) throw std::domain_error("rabi: time must be >= 0");
  if (!(omega_r >= 0.0) || !(gamma1 >= 0.0) || !(gamma2 >= 0.0))
    throw std::domain_error("rabi: rates must be >= 0");
  if (omega_r == 0.0) return 0.0;

  const double lambda = 0.5 * (gamma1 + gamma2);
  const double amp = omega_r * omega_r / (2.0 * (omega_r * omega_r + gamma1 * gamma2));
  const double half_diff = 0.5 * (gamma1 - gamma2);
  const double disc = omega_r * omega_r - half_diff * half_diff;  // Om_d^2, signed
  const double coef = branch == RabiSineBranch::damped_sum ? lambda : half_diff;

  // damped = e^{-lambda t} (cos(Om_d t) + coef sin(Om_d t)/Om_d), continued
  // through Om_d^2 <= 0.
  double damped;
  const double wd = std::sqrt(std::abs(disc));
  if (wd * t < 1e-4) {
    // Series in u = disc * t^2 covers the critically damped point smoothly.
    const double u = disc * t * t;
    const double cosp = 1.0 - u / 2.0 + u * u / 24.0 - u * u * u / 720.0;
    const double sincp = t * (1.0 - u / 6.0 + u * u / 120.0 - u * u * u / 5040.0);
    damped = std::exp(-lambda * t) * (cosp + coef * sincp);
  } else if (disc > 0.0) {
    damped = std::exp(-lambda * t) * (std::cos(wd * t) + coef / wd * std::sin(wd * t));
  } else {
    // Overdamped: pair of decaying exponentials (lambda > wd here), written so
    // neither factor overflows.
    damped = 0.5 * ((1.0 + coef / wd) * std::exp(-(lambda - wd) * t) +
                    (1.0 - coef / wd) * std::exp(-(lambda + wd) * t));
  }
  return amp * (1.0 - damped);
}

/// On-resonance steady state P1(inf) = Om^2 / (2 (Om^2 + G1 G2)).
inline double steady_state_population(double omega_r, double gamma1, double gamma2) {
  const double denom = omega_r * omega_r + gamma1 * gamma2;
  if (!(denom > 0.0)) throw std::domain_error("rabi: Om^2 + G1 G2 must be > 0");
  return omega_r * omega_r / (2.0 * denom);
}

}  // namespace cntqc

#endif  // CNTQC_BLOCH_HPP
