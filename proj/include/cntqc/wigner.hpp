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

#ifndef CNTQC_WIGNER_HPP
#define CNTQC_WIGNER_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "cntqc/bloch.hpp"
#include "cntqc/rng.hpp"

namespace cntqc {

/// Phase-space coordinate alpha = (X + iP)/sqrt(2), dimensionless.
struct PhaseSpacePoint {
  std::complex<double> alpha{0.0, 0.0};

  static PhaseSpacePoint polar(double r, double theta) {
    if (!(r >= 0.0)) throw std::domain_error("wigner: radius must be >= 0");
    return PhaseSpacePoint{std::polar(r, theta)};
  }
  double r() const { return std::abs(alpha); }
  double theta() const { return std::arg(alpha); }
};

struct GridSpec {
  double extent = 3.0;  // max |Re alpha| = max |Im alpha|
  int n_points = 201;   // per axis

  void validate() const {
    if (!(extent > 0.0)) throw std::domain_error("wigner: grid extent must be > 0");
    if (n_points < 2) throw std::domain_error("wigner: grid needs at least 2 points per axis");
  }
  double step() const { return 2.0 * extent / (n_points - 1); }
  double cell_area() const { return step() * step(); }
  double coord(int i) const { return -extent + step() * i; }
};

/// Square uniform map of real Wigner values; row-major, index = iy*n + ix,
/// alpha = coord(ix) + i coord(iy).
struct WignerGrid {
  GridSpec spec;
  std::vector<double> values;

  double& at(int ix, int iy) { return values[static_cast<std::size_t>(iy) * spec.n_points + ix]; }
  double at(int ix, int iy) const {
    return values[static_cast<std::size_t>(iy) * spec.n_points + ix];
  }
  std::complex<double> alpha_at(int ix, int iy) const {
    return {spec.coord(ix), spec.coord(iy)};
  }
};

/// AFM impulse implementing a phase-space displacement.
struct DisplacementPulse {
  double force_n = 0.0;
  double duration_s = 0.0;
  double phase_rad = 0.0;

  void validate() const {
    if (!(force_n >= 0.0)) throw std::domain_error("displacement: force must be >= 0");
    if (!(duration_s >= 0.0)) throw std::domain_error("displacement: duration must be >= 0");
  }
};

/// Parity mapping window: evolving for t_pi = pi/chi under a number-dependent
/// phase rate chi implements the parity operator. High contrast requires
/// 2 pi / omega0 << t_pi << T2; "<<" is taken as a factor of 10.
struct ParityMapConfig {
  double chi_rad_s = 0.0;

  void validate() const {
    if (!(chi_rad_s > 0.0)) throw std::domain_error("parity: chi must be > 0");
  }
  double t_pi_s() const {
    validate();
    return std::numbers::pi / chi_rad_s;
  }

  struct WindowCheck {
    bool ok = true;
    std::string detail;
  };
  WindowCheck check_window(double omega0_rad_s, double t2_s) const {
    const double t_pi = t_pi_s();
    char buf[64];
    WindowCheck w{};
    if (t_pi < 10.0 * kTwoPi / omega0_rad_s) {
      w.ok = false;
      std::snprintf(buf, sizeof(buf), "parity window t_pi = %.6g s is not >= 10 oscillation periods",
                    t_pi);
      w.detail = buf;
    } else if (t_pi > 0.1 * t2_s) {
      w.ok = false;
      std::snprintf(buf, sizeof(buf), "parity window t_pi = %.6g s is not <= T2/10", t_pi);
      w.detail = buf;
    }
    return w;
  }
};

/// Free decay of the two-level density matrix in the cold-bath regime:
/// populations relax at Gamma1 = 1/T1, the coherence magnitude decays at 1/T2
/// and its phase advances at omega0 (rho01 -> rho01 e^{-t/T2 - i omega0 t}).
inline TLSDensity decohered_density(double t_s, double t1_s, double t2_s, double omega0_rad_s,
                                    const TLSDensity& rho0) {
  if (!(t_s >= 0.0)) throw std::domain_error("wigner: time must be >= 0");
  if (!(t1_s > 0.0) || !(t2_s > 0.0)) throw std::domain_error("wigner: T1, T2 must be > 0");
  rho0.validate();
  TLSDensity rho{};
  rho.rho11 = rho0.rho11 * std::exp(-t_s / t1_s);
  rho.rho00 = 1.0 - rho.rho11;
  rho.rho01 = rho0.rho01 * std::exp(-t_s / t2_s) *
              std::polar(1.0, -omega0_rad_s * t_s);
  rho.validate();
  return rho;
}

/// Wigner function of a two-level state at phase-space point alpha:
///   W(alpha) = (2/pi) e^{-2|alpha|^2} [rho00 + rho11 (4|alpha|^2 - 1)
///              + 2 Re(2 alpha rho01)].
/// The alpha*rho01 pairing matches the displaced-parity definition; the test
/// suite checks it against a brute-force Fock-space evaluation.
inline double wigner_from_density(const TLSDensity& rho, const PhaseSpacePoint& p) {
  rho.validate();
  const double a2 = std::norm(p.alpha);
  const double coh = 2.0 * (2.0 * (p.alpha * rho.rho01)).real();
  return 2.0 / std::numbers::pi * std::exp(-2.0 * a2) *
         (rho.rho00 + rho.rho11 * (4.0 * a2 - 1.0) + coh);
}

/// Closed form for the decohering superposition (|0> + |1>)/sqrt(2):
///   W(r, theta; t) = (2/pi) e^{-2 r^2} [(1 - P) + P (4 r^2 - 1)
///                    + 2 r e^{-t/T2} cos(theta - omega0 t)],  P = e^{-t/T1}/2.
inline double wigner_superposition(double r, double theta, double t_s, double t1_s, double t2_s,
                                   double omega0_rad_s) {
  if (!(r >= 0.0)) throw std::domain_error("wigner: radius must be >= 0");
  if (!(t_s >= 0.0)) throw std::domain_error("wigner: time must be >= 0");
  const double pop = 0.5 * std::exp(-t_s / t1_s);
  return 2.0 / std::numbers::pi * std::exp(-2.0 * r * r) *
         ((1.0 - pop) + pop * (4.0 * r * r - 1.0) +
          2.0 * r * std::exp(-t_s / t2_s) * std::cos(theta - omega0_rad_s * t_s));
}

/// Displacement amplitude of an AFM impulse:
///   alpha = F0 t_d e^{i phi_d} / sqrt(2 m_eff hbar omega0).
inline std::complex<double> displacement_amplitude(const DisplacementPulse& pulse,
                                                   double effective_mass_kg,
                                                   double omega0_rad_s) {
  pulse.validate();
  if (!(effective_mass_kg > 0.0)) throw std::domain_error("displacement: mass must be > 0");
  if (!(omega0_rad_s > 0.0)) throw std::domain_error("displacement: omega0 must be > 0");
  const double mag =
      pulse.force_n * pulse.duration_s / std::sqrt(2.0 * effective_mass_kg * kHBar * omega0_rad_s);
  return std::polar(mag, pulse.phase_rad);
}

/// Parity-mapped readout: P1(alpha) = (1/2)[1 - (pi/2) W(alpha)].
inline double displaced_parity_probability(double wigner_value) {
  constexpr double bound = 2.0 / std::numbers::pi;
  if (!(std::abs(wigner_value) <= bound * (1.0 + 1e-12)))
    throw std::domain_error("wigner: |W| exceeds 2/pi, not a two-level state");
  const double p = 0.5 * (1.0 - std::numbers::pi / 2.0 * wigner_value);
  return std::clamp(p, 0.0, 1.0);
}

/// Inverse of displaced_parity_probability (affine bijection).
inline double wigner_from_probability(double p1) {
  return 2.0 / std::numbers::pi * (1.0 - 2.0 * p1);
}

struct TomographyOptions {
  bool apply_visibility = false;  // multiply coherence by e^{-t_pi/T2}
  int threads = 1;
};

struct TomographyMaps {
  WignerGrid ideal;
  WignerGrid sampled;
  WignerGrid p1_sampled;
};

/// Displaced-parity scan of a two-level state over a square alpha grid.
/// Each cell gets `shots` Bernoulli draws of the parity-mapped P1 from a
/// counter-based stream keyed on (seed, cell index), so the sampled map is
/// identical for any thread count.
inline TomographyMaps tomography_sweep(const TLSDensity& rho, const GridSpec& grid,
                                       const ParityMapConfig& parity, double omega0_rad_s,
                                       double t2_s, std::uint64_t shots, std::uint64_t seed,
                                       const TomographyOptions& opts = {}) {
  grid.validate();
  rho.validate();
  if (shots < 1) throw std::domain_error("tomo: shots must be >= 1");
  const auto window = parity.check_window(omega0_rad_s, t2_s);
  if (!window.ok) throw std::invalid_argument("tomo: " + window.detail);

  TLSDensity state = rho;
  if (opts.apply_visibility) {
    state.rho01 *= std::exp(-parity.t_pi_s() / t2_s);
  }

  const int n = grid.n_points;
  TomographyMaps maps{
      WignerGrid{grid, std::vector<double>(static_cast<std::size_t>(n) * n)},
      WignerGrid{grid, std::vector<double>(static_cast<std::size_t>(n) * n)},
      WignerGrid{grid, std::vector<double>(static_cast<std::size_t>(n) * n)},
  };

  auto run_rows = [&](int y_begin, int y_end) {
    for (int iy = y_begin; iy < y_end; ++iy) {
      for (int ix = 0; ix < n; ++ix) {
        const std::size_t cell = static_cast<std::size_t>(iy) * n + ix;
        const double w = wigner_from_density(state, PhaseSpacePoint{maps.ideal.alpha_at(ix, iy)});
        const double p1 = displaced_parity_probability(w);
        CounterRng rng(seed, cell);
        const double p1_hat =
            static_cast<double>(rng.binomial(shots, p1)) / static_cast<double>(shots);
        maps.ideal.values[cell] = w;
        maps.p1_sampled.values[cell] = p1_hat;
        maps.sampled.values[cell] = wigner_from_probability(p1_hat);
      }
    }
  };

  const int n_threads = std::max(1, opts.threads);
  if (n_threads == 1) {
    run_rows(0, n);
  } else {
    std::vector<std::thread> pool;
    const int chunk = (n + n_threads - 1) / n_threads;
    for (int t = 0; t < n_threads; ++t) {
      const int lo = t * chunk, hi = std::min(n, lo + chunk);
      if (lo < hi) pool.emplace_back(run_rows, lo, hi);
    }
    for (auto& th : pool) th.join();
  }
  return maps;
}

struct NegativityMetrics {
  double min_value = 0.0;
  double negative_volume = 0.0;  // integral of |W| over W < 0 cells
};

inline NegativityMetrics negativity_metrics(const WignerGrid& grid) {
  NegativityMetrics m{};
  if (grid.values.empty()) return m;
  m.min_value = grid.values.front();
  double neg = 0.0;
  for (double v : grid.values) {
    m.min_value = std::min(m.min_value, v);
    if (v < 0.0) neg += -v;
  }
  m.negative_volume = neg * grid.spec.cell_area();
  return m;
}

/// Riemann sum of the map; 1 for a normalized state once the grid covers the
/// support.
inline double grid_normalization(const WignerGrid& grid) {
  double s = 0.0;
  for (double v : grid.values) s += v;
  return s * grid.spec.cell_area();
}

/// Evaluate the ideal Wigner map of a state over a grid (no sampling).
inline WignerGrid wigner_map(const TLSDensity& rho, const GridSpec& grid) {
  grid.validate();
  rho.validate();
  const int n = grid.n_points;
  WignerGrid out{grid, std::vector<double>(static_cast<std::size_t>(n) * n)};
  for (int iy = 0; iy < n; ++iy)
    for (int ix = 0; ix < n; ++ix)
      out.at(ix, iy) = wigner_from_density(rho, PhaseSpacePoint{out.alpha_at(ix, iy)});
  return out;
}

}  // namespace cntqc

#endif  // CNTQC_WIGNER_HPP
