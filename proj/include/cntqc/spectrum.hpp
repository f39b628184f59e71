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

#ifndef CNTQC_SPECTRUM_HPP
#define CNTQC_SPECTRUM_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

namespace cntqc {

/// Dominant oscillation frequency (Hz) of a uniformly sampled signal, from the
/// discrete periodogram peak with parabolic sub-bin refinement. Returns nullopt
/// when no interior peak stands out (constant or monotone data).
inline std::optional<double> dominant_frequency(std::span<const double> x,
                                                std::span<const double> y) {
  const std::size_t n = y.size();
  if (n < 8 || x.size() != n) return std::nullopt;
  const double dt = (x.back() - x.front()) / static_cast<double>(n - 1);
  if (!(dt > 0.0)) return std::nullopt;

  double mean = 0.0;
  for (double v : y) mean += v;
  mean /= static_cast<double>(n);

  const std::size_t n_half = n / 2;
  std::vector<double> power(n_half + 1, 0.0);
  for (std::size_t k = 1; k <= n_half; ++k) {
    std::complex<double> acc{0.0, 0.0};
    const double w = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    for (std::size_t j = 0; j < n; ++j) {
      acc += (y[j] - mean) * std::polar(1.0, w * static_cast<double>(j));
    }
    power[k] = std::norm(acc);
  }

  std::size_t k_peak = 1;
  for (std::size_t k = 2; k <= n_half; ++k)
    if (power[k] > power[k_peak]) k_peak = k;

  double total = 0.0;
  for (std::size_t k = 1; k <= n_half; ++k) total += power[k];
  if (!(power[k_peak] > 0.0) || power[k_peak] < 1e-9 * total + 1e-300) return std::nullopt;

  double shift = 0.0;
  if (k_peak > 1 && k_peak < n_half) {
    const double pm = power[k_peak - 1], p0 = power[k_peak], pp = power[k_peak + 1];
    const double denom = pm - 2.0 * p0 + pp;
    if (denom < 0.0) shift = 0.5 * (pm - pp) / denom;
  }
  return (static_cast<double>(k_peak) + shift) / (static_cast<double>(n) * dt);
}

/// Exponential decay rate of the envelope of an oscillating signal around
/// `baseline`, from a log-linear least-squares fit through the local maxima of
/// |y - baseline| (parabolically refined). Needs at least three usable extrema.
inline std::optional<double> envelope_decay_rate(std::span<const double> x,
                                                 std::span<const double> y, double baseline) {
  const std::size_t n = y.size();
  if (n < 5 || x.size() != n) return std::nullopt;

  std::vector<double> ts, logs;
  double gmax = 0.0;
  for (std::size_t i = 0; i < n; ++i) gmax = std::max(gmax, std::abs(y[i] - baseline));
  if (!(gmax > 0.0)) return std::nullopt;

  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double gm = std::abs(y[i - 1] - baseline);
    const double g0 = std::abs(y[i] - baseline);
    const double gp = std::abs(y[i + 1] - baseline);
    if (g0 >= gm && g0 >= gp && g0 > 1e-3 * gmax) {
      double t_ref = x[i], g_ref = g0;
      const double denom = gm - 2.0 * g0 + gp;
      if (denom < 0.0) {
        const double s = 0.5 * (gm - gp) / denom;
        t_ref = x[i] + s * (x[i + 1] - x[i]);
        g_ref = g0 - 0.25 * (gm - gp) * s;
      }
      ts.push_back(t_ref);
      logs.push_back(std::log(g_ref));
    }
  }
  if (ts.size() < 3) return std::nullopt;

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) {
    sx += ts[i];
    sy += logs[i];
    sxx += ts[i] * ts[i];
    sxy += ts[i] * logs[i];
  }
  const double denom = m * sxx - sx * sx;
  if (!(std::abs(denom) > 0.0)) return std::nullopt;
  const double slope = (m * sxy - sx * sy) / denom;
  if (!(slope < 0.0)) return std::nullopt;
  return -slope;
}

}  // namespace cntqc

#endif  // CNTQC_SPECTRUM_HPP
