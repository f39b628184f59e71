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

#ifndef CNTQC_ODE_HPP
#define CNTQC_ODE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cntqc {

struct SimOptions {
  double rel_tol = 1e-9;
  double abs_tol = 1e-9;
  double max_step_s = std::numeric_limits<double>::infinity();

  void validate() const {
    if (!(rel_tol > 0.0 && rel_tol <= 1e-3)) throw std::domain_error("sim: rel_tol must be in (0, 1e-3]");
    if (!(abs_tol > 0.0 && abs_tol <= 1e-3)) throw std::domain_error("sim: abs_tol must be in (0, 1e-3]");
    if (!(max_step_s > 0.0)) throw std::domain_error("sim: max_step must be > 0");
  }
};

/// Step-size underflow or non-finite state; carries the time of failure.
class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(const std::string& what, double time_s)
      : std::runtime_error(what + " at t = " + format_time(time_s)), time_s_(time_s) {}
  double time_s() const { return time_s_; }

  static std::string format_time(double t) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.9g", t);
    return buf;
  }

 private:
  double time_s_;
};

namespace detail {

// Dormand-Prince 5(4) coefficients.
inline constexpr double kC[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
inline constexpr double kA2[1] = {1.0 / 5};
inline constexpr double kA3[2] = {3.0 / 40, 9.0 / 40};
inline constexpr double kA4[3] = {44.0 / 45, -56.0 / 15, 32.0 / 9};
inline constexpr double kA5[4] = {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729};
inline constexpr double kA6[5] = {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176,
                                  -5103.0 / 18656};
inline constexpr double kB[7] = {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784,
                                 11.0 / 84, 0.0};
// b - b_hat (embedded 4th-order error weights).
inline constexpr double kE[7] = {71.0 / 57600, 0.0,           -71.0 / 16695, 71.0 / 1920,
                                 -17253.0 / 339200, 22.0 / 525, -1.0 / 40};
// Dense-output weights.
inline constexpr double kD[7] = {-12715105075.0 / 11282082432.0,
                                 0.0,
                                 87487479700.0 / 32700410799.0,
                                 -10690763975.0 / 1880347072.0,
                                 701980252875.0 / 199316789632.0,
                                 -1453857185.0 / 822651844.0,
                                 69997945.0 / 29380423.0};

}  // namespace detail

/// Adaptive Dormand-Prince 5(4) integrator for small fixed-size systems with
/// a quartic dense-output interpolant. Rhs signature:
///   std::array<double, N> rhs(double t, const std::array<double, N>& y)
template <std::size_t N, typename Rhs>
class Dopri5 {
 public:
  using State = std::array<double, N>;

  Dopri5(Rhs rhs, State y0, double t0, const SimOptions& opts)
      : rhs_(rhs), y_(y0), t_(t0), opts_(opts) {
    opts_.validate();
    k1_ = rhs_(t_, y_);
  }

  double time() const { return t_; }
  const State& state() const { return y_; }

  /// Advance by one accepted step toward t_end (never past it).
  /// Returns false when t_end has been reached.
  bool step(double t_end) {
    using namespace detail;
    if (t_ >= t_end) return false;
    // Snap over sub-ulp remainders so clamped final steps cannot underflow.
    const double snap = 4.0 * std::numeric_limits<double>::epsilon() *
                        std::max(std::abs(t_end), std::abs(t_));
    if (t_end - t_ <= snap) {
      t_ = t_end;
      return false;
    }
    if (h_ <= 0.0) h_ = initial_step(t_end);

    for (int attempt = 0;; ++attempt) {
      double h = std::min({h_, opts_.max_step_s, t_end - t_});
      if (!(h > min_step())) throw IntegrationError("ode: step size underflow", t_);

      State tmp{};
      const State& k1 = k1_;
      for (std::size_t i = 0; i < N; ++i) tmp[i] = y_[i] + h * kA2[0] * k1[i];
      State k2 = rhs_(t_ + kC[1] * h, tmp);
      for (std::size_t i = 0; i < N; ++i)
        tmp[i] = y_[i] + h * (kA3[0] * k1[i] + kA3[1] * k2[i]);
      State k3 = rhs_(t_ + kC[2] * h, tmp);
      for (std::size_t i = 0; i < N; ++i)
        tmp[i] = y_[i] + h * (kA4[0] * k1[i] + kA4[1] * k2[i] + kA4[2] * k3[i]);
      State k4 = rhs_(t_ + kC[3] * h, tmp);
      for (std::size_t i = 0; i < N; ++i)
        tmp[i] = y_[i] + h * (kA5[0] * k1[i] + kA5[1] * k2[i] + kA5[2] * k3[i] + kA5[3] * k4[i]);
      State k5 = rhs_(t_ + kC[4] * h, tmp);
      for (std::size_t i = 0; i < N; ++i)
        tmp[i] = y_[i] + h * (kA6[0] * k1[i] + kA6[1] * k2[i] + kA6[2] * k3[i] + kA6[3] * k4[i] +
                              kA6[4] * k5[i]);
      State k6 = rhs_(t_ + kC[5] * h, tmp);

      State y1{}, err{};
      for (std::size_t i = 0; i < N; ++i) {
        y1[i] = y_[i] +
                h * (kB[0] * k1[i] + kB[2] * k3[i] + kB[3] * k4[i] + kB[4] * k5[i] + kB[5] * k6[i]);
      }
      State k7 = rhs_(t_ + h, y1);
      double err_norm = 0.0;
      for (std::size_t i = 0; i < N; ++i) {
        err[i] = h * (kE[0] * k1[i] + kE[2] * k3[i] + kE[3] * k4[i] + kE[4] * k5[i] +
                      kE[5] * k6[i] + kE[6] * k7[i]);
        const double sc = opts_.abs_tol + opts_.rel_tol * std::max(std::abs(y_[i]), std::abs(y1[i]));
        err_norm += (err[i] / sc) * (err[i] / sc);
      }
      err_norm = std::sqrt(err_norm / static_cast<double>(N));
      if (!std::isfinite(err_norm)) throw IntegrationError("ode: non-finite state", t_);

      if (err_norm <= 1.0) {
        // Dense-output coefficients for this step (Hairer's CONTD5 form).
        for (std::size_t i = 0; i < N; ++i) {
          const double dy = y1[i] - y_[i];
          const double bspl = h * k1[i] - dy;
          rc1_[i] = y_[i];
          rc2_[i] = dy;
          rc3_[i] = bspl;
          rc4_[i] = dy - h * k7[i] - bspl;
          rc5_[i] = h * (kD[0] * k1[i] + kD[2] * k3[i] + kD[3] * k4[i] + kD[4] * k5[i] +
                         kD[5] * k6[i] + kD[6] * k7[i]);
        }
        t_prev_ = t_;
        h_prev_ = h;
        t_ += h;
        y_ = y1;
        k1_ = k7;  // FSAL
        const double fac = std::clamp(0.9 * std::pow(err_norm + 1e-300, -0.2), 0.2, 5.0);
        h_ = h * fac;
        return t_ < t_end;
      }
      h_ = h * std::clamp(0.9 * std::pow(err_norm, -0.2), 0.2, 1.0);
      if (attempt > 200) throw IntegrationError("ode: repeated step rejection", t_);
    }
  }

  /// Interpolate the solution inside the last accepted step [t_prev, t].
  State interpolate(double t) const {
    if (h_prev_ == 0.0) return y_;
    const double s = (t - t_prev_) / h_prev_;
    State out{};
    for (std::size_t i = 0; i < N; ++i) {
      out[i] = rc1_[i] + s * (rc2_[i] + (1.0 - s) * (rc3_[i] + s * (rc4_[i] + (1.0 - s) * rc5_[i])));
    }
    return out;
  }

 private:
  double min_step() const {
    return 4.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(t_), 1.0e-30);
  }

  double initial_step(double t_end) const {
    // Crude but safe: start well below both the span and the rhs scale;
    // the controller adapts within a few steps.
    double sc = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double s = opts_.abs_tol + opts_.rel_tol * std::abs(y_[i]);
      sc = std::max(sc, std::abs(k1_[i]) / s);
    }
    const double span = t_end - t_;
    double h = span / 100.0;
    if (sc > 0.0) h = std::min(h, 0.01 / sc);
    return std::max(h, 16.0 * min_step());
  }

  Rhs rhs_;
  State y_;
  double t_;
  SimOptions opts_;
  double h_ = 0.0;
  State k1_{};  // FSAL: derivative at (t_, y_)
  State rc1_{}, rc2_{}, rc3_{}, rc4_{}, rc5_{};
  double t_prev_ = 0.0, h_prev_ = 0.0;
};

/// Integrate and sample the dense solution at the (strictly increasing) grid.
/// The first grid point is the initial time.
template <std::size_t N, typename Rhs>
std::vector<std::array<double, N>> integrate_dense(Rhs&& rhs, std::array<double, N> y0,
                                                   std::span<const double> t_grid,
                                                   const SimOptions& opts = {}) {
  if (t_grid.empty()) throw std::invalid_argument("ode: empty time grid");
  for (std::size_t i = 1; i < t_grid.size(); ++i) {
    if (!(t_grid[i] > t_grid[i - 1]))
      throw std::invalid_argument("ode: time grid must be strictly increasing");
  }
  std::vector<std::array<double, N>> out;
  out.reserve(t_grid.size());
  out.push_back(y0);
  if (t_grid.size() == 1) return out;

  Dopri5<N, std::decay_t<Rhs>> stepper(std::forward<Rhs>(rhs), y0, t_grid.front(), opts);
  const double t_end = t_grid.back();
  std::size_t next = 1;
  bool more = true;
  while (more) {
    more = stepper.step(t_end);
    while (next < t_grid.size() && t_grid[next] <= stepper.time()) {
      if (t_grid[next] == stepper.time()) {
        out.push_back(stepper.state());
      } else {
        out.push_back(stepper.interpolate(t_grid[next]));
      }
      ++next;
    }
  }
  if (next != t_grid.size()) throw IntegrationError("ode: failed to reach end of grid", stepper.time());
  return out;
}

/// Integrate to a single end time and return the final state.
template <std::size_t N, typename Rhs>
std::array<double, N> integrate_to(Rhs&& rhs, std::array<double, N> y0, double t0, double t1,
                                   const SimOptions& opts = {}) {
  if (t1 == t0) return y0;
  if (!(t1 > t0)) throw std::invalid_argument("ode: end time must be after start time");
  Dopri5<N, std::decay_t<Rhs>> stepper(std::forward<Rhs>(rhs), y0, t0, opts);
  while (stepper.step(t1)) {
  }
  return stepper.state();
}

}  // namespace cntqc

#endif  // CNTQC_ODE_HPP
