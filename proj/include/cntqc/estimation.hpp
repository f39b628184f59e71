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

#ifndef CNTQC_ESTIMATION_HPP
#define CNTQC_ESTIMATION_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cntqc/bloch.hpp"
#include "cntqc/rng.hpp"
#include "cntqc/spectrum.hpp"

namespace cntqc {

enum class RecordKind { rabi, ramsey, ringdown, parity_map };

inline std::string to_string(RecordKind k) {
  switch (k) {
    case RecordKind::rabi: return "rabi";
    case RecordKind::ramsey: return "ramsey";
    case RecordKind::ringdown: return "ringdown";
    case RecordKind::parity_map: return "parity_map";
  }
  return "?";
}

/// Shot-sampled measurement scan. Counts are stored as doubles so exact
/// (noise-free) expectation records can be represented too.
struct MeasurementRecord {
  std::vector<double> abscissa;  // times or delays, s
  std::vector<double> counts;    // successes per point, in [0, shots]
  std::uint64_t shots = 0;
  RecordKind kind = RecordKind::rabi;

  void validate() const {
    if (abscissa.size() != counts.size() || abscissa.empty())
      throw std::invalid_argument("record: abscissa and counts must be non-empty and equal length");
    if (shots < 1) throw std::invalid_argument("record: shots must be >= 1");
    for (std::size_t i = 0; i < abscissa.size(); ++i) {
      if (i > 0 && !(abscissa[i] > abscissa[i - 1]))
        throw std::invalid_argument("record: abscissa must be strictly increasing");
      if (!(counts[i] >= 0.0 && counts[i] <= static_cast<double>(shots)))
        throw std::invalid_argument("record: counts must lie in [0, shots]");
    }
  }

  std::vector<double> frequencies() const {
    std::vector<double> p(counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i) p[i] = counts[i] / static_cast<double>(shots);
    return p;
  }
};

struct FitResult {
  std::vector<std::string> names;
  std::vector<double> values;
  std::vector<double> std_errors;
  double residual_norm = 0.0;
  bool converged = false;
  int iterations = 0;
  std::string message;

  double value(const std::string& name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == name) return values[i];
    throw std::out_of_range("fit: no parameter named " + name);
  }
  double std_error(const std::string& name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == name) return std_errors[i];
    throw std::out_of_range("fit: no parameter named " + name);
  }
};

/// Draw binomial counts for a probability curve. Each point owns a counter
/// stream keyed on (seed, point index), so identical (seed, point) pairs give
/// identical counts no matter how many points are sampled or in what order.
inline MeasurementRecord sample_record(const std::function<double(double)>& probability,
                                       std::span<const double> abscissa, std::uint64_t shots,
                                       std::uint64_t seed, RecordKind kind) {
  if (shots < 1) throw std::invalid_argument("sample: shots must be >= 1");
  MeasurementRecord rec{};
  rec.shots = shots;
  rec.kind = kind;
  rec.abscissa.assign(abscissa.begin(), abscissa.end());
  rec.counts.reserve(abscissa.size());
  for (std::size_t i = 0; i < abscissa.size(); ++i) {
    const double p = probability(abscissa[i]);
    if (!(p >= 0.0 && p <= 1.0))
      throw std::domain_error("sample: model probability outside [0, 1]");
    CounterRng rng(seed, i);
    rec.counts.push_back(static_cast<double>(rng.binomial(shots, p)));
  }
  rec.validate();
  return rec;
}

/// Same, with per-point probabilities given directly.
inline MeasurementRecord sample_record(std::span<const double> probabilities,
                                       std::span<const double> abscissa, std::uint64_t shots,
                                       std::uint64_t seed, RecordKind kind) {
  if (probabilities.size() != abscissa.size())
    throw std::invalid_argument("sample: probabilities and abscissa must match");
  std::size_t next = 0;
  return sample_record([&](double) { return probabilities[next++]; }, abscissa, shots, seed, kind);
}

/// Binomial variance weights 1/var with var = max(p(1-p), 1/(4 shots))/shots;
/// the floor keeps saturated points from getting infinite weight.
inline std::vector<double> binomial_weights(const MeasurementRecord& rec) {
  const double n = static_cast<double>(rec.shots);
  std::vector<double> w(rec.counts.size());
  for (std::size_t i = 0; i < rec.counts.size(); ++i) {
    const double p = rec.counts[i] / n;
    const double var = std::max(p * (1.0 - p), 1.0 / (4.0 * n)) / n;
    w[i] = 1.0 / var;
  }
  return w;
}

namespace detail {

// Gaussian elimination with partial pivoting for the small normal systems.
inline bool solve_linear(std::vector<double> a, std::vector<double> b, std::size_t m,
                         std::vector<double>& out) {
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < m; ++r)
      if (std::abs(a[r * m + col]) > std::abs(a[piv * m + col])) piv = r;
    if (std::abs(a[piv * m + col]) < 1e-300) return false;
    if (piv != col) {
      for (std::size_t c = 0; c < m; ++c) std::swap(a[col * m + c], a[piv * m + c]);
      std::swap(b[col], b[piv]);
    }
    for (std::size_t r = col + 1; r < m; ++r) {
      const double f = a[r * m + col] / a[col * m + col];
      for (std::size_t c = col; c < m; ++c) a[r * m + c] -= f * a[col * m + c];
      b[r] -= f * b[col];
    }
  }
  out.assign(m, 0.0);
  for (std::size_t r = m; r-- > 0;) {
    double acc = b[r];
    for (std::size_t c = r + 1; c < m; ++c) acc -= a[r * m + c] * out[c];
    out[r] = acc / (a[r * m + r] + (a[r * m + r] == 0.0 ? 1e-300 : 0.0));
  }
  for (double v : out)
    if (!std::isfinite(v)) return false;
  return true;
}

// Invert a small symmetric matrix by Gauss-Jordan; false when singular.
inline bool invert_small(std::vector<double> a, std::size_t m, std::vector<double>& inv) {
  inv.assign(m * m, 0.0);
  for (std::size_t i = 0; i < m; ++i) inv[i * m + i] = 1.0;
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < m; ++r)
      if (std::abs(a[r * m + col]) > std::abs(a[piv * m + col])) piv = r;
    if (std::abs(a[piv * m + col]) < 1e-300) return false;
    if (piv != col)
      for (std::size_t c = 0; c < m; ++c) {
        std::swap(a[col * m + c], a[piv * m + c]);
        std::swap(inv[col * m + c], inv[piv * m + c]);
      }
    const double d = a[col * m + col];
    for (std::size_t c = 0; c < m; ++c) {
      a[col * m + c] /= d;
      inv[col * m + c] /= d;
    }
    for (std::size_t r = 0; r < m; ++r) {
      if (r == col) continue;
      const double f = a[r * m + col];
      if (f == 0.0) continue;
      for (std::size_t c = 0; c < m; ++c) {
        a[r * m + c] -= f * a[col * m + c];
        inv[r * m + c] -= f * inv[col * m + c];
      }
    }
  }
  for (double v : inv)
    if (!std::isfinite(v)) return false;
  return true;
}

}  // namespace detail

using CurveModel = std::function<double(double x, std::span<const double> theta)>;

struct LmOptions {
  int max_iterations = 500;
  double step_tol = 1e-10;  // relative parameter step
  double grad_tol = 1e-12;  // scaled gradient inf-norm
  double fd_step = 1e-6;    // central-difference step, relative to parameter scale
  int restarts = 5;         // multi-start count (first start is unjittered)
};

struct LmFit {
  std::vector<double> theta;
  std::vector<double> std_errors;
  double cost = std::numeric_limits<double>::infinity();  // sum of weighted squares
  bool solver_converged = false;
  bool identifiable = false;
  int iterations = 0;
};

namespace detail {

inline double lm_cost(const CurveModel& f, std::span<const double> x, std::span<const double> y,
                      std::span<const double> w, std::span<const double> theta,
                      std::vector<double>* residuals = nullptr) {
  double cost = 0.0;
  if (residuals) residuals->resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = std::sqrt(w[i]) * (f(x[i], theta) - y[i]);
    if (residuals) (*residuals)[i] = r;
    cost += r * r;
  }
  return cost;
}

inline LmFit lm_single(const CurveModel& f, std::span<const double> x, std::span<const double> y,
                       std::span<const double> w, std::vector<double> theta,
                       std::span<const double> scales, const LmOptions& opts) {
  const std::size_t n = x.size(), m = theta.size();
  LmFit fit{};
  std::vector<double> r;
  double cost = lm_cost(f, x, y, w, theta, &r);
  if (!std::isfinite(cost)) {
    fit.theta = theta;
    fit.std_errors.assign(m, std::numeric_limits<double>::infinity());
    return fit;
  }

  std::vector<double> jac(n * m);
  std::vector<double> jtj(m * m), g(m), delta, trial(m);
  double mu = -1.0;

  int iter = 0;
  for (; iter < opts.max_iterations; ++iter) {
    // Central-difference Jacobian of the weighted residuals.
    for (std::size_t j = 0; j < m; ++j) {
      const double h = opts.fd_step * scales[j];
      std::vector<double> tp(theta), tm(theta);
      tp[j] += h;
      tm[j] -= h;
      for (std::size_t i = 0; i < n; ++i) {
        const double fp = f(x[i], tp), fm = f(x[i], tm);
        jac[i * m + j] = std::sqrt(w[i]) * (fp - fm) / (2.0 * h);
      }
    }
    std::fill(jtj.begin(), jtj.end(), 0.0);
    std::fill(g.begin(), g.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t a = 0; a < m; ++a) {
        g[a] += jac[i * m + a] * r[i];
        for (std::size_t b = a; b < m; ++b) jtj[a * m + b] += jac[i * m + a] * jac[i * m + b];
      }
    }
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < a; ++b) jtj[a * m + b] = jtj[b * m + a];

    double grad_scaled = 0.0;
    for (std::size_t j = 0; j < m; ++j) grad_scaled = std::max(grad_scaled, std::abs(g[j] * scales[j]));
    if (grad_scaled < opts.grad_tol * std::max(1.0, cost)) {
      fit.solver_converged = true;
      break;
    }

    // Dimensionless Marquardt parameter scaling diag(JTJ).
    if (mu < 0.0) mu = 1e-3;

    bool stepped = false;
    for (int inner = 0; inner < 60; ++inner) {
      std::vector<double> damped(jtj);
      for (std::size_t j = 0; j < m; ++j)
        damped[j * m + j] += mu * std::max(jtj[j * m + j], 1e-300);
      std::vector<double> rhs(m);
      for (std::size_t j = 0; j < m; ++j) rhs[j] = -g[j];
      if (!solve_linear(damped, rhs, m, delta)) {
        mu *= 4.0;
        continue;
      }
      double rel_step = 0.0;
      for (std::size_t j = 0; j < m; ++j)
        rel_step = std::max(rel_step, std::abs(delta[j]) / std::max(std::abs(theta[j]), scales[j]));
      // A negligible trial step means the model sees no room to move, whether
      // or not it would be accepted.
      if (rel_step < opts.step_tol) {
        fit.solver_converged = true;
        break;
      }
      for (std::size_t j = 0; j < m; ++j) trial[j] = theta[j] + delta[j];
      std::vector<double> r_trial;
      const double cost_trial = lm_cost(f, x, y, w, trial, &r_trial);
      if (std::isfinite(cost_trial) && cost_trial <= cost) {
        theta = trial;
        r = std::move(r_trial);
        cost = cost_trial;
        mu = std::max(mu / 3.0, 1e-18);
        stepped = true;
        break;
      }
      mu *= 4.0;
    }
    if (fit.solver_converged) break;
    if (!stepped) break;  // damping exhausted
  }

  fit.theta = theta;
  fit.cost = cost;
  fit.iterations = iter + 1;

  // Covariance from the undamped normal matrix at the optimum; weights are
  // inverse variances so no extra scaling is applied.
  for (std::size_t j = 0; j < m; ++j) {
    const double h = opts.fd_step * scales[j];
    std::vector<double> tp(theta), tm(theta);
    tp[j] += h;
    tm[j] -= h;
    for (std::size_t i = 0; i < n; ++i)
      jac[i * m + j] = std::sqrt(w[i]) * (f(x[i], tp) - f(x[i], tm)) / (2.0 * h);
  }
  std::fill(jtj.begin(), jtj.end(), 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b) jtj[a * m + b] += jac[i * m + a] * jac[i * m + b];

  std::vector<double> cov;
  fit.std_errors.assign(m, std::numeric_limits<double>::infinity());
  fit.identifiable = false;
  if (detail::invert_small(jtj, m, cov)) {
    fit.identifiable = true;
    for (std::size_t j = 0; j < m; ++j) {
      const double v = cov[j * m + j];
      fit.std_errors[j] = v >= 0.0 ? std::sqrt(v) : std::numeric_limits<double>::infinity();
      if (!std::isfinite(fit.std_errors[j]) ||
          fit.std_errors[j] > std::max(std::abs(theta[j]), scales[j]))
        fit.identifiable = false;
    }
  }
  return fit;
}

}  // namespace detail

/// Damped Gauss-Newton (Levenberg-Marquardt) weighted least squares with
/// jittered multi-starts. The best final cost wins; ties go to the smaller
/// scaled parameter norm.
inline LmFit levenberg_marquardt(const CurveModel& f, std::span<const double> x,
                                 std::span<const double> y, std::span<const double> w,
                                 std::vector<double> theta0, std::vector<double> scales,
                                 const LmOptions& opts = {}) {
  if (x.size() != y.size() || x.size() != w.size())
    throw std::invalid_argument("lm: x, y, w must have equal length");
  if (theta0.empty() || theta0.size() != scales.size())
    throw std::invalid_argument("lm: parameter and scale vectors must match");
  for (double& s : scales) s = std::max(std::abs(s), 1e-300);

  auto scaled_norm = [&](const std::vector<double>& th) {
    double s = 0.0;
    for (std::size_t j = 0; j < th.size(); ++j) s += (th[j] / scales[j]) * (th[j] / scales[j]);
    return s;
  };

  LmFit best{};
  double best_norm = std::numeric_limits<double>::infinity();
  const int restarts = std::max(1, opts.restarts);
  for (int s = 0; s < restarts; ++s) {
    std::vector<double> start(theta0);
    if (s > 0) {
      CounterRng rng(0xC0FFEE, static_cast<std::uint64_t>(s));
      for (std::size_t j = 0; j < start.size(); ++j)
        start[j] += scales[j] * 0.15 * (2.0 * rng.next_double() - 1.0);
    }
    LmFit fit = detail::lm_single(f, x, y, w, start, scales, opts);
    const double norm = scaled_norm(fit.theta);
    const bool better = fit.cost < best.cost * (1.0 - 1e-12) ||
                        (std::abs(fit.cost - best.cost) <= 1e-12 * std::max(fit.cost, best.cost) &&
                         norm < best_norm);
    if (better || !std::isfinite(best.cost)) {
      best = fit;
      best_norm = norm;
    }
  }
  return best;
}

namespace detail {

// A fit only counts as identified when it explains the data better than a
// constant baseline by more than plain shot noise could (chi-square with a
// few parameters; 16.3 is the 0.1% tail at three).
inline constexpr double kMinStructureChi2 = 16.27;

inline double constant_baseline_cost(std::span<const double> y, std::span<const double> w) {
  double sw = 0.0, swy = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    sw += w[i];
    swy += w[i] * y[i];
  }
  const double mean = swy / sw;
  double cost = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) cost += w[i] * (y[i] - mean) * (y[i] - mean);
  return cost;
}

inline FitResult finish_fit(const LmFit& fit, std::vector<std::string> names,
                            const std::string& label, double baseline_cost) {
  FitResult out{};
  out.names = std::move(names);
  out.values = fit.theta;
  out.std_errors = fit.std_errors;
  out.residual_norm = std::sqrt(fit.cost);
  out.iterations = fit.iterations;
  const bool has_structure = baseline_cost - fit.cost > kMinStructureChi2;
  out.converged = fit.solver_converged && fit.identifiable && has_structure;
  if (!fit.solver_converged)
    out.message = label + ": solver did not meet the step/gradient criteria";
  else if (!fit.identifiable)
    out.message = label + ": parameter(s) unidentifiable (unbounded standard error)";
  else if (!has_structure)
    out.message = label + ": no significant structure beyond a constant baseline";
  else
    out.message = "ok";
  return out;
}

inline double tail_mean(std::span<const double> p) {
  const std::size_t k = std::max<std::size_t>(5, p.size() / 5);
  const std::size_t lo = p.size() > k ? p.size() - k : 0;
  double s = 0.0;
  for (std::size_t i = lo; i < p.size(); ++i) s += p[i];
  return s / static_cast<double>(p.size() - lo);
}

}  // namespace detail

/// Fit a driven-oscillation record to the damped-Rabi closed form and report
/// T1 = 1/Gamma1 alongside.
///
/// The closed form is symmetric under swapping Gamma1 and Gamma2 (it depends
/// only on their sum and product), so a free fit of noisy on-resonance data
/// collapses onto the singular Gamma1 = Gamma2 ridge. The default therefore
/// fits (Omega_R, Gamma1) with the relaxation-limited tie Gamma2 = Gamma1/2;
/// pass relaxation_limited = false for the free three-parameter fit (exact on
/// clean data).
inline FitResult fit_rabi(const MeasurementRecord& rec,
                          std::optional<std::vector<double>> init = std::nullopt,
                          bool relaxation_limited = true) {
  rec.validate();
  if (rec.kind != RecordKind::rabi) throw std::invalid_argument("fit: record kind must be rabi");
  const auto p = rec.frequencies();
  const auto w = binomial_weights(rec);
  const double span = rec.abscissa.back() - rec.abscissa.front();
  const double baseline = detail::constant_baseline_cost(p, w);

  std::vector<double> theta0;
  if (init) {
    if (init->size() != 3) throw std::invalid_argument("fit: rabi init needs 3 parameters");
    theta0 = *init;
  } else {
    const auto f_peak = dominant_frequency(rec.abscissa, p);
    const double omega0 = f_peak ? kTwoPi * *f_peak : 2.0 * kTwoPi / span;
    const double p_inf = detail::tail_mean(p);
    const auto rate = envelope_decay_rate(rec.abscissa, p, p_inf);
    const double lambda = rate ? *rate : 1.0 / span;
    // Envelope decays at (Gamma1 + Gamma2)/2 = 3 Gamma1/4 in the tied split.
    theta0 = {omega0, 4.0 * lambda / 3.0, 2.0 * lambda / 3.0};
  }

  FitResult out{};
  if (relaxation_limited) {
    std::vector<double> start = {theta0[0], theta0[1]};
    std::vector<double> scales = {std::abs(start[0]), std::max(std::abs(start[1]), 1e-3 / span)};
    CurveModel model = [](double t, std::span<const double> th) {
      if (!(th[0] >= 0.0) || !(th[1] >= 0.0)) return 1e6;
      return rabi_population_analytic(th[0], th[1], 0.5 * th[1], t);
    };
    LmFit fit = levenberg_marquardt(model, rec.abscissa, p, w, start, scales);
    out = detail::finish_fit(fit, {"Omega_R_rad_s", "Gamma1_per_s"}, "rabi", baseline);
    out.names.insert(out.names.begin() + 2, "Gamma2_per_s");
    out.values.insert(out.values.begin() + 2, 0.5 * out.values[1]);
    out.std_errors.insert(out.std_errors.begin() + 2, 0.5 * out.std_errors[1]);
  } else {
    std::vector<double> scales = {std::abs(theta0[0]), std::max(std::abs(theta0[1]), 1e-3 / span),
                                  std::max(std::abs(theta0[2]), 1e-3 / span)};
    CurveModel model = [](double t, std::span<const double> th) {
      if (!(th[0] >= 0.0) || !(th[1] >= 0.0) || !(th[2] >= 0.0)) return 1e6;
      return rabi_population_analytic(th[0], th[1], th[2], t);
    };
    LmFit fit = levenberg_marquardt(model, rec.abscissa, p, w, theta0, scales);
    out = detail::finish_fit(fit, {"Omega_R_rad_s", "Gamma1_per_s", "Gamma2_per_s"}, "rabi",
                             baseline);
  }

  // Derived relaxation time with first-order error propagation.
  const double g1 = out.values[1];
  out.names.push_back("T1_s");
  out.values.push_back(g1 > 0.0 ? 1.0 / g1 : std::numeric_limits<double>::infinity());
  out.std_errors.push_back(g1 > 0.0 ? out.std_errors[1] / (g1 * g1)
                                    : std::numeric_limits<double>::infinity());
  return out;
}

/// Fit a fringe record to P1(tau) = (1/2)[1 + e^{-tau/T2} cos(Delta tau +
/// phi0)]; estimates (Delta, T2, phi0).
inline FitResult fit_ramsey(const MeasurementRecord& rec,
                            std::optional<std::vector<double>> init = std::nullopt) {
  rec.validate();
  if (rec.kind != RecordKind::ramsey) throw std::invalid_argument("fit: record kind must be ramsey");
  const auto p = rec.frequencies();
  const auto w = binomial_weights(rec);
  const double span = rec.abscissa.back() - rec.abscissa.front();
  const double baseline = detail::constant_baseline_cost(p, w);

  std::vector<double> theta0;
  if (init) {
    if (init->size() != 3) throw std::invalid_argument("fit: ramsey init needs 3 parameters");
    theta0 = *init;
  } else {
    const auto f_peak = dominant_frequency(rec.abscissa, p);
    const double delta0 = f_peak ? kTwoPi * *f_peak : 2.0 * kTwoPi / span;
    const auto rate = envelope_decay_rate(rec.abscissa, p, 0.5);
    const double t2 = rate && *rate > 0.0 ? 1.0 / *rate : span;
    const double c0 = std::clamp(2.0 * p.front() - 1.0, -1.0, 1.0);
    theta0 = {delta0, t2, std::acos(c0)};
  }
  std::vector<double> scales = {std::abs(theta0[0]), std::abs(theta0[1]), 1.0};

  CurveModel model = [](double tau, std::span<const double> th) {
    if (!(th[1] > 0.0)) return 1e6;
    return 0.5 * (1.0 + std::exp(-tau / th[1]) * std::cos(th[0] * tau + th[2]));
  };
  if (!init) {
    // The first-point phase guess has a sign ambiguity; start from the better one.
    std::vector<double> alt(theta0);
    alt[2] = -alt[2];
    std::vector<double> r;
    if (detail::lm_cost(model, rec.abscissa, p, w, alt, &r) <
        detail::lm_cost(model, rec.abscissa, p, w, theta0, &r))
      theta0 = alt;
  }
  LmFit fit = levenberg_marquardt(model, rec.abscissa, p, w, theta0, scales);
  return detail::finish_fit(fit, {"Delta_rad_s", "T2_s", "phi0_rad"}, "ramsey", baseline);
}

/// Fit a free-decay record to A e^{-t/T1} + c; estimates (A, T1, c).
inline FitResult fit_ringdown(const MeasurementRecord& rec,
                              std::optional<std::vector<double>> init = std::nullopt) {
  rec.validate();
  if (rec.kind != RecordKind::ringdown)
    throw std::invalid_argument("fit: record kind must be ringdown");
  const auto p = rec.frequencies();
  const auto w = binomial_weights(rec);
  const double span = rec.abscissa.back() - rec.abscissa.front();
  const double baseline = detail::constant_baseline_cost(p, w);

  std::vector<double> theta0;
  if (init) {
    if (init->size() != 3) throw std::invalid_argument("fit: ringdown init needs 3 parameters");
    theta0 = *init;
  } else {
    const double c0 = detail::tail_mean(p);
    const double a0 = p.front() - c0;
    // Log-linear decay-rate guess over the early, well-resolved part.
    double sx = 0, sy = 0, sxx = 0, sxy = 0, np = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      const double g = p[i] - c0;
      if (std::abs(a0) > 0.0 && g / (a0 == 0.0 ? 1.0 : a0) > 0.05) {
        const double ly = std::log(std::abs(g));
        sx += rec.abscissa[i];
        sy += ly;
        sxx += rec.abscissa[i] * rec.abscissa[i];
        sxy += rec.abscissa[i] * ly;
        np += 1.0;
      }
    }
    double t1 = span / 3.0;
    const double denom = np * sxx - sx * sx;
    if (np >= 3.0 && std::abs(denom) > 0.0) {
      const double slope = (np * sxy - sx * sy) / denom;
      if (slope < 0.0) t1 = -1.0 / slope;
    }
    theta0 = {a0, t1, c0};
  }
  std::vector<double> scales = {std::max(std::abs(theta0[0]), 1e-3), std::abs(theta0[1]),
                                std::max(std::abs(theta0[2]), 1e-3)};

  CurveModel model = [](double t, std::span<const double> th) {
    if (!(th[1] > 0.0)) return 1e6;
    return th[0] * std::exp(-t / th[1]) + th[2];
  };
  LmFit fit = levenberg_marquardt(model, rec.abscissa, p, w, theta0, scales);
  return detail::finish_fit(fit, {"amplitude", "T1_s", "offset"}, "ringdown", baseline);
}

}  // namespace cntqc

#endif  // CNTQC_ESTIMATION_HPP
