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

// Command-line front end: every pipeline is exposed as a subcommand that
// reads one shared JSON config and emits plot-ready CSV plus a JSON envelope
// embedding the resolved config, so any result can be reproduced from its own
// output. Exit codes: 0 ok, 2 config error, 4 fit non-convergence,
// 3 numerical failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cntqc/cntqc.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitFit = 4;

struct GlobalArgs {
  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_dir = ".";
  std::uint64_t seed = 0;
  std::uint64_t shots = 0;
  int threads = 0;
  bool json_data = false;
  bool seed_given = false, shots_given = false, threads_given = false;
};

std::string join_path(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

cntqc::RunConfig resolve_config(const GlobalArgs& g) {
  json doc = g.config_path.empty() ? json::object() : cntqc::load_json_file(g.config_path);
  for (const auto& ov : g.overrides) cntqc::apply_override(doc, ov);
  cntqc::RunConfig cfg = cntqc::parse_config(doc);
  if (g.seed_given) cfg.seed = g.seed;
  if (g.shots_given) cfg.shots = g.shots;
  if (g.threads_given) cfg.threads = g.threads;
  return cfg;
}

void write_envelope(const std::string& path, const std::string& command,
                    const cntqc::RunConfig& cfg, json extras) {
  json j;
  j["command"] = command;
  j["config"] = cntqc::config_to_json(cfg);
  for (auto it = extras.begin(); it != extras.end(); ++it) j[it.key()] = it.value();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << j.dump(2) << '\n';
}

void print_config_error(const std::string& field, const std::string& message) {
  json err;
  err["error"] = {{"code", kExitConfig}, {"field", field}, {"message", message}};
  std::cerr << err.dump() << '\n';
}

void print_runtime_error(int code, const std::string& message) {
  json err;
  err["error"] = {{"code", code}, {"message", message}};
  std::cerr << err.dump() << '\n';
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i)
    v[i] = n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / (n - 1);
  return v;
}

// ---------------------------------------------------------------------------
// device

int cmd_device(const GlobalArgs& g, std::vector<double> lengths_nm, double t_pi2_s, bool no_t2) {
  cntqc::RunConfig cfg = resolve_config(g);
  if (t_pi2_s <= 0.0) t_pi2_s = cfg.drive.t_pi2_s;
  std::vector<double> lengths_m;
  for (double l : lengths_nm) lengths_m.push_back(l * 1e-9);

  const auto rows = cntqc::device_table(lengths_m, cfg.device, t_pi2_s, !no_t2);

  json data = json::array();
  const std::string csv_path = join_path(g.out_dir, "device_table.csv");
  if (!g.json_data) {
    cntqc::CsvWriter csv(csv_path, {"L_nm", "f0_MHz", "x_zpf_pm", "F_pihalf_fN", "T1_us", "T2_us"});
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& r = rows[i];
      csv.row({lengths_nm[i], r.f0_hz * 1e-6, r.x_zpf_m * 1e12, r.pi_half_force_n * 1e15,
               r.t1_s * 1e6, r.t2_s * 1e6});
    }
  } else {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& r = rows[i];
      data.push_back({{"L_nm", lengths_nm[i]},
                      {"f0_MHz", r.f0_hz * 1e-6},
                      {"x_zpf_pm", r.x_zpf_m * 1e12},
                      {"F_pihalf_fN", r.pi_half_force_n * 1e15},
                      {"T1_us", r.t1_s * 1e6},
                      {"T2_us", r.t2_s * 1e6}});
    }
  }

  json extras;
  extras["t_pi2_s"] = t_pi2_s;
  if (g.json_data)
    extras["rows"] = data;
  else
    extras["outputs"] = {{"table_csv", csv_path}};
  write_envelope(join_path(g.out_dir, "device_table.json"), "device", cfg, extras);

  std::printf("%10s %12s %10s %12s %10s %10s\n", "L (nm)", "f0 (MHz)", "x_zpf (pm)", "F_pi/2 (fN)",
              "T1 (us)", "T2 (us)");
  for (const auto& r : rows)
    std::printf("%10.4g %12.6g %10.4g %12.4g %10.4g %10.4g\n", r.length_m * 1e9, r.f0_hz * 1e-6,
                r.x_zpf_m * 1e12, r.pi_half_force_n * 1e15, r.t1_s * 1e6, r.t2_s * 1e6);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// rates

int cmd_rates(const GlobalArgs& g) {
  cntqc::RunConfig cfg = resolve_config(g);
  if (!cfg.bath)
    throw cntqc::ConfigError("bath", "missing required section (alpha, omega_c_rad_s, T_K)");
  const double omega0 = cntqc::flexural_frequency(cfg.device);
  const auto r = cntqc::dissipation_rates(*cfg.bath, omega0, cfg.include_pure_dephasing);

  json extras;
  extras["omega0_rad_s"] = omega0;
  extras["rates"] = {{"gamma_up_per_s", r.gamma_up},   {"gamma_down_per_s", r.gamma_down},
                     {"gamma_phi_per_s", r.gamma_phi}, {"Gamma1_per_s", r.gamma1},
                     {"Gamma2_per_s", r.gamma2},       {"T1_s", r.t1_s},
                     {"T2_s", r.t2_s},                 {"Z_eq", r.z_eq}};
  write_envelope(join_path(g.out_dir, "rates.json"), "rates", cfg, extras);
  std::printf("Gamma1 = %.6g 1/s  Gamma2 = %.6g 1/s  T1 = %.6g s  T2 = %.6g s  Z_eq = %.6g\n",
              r.gamma1, r.gamma2, r.t1_s, r.t2_s, r.z_eq);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// rabi / ringdown / ramsey curves

int cmd_rabi(const GlobalArgs& g, double t_max, int n_points, bool sample) {
  cntqc::RunConfig cfg = resolve_config(g);
  const auto rates = cfg.resolve_rates();
  const auto drive = cfg.drive_params();
  if (t_max <= 0.0)
    t_max = rates.gamma1 > 0.0 ? 10.0 / rates.gamma1
                               : 10.0 * cntqc::kTwoPi / std::max(drive.rabi_rad_s, 1.0);
  const auto t_grid = linspace(0.0, t_max, n_points);

  const auto traj =
      cntqc::integrate_bloch(cntqc::BlochVector{0, 0, -1}, drive, rates, t_grid, cfg.sim);
  const bool analytic_valid = drive.detuning_rad_s == 0.0 && rates.z_eq == -1.0;

  std::vector<double> p_ode(t_grid.size());
  const std::string curve_path = join_path(g.out_dir, "rabi.csv");
  const std::string traj_path = join_path(g.out_dir, "rabi_traj.csv");
  {
    cntqc::CsvWriter curve(curve_path, {"t_s", "P1_analytic", "P1_ode"});
    cntqc::CsvWriter tcsv(traj_path, {"t_s", "X", "Y", "Z", "P1"});
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
      p_ode[i] = cntqc::excited_population(traj[i]);
      const double p_an =
          analytic_valid ? cntqc::rabi_population_analytic(drive.rabi_rad_s, rates.gamma1,
                                                           rates.gamma2, t_grid[i])
                         : std::numeric_limits<double>::quiet_NaN();
      curve.row({t_grid[i], p_an, p_ode[i]});
      tcsv.row({t_grid[i], traj[i].x, traj[i].y, traj[i].z, p_ode[i]});
    }
  }

  json extras;
  extras["outputs"] = {{"curve_csv", curve_path}, {"trajectory_csv", traj_path}};
  extras["analytic_column_valid"] = analytic_valid;
  extras["steady_state"] = cntqc::steady_state_population(drive.rabi_rad_s, rates.gamma1,
                                                          rates.gamma2);
  if (sample) {
    const auto rec = cntqc::sample_record(p_ode, t_grid, cfg.shots, cfg.seed,
                                          cntqc::RecordKind::rabi);
    const std::string rec_path = join_path(g.out_dir, "rabi_record.csv");
    cntqc::write_record_csv(rec_path, rec);
    extras["outputs"]["record_csv"] = rec_path;
  }
  write_envelope(join_path(g.out_dir, "rabi.json"), "rabi", cfg, extras);
  std::printf("rabi: %zu points to t = %.6g s -> %s\n", t_grid.size(), t_max, curve_path.c_str());
  return kExitOk;
}

int cmd_ringdown(const GlobalArgs& g, double t_max, int n_points, bool sample) {
  cntqc::RunConfig cfg = resolve_config(g);
  const auto rates = cfg.resolve_rates();
  if (!(rates.gamma1 > 0.0))
    throw cntqc::ConfigError("rates", "ringdown needs Gamma1 > 0 (set rates, bath, or device Q)");
  if (t_max <= 0.0) t_max = 5.0 / rates.gamma1;
  const auto t_grid = linspace(0.0, t_max, n_points);

  const auto drive = cntqc::DriveParams::make(0.0, 0.0, cntqc::flexural_frequency(cfg.device));
  const auto traj =
      cntqc::integrate_bloch(cntqc::BlochVector{0, 0, 1}, drive, rates, t_grid, cfg.sim);

  const double p_inf = 0.5 * (1.0 + rates.z_eq);
  std::vector<double> p_ode(t_grid.size());
  const std::string curve_path = join_path(g.out_dir, "ringdown.csv");
  {
    cntqc::CsvWriter curve(curve_path, {"t_s", "P1_analytic", "P1_ode"});
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
      p_ode[i] = cntqc::excited_population(traj[i]);
      const double p_an = p_inf + (1.0 - p_inf) * std::exp(-rates.gamma1 * t_grid[i]);
      curve.row({t_grid[i], p_an, p_ode[i]});
    }
  }

  json extras;
  extras["outputs"] = {{"curve_csv", curve_path}};
  extras["T1_s"] = rates.t1_s;
  if (sample) {
    const auto rec = cntqc::sample_record(p_ode, t_grid, cfg.shots, cfg.seed,
                                          cntqc::RecordKind::ringdown);
    const std::string rec_path = join_path(g.out_dir, "ringdown_record.csv");
    cntqc::write_record_csv(rec_path, rec);
    extras["outputs"]["record_csv"] = rec_path;
  }
  write_envelope(join_path(g.out_dir, "ringdown.json"), "ringdown", cfg, extras);
  std::printf("ringdown: %zu points, T1 = %.6g s -> %s\n", t_grid.size(), rates.t1_s,
              curve_path.c_str());
  return kExitOk;
}

int cmd_ramsey(const GlobalArgs& g, double tau_max, int n_points, bool sample,
               const std::string& sequence_path) {
  cntqc::RunConfig cfg = resolve_config(g);
  const auto rates = cfg.resolve_rates();
  const auto drive = cfg.drive_params();
  const double chi = cfg.parity ? cfg.parity->chi_rad_s : 0.0;

  if (!sequence_path.empty()) {
    const auto seq = cntqc::parse_sequence(cntqc::load_json_file(sequence_path));
    const double p1 = cntqc::simulate_ramsey_sequence(seq, drive, rates, cfg.sim, chi);
    json extras;
    extras["sequence_file"] = sequence_path;
    extras["P1"] = p1;
    write_envelope(join_path(g.out_dir, "ramsey_sequence.json"), "ramsey", cfg, extras);
    std::printf("sequence: P1 = %.12g\n", p1);
    return kExitOk;
  }

  if (!(rates.t2_s > 0.0) || !std::isfinite(rates.t2_s))
    throw cntqc::ConfigError("rates", "ramsey needs a finite T2 (set rates, bath, or device Q)");
  if (tau_max <= 0.0) tau_max = 3.0 * rates.t2_s;
  const auto tau_grid = linspace(0.0, tau_max, n_points);

  cntqc::RamseyConfig rcfg{};
  rcfg.detuning_rad_s = drive.detuning_rad_s;
  rcfg.t2_s = rates.t2_s;
  rcfg.phi0_rad = cfg.drive.phi0_rad;

  std::vector<double> p_sim(tau_grid.size());
  const std::string curve_path = join_path(g.out_dir, "ramsey.csv");
  {
    cntqc::CsvWriter curve(curve_path, {"tau_s", "P1_analytic", "P1_simulated"});
    for (std::size_t i = 0; i < tau_grid.size(); ++i) {
      const auto seq =
          cntqc::make_ramsey_sequence(tau_grid[i], cfg.drive.phi0_rad, cfg.drive.t_pi2_s);
      p_sim[i] = cntqc::simulate_ramsey_sequence(seq, drive, rates, cfg.sim, chi);
      curve.row({tau_grid[i], cntqc::ramsey_probability_analytic(rcfg, tau_grid[i]), p_sim[i]});
    }
  }

  json extras;
  extras["outputs"] = {{"curve_csv", curve_path}};
  extras["T2_s"] = rates.t2_s;
  if (sample) {
    const auto rec = cntqc::sample_record(p_sim, tau_grid, cfg.shots, cfg.seed,
                                          cntqc::RecordKind::ramsey);
    const std::string rec_path = join_path(g.out_dir, "ramsey_record.csv");
    cntqc::write_record_csv(rec_path, rec);
    extras["outputs"]["record_csv"] = rec_path;
  }
  write_envelope(join_path(g.out_dir, "ramsey.json"), "ramsey", cfg, extras);
  std::printf("ramsey: %zu delays to tau = %.6g s -> %s\n", tau_grid.size(), tau_max,
              curve_path.c_str());
  return kExitOk;
}

// ---------------------------------------------------------------------------
// wigner / tomo

cntqc::TLSDensity superposition_state() {
  cntqc::TLSDensity rho{};
  rho.rho00 = 0.5;
  rho.rho11 = 0.5;
  rho.rho01 = {0.5, 0.0};
  return rho;
}

int cmd_wigner(const GlobalArgs& g, std::vector<double> times) {
  cntqc::RunConfig cfg = resolve_config(g);
  const auto rates = cfg.resolve_rates();
  const double omega0 = cntqc::flexural_frequency(cfg.device);
  const double t1 = rates.t1_s, t2 = rates.t2_s;
  if (times.empty()) times = cfg.wigner.t_list_s;
  if (times.empty()) {
    if (std::isfinite(t1)) {
      times = {0.0, t1, 5.0 * t1};
    } else {
      std::cerr << "warning: dissipation-free rates, mapping the initial state only\n";
      times = {0.0};
    }
  }

  const cntqc::GridSpec grid{cfg.wigner.extent, cfg.wigner.n_points};
  json per_time = json::array();
  for (std::size_t k = 0; k < times.size(); ++k) {
    const auto rho = cntqc::decohered_density(times[k], t1, t2, omega0, superposition_state());
    const auto map = cntqc::wigner_map(rho, grid);
    const std::string path = join_path(g.out_dir, "wigner_t" + std::to_string(k) + ".csv");
    cntqc::CsvWriter csv(path, {"re_alpha", "im_alpha", "W"});
    for (int iy = 0; iy < grid.n_points; ++iy)
      for (int ix = 0; ix < grid.n_points; ++ix)
        csv.row({grid.coord(ix), grid.coord(iy), map.at(ix, iy)});
    const auto neg = cntqc::negativity_metrics(map);
    per_time.push_back({{"t_s", times[k]},
                        {"csv", path},
                        {"min_W", neg.min_value},
                        {"negative_volume", neg.negative_volume},
                        {"normalization", cntqc::grid_normalization(map)}});
  }

  json extras;
  extras["omega0_rad_s"] = omega0;
  extras["T1_s"] = t1;
  extras["T2_s"] = t2;
  extras["grid"] = {{"extent", grid.extent}, {"n_points", grid.n_points}};
  extras["maps"] = per_time;
  write_envelope(join_path(g.out_dir, "wigner.json"), "wigner", cfg, extras);
  std::printf("wigner: %zu maps on a %dx%d grid -> %s\n", times.size(), grid.n_points,
              grid.n_points, join_path(g.out_dir, "wigner.json").c_str());
  return kExitOk;
}

int cmd_tomo(const GlobalArgs& g) {
  cntqc::RunConfig cfg = resolve_config(g);
  if (!cfg.parity)
    throw cntqc::ConfigError("parity", "missing required section (chi_rad_s) for tomo");
  const auto rates = cfg.resolve_rates();
  const double omega0 = cntqc::flexural_frequency(cfg.device);

  const double t_pi = cfg.parity->t_pi_s();
  if (t_pi < 1e-6 || t_pi > 20e-6)
    std::cerr << "warning: parity window t_pi = " << t_pi
              << " s is outside the expected 1-20 us range\n";
  const auto window = cfg.parity->check_window(omega0, rates.t2_s);
  if (!window.ok) throw cntqc::ConfigError("parity.chi_rad_s", window.detail);

  const auto rho = cntqc::decohered_density(cfg.wigner.t_s, rates.t1_s, rates.t2_s, omega0,
                                            superposition_state());
  const cntqc::GridSpec grid{cfg.wigner.extent, cfg.wigner.n_points};
  cntqc::TomographyOptions topts{};
  topts.apply_visibility = cfg.apply_visibility;
  topts.threads = cfg.threads;
  const auto maps =
      cntqc::tomography_sweep(rho, grid, *cfg.parity, omega0, rates.t2_s, cfg.shots, cfg.seed,
                              topts);

  const std::string csv_path = join_path(g.out_dir, "tomo.csv");
  {
    cntqc::CsvWriter csv(csv_path, {"re_alpha", "im_alpha", "W_ideal", "W_sampled", "P1_sampled"});
    for (int iy = 0; iy < grid.n_points; ++iy)
      for (int ix = 0; ix < grid.n_points; ++ix)
        csv.row({grid.coord(ix), grid.coord(iy), maps.ideal.at(ix, iy), maps.sampled.at(ix, iy),
                 maps.p1_sampled.at(ix, iy)});
  }

  const auto neg_ideal = cntqc::negativity_metrics(maps.ideal);
  const auto neg_sampled = cntqc::negativity_metrics(maps.sampled);
  json extras;
  extras["outputs"] = {{"map_csv", csv_path}};
  extras["grid"] = {{"extent", grid.extent}, {"n_points", grid.n_points}};
  extras["state_time_s"] = cfg.wigner.t_s;
  extras["t_pi_s"] = t_pi;
  extras["ideal"] = {{"min_W", neg_ideal.min_value},
                     {"negative_volume", neg_ideal.negative_volume}};
  extras["sampled"] = {{"min_W", neg_sampled.min_value},
                       {"negative_volume", neg_sampled.negative_volume}};
  write_envelope(join_path(g.out_dir, "tomo.json"), "tomo", cfg, extras);
  std::printf("tomo: %dx%d grid, %llu shots/cell -> %s\n", grid.n_points, grid.n_points,
              static_cast<unsigned long long>(cfg.shots), csv_path.c_str());
  return kExitOk;
}

// ---------------------------------------------------------------------------
// fit

int cmd_fit(const GlobalArgs& g, const std::string& record_path, const std::string& kind_name) {
  cntqc::RunConfig cfg = resolve_config(g);
  cntqc::RecordKind kind;
  if (kind_name == "rabi")
    kind = cntqc::RecordKind::rabi;
  else if (kind_name == "ramsey")
    kind = cntqc::RecordKind::ramsey;
  else if (kind_name == "ringdown")
    kind = cntqc::RecordKind::ringdown;
  else
    throw cntqc::ConfigError("fit.kind", "must be rabi, ramsey, or ringdown");

  const auto rec = cntqc::read_record_csv(record_path, kind);
  cntqc::FitResult res;
  switch (kind) {
    case cntqc::RecordKind::rabi: res = cntqc::fit_rabi(rec); break;
    case cntqc::RecordKind::ramsey: res = cntqc::fit_ramsey(rec); break;
    default: res = cntqc::fit_ringdown(rec); break;
  }

  json params = json::array();
  for (std::size_t i = 0; i < res.names.size(); ++i)
    params.push_back(
        {{"name", res.names[i]}, {"value", res.values[i]}, {"stderr", res.std_errors[i]}});
  json extras;
  extras["record"] = record_path;
  extras["kind"] = kind_name;
  extras["params"] = params;
  extras["residual_norm"] = res.residual_norm;
  extras["converged"] = res.converged;
  extras["iterations"] = res.iterations;
  extras["message"] = res.message;
  write_envelope(join_path(g.out_dir, "fit.json"), "fit", cfg, extras);

  for (std::size_t i = 0; i < res.names.size(); ++i)
    std::printf("%-16s = %.10g +- %.3g\n", res.names[i].c_str(), res.values[i],
                res.std_errors[i]);
  std::printf("converged = %s (%s)\n", res.converged ? "true" : "false", res.message.c_str());
  return res.converged ? kExitOk : kExitFit;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"All-mechanical two-level control and tomography toolkit for suspended "
               "nanotube resonators"};
  app.require_subcommand(1);

  GlobalArgs g;
  auto* opt_seed = app.add_option("--seed", g.seed, "Override the RNG seed");
  auto* opt_shots = app.add_option("--shots", g.shots, "Override shots per point");
  auto* opt_threads = app.add_option("--threads", g.threads, "Worker threads for grid sweeps");
  app.add_option("--config", g.config_path, "JSON config file");
  app.add_option("--set", g.overrides, "Override config values, e.g. --set device.L_m=5e-7");
  app.add_option("--out", g.out_dir, "Output directory");
  app.add_flag("--json", g.json_data, "Embed tabular data in the JSON envelope instead of CSV");

  // device
  auto* sc_device = app.add_subcommand("device", "Design table from the beam model");
  std::vector<double> lengths_nm = {100.0, 500.0, 1000.0};
  double dev_t_pi2 = 0.0;
  bool no_t2 = false;
  sc_device->add_option("--lengths-nm", lengths_nm, "Beam lengths in nm");
  sc_device->add_option("--t-pi2", dev_t_pi2, "pi/2 pulse duration in s (default from config)");
  sc_device->add_flag("--no-t2", no_t2, "Do not fill the T2 = 2 T1 column");

  auto* sc_rates = app.add_subcommand("rates", "Dissipation rates from the Ohmic bath");

  auto* sc_rabi = app.add_subcommand("rabi", "Driven population curves (analytic + ODE)");
  double rabi_tmax = 0.0;
  int rabi_n = 500;
  bool rabi_sample = false;
  sc_rabi->add_option("--t-max", rabi_tmax, "End time in s (default 10/Gamma1)");
  sc_rabi->add_option("--n-points", rabi_n, "Number of samples")->check(CLI::PositiveNumber);
  sc_rabi->add_flag("--sample", rabi_sample, "Also emit a shot-sampled record");

  auto* sc_ramsey = app.add_subcommand("ramsey", "Ramsey fringes (analytic + finite pulses)");
  double ramsey_taumax = 0.0;
  int ramsey_n = 200;
  bool ramsey_sample = false;
  std::string sequence_path;
  sc_ramsey->add_option("--tau-max", ramsey_taumax, "Max delay in s (default 3 T2)");
  sc_ramsey->add_option("--n-points", ramsey_n, "Number of delays")->check(CLI::PositiveNumber);
  sc_ramsey->add_flag("--sample", ramsey_sample, "Also emit a shot-sampled record");
  sc_ramsey->add_option("--sequence", sequence_path,
                        "Simulate a custom pulse sequence (JSON array) and report P1");

  auto* sc_ringdown = app.add_subcommand("ringdown", "Free decay from the excited state");
  double ring_tmax = 0.0;
  int ring_n = 200;
  bool ring_sample = false;
  sc_ringdown->add_option("--t-max", ring_tmax, "End time in s (default 5 T1)");
  sc_ringdown->add_option("--n-points", ring_n, "Number of samples")->check(CLI::PositiveNumber);
  sc_ringdown->add_flag("--sample", ring_sample, "Also emit a shot-sampled record");

  auto* sc_wigner = app.add_subcommand("wigner", "Ideal Wigner maps of the decohering state");
  std::vector<double> wigner_times;
  sc_wigner->add_option("--times", wigner_times, "State times in s (default 0, T1, 5T1)");

  auto* sc_tomo = app.add_subcommand("tomo", "Displaced-parity tomography (ideal + sampled)");

  auto* sc_fit = app.add_subcommand("fit", "Nonlinear least-squares parameter recovery");
  std::string record_path, fit_kind;
  sc_fit->add_option("--record", record_path, "Record CSV (x,count,shots)")->required();
  sc_fit->add_option("--kind", fit_kind, "rabi | ramsey | ringdown")->required();

  for (auto* sc : app.get_subcommands({})) sc->fallthrough();

  CLI11_PARSE(app, argc, argv);
  g.seed_given = opt_seed->count() > 0;
  g.shots_given = opt_shots->count() > 0;
  g.threads_given = opt_threads->count() > 0;

  try {
    std::filesystem::create_directories(g.out_dir);
    if (sc_device->parsed()) return cmd_device(g, lengths_nm, dev_t_pi2, no_t2);
    if (sc_rates->parsed()) return cmd_rates(g);
    if (sc_rabi->parsed()) return cmd_rabi(g, rabi_tmax, rabi_n, rabi_sample);
    if (sc_ramsey->parsed()) return cmd_ramsey(g, ramsey_taumax, ramsey_n, ramsey_sample,
                                               sequence_path);
    if (sc_ringdown->parsed()) return cmd_ringdown(g, ring_tmax, ring_n, ring_sample);
    if (sc_wigner->parsed()) return cmd_wigner(g, wigner_times);
    if (sc_tomo->parsed()) return cmd_tomo(g);
    if (sc_fit->parsed()) return cmd_fit(g, record_path, fit_kind);
  } catch (const cntqc::ConfigError& e) {
    print_config_error(e.field(), e.what());
    return kExitConfig;
  } catch (const cntqc::IntegrationError& e) {
    print_runtime_error(kExitNumerical, e.what());
    return kExitNumerical;
  } catch (const std::domain_error& e) {
    print_config_error("config", e.what());
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    print_config_error("config", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    print_runtime_error(kExitNumerical, e.what());
    return kExitNumerical;
  }
  return kExitOk;
}
