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

#ifndef CNTQC_CONFIG_HPP
#define CNTQC_CONFIG_HPP

#include <cstdint>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "cntqc/bath.hpp"
#include "cntqc/bloch.hpp"
#include "cntqc/device.hpp"
#include "cntqc/ode.hpp"
#include "cntqc/ramsey.hpp"
#include "cntqc/wigner.hpp"

namespace cntqc {

/// Configuration problem; carries the dotted field path for machine-readable
/// error reports.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// Direct decay-rate specification, bypassing the bath model.
struct RatesOverride {
  double gamma1_per_s = 0.0;
  double gamma2_per_s = 0.0;
  double z_eq = -1.0;
};

/// Shared run configuration. All config values are SI; external frequencies
/// (Omega_R, Delta) are linear frequencies in Hz and are converted to angular
/// units once, at parse time.
struct RunConfig {
  DeviceGeometry device{};
  std::optional<OhmicBath> bath;
  bool include_pure_dephasing = false;
  std::optional<RatesOverride> rates;

  struct DriveConfig {
    double omega_r_hz = 7.5e5;
    double delta_hz = 0.0;
    double t_pi2_s = 1e-7;
    double phi0_rad = 0.0;
  } drive;

  std::optional<ParityMapConfig> parity;
  bool apply_visibility = false;

  SimOptions sim{};

  struct WignerConfig {
    double extent = 3.0;
    int n_points = 201;
    std::vector<double> t_list_s;  // empty = {0, T1, 5 T1}
    double t_s = 0.0;              // state-preparation time for tomo
  } wigner;

  std::uint64_t seed = 1;
  std::uint64_t shots = 1000;
  int threads = 1;

  // --- derived helpers ---

  DerivedDeviceParams device_params() const { return derive_device_params(device); }

  DriveParams drive_params() const {
    return DriveParams::make(kTwoPi * drive.omega_r_hz, kTwoPi * drive.delta_hz,
                             flexural_frequency(device));
  }

  /// Rates for dynamics: explicit override > Ohmic bath > device
  /// relaxation-limited default (Gamma1 = omega0/Q, Gamma2 = Gamma1/2).
  DissipationRates resolve_rates() const {
    if (rates) return DissipationRates::from_decay_rates(rates->gamma1_per_s, rates->gamma2_per_s,
                                                         rates->z_eq);
    const double omega0 = flexural_frequency(device);
    if (bath) return dissipation_rates(*bath, omega0, include_pure_dephasing);
    const double gamma1 = omega0 / device.quality_factor;
    return DissipationRates::from_decay_rates(gamma1, 0.5 * gamma1, -1.0);
  }
};

namespace detail {

inline double get_num(const nlohmann::json& j, const std::string& section, const std::string& key,
                      std::optional<double> fallback = std::nullopt) {
  if (!j.contains(key)) {
    if (fallback) return *fallback;
    throw ConfigError(section + "." + key, "missing required field");
  }
  if (!j[key].is_number()) throw ConfigError(section + "." + key, "must be a number");
  return j[key].get<double>();
}

inline void check_keys(const nlohmann::json& j, const std::string& section,
                       std::initializer_list<const char*> allowed) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed)
      if (it.key() == k) ok = true;
    if (!ok) throw ConfigError(section + "." + it.key(), "unknown field");
  }
}

}  // namespace detail

inline RunConfig parse_config(const nlohmann::json& j) {
  using detail::check_keys;
  using detail::get_num;
  if (!j.is_object()) throw ConfigError("config", "top level must be a JSON object");
  check_keys(j, "config",
             {"device", "bath", "rates", "drive", "parity", "sim", "wigner", "seed", "shots",
              "threads"});

  RunConfig cfg{};

  if (j.contains("device")) {
    const auto& d = j["device"];
    check_keys(d, "device", {"L_m", "r_m", "t_wall_m", "E_Pa", "rho_kg_m3", "Q"});
    cfg.device.length_m = get_num(d, "device", "L_m", cfg.device.length_m);
    cfg.device.radius_m = get_num(d, "device", "r_m", cfg.device.radius_m);
    cfg.device.wall_thickness_m = get_num(d, "device", "t_wall_m", cfg.device.wall_thickness_m);
    cfg.device.youngs_modulus_pa = get_num(d, "device", "E_Pa", cfg.device.youngs_modulus_pa);
    cfg.device.density_kg_m3 = get_num(d, "device", "rho_kg_m3", cfg.device.density_kg_m3);
    cfg.device.quality_factor = get_num(d, "device", "Q", cfg.device.quality_factor);
    try {
      cfg.device.validate();
    } catch (const std::domain_error& e) {
      throw ConfigError("device", e.what());
    }
  }

  if (j.contains("bath")) {
    const auto& b = j["bath"];
    check_keys(b, "bath", {"alpha", "omega_c_rad_s", "T_K", "include_pure_dephasing"});
    OhmicBath bath{};
    bath.alpha = get_num(b, "bath", "alpha");
    bath.cutoff_rad_s = get_num(b, "bath", "omega_c_rad_s");
    bath.temperature_K = get_num(b, "bath", "T_K");
    if (b.contains("include_pure_dephasing")) {
      if (!b["include_pure_dephasing"].is_boolean())
        throw ConfigError("bath.include_pure_dephasing", "must be a boolean");
      cfg.include_pure_dephasing = b["include_pure_dephasing"].get<bool>();
    }
    try {
      bath.validate();
    } catch (const std::domain_error& e) {
      throw ConfigError("bath", e.what());
    }
    cfg.bath = bath;
  }

  if (j.contains("rates")) {
    const auto& r = j["rates"];
    check_keys(r, "rates", {"Gamma1_per_s", "Gamma2_per_s", "Z_eq"});
    RatesOverride ro{};
    ro.gamma1_per_s = get_num(r, "rates", "Gamma1_per_s");
    ro.gamma2_per_s = get_num(r, "rates", "Gamma2_per_s");
    ro.z_eq = get_num(r, "rates", "Z_eq", -1.0);
    cfg.rates = ro;
  }

  if (j.contains("drive")) {
    const auto& d = j["drive"];
    check_keys(d, "drive", {"Omega_R_Hz", "Delta_Hz", "t_pi2_s", "phi0_rad"});
    cfg.drive.omega_r_hz = get_num(d, "drive", "Omega_R_Hz", cfg.drive.omega_r_hz);
    cfg.drive.delta_hz = get_num(d, "drive", "Delta_Hz", cfg.drive.delta_hz);
    cfg.drive.t_pi2_s = get_num(d, "drive", "t_pi2_s", cfg.drive.t_pi2_s);
    cfg.drive.phi0_rad = get_num(d, "drive", "phi0_rad", cfg.drive.phi0_rad);
    if (!(cfg.drive.omega_r_hz >= 0.0)) throw ConfigError("drive.Omega_R_Hz", "must be >= 0");
    if (!(cfg.drive.t_pi2_s > 0.0)) throw ConfigError("drive.t_pi2_s", "must be > 0");
  }

  if (j.contains("parity")) {
    const auto& p = j["parity"];
    check_keys(p, "parity", {"chi_rad_s", "apply_visibility"});
    ParityMapConfig pc{};
    pc.chi_rad_s = get_num(p, "parity", "chi_rad_s");
    if (!(pc.chi_rad_s > 0.0)) throw ConfigError("parity.chi_rad_s", "must be > 0");
    if (p.contains("apply_visibility")) {
      if (!p["apply_visibility"].is_boolean())
        throw ConfigError("parity.apply_visibility", "must be a boolean");
      cfg.apply_visibility = p["apply_visibility"].get<bool>();
    }
    cfg.parity = pc;
  }

  if (j.contains("sim")) {
    const auto& s = j["sim"];
    check_keys(s, "sim", {"rel_tol", "abs_tol", "max_step_s"});
    cfg.sim.rel_tol = get_num(s, "sim", "rel_tol", cfg.sim.rel_tol);
    cfg.sim.abs_tol = get_num(s, "sim", "abs_tol", cfg.sim.abs_tol);
    cfg.sim.max_step_s = get_num(s, "sim", "max_step_s", cfg.sim.max_step_s);
    try {
      cfg.sim.validate();
    } catch (const std::domain_error& e) {
      throw ConfigError("sim", e.what());
    }
  }

  if (j.contains("wigner")) {
    const auto& w = j["wigner"];
    check_keys(w, "wigner", {"extent", "n_points", "t_list_s", "t_s"});
    cfg.wigner.extent = get_num(w, "wigner", "extent", cfg.wigner.extent);
    if (w.contains("n_points")) {
      if (!w["n_points"].is_number_integer())
        throw ConfigError("wigner.n_points", "must be an integer");
      cfg.wigner.n_points = w["n_points"].get<int>();
    }
    if (w.contains("t_list_s")) {
      if (!w["t_list_s"].is_array()) throw ConfigError("wigner.t_list_s", "must be an array");
      for (const auto& v : w["t_list_s"]) {
        if (!v.is_number()) throw ConfigError("wigner.t_list_s", "entries must be numbers");
        cfg.wigner.t_list_s.push_back(v.get<double>());
      }
    }
    cfg.wigner.t_s = get_num(w, "wigner", "t_s", cfg.wigner.t_s);
    if (!(cfg.wigner.extent > 0.0)) throw ConfigError("wigner.extent", "must be > 0");
    if (cfg.wigner.n_points < 2) throw ConfigError("wigner.n_points", "must be >= 2");
    if (!(cfg.wigner.t_s >= 0.0)) throw ConfigError("wigner.t_s", "must be >= 0");
  }

  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer())
      throw ConfigError("seed", "must be a non-negative integer");
    const auto s = j["seed"].get<std::int64_t>();
    if (s < 0) throw ConfigError("seed", "must be a non-negative integer");
    cfg.seed = static_cast<std::uint64_t>(s);
  }
  if (j.contains("shots")) {
    if (!j["shots"].is_number_unsigned() && !j["shots"].is_number_integer())
      throw ConfigError("shots", "must be a positive integer");
    const auto s = j["shots"].get<std::int64_t>();
    if (s < 1) throw ConfigError("shots", "must be a positive integer");
    cfg.shots = static_cast<std::uint64_t>(s);
  }
  if (j.contains("threads")) {
    if (!j["threads"].is_number_integer()) throw ConfigError("threads", "must be an integer");
    cfg.threads = j["threads"].get<int>();
    if (cfg.threads < 1) throw ConfigError("threads", "must be >= 1");
  }
  return cfg;
}

/// Resolved configuration as JSON; embedding this in every result file makes
/// runs reproducible from their own outputs.
inline nlohmann::json config_to_json(const RunConfig& cfg) {
  nlohmann::json j;
  j["device"] = {{"L_m", cfg.device.length_m},
                 {"r_m", cfg.device.radius_m},
                 {"t_wall_m", cfg.device.wall_thickness_m},
                 {"E_Pa", cfg.device.youngs_modulus_pa},
                 {"rho_kg_m3", cfg.device.density_kg_m3},
                 {"Q", cfg.device.quality_factor}};
  if (cfg.bath) {
    j["bath"] = {{"alpha", cfg.bath->alpha},
                 {"omega_c_rad_s", cfg.bath->cutoff_rad_s},
                 {"T_K", cfg.bath->temperature_K},
                 {"include_pure_dephasing", cfg.include_pure_dephasing}};
  }
  if (cfg.rates) {
    j["rates"] = {{"Gamma1_per_s", cfg.rates->gamma1_per_s},
                  {"Gamma2_per_s", cfg.rates->gamma2_per_s},
                  {"Z_eq", cfg.rates->z_eq}};
  }
  j["drive"] = {{"Omega_R_Hz", cfg.drive.omega_r_hz},
                {"Delta_Hz", cfg.drive.delta_hz},
                {"t_pi2_s", cfg.drive.t_pi2_s},
                {"phi0_rad", cfg.drive.phi0_rad}};
  if (cfg.parity) {
    j["parity"] = {{"chi_rad_s", cfg.parity->chi_rad_s},
                   {"apply_visibility", cfg.apply_visibility}};
  }
  j["sim"] = {{"rel_tol", cfg.sim.rel_tol}, {"abs_tol", cfg.sim.abs_tol}};
  if (std::isfinite(cfg.sim.max_step_s)) j["sim"]["max_step_s"] = cfg.sim.max_step_s;
  j["wigner"] = {{"extent", cfg.wigner.extent},
                 {"n_points", cfg.wigner.n_points},
                 {"t_s", cfg.wigner.t_s}};
  if (!cfg.wigner.t_list_s.empty()) j["wigner"]["t_list_s"] = cfg.wigner.t_list_s;
  j["seed"] = cfg.seed;
  j["shots"] = cfg.shots;
  // threads is execution machinery, not physics: results are independent of
  // it, so it is not part of the reproducibility record.
  return j;
}

inline nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config", std::string("invalid JSON: ") + e.what());
  }
  return j;
}

/// Apply a `--set section.key=value` override onto a JSON document. Values are
/// parsed as JSON when possible, falling back to a string.
inline void apply_override(nlohmann::json& doc, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0)
    throw ConfigError("set", "override must look like path.to.key=value");
  const std::string path = assignment.substr(0, eq);
  const std::string value = assignment.substr(eq + 1);

  nlohmann::json* node = &doc;
  std::size_t start = 0;
  while (true) {
    const auto dot = path.find('.', start);
    const std::string key = path.substr(start, dot == std::string::npos ? dot : dot - start);
    if (key.empty()) throw ConfigError("set", "empty key in path " + path);
    if (dot == std::string::npos) {
      nlohmann::json parsed = nlohmann::json::parse(value, nullptr, false);
      (*node)[key] = parsed.is_discarded() ? nlohmann::json(value) : parsed;
      return;
    }
    node = &(*node)[key];
    start = dot + 1;
  }
}

/// Parse a sequence description: a JSON array of pulse-element objects.
inline PulseSequence parse_sequence(const nlohmann::json& j) {
  if (!j.is_array()) throw ConfigError("sequence", "must be a JSON array");
  PulseSequence seq;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto& el = j[i];
    const std::string where = "sequence[" + std::to_string(i) + "]";
    if (!el.is_object() || !el.contains("type"))
      throw ConfigError(where, "each element needs a \"type\"");
    const std::string type = el["type"].get<std::string>();
    if (type == "rotation") {
      Rotation r{};
      r.angle_rad = detail::get_num(el, where, "angle_rad", r.angle_rad);
      r.phase_rad = detail::get_num(el, where, "phase_rad", 0.0);
      r.duration_s = detail::get_num(el, where, "duration_s", 0.0);
      if (!(r.duration_s >= 0.0)) throw ConfigError(where + ".duration_s", "must be >= 0");
      seq.emplace_back(r);
    } else if (type == "free") {
      FreeEvolution f{};
      f.duration_s = detail::get_num(el, where, "duration_s");
      if (!(f.duration_s >= 0.0)) throw ConfigError(where + ".duration_s", "must be >= 0");
      seq.emplace_back(f);
    } else if (type == "displacement") {
      Displacement d{};
      d.alpha = {detail::get_num(el, where, "re", 0.0), detail::get_num(el, where, "im", 0.0)};
      seq.emplace_back(d);
    } else if (type == "parity") {
      ParityWindow p{};
      p.duration_s = detail::get_num(el, where, "duration_s");
      if (!(p.duration_s >= 0.0)) throw ConfigError(where + ".duration_s", "must be >= 0");
      seq.emplace_back(p);
    } else {
      throw ConfigError(where + ".type", "unknown pulse element type '" + type + "'");
    }
  }
  return seq;
}

}  // namespace cntqc

#endif  // CNTQC_CONFIG_HPP
