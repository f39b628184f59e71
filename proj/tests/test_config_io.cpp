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

#include <catch2/catch_amalgamated.hpp>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "cntqc/config.hpp"
#include "cntqc/csv.hpp"

using namespace cntqc;
using nlohmann::json;

namespace {

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("cntqc_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("config parsing: defaults, units, and the rate-resolution chain") {
  const auto cfg = parse_config(json::object());
  CHECK(cfg.device.length_m == 100e-9);
  CHECK(cfg.drive.omega_r_hz == 7.5e5);
  CHECK(cfg.seed == 1);

  // Default chain: no bath, no override -> device relaxation-limited rates.
  const auto r = cfg.resolve_rates();
  const double omega0 = flexural_frequency(cfg.device);
  CHECK(r.gamma1 == Catch::Approx(omega0 / cfg.device.quality_factor).epsilon(1e-12));
  CHECK(r.gamma2 == Catch::Approx(0.5 * r.gamma1).epsilon(1e-12));
  CHECK(r.z_eq == -1.0);

  // Hz -> rad/s conversion happens once, at the boundary.
  const auto drive = cfg.drive_params();
  CHECK(drive.rabi_rad_s == Catch::Approx(kTwoPi * 7.5e5).epsilon(1e-12));
  CHECK(drive.omega_d_rad_s == Catch::Approx(omega0).epsilon(1e-12));

  json with_rates = {{"rates", {{"Gamma1_per_s", 2e5}, {"Gamma2_per_s", 1.2e5}}}};
  const auto cfg2 = parse_config(with_rates);
  CHECK(cfg2.resolve_rates().gamma2 == Catch::Approx(1.2e5).epsilon(1e-12));

  json with_bath = {{"bath", {{"alpha", 1e-5}, {"omega_c_rad_s", 1e12}, {"T_K", 0.05}}}};
  const auto cfg3 = parse_config(with_bath);
  CHECK(cfg3.resolve_rates().gamma_down > 0.0);
}

TEST_CASE("config errors name the offending field") {
  json missing_bath_field = {{"bath", {{"alpha", 1e-5}, {"T_K", 0.05}}}};
  try {
    parse_config(missing_bath_field);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.field() == "bath.omega_c_rad_s");
  }

  json unknown_key = {{"device", {{"L_m", 1e-7}, {"radius", 1e-9}}}};
  try {
    parse_config(unknown_key);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.field() == "device.radius");
  }

  json bad_value = {{"device", {{"L_m", -1.0}}}};
  CHECK_THROWS_AS(parse_config(bad_value), ConfigError);
  json bad_seed = {{"seed", -4}};
  CHECK_THROWS_AS(parse_config(bad_seed), ConfigError);
}

TEST_CASE("config round-trips through its JSON form") {
  json doc = {{"device", {{"L_m", 5e-7}, {"Q", 2e4}}},
              {"drive", {{"Omega_R_Hz", 1e6}, {"Delta_Hz", 3e5}}},
              {"parity", {{"chi_rad_s", 1e6}}},
              {"seed", 42},
              {"shots", 5000},
              {"threads", 2}};
  const auto cfg = parse_config(doc);
  const auto cfg2 = parse_config(config_to_json(cfg));
  CHECK(cfg2.device.length_m == cfg.device.length_m);
  CHECK(cfg2.drive.delta_hz == cfg.drive.delta_hz);
  CHECK(cfg2.parity.has_value());
  CHECK(cfg2.parity->chi_rad_s == cfg.parity->chi_rad_s);
  CHECK(cfg2.seed == 42);
  CHECK(cfg2.shots == 5000);
  CHECK(config_to_json(cfg) == config_to_json(cfg2));
}

TEST_CASE("dotted --set overrides") {
  json doc = json::object();
  apply_override(doc, "device.L_m=8e-7");
  apply_override(doc, "bath.alpha=1e-5");
  apply_override(doc, "bath.omega_c_rad_s=1e12");
  apply_override(doc, "bath.T_K=0.05");
  apply_override(doc, "bath.include_pure_dephasing=true");
  apply_override(doc, "seed=9");
  const auto cfg = parse_config(doc);
  CHECK(cfg.device.length_m == 8e-7);
  CHECK(cfg.include_pure_dephasing);
  CHECK(cfg.seed == 9);
  CHECK_THROWS_AS(apply_override(doc, "no_equals_sign"), ConfigError);
}

TEST_CASE("pulse sequence JSON") {
  const auto seq = parse_sequence(json::parse(R"([
    {"type": "rotation", "angle_rad": 1.5707963, "phase_rad": 0.0, "duration_s": 1e-7},
    {"type": "free", "duration_s": 2e-6},
    {"type": "parity", "duration_s": 5e-7},
    {"type": "displacement", "re": 0.3, "im": -0.1},
    {"type": "rotation", "phase_rad": 3.14159265}
  ])"));
  REQUIRE(seq.size() == 5);
  CHECK(std::holds_alternative<Rotation>(seq[0]));
  CHECK(std::holds_alternative<FreeEvolution>(seq[1]));
  CHECK(std::holds_alternative<ParityWindow>(seq[2]));
  CHECK(std::holds_alternative<Displacement>(seq[3]));
  CHECK(std::get<Rotation>(seq[4]).duration_s == 0.0);

  CHECK_THROWS_AS(parse_sequence(json::parse(R"([{"type": "warp"}])")), ConfigError);
  CHECK_THROWS_AS(parse_sequence(json::parse(R"([{"duration_s": 1e-6}])")), ConfigError);
}

TEST_CASE("record CSV round trip") {
  TempDir tmp;
  const auto path = (tmp.path / "rec.csv").string();

  MeasurementRecord rec{};
  rec.kind = RecordKind::ramsey;
  rec.shots = 1234;
  rec.abscissa = {0.0, 1.5e-6, 3.0e-6};
  rec.counts = {10.0, 617.0, 1234.0};
  write_record_csv(path, rec);

  const auto back = read_record_csv(path, RecordKind::ramsey);
  CHECK(back.shots == rec.shots);
  CHECK(back.abscissa == rec.abscissa);
  CHECK(back.counts == rec.counts);

  // Header is mandatory and fixed.
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "x,count,shots");

  std::ofstream bad((tmp.path / "bad.csv").string(), std::ios::binary);
  bad << "time,count\n0,1\n";
  bad.close();
  CHECK_THROWS_AS(read_record_csv((tmp.path / "bad.csv").string(), RecordKind::rabi),
                  std::runtime_error);
}

TEST_CASE("CSV numbers survive a round trip at full precision") {
  TempDir tmp;
  const auto path = (tmp.path / "vals.csv").string();
  const double x = 0.1234567890123456789, y = 3.0e-17;
  {
    CsvWriter csv(path, {"a", "b"});
    csv.row({x, y});
  }
  std::ifstream in(path);
  std::string header, line;
  std::getline(in, header);
  std::getline(in, line);
  const auto comma = line.find(',');
  CHECK(std::stod(line.substr(0, comma)) == x);
  CHECK(std::stod(line.substr(comma + 1)) == y);
}
