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

#ifndef CNTQC_CSV_HPP
#define CNTQC_CSV_HPP

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cntqc/estimation.hpp"

namespace cntqc {

/// Shortest round-trip decimal form; C locale, '.' separator.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

/// Minimal CSV writer: mandatory header, '\n' line endings, full-precision
/// numeric cells.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& header)
      : out_(path, std::ios::binary) {
    if (!out_) throw std::runtime_error("csv: cannot open " + path + " for writing");
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (i) out_ << ',';
      out_ << header[i];
    }
    out_ << '\n';
  }

  void row(const std::vector<double>& values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) out_ << ',';
      out_ << format_double(values[i]);
    }
    out_ << '\n';
  }

 private:
  std::ofstream out_;
};

/// Read a measurement record written as `x,count,shots`. The shots column must
/// be constant.
inline MeasurementRecord read_record_csv(const std::string& path, RecordKind kind) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("csv: cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("csv: empty file " + path);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "x,count,shots")
    throw std::runtime_error("csv: expected header 'x,count,shots' in " + path);

  MeasurementRecord rec{};
  rec.kind = kind;
  bool have_shots = false;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string cell;
    double vals[3];
    for (int c = 0; c < 3; ++c) {
      if (!std::getline(ss, cell, ','))
        throw std::runtime_error("csv: short row at line " + std::to_string(line_no));
      vals[c] = std::stod(cell);
    }
    rec.abscissa.push_back(vals[0]);
    rec.counts.push_back(vals[1]);
    const auto shots = static_cast<std::uint64_t>(vals[2]);
    if (!have_shots) {
      rec.shots = shots;
      have_shots = true;
    } else if (rec.shots != shots) {
      throw std::runtime_error("csv: shots column must be constant in " + path);
    }
  }
  rec.validate();
  return rec;
}

inline void write_record_csv(const std::string& path, const MeasurementRecord& rec) {
  rec.validate();
  CsvWriter csv(path, {"x", "count", "shots"});
  for (std::size_t i = 0; i < rec.abscissa.size(); ++i)
    csv.row({rec.abscissa[i], rec.counts[i], static_cast<double>(rec.shots)});
}

}  // namespace cntqc

#endif  // CNTQC_CSV_HPP
