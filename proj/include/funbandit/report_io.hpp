// Copyright 2026 The funbandit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FUNBANDIT_REPORT_IO_HPP
#define FUNBANDIT_REPORT_IO_HPP

#include <cstdio>
#include <string>

#include <json.hpp>

#include "funbandit/errors.hpp"
#include "funbandit/harness.hpp"

namespace funbandit {

inline constexpr const char kCsvHeader[] =
    "T,trials,empirical_error,mean_regret,regret_stderr,bound_error,"
    "bound_regret,wall_time_ms";

namespace detail {

/// Fixed 12-significant-digit decimal form; the byte-stability contract
/// of CSV output rests on this exact formatting.
inline std::string format_value(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

}  // namespace detail

/// CSV with the fixed column set; one line per budget. Refuses reports
/// containing failed rows: their numbers would be meaningless.
inline std::string to_csv(const ExperimentReport& report) {
  std::string out = kCsvHeader;
  out += '\n';
  for (const ReportRow& row : report.rows) {
    if (row.error_kind != RowErrorKind::kNone) {
      throw InternalError("to_csv: row T = " + std::to_string(row.T) +
                          " failed: " + row.error);
    }
    out += std::to_string(row.T);
    out += ',';
    out += std::to_string(row.trials);
    out += ',';
    out += detail::format_value(row.empirical_error);
    out += ',';
    out += detail::format_value(row.mean_regret);
    out += ',';
    out += detail::format_value(row.regret_stderr);
    out += ',';
    out += detail::format_value(row.bound_error);
    out += ',';
    out += detail::format_value(row.bound_regret);
    out += ',';
    out += detail::format_value(row.wall_time_ms);
    out += '\n';
  }
  return out;
}

/// JSON mirror of the CSV rows plus metadata. Row values are identical
/// doubles in both formats; rows were rounded to the CSV's 12 significant
/// digits when built, so both serializations decode to the same numbers.
inline std::string to_json(const ExperimentReport& report) {
  nlohmann::json j;
  j["version"] = report.version;
  j["seed"] = report.master_seed;
  if (report.config_echo.empty()) {
    j["config"] = nullptr;
  } else {
    j["config"] = nlohmann::json::parse(report.config_echo);
  }
  nlohmann::json rows = nlohmann::json::array();
  for (const ReportRow& row : report.rows) {
    if (row.error_kind != RowErrorKind::kNone) {
      throw InternalError("to_json: row T = " + std::to_string(row.T) +
                          " failed: " + row.error);
    }
    nlohmann::json r;
    r["T"] = row.T;
    r["trials"] = row.trials;
    r["empirical_error"] = row.empirical_error;
    r["mean_regret"] = row.mean_regret;
    r["regret_stderr"] = row.regret_stderr;
    r["bound_error"] = row.bound_error;
    r["bound_regret"] = row.bound_regret;
    r["wall_time_ms"] = row.wall_time_ms;
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  return j.dump(2) + "\n";
}

}  // namespace funbandit

#endif  // FUNBANDIT_REPORT_IO_HPP
