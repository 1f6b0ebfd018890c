// Copyright 2026 The stablesim Authors.
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

#ifndef STABLESIM_SERIALIZE_HPP_
#define STABLESIM_SERIALIZE_HPP_

#include <charconv>
#include <cmath>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "stablesim/errors.hpp"
#include "stablesim/processes.hpp"

namespace stablesim {

/// Shortest decimal string that parses back to exactly `v`; integral values
/// keep a trailing ".0" so every column reads as floating point.
inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  std::string s(buf, end);
  if (s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

/// Ordered key/value parameters used in headers.
using ParamList = std::vector<std::pair<std::string, double>>;

inline std::string header_line(std::string_view kind, std::string_view selector,
                               const ParamList& params, std::uint64_t seed,
                               std::string_view columns) {
  std::string h = "# ";
  h += kind;
  h += ' ';
  h += selector;
  for (const auto& [k, v] : params) h += " " + k + "=" + format_double(v);
  h += " seed=" + std::to_string(seed);
  h += " columns=";
  h += columns;
  return h;
}

inline nlohmann::ordered_json params_json(const ParamList& params) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [k, v] : params) j[k] = v;
  return j;
}

// ---------------------------------------------------------------------------
// CSV

struct CsvTable {
  std::string header;  // comment line without the leading '#'
  std::vector<std::vector<double>> rows;
};

inline void write_csv_row(std::ostream& os, std::span<const double> row) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) os << ',';
    os << format_double(row[i]);
  }
  os << '\n';
}

inline CsvTable read_csv(std::istream& is) {
  CsvTable table;
  std::string line;
  bool first = true;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (first) table.header = line.substr(line.size() > 1 && line[1] == ' ' ? 2 : 1);
      first = false;
      continue;
    }
    first = false;
    std::vector<double> row;
    std::size_t pos = 0;
    while (pos <= line.size()) {
      std::size_t comma = line.find(',', pos);
      if (comma == std::string::npos) comma = line.size();
      double v = 0.0;
      const char* b = line.data() + pos;
      const char* e = line.data() + comma;
      auto [ptr, ec] = std::from_chars(b, e, v);
      if (ec != std::errc() || ptr != e) {
        throw parameter_error("malformed CSV field '" + std::string(b, e) + "'");
      }
      row.push_back(v);
      pos = comma + 1;
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

/// Column `col` of every row.
inline std::vector<double> csv_column(const CsvTable& table, std::size_t col = 0) {
  std::vector<double> out;
  out.reserve(table.rows.size());
  for (const auto& r : table.rows) {
    if (col >= r.size()) throw parameter_error("CSV row has no column " + std::to_string(col));
    out.push_back(r[col]);
  }
  return out;
}

inline void write_values_csv(std::ostream& os, const std::string& header,
                             std::span<const double> values) {
  os << header << '\n';
  for (double v : values) os << format_double(v) << '\n';
}

inline void write_trajectory_csv(std::ostream& os, const std::string& header,
                                 const RenewalTrajectory& traj) {
  os << header << '\n';
  for (std::size_t i = 0; i < traj.event_times.size(); ++i) {
    const double row[] = {static_cast<double>(i + 1), traj.event_times[i]};
    write_csv_row(os, row);
  }
}

inline void write_path_csv(std::ostream& os, const std::string& header,
                           const SubordinatorPath& path) {
  os << header << '\n';
  for (std::size_t i = 0; i < path.grid.size(); ++i) {
    const double row[] = {path.grid[i], path.values[i]};
    write_csv_row(os, row);
  }
}

inline void write_pde_csv(std::ostream& os, const std::string& header, const PdeEstimate& est) {
  os << header << '\n';
  for (std::size_t i = 0; i < est.bins(); ++i) {
    const double row[] = {est.x_grid[i], est.x_grid[i + 1], est.density[i]};
    write_csv_row(os, row);
  }
}

// ---------------------------------------------------------------------------
// JSON

inline nlohmann::ordered_json trajectory_json(const ParamList& params, std::uint64_t seed,
                                              const RenewalTrajectory& traj) {
  std::vector<double> counts(traj.event_times.size());
  for (std::size_t i = 0; i < counts.size(); ++i) counts[i] = static_cast<double>(i + 1);
  return {{"params", params_json(params)}, {"seed", seed}, {"t_max", traj.t_max},
          {"times", traj.event_times}, {"values", counts}};
}

inline nlohmann::ordered_json path_json(const ParamList& params, std::uint64_t seed,
                                        const SubordinatorPath& path) {
  return {{"params", params_json(params)}, {"seed", seed}, {"dt", path.dt},
          {"times", path.grid}, {"values", path.values}};
}

inline nlohmann::ordered_json pde_json(const ParamList& params, std::uint64_t seed,
                                       const PdeEstimate& est) {
  return {{"params", params_json(params)},
          {"seed", seed},
          {"t", est.t},
          {"alpha", est.alpha},
          {"n_samples", est.n_samples},
          {"in_range_mass", est.in_range_mass()},
          {"out_of_range_mass", est.out_of_range_mass},
          {"second_moment", est.second_moment()},
          {"x_grid", est.x_grid},
          {"density", est.density}};
}

}  // namespace stablesim

#endif  // STABLESIM_SERIALIZE_HPP_
