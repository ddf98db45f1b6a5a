// Copyright 2026 The ntoffoli Authors
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

#include "ntoffoli/cli/table.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace ntoffoli::cli {

Table::Table(std::vector<std::string> columns) : columns_(std::move(columns)) {
  if (columns_.empty()) throw std::invalid_argument("table needs at least one column");
}

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns_.size()) throw std::invalid_argument("row width does not match the header");
  rows_.push_back(std::move(row));
}

std::size_t Table::column_index(const std::string& name) const {
  const auto it = std::find(columns_.begin(), columns_.end(), name);
  if (it == columns_.end()) throw std::out_of_range("no column named " + name);
  return static_cast<std::size_t>(it - columns_.begin());
}

void Table::drop_column(const std::string& name) {
  const std::size_t k = column_index(name);
  columns_.erase(columns_.begin() + static_cast<std::ptrdiff_t>(k));
  for (auto& r : rows_) r.erase(r.begin() + static_cast<std::ptrdiff_t>(k));
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

struct CsvCell {
  std::string operator()(std::monostate) const { return {}; }
  std::string operator()(std::int64_t v) const { return std::to_string(v); }
  std::string operator()(double v) const { return format_number(v); }
  std::string operator()(const std::string& s) const { return csv_field(s); }
};

}  // namespace

void write_csv(const Table& table, std::ostream& out) {
  const auto& cols = table.columns();
  for (std::size_t k = 0; k < cols.size(); ++k) out << (k ? "," : "") << csv_field(cols[k]);
  out << '\n';
  for (const auto& row : table.rows()) {
    for (std::size_t k = 0; k < row.size(); ++k) out << (k ? "," : "") << std::visit(CsvCell{}, row[k]);
    out << '\n';
  }
}

void write_json(const Table& table, std::ostream& out) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows()) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t k = 0; k < row.size(); ++k) {
      const std::string& key = table.columns()[k];
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
              obj[key] = nullptr;
            } else if constexpr (std::is_same_v<T, double>) {
              // same rounding as the CSV writer
              obj[key] = std::isfinite(v) ? nlohmann::ordered_json(std::stod(format_number(v)))
                                          : nlohmann::ordered_json(format_number(v));
            } else {
              obj[key] = v;
            }
          },
          row[k]);
    }
    rows.push_back(std::move(obj));
  }
  nlohmann::ordered_json doc;
  doc["columns"] = table.columns();
  doc["rows"] = std::move(rows);
  out << doc.dump(2) << '\n';
}

void write_table(const Table& table, OutputFormat format, std::ostream& out) {
  if (format == OutputFormat::kJson) {
    write_json(table, out);
  } else {
    write_csv(table, out);
  }
}

}  // namespace ntoffoli::cli
