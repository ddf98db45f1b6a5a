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

#ifndef NTOFFOLI_CLI_TABLE_H_
#define NTOFFOLI_CLI_TABLE_H_

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace ntoffoli::cli {

using Cell = std::variant<std::monostate, std::int64_t, double, std::string>;

// Rectangular result table. Empty cells (monostate) print as nothing in CSV
// and null in JSON.
class Table {
 public:
  explicit Table(std::vector<std::string> columns);

  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::vector<Cell>>& rows() const { return rows_; }
  void add_row(std::vector<Cell> row);
  // Removes a column; used when an optional quantity was not computed.
  void drop_column(const std::string& name);
  std::size_t column_index(const std::string& name) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
};

enum class OutputFormat { kCsv, kJson };

std::string format_number(double v);  // 12 significant digits
void write_csv(const Table& table, std::ostream& out);
void write_json(const Table& table, std::ostream& out);
void write_table(const Table& table, OutputFormat format, std::ostream& out);

}  // namespace ntoffoli::cli

#endif  // NTOFFOLI_CLI_TABLE_H_
