// Copyright 2026 The ctxbind Authors.
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

#include "ctxbind/report.hpp"

#include <sstream>
#include <stdexcept>

namespace ctxbind::report {

void Table::add_row(std::vector<std::string> row) {
  if (row.size() != columns.size()) {
    throw std::logic_error("table " + id + ": row has " + std::to_string(row.size()) +
                           " cells, expected " + std::to_string(columns.size()));
  }
  rows.push_back(std::move(row));
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

namespace {

void csv_line(std::ostringstream& os, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) os << ',';
    os << csv_field(cells[i]);
  }
  os << '\n';
}

std::string md_cell(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += '\\';
    out += c;
  }
  return out;
}

void md_line(std::ostringstream& os, const std::vector<std::string>& cells) {
  os << '|';
  for (const auto& c : cells) os << ' ' << md_cell(c) << " |";
  os << '\n';
}

}  // namespace

std::string Table::to_csv() const {
  std::ostringstream os;
  os << "# " << title << '\n';
  for (const auto& n : notes) os << "# " << n << '\n';
  csv_line(os, columns);
  for (const auto& r : rows) csv_line(os, r);
  return os.str();
}

std::string Table::to_markdown() const {
  std::ostringstream os;
  os << "### " << title << "\n\n";
  md_line(os, columns);
  os << '|';
  for (std::size_t i = 0; i < columns.size(); ++i) os << " --- |";
  os << '\n';
  for (const auto& r : rows) md_line(os, r);
  if (!notes.empty()) {
    os << '\n';
    for (const auto& n : notes) os << "- " << n << '\n';
  }
  return os.str();
}

}  // namespace ctxbind::report
