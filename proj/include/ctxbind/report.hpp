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

#pragma once

#include <string>
#include <vector>

namespace ctxbind::report {

/// A result table. Notes carry units and model caveats; CSV emits them as
/// leading "# " comment lines so the data rows stay unit-free.
struct Table {
  std::string id;  // file stem, e.g. "matrix"
  std::string title;
  std::vector<std::string> notes;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  /// Throws std::logic_error if a row's width differs from columns.size().
  void add_row(std::vector<std::string> row);

  std::string to_csv() const;
  std::string to_markdown() const;
};

/// RFC 4180 quoting, applied only when needed.
std::string csv_field(const std::string& s);

}  // namespace ctxbind::report
