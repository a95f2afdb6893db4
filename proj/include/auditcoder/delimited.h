// Copyright 2026 The Auditcoder Authors.
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

// Delimited text tables (CSV/TSV with optional double-quote quoting).

#ifndef AUDITCODER_DELIMITED_H_
#define AUDITCODER_DELIMITED_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace auditcoder {

struct DelimitedRow {
  std::vector<std::string> fields;
  int line = 0;  // 1-based line of the row's first character
};

struct DelimitedTable {
  char delimiter = ',';
  std::vector<std::string> header;
  std::vector<DelimitedRow> rows;

  // Column index by (case-insensitive) header name.
  std::optional<size_t> Column(std::string_view name) const;
};

// Parses a table with a header row. The delimiter is a tab when the header
// line contains one, otherwise a comma. Blank lines are skipped; with
// `skip_comments`, lines whose first character is '#' are skipped too.
DelimitedTable ParseDelimited(std::string_view text, bool skip_comments = false);

// Quotes a field when it contains the delimiter, a quote or a line break.
std::string QuoteField(std::string_view field, char delimiter);
std::string FormatRow(const std::vector<std::string>& fields, char delimiter);

}  // namespace auditcoder

#endif  // AUDITCODER_DELIMITED_H_
