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

#include "auditcoder/delimited.h"

#include "auditcoder/text.h"

namespace auditcoder {

std::optional<size_t> DelimitedTable::Column(std::string_view name) const {
  std::string want = NormalizeTerm(name);
  for (size_t i = 0; i < header.size(); ++i) {
    if (NormalizeTerm(header[i]) == want) return i;
  }
  return std::nullopt;
}

namespace {

// Reads one record starting at `pos`; advances `pos` and `line`.
std::vector<std::string> ReadRecord(std::string_view text, size_t* pos,
                                    int* line, char delim) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  size_t i = *pos;
  while (i < text.size()) {
    char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          fields.back().push_back('"');
          i += 2;
          continue;
        }
        quoted = false;
        ++i;
        continue;
      }
      if (c == '\n') ++*line;
      fields.back().push_back(c);
      ++i;
      continue;
    }
    if (c == '"' && fields.back().empty()) {
      quoted = true;
      ++i;
      continue;
    }
    if (c == delim) {
      fields.emplace_back();
      ++i;
      continue;
    }
    if (c == '\n') {
      ++i;
      ++*line;
      break;
    }
    if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') {
      ++i;
      continue;
    }
    fields.back().push_back(c);
    ++i;
  }
  *pos = i;
  return fields;
}

bool IsBlank(const std::vector<std::string>& fields) {
  return fields.size() == 1 && Trim(fields[0]).empty();
}

}  // namespace

DelimitedTable ParseDelimited(std::string_view text, bool skip_comments) {
  DelimitedTable table;
  size_t pos = 0;
  int line = 1;
  bool have_header = false;
  while (pos < text.size()) {
    if (skip_comments && text[pos] == '#') {
      while (pos < text.size() && text[pos] != '\n') ++pos;
      if (pos < text.size()) ++pos;
      ++line;
      continue;
    }
    if (!have_header) {
      size_t eol = text.find('\n', pos);
      std::string_view header_line = text.substr(pos, eol - pos);
      table.delimiter =
          header_line.find('\t') != std::string_view::npos ? '\t' : ',';
    }
    int row_line = line;
    auto fields = ReadRecord(text, &pos, &line, table.delimiter);
    if (IsBlank(fields)) continue;
    if (!have_header) {
      for (auto& f : fields) f = std::string(Trim(f));
      table.header = std::move(fields);
      have_header = true;
    } else {
      table.rows.push_back({std::move(fields), row_line});
    }
  }
  return table;
}

std::string QuoteField(std::string_view field, char delimiter) {
  bool needs = field.find(delimiter) != std::string_view::npos ||
               field.find('"') != std::string_view::npos ||
               field.find('\n') != std::string_view::npos ||
               field.find('\r') != std::string_view::npos;
  if (!needs) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string FormatRow(const std::vector<std::string>& fields, char delimiter) {
  std::string out;
  for (size_t i = 0; i < fields.size(); ++i) {
    if (i) out.push_back(delimiter);
    out += QuoteField(fields[i], delimiter);
  }
  return out;
}

}  // namespace auditcoder
