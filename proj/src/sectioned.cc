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

#include "auditcoder/sectioned.h"

namespace auditcoder {

const KeyValue* Section::Find(std::string_view key) const {
  for (const auto& kv : values) {
    if (kv.key == key) return &kv;
  }
  return nullptr;
}

std::vector<Section> ParseSectioned(std::string_view text,
                                    std::string_view source) {
  std::vector<Section> sections;
  auto lines = Lines(text);
  auto where = [&](size_t i) {
    return (source.empty() ? std::string("line ")
                           : std::string(source) + ":") +
           std::to_string(i + 1);
  };
  for (size_t i = 0; i < lines.size(); ++i) {
    std::string_view line = Trim(lines[i]);
    if (line.empty() || line[0] == '#') continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw SectionedError(where(i) + ": unterminated section header");
      }
      std::string_view inner = Trim(line.substr(1, line.size() - 2));
      size_t sp = inner.find_first_of(" \t");
      Section s;
      s.name = Lowercase(inner.substr(0, sp));
      if (sp != std::string_view::npos) {
        s.argument = std::string(Trim(inner.substr(sp)));
      }
      if (s.name.empty()) throw SectionedError(where(i) + ": empty section name");
      s.line = static_cast<int>(i + 1);
      sections.push_back(std::move(s));
      continue;
    }
    size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw SectionedError(where(i) + ": expected key = value");
    }
    if (sections.empty()) {
      throw SectionedError(where(i) + ": key outside of any section");
    }
    KeyValue kv;
    kv.key = Lowercase(Trim(line.substr(0, eq)));
    kv.value = std::string(Trim(line.substr(eq + 1)));
    kv.line = static_cast<int>(i + 1);
    if (kv.key.empty()) throw SectionedError(where(i) + ": empty key");
    if (sections.back().Find(kv.key)) {
      throw SectionedError(where(i) + ": duplicate key '" + kv.key + "'");
    }
    sections.back().values.push_back(std::move(kv));
  }
  return sections;
}

std::vector<std::string> SplitQuoted(std::string_view text, char delim) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false, had_quote = false;
  auto flush = [&] {
    std::string piece = had_quote ? cur : std::string(Trim(cur));
    if (!had_quote) piece = std::string(Trim(piece));
    if (!piece.empty()) out.push_back(piece);
    cur.clear();
    had_quote = false;
  };
  for (char c : text) {
    if (c == '"') {
      quoted = !quoted;
      if (quoted) {
        cur = std::string(Trim(cur));
        had_quote = true;
      }
      continue;
    }
    if (c == delim && !quoted) {
      flush();
      continue;
    }
    if (had_quote && !quoted) continue;  // text after a closing quote
    cur.push_back(c);
  }
  flush();
  return out;
}

std::vector<std::string> SplitOutsideQuotes(std::string_view text, char delim) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  auto flush = [&] {
    std::string piece(Trim(cur));
    if (!piece.empty()) out.push_back(piece);
    cur.clear();
  };
  for (char c : text) {
    if (c == '"') quoted = !quoted;
    if (c == delim && !quoted) {
      flush();
      continue;
    }
    cur.push_back(c);
  }
  flush();
  return out;
}

}  // namespace auditcoder
