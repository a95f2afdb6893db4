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

// Sectioned key=value text, shared by rule files and pipeline config:
//
//   # comment
//   [section optional-argument]
//   key = value

#ifndef AUDITCODER_SECTIONED_H_
#define AUDITCODER_SECTIONED_H_

#include <string>
#include <string_view>
#include <vector>

#include "auditcoder/text.h"

namespace auditcoder {

class SectionedError : public Error {
 public:
  using Error::Error;
};

struct KeyValue {
  std::string key;  // lowercase
  std::string value;
  int line = 0;
};

struct Section {
  std::string name;  // lowercase
  std::string argument;
  int line = 0;
  std::vector<KeyValue> values;

  const KeyValue* Find(std::string_view key) const;
};

// Throws SectionedError ("source:line: ...") on malformed lines.
std::vector<Section> ParseSectioned(std::string_view text,
                                    std::string_view source = "");

// Splits on `delim` outside double quotes; trims pieces and strips the quotes.
// Empty pieces are dropped.
std::vector<std::string> SplitQuoted(std::string_view text, char delim);

// Splits on `delim` outside double quotes, keeping quotes in the pieces.
std::vector<std::string> SplitOutsideQuotes(std::string_view text, char delim);

}  // namespace auditcoder

#endif  // AUDITCODER_SECTIONED_H_
