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

// Results file: one JSON object per line with the fields
// admission_id, categories[], flags[], cause_spans[], domain_tags[],
// unresolved[], versions. flags[i] holds the flags of categories[i].

#ifndef AUDITCODER_RESULTS_IO_H_
#define AUDITCODER_RESULTS_IO_H_

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "auditcoder/concepts.h"
#include "auditcoder/evaluation.h"

namespace auditcoder {

class ResultsError : public Error {
 public:
  using Error::Error;
};

// {kind, payload, text, start, end, token_begin, token_end}; start/end are
// byte offsets into the prepared note text.
nlohmann::json TagToJson(const AnnotatedNote& note, const ConceptTag& tag);

// {category, rule, flags, trigger{...}, conditions[...], trace}
nlohmann::json MatchToJson(const AnnotatedNote& note, const CategoryMatch& match);

nlohmann::json VersionsToJson(const VersionLabels& versions);

// Counts, tiers, ratios and percentages; per-record details excluded.
nlohmann::json ReportToJson(const EvaluationReport& report);

nlohmann::json ResultToJson(const ClassificationResult& result);
std::string FormatResultLine(const ClassificationResult& result);

struct StoredResult {
  std::string admission_id;
  std::vector<AuditCategory> categories;
  std::vector<std::vector<std::string>> flags;
  VersionLabels versions;
};

// Throws ResultsError ("source:line: ...") on malformed lines.
std::vector<StoredResult> ParseResults(std::string_view text,
                                       std::string_view source = "");
std::vector<StoredResult> LoadResults(const std::string& path);

// Throws ResultsError on duplicate admission ids.
CalculatedCategories ToCalculated(const std::vector<StoredResult>& results);
CalculatedCategories ToCalculated(const std::vector<ClassificationResult>& results);

}  // namespace auditcoder

#endif  // AUDITCODER_RESULTS_IO_H_
