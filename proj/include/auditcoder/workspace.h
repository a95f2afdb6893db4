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

// Everything a configuration file points at, loaded and validated together.

#ifndef AUDITCODER_WORKSPACE_H_
#define AUDITCODER_WORKSPACE_H_

#include <map>
#include <set>
#include <string>
#include <vector>

#include "auditcoder/concepts.h"
#include "auditcoder/config.h"
#include "auditcoder/evaluation.h"
#include "auditcoder/record_model.h"

namespace auditcoder {

struct Workspace {
  PipelineConfig config;
  Pipeline pipeline;
  CodeTable codes;
  AlternativeTable alternatives;
  RecodeApprovals approvals;
};

// Throws the first loader error encountered.
Workspace LoadWorkspace(const PipelineConfig& config);
Workspace LoadWorkspace(const std::string& config_path);

struct ValidationReport {
  std::vector<std::string> errors;
  std::vector<std::string> warnings;
  std::vector<std::string> summary;  // "rules: 35", ...

  bool ok() const { return errors.empty(); }
};

// Loads every configured artifact independently and collects all findings.
ValidationReport ValidateConfig(const std::string& config_path);

// Content terms of every record's note after classification.
std::map<std::string, std::set<std::string>> NoteTerms(
    const std::vector<ClassificationResult>& results);

// Mapped items of `records` turned into a reference standard of `kind`;
// classification results supply the note terms for Type B.
ReferenceStandard StandardFor(const std::vector<AdmissionRecord>& records,
                              const std::vector<ClassificationResult>& results,
                              const CodeTable& codes, StandardKind kind);

}  // namespace auditcoder

#endif  // AUDITCODER_WORKSPACE_H_
