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

#include "auditcoder/workspace.h"

namespace auditcoder {

Workspace LoadWorkspace(const PipelineConfig& config) {
  LexiconStore store = LoadLexiconDirectory(config.lexicon_dir);
  RuleSet rules = CompileRules(config.rules, config.rule_defaults());
  CodeTable codes = LoadCodeTable(config.code_table);
  AlternativeTable alts;
  if (!config.alternatives.empty()) alts = LoadAlternatives(config.alternatives);
  RecodeApprovals approvals;
  if (!config.recode_approvals.empty()) {
    approvals = LoadRecodeApprovals(config.recode_approvals);
  }
  return Workspace{config,
                   Pipeline(std::move(store), std::move(rules),
                            config.pipeline_options()),
                   std::move(codes), std::move(alts), std::move(approvals)};
}

Workspace LoadWorkspace(const std::string& config_path) {
  return LoadWorkspace(LoadConfig(config_path));
}

ValidationReport ValidateConfig(const std::string& config_path) {
  ValidationReport report;
  PipelineConfig config;
  try {
    config = LoadConfig(config_path);
  } catch (const Error& e) {
    report.errors.push_back(e.what());
    return report;
  }
  auto attempt = [&](const char* what, auto fn) {
    try {
      fn();
    } catch (const Error& e) {
      report.errors.push_back(std::string(what) + ": " + e.what());
    }
  };
  attempt("lexicon", [&] {
    LexiconStore store = LoadLexiconDirectory(config.lexicon_dir);
    report.summary.push_back("lexicon entries: " +
                             std::to_string(store.entries().size()) + " (" +
                             store.version() + ")");
  });
  attempt("rules", [&] {
    RuleSet rules = CompileRules(config.rules, config.rule_defaults());
    for (const auto& w : rules.warnings()) report.warnings.push_back(w);
    report.summary.push_back("rules: " + std::to_string(rules.size()) + " (" +
                             rules.version() + ")");
  });
  attempt("code table", [&] {
    CodeTable codes = LoadCodeTable(config.code_table);
    report.summary.push_back("diagnosis codes: " + std::to_string(codes.size()));
  });
  if (!config.alternatives.empty()) {
    attempt("alternatives", [&] {
      auto alts = LoadAlternatives(config.alternatives);
      report.summary.push_back("alternative pairs: " + std::to_string(alts.size()));
    });
  }
  if (!config.recode_approvals.empty()) {
    attempt("recode approvals", [&] { LoadRecodeApprovals(config.recode_approvals); });
  }
  return report;
}

std::map<std::string, std::set<std::string>> NoteTerms(
    const std::vector<ClassificationResult>& results) {
  std::map<std::string, std::set<std::string>> out;
  for (const auto& r : results) out[r.admission_id] = ContentTerms(r.note);
  return out;
}

ReferenceStandard StandardFor(const std::vector<AdmissionRecord>& records,
                              const std::vector<ClassificationResult>& results,
                              const CodeTable& codes, StandardKind kind) {
  return BuildStandard(MappedItems(records, codes), NoteTerms(results), kind);
}

}  // namespace auditcoder
