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

// Third pipeline stage: admission cause, audit categories and domain concepts,
// plus the per-record and corpus classification entry points.

#ifndef AUDITCODER_CONCEPTS_H_
#define AUDITCODER_CONCEPTS_H_

#include <map>
#include <string>
#include <vector>

#include "auditcoder/annotated_note.h"
#include "auditcoder/lexicon.h"
#include "auditcoder/preparation.h"
#include "auditcoder/preprocessing.h"
#include "auditcoder/record_model.h"
#include "auditcoder/rules.h"

namespace auditcoder {

inline constexpr std::string_view kFunctionWordLabel = "function-word";

struct PipelineOptions {
  SpellingOptions spelling;
  PreprocessOptions preprocess;
  // Tunables echoed into result version labels.
  std::string config_label = "config-default";
};

struct VersionLabels {
  std::string lexicon;
  std::string rules;
  std::string config;

  friend bool operator==(const VersionLabels&, const VersionLabels&) = default;
};

// Immutable bundle of everything classification depends on.
class Pipeline {
 public:
  Pipeline(LexiconStore store, RuleSet rules, PipelineOptions options = {});

  const LexiconStore& store() const { return store_; }
  const RuleSet& rules() const { return rules_; }
  const PipelineOptions& options() const { return options_; }
  VersionLabels versions() const;

 private:
  LexiconStore store_;
  RuleSet rules_;
  PipelineOptions options_;
};

// Adds MODIFIER and MEASUREMENT tags for spans found in pre-processing.
void TagPreprocessedSpans(AnnotatedNote& note);

// Longest PHRASE matches first, then KEYWORD matches over the tokens left.
// Spans are added to note.tags, which masks them from rule triggers.
std::vector<ConceptTag> IdentifyAdmissionCause(AnnotatedNote& note,
                                               const LexiconStore& store);

// Runs the rules and tags still-untagged trigger and condition tokens as
// AUDIT_EVIDENCE.
std::vector<CategoryMatch> IdentifyAuditCategories(AnnotatedNote& note,
                                                   const RuleSet& rules);

// Every remaining content token becomes DOMAIN_CONCEPT (longest lexicon
// match, resolved abbreviation or number) or UNRESOLVED.
std::vector<ConceptTag> IdentifyDomainConcepts(AnnotatedNote& note,
                                               const LexiconStore& store);

struct ClassificationResult {
  std::string admission_id;
  std::vector<CategoryMatch> categories;
  std::vector<ConceptTag> cause_spans;
  std::vector<ConceptTag> domain_tags;
  std::vector<ConceptTag> unresolved;
  VersionLabels versions;
  std::vector<std::string> diagnostics;
  AnnotatedNote note;

  std::vector<AuditCategory> CategoryList() const;
};

ClassificationResult ClassifyNote(const AdmissionRecord& record,
                                  const Pipeline& pipeline);

struct CorpusSummary {
  size_t records = 0;
  size_t records_without_category = 0;
  size_t content_tokens = 0;
  size_t unresolved_tokens = 0;
  std::map<std::string, size_t> category_histogram;
  std::vector<std::string> failures;  // "id: message"

  double UnresolvedRate() const {
    return content_tokens == 0 ? 0.0
                               : static_cast<double>(unresolved_tokens) /
                                     static_cast<double>(content_tokens);
  }
};

struct CorpusClassification {
  std::vector<ClassificationResult> results;  // input order
  CorpusSummary summary;
};

// Classifies records on `threads` workers (0 = hardware concurrency). A record
// that throws yields an empty result carrying the message as a diagnostic.
CorpusClassification ClassifyCorpus(const std::vector<AdmissionRecord>& records,
                                    const Pipeline& pipeline,
                                    unsigned threads = 0);

}  // namespace auditcoder

#endif  // AUDITCODER_CONCEPTS_H_
