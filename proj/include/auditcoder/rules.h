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

// Rule language and engine for audit-category identification.
//
// Rule file:
//
//   [rule skull_fracture]
//   category = CRANIAL:TRAUMA:SKULL FRACTURE
//   triggers = "depressed fracture", "skull fracture"
//   scope = SENTENCE
//   requires = frontal, parietal ; @GCS_SCORE
//   excludes = old
//   negation_guard = true
//   uncertainty = FIRE_FLAGGED
//   priority = 10
//
// Terms are canonical (post-regularization) words or phrases. `@NAME` terms
// stand for a class of spans: @GCS_SCORE, @VERTEBRAL_LEVEL, @DOSE, @SIZE,
// @ADMISSION_CAUSE.

#ifndef AUDITCODER_RULES_H_
#define AUDITCODER_RULES_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "auditcoder/annotated_note.h"
#include "auditcoder/record_model.h"

namespace auditcoder {

class RuleError : public Error {
 public:
  using Error::Error;
};

class TraceError : public Error {
 public:
  using Error::Error;
};

enum class RuleScope { kWord, kSentence, kNote };
enum class UncertaintyPolicy { kFire, kFireFlagged, kSuppress };

std::string_view RuleScopeName(RuleScope scope);
std::string_view UncertaintyPolicyName(UncertaintyPolicy policy);
std::optional<RuleScope> ParseRuleScope(std::string_view text);
std::optional<UncertaintyPolicy> ParseUncertaintyPolicy(std::string_view text);

struct RuleTerm {
  std::string text;                // as written, normalized
  std::vector<std::string> words;  // empty for class terms
  std::optional<MeasurementKind> measurement;
  bool admission_cause = false;

  bool IsClass() const { return words.empty(); }
};

// Throws RuleError on an unknown class name or empty term.
RuleTerm ParseRuleTerm(std::string_view text);

struct Rule {
  std::string id;
  AuditCategory category;
  std::vector<RuleTerm> triggers;
  RuleScope scope = RuleScope::kWord;
  std::vector<std::vector<RuleTerm>> required;  // AND of OR-groups
  std::vector<RuleTerm> excludes;
  bool negation_guard = true;
  UncertaintyPolicy uncertainty = UncertaintyPolicy::kFireFlagged;
  int priority = 0;
  int line = 0;
};

// Canonical one-section rendering; ParseRules(FormatRule(r)) reproduces r.
std::string FormatRule(const Rule& rule);

struct RuleDefaults {
  RuleScope scope = RuleScope::kWord;
  UncertaintyPolicy uncertainty = UncertaintyPolicy::kFireFlagged;
};

class RuleSet {
 public:
  RuleSet() = default;
  // Throws RuleError on duplicate ids or empty triggers.
  static RuleSet FromRules(std::vector<Rule> rules);

  // Evaluation order: priority descending, then id ascending.
  const std::vector<Rule>& rules() const { return rules_; }
  const Rule* Find(std::string_view id) const;
  size_t size() const { return rules_.size(); }
  bool empty() const { return rules_.empty(); }

  // Content label, independent of rule order in the source.
  const std::string& version() const { return version_; }
  // Non-fatal findings, e.g. categories outside the known catalogue.
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  std::vector<Rule> rules_;
  std::string version_ = "rules-empty";
  std::vector<std::string> warnings_;
};

RuleSet ParseRules(std::string_view text, std::string_view source = "",
                   const RuleDefaults& defaults = {});
RuleSet CompileRules(const std::string& path, const RuleDefaults& defaults = {});

struct ConditionEvidence {
  std::string term;
  TokenRange range;
  size_t sentence = 0;
};

struct CategoryMatch {
  AuditCategory category;
  std::string rule_id;
  TokenRange trigger;
  std::string trigger_term;
  std::vector<ConditionEvidence> conditions;
  bool uncertain = false;
  std::optional<TokenRange> uncertainty_source;  // modifier trigger

  std::vector<std::string> flags() const;
};

// Tokens covered by ADMISSION_CAUSE tags are masked from trigger matching but
// may still satisfy `requires`. Results are de-duplicated by category and
// never hold a category together with one of its strict prefixes.
std::vector<CategoryMatch> ApplyRules(const AnnotatedNote& note,
                                      const RuleSet& rules);

// Human-readable evidence trace. Throws TraceError if the match does not fit
// the note.
std::string Explain(const CategoryMatch& match, const AnnotatedNote& note);

}  // namespace auditcoder

#endif  // AUDITCODER_RULES_H_
