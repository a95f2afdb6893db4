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

// Reference standards, tiered matching and precision/recall/F-score.

#ifndef AUDITCODER_EVALUATION_H_
#define AUDITCODER_EVALUATION_H_

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "auditcoder/annotated_note.h"
#include "auditcoder/record_model.h"

namespace auditcoder {

class EvaluationError : public Error {
 public:
  using Error::Error;
};

enum class StandardKind { kA, kB, kC };

std::string_view StandardKindName(StandardKind kind);  // "A", "B", "C"
std::optional<StandardKind> ParseStandardKind(std::string_view text);

enum class MatchTier {
  kExact,
  kRootGeneralized,
  kValidAlternative,
  kDifferent,
  kNoMatch,
};

inline constexpr size_t kTierCount = 5;

std::string_view MatchTierName(MatchTier tier);

// Unordered pairs of categories accepted as valid alternatives.
class AlternativeTable {
 public:
  // Throws EvaluationError for self pairs and prefix-related pairs.
  void Add(const AuditCategory& a, const AuditCategory& b);
  bool Contains(const AuditCategory& a, const AuditCategory& b) const;
  size_t size() const { return pairs_.size(); }

 private:
  std::set<std::pair<AuditCategory, AuditCategory>> pairs_;
};

// Lines `CATEGORY_A <-> CATEGORY_B`; '#' lines are comments.
AlternativeTable ParseAlternatives(std::string_view text,
                                   std::string_view source = "");
AlternativeTable LoadAlternatives(const std::string& path);

// Categories approved as better codes for OTHER-mapped records.
class RecodeApprovals {
 public:
  void ApproveCategory(AuditCategory category);
  void ApproveRecord(std::string admission_id, AuditCategory category);

  // True when `calculated` is an approved category (or a descendant of one),
  // or approved for this record specifically.
  bool Approves(const std::string& admission_id,
                const AuditCategory& calculated) const;
  bool empty() const { return categories_.empty() && records_.empty(); }

 private:
  std::set<AuditCategory> categories_;
  std::set<std::pair<std::string, AuditCategory>> records_;
};

// Lines `CATEGORY` or `CATEGORY @ admission_id`; '#' lines are comments.
RecodeApprovals ParseRecodeApprovals(std::string_view text,
                                     std::string_view source = "");
RecodeApprovals LoadRecodeApprovals(const std::string& path);

// First satisfied of EXACT, ROOT_GENERALIZED (mapped is a strict prefix of a
// calculated category), VALID_ALTERNATIVE, DIFFERENT, NO_MATCH.
MatchTier TierMatch(const std::vector<AuditCategory>& calculated,
                    const AuditCategory& mapped,
                    const AlternativeTable& alternatives);

struct StandardItem {
  std::string admission_id;
  AuditCategory mapped;
  std::string group;  // diagnosis group key (code text)
};

struct ReferenceStandard {
  StandardKind kind = StandardKind::kA;
  std::vector<StandardItem> items;
};

// Every record whose diagnosis maps to an audit category, as (id, category,
// code) items. Ids of records without a usable mapping go to `excluded`.
std::vector<StandardItem> MappedItems(const std::vector<AdmissionRecord>& records,
                                      const CodeTable& table,
                                      std::vector<std::string>* excluded = nullptr);

// Lowercase content terms of a note: non-delimiter tokens that are not
// modifiers, function words or the '?' marker.
std::set<std::string> ContentTerms(const AnnotatedNote& note);

// Type A and C keep every item. Type B keeps the items of groups in which
// some content term occurs in at least half of the group's notes.
// `note_terms` maps admission ids to their content terms.
ReferenceStandard BuildStandard(
    const std::vector<StandardItem>& items,
    const std::map<std::string, std::set<std::string>>& note_terms,
    StandardKind kind);

// Calculated categories per admission id.
using CalculatedCategories = std::map<std::string, std::vector<AuditCategory>>;

struct TierCount {
  std::string admission_id;
  AuditCategory mapped;
  MatchTier tier = MatchTier::kNoMatch;
  bool recode_credit = false;
};

struct EvaluationReport {
  StandardKind kind = StandardKind::kA;
  size_t records = 0;
  std::array<long long, kTierCount> tiers{};
  // tp: EXACT, ROOT_GENERALIZED, VALID_ALTERNATIVE and recode credits.
  // fp: uncredited DIFFERENT. fn: every mapped record not counted in tp, so
  // tp + fn == records.
  long long tp = 0;
  long long fp = 0;
  long long fn = 0;
  long long tn = 0;
  long long recode_credits = 0;

  // Exact ratios; absent when the denominator is zero.
  std::optional<double> precision;
  std::optional<double> recall;
  std::optional<double> f_score;

  // One-decimal percentages in tenths (848 == 84.8%). The F percentage is the
  // harmonic mean of the rounded precision and recall percentages.
  std::optional<long long> precision_tenths;
  std::optional<long long> recall_tenths;
  std::optional<long long> f_tenths;

  std::vector<TierCount> details;
};

// Derives ratios and percentages from tp/fp/fn.
void ComputeRatios(EvaluationReport& report);

// Rounds num/den to tenths of a percent, half up. den must be positive.
long long PercentTenths(long long num, long long den);
std::string FormatTenths(std::optional<long long> tenths);  // "84.8%" or "n/a"

// Throws EvaluationError listing ids in the standard without a calculated
// entry.
EvaluationReport Score(const ReferenceStandard& standard,
                       const CalculatedCategories& calculated,
                       const AlternativeTable& alternatives,
                       const RecodeApprovals& approvals = {});

struct RecodeEntry {
  std::string admission_id;
  std::vector<AuditCategory> calculated;
  bool approved = false;
};

struct OtherRecodeReport {
  long long total_other = 0;
  long long with_specific = 0;  // calculated categories tier as DIFFERENT
  long long approved = 0;
  std::vector<RecodeEntry> entries;
};

// OTHER-mapped records whose calculated categories tier as DIFFERENT, and
// which of those the approvals accept.
OtherRecodeReport OtherRecode(const ReferenceStandard& standard,
                              const CalculatedCategories& calculated,
                              const AlternativeTable& alternatives,
                              const RecodeApprovals& approvals);

// Table-shaped text: one row per report with the precision, recall and
// F-score columns, then the per-tier breakdown.
std::string FormatReportTable(const std::vector<EvaluationReport>& reports,
                              char delimiter = '\t');

}  // namespace auditcoder

#endif  // AUDITCODER_EVALUATION_H_
