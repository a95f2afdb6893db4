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

// Expert review state: suggestions, journaled decisions, staged refinements
// and live metrics. Transport-independent; see review_http.h for the routes.

#ifndef AUDITCODER_REVIEW_SERVICE_H_
#define AUDITCODER_REVIEW_SERVICE_H_

#include <functional>
#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "json.hpp"

#include "auditcoder/concepts.h"
#include "auditcoder/evaluation.h"
#include "auditcoder/workspace.h"

namespace auditcoder {

// Carries the HTTP status the error maps to.
class ReviewError : public Error {
 public:
  ReviewError(int status, const std::string& message)
      : Error(message), status_(status) {}
  int status() const { return status_; }

 private:
  int status_;
};

enum class DecisionAction { kAccept, kOverride, kDefer };
enum class RecordStatus { kPending, kDecided, kDeferred };

std::string_view DecisionActionName(DecisionAction action);
std::optional<DecisionAction> ParseDecisionAction(std::string_view text);
std::string_view RecordStatusName(RecordStatus status);
std::optional<RecordStatus> ParseRecordStatus(std::string_view text);

struct ReviewDecision {
  std::string admission_id;
  DecisionAction action = DecisionAction::kAccept;
  std::vector<AuditCategory> categories;        // as posted (OVERRIDE only)
  std::vector<AuditCategory> final_categories;  // resolved at post time
  std::string reviewer;
  std::string timestamp;
  std::string comment;
  long long sequence = 0;
};

nlohmann::json DecisionToJson(const ReviewDecision& decision);
// Throws ReviewError(400) on a malformed line.
ReviewDecision DecisionFromJson(const nlohmann::json& j);

// Latest decision per record, DEFER excluded, as reference items: one item per
// final category, grouped by the record's diagnosis code.
std::vector<StandardItem> DecisionItems(
    const std::vector<ReviewDecision>& decisions,
    const std::vector<AdmissionRecord>& records);

// Parses an exported decisions file (one JSON object per line).
std::vector<ReviewDecision> ParseDecisions(std::string_view text);

struct StagedRefinement {
  long long id = 0;
  std::string type;   // "lexicon" or "rule"
  std::string entry;  // lexicon line or rule section text
  std::string action;  // lexicon: "added" or "merged"; rule: "added"
  std::string reviewer;
  std::string timestamp;
};

class ReviewService {
 public:
  using Clock = std::function<std::string()>;

  // Classifies `records` and replays the journals found in `state_dir`
  // (created if missing). Throws ReviewError on a corrupt journal.
  ReviewService(Workspace workspace, std::vector<AdmissionRecord> records,
                std::string state_dir, Clock clock = {});

  // Query parameters are raw strings as received; empty means absent.
  nlohmann::json ListRecords(const std::string& status,
                             const std::string& category,
                             const std::string& page,
                             const std::string& per) const;
  nlohmann::json RecordDetail(const std::string& admission_id) const;
  nlohmann::json PostDecision(const std::string& admission_id,
                              const nlohmann::json& body,
                              const std::string& reviewer_header);
  nlohmann::json ListRefinements() const;
  nlohmann::json PostRefinement(const nlohmann::json& body,
                                const std::string& reviewer_header);
  nlohmann::json Metrics(const std::string& standard) const;
  // Current decisions, one JSON object per line, admission_id ascending.
  std::string ExportDecisions() const;
  // Staged lexicon refinements coalesced per entry, in lexicon format; with
  // rules = true, staged rule proposals in rule-file format.
  std::string ExportRefinements(bool rules = false) const;

  VersionLabels versions() const { return workspace_.pipeline.versions(); }
  RecordStatus StatusOf(const std::string& admission_id) const;
  std::optional<ReviewDecision> CurrentDecision(const std::string& admission_id) const;
  std::vector<ReviewDecision> History(const std::string& admission_id) const;
  const std::vector<ClassificationResult>& results() const { return results_; }

 private:
  struct Entry {
    const AdmissionRecord* record = nullptr;
    const ClassificationResult* result = nullptr;
    std::vector<size_t> history;  // indices into journal_
  };

  void ApplyDecision(ReviewDecision decision);
  StagedRefinement ValidateRefinement(const nlohmann::json& body,
                                      const std::string& reviewer) const;
  void ApplyRefinement(const StagedRefinement& refinement);
  const Entry& Find(const std::string& admission_id) const;
  nlohmann::json Envelope(nlohmann::json body) const;

  Workspace workspace_;
  std::vector<AdmissionRecord> records_;
  std::vector<ClassificationResult> results_;
  std::map<std::string, Entry> entries_;
  std::string decisions_path_;
  std::string refinements_path_;
  Clock clock_;

  mutable std::shared_mutex mutex_;
  std::vector<ReviewDecision> journal_;
  std::vector<StagedRefinement> refinements_;
  LexiconStore staged_store_;
  std::vector<Rule> staged_rules_;
  std::vector<std::pair<LexiconKind, std::string>> staged_surfaces_;
};

}  // namespace auditcoder

#endif  // AUDITCODER_REVIEW_SERVICE_H_
