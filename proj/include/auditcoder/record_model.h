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

// Admission records, hierarchical diagnosis codes, audit categories and the
// diagnosis -> audit category mapping table.

#ifndef AUDITCODER_RECORD_MODEL_H_
#define AUDITCODER_RECORD_MODEL_H_

#include <chrono>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "auditcoder/text.h"

namespace auditcoder {

class ParseError : public Error {
 public:
  using Error::Error;
};

class UnmappedCodeError : public Error {
 public:
  using Error::Error;
};

class IngestError : public Error {
 public:
  using Error::Error;
};

inline constexpr size_t kMaxDiagnosisDepth = 6;

// A dash-separated numeric path such as 218-224-309-310-315. Identity is the
// segment list; labels are decorative.
struct DiagnosisCode {
  std::vector<int> segments;
  std::vector<std::string> labels;  // empty, or one per segment

  std::string Format() const;        // "218-224-309"
  std::string FormatLabels() const;  // "Cranial>Trauma>Osseous Injury"
  DiagnosisCode Parent() const;      // drops the last segment (and label)

  friend bool operator==(const DiagnosisCode& a, const DiagnosisCode& b) {
    return a.segments == b.segments;
  }
};

// Parses "218-224-309" with an optional ">"-separated label path. Throws
// ParseError naming the 1-based offending segment.
DiagnosisCode ParseDiagnosisCode(std::string_view code,
                                 std::string_view labels = {});

// Colon-separated uppercase label such as CRANIAL:TRAUMA:SKULL FRACTURE.
class AuditCategory {
 public:
  AuditCategory() = default;
  explicit AuditCategory(std::vector<std::string> parts);

  // Throws ParseError for empty, lowercase or padded parts.
  static AuditCategory Parse(std::string_view text);

  const std::vector<std::string>& parts() const { return parts_; }
  size_t depth() const { return parts_.size(); }
  bool empty() const { return parts_.empty(); }
  std::string Text() const;

  // True when every part of this category leads `other` (equality included).
  bool IsPrefixOf(const AuditCategory& other) const;
  bool IsStrictPrefixOf(const AuditCategory& other) const {
    return depth() < other.depth() && IsPrefixOf(other);
  }
  bool IsOther() const { return parts_.size() == 1 && parts_[0] == "OTHER"; }

  friend bool operator==(const AuditCategory&, const AuditCategory&) = default;
  friend auto operator<=>(const AuditCategory&, const AuditCategory&) = default;

 private:
  std::vector<std::string> parts_;
};

// First min(depth, parts) parts. depth must be >= 1.
AuditCategory AuditRoot(const AuditCategory& category, size_t depth);

// The initial audit categories used by the department's yearly audit.
const std::vector<AuditCategory>& KnownAuditCategories();
bool IsKnownAuditCategory(const AuditCategory& category);

struct AdmissionRecord {
  std::string admission_id;
  std::optional<std::chrono::year_month_day> date;
  std::string raw_date;
  std::optional<DiagnosisCode> diagnosis;
  std::string raw_diagnosis;
  std::string note;
  // Degraded-input problems found at ingest (bad date, bad code, ...).
  std::vector<std::string> flags;
};

class CodeTable {
 public:
  struct Entry {
    DiagnosisCode code;
    AuditCategory category;
  };

  // Throws ParseError on a conflicting duplicate.
  void Add(DiagnosisCode code, AuditCategory category);

  // Exact lookup; nullptr when absent.
  const Entry* Find(const DiagnosisCode& code) const;

  // Codes whose parent is absent from the table.
  std::vector<DiagnosisCode> MissingParents() const;

  const std::map<std::vector<int>, Entry>& entries() const { return entries_; }
  size_t size() const { return entries_.size(); }

 private:
  std::map<std::vector<int>, Entry> entries_;
};

// Reads `code,labels,audit_category` rows; '#' lines are comments. Throws
// ParseError ("path:line: ...") on malformed rows or a hierarchy gap.
CodeTable LoadCodeTable(const std::string& path);
CodeTable ParseCodeTable(std::string_view text, std::string_view source = "");

// Exact code, else its nearest mapped ancestor. Throws UnmappedCodeError.
AuditCategory MapToAudit(const DiagnosisCode& code, const CodeTable& table);

// Reads an admissions file (header `admission_id,date,diagnosis_code,
// diagnosis_labels,note`; labels optional). Rows with an unparseable code or
// date are flagged and kept. Missing mandatory columns and duplicate ids throw
// IngestError; an unreadable file throws IoError.
std::vector<AdmissionRecord> IngestAdmissions(const std::string& path);
std::vector<AdmissionRecord> ParseAdmissions(std::string_view text);

std::string FormatDate(const std::chrono::year_month_day& date);

// Writes records back in the ingest format (CSV).
std::string FormatAdmissions(const std::vector<AdmissionRecord>& records);

}  // namespace auditcoder

#endif  // AUDITCODER_RECORD_MODEL_H_
