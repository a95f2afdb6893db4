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

#include "auditcoder/record_model.h"

#include <algorithm>
#include <cstdio>
#include <set>

#include "auditcoder/delimited.h"

namespace auditcoder {

std::string DiagnosisCode::Format() const {
  std::string out;
  for (size_t i = 0; i < segments.size(); ++i) {
    if (i) out.push_back('-');
    out += std::to_string(segments[i]);
  }
  return out;
}

std::string DiagnosisCode::FormatLabels() const { return Join(labels, ">"); }

DiagnosisCode DiagnosisCode::Parent() const {
  DiagnosisCode parent = *this;
  if (!parent.segments.empty()) parent.segments.pop_back();
  if (!parent.labels.empty()) parent.labels.pop_back();
  return parent;
}

DiagnosisCode ParseDiagnosisCode(std::string_view code,
                                 std::string_view labels) {
  DiagnosisCode out;
  std::string_view text = Trim(code);
  if (text.empty()) throw ParseError("empty diagnosis code");
  auto pieces = Split(text, '-');
  for (size_t i = 0; i < pieces.size(); ++i) {
    std::string_view piece = Trim(pieces[i]);
    long long v = 0;
    if (piece.empty() || !std::all_of(piece.begin(), piece.end(), IsDigit) ||
        !ParseInt(piece, &v) || v <= 0 || v > 1000000000) {
      throw ParseError("malformed diagnosis code '" + std::string(text) +
                       "' at segment " + std::to_string(i + 1) + " ('" +
                       std::string(piece) + "')");
    }
    out.segments.push_back(static_cast<int>(v));
  }
  if (out.segments.size() > kMaxDiagnosisDepth) {
    throw ParseError("diagnosis code '" + std::string(text) + "' is " +
                     std::to_string(out.segments.size()) +
                     " levels deep; at most " +
                     std::to_string(kMaxDiagnosisDepth) + " allowed");
  }
  std::string_view label_text = Trim(labels);
  if (!label_text.empty()) {
    for (auto& l : Split(label_text, '>')) {
      out.labels.emplace_back(Trim(l));
    }
    if (out.labels.size() != out.segments.size()) {
      throw ParseError("diagnosis code '" + std::string(text) + "' has " +
                       std::to_string(out.segments.size()) +
                       " segments but " + std::to_string(out.labels.size()) +
                       " labels");
    }
  }
  return out;
}

AuditCategory::AuditCategory(std::vector<std::string> parts)
    : parts_(std::move(parts)) {}

AuditCategory AuditCategory::Parse(std::string_view text) {
  std::string_view t = Trim(text);
  if (t.empty()) throw ParseError("empty audit category");
  std::vector<std::string> parts;
  for (auto& p : Split(t, ':')) {
    if (p.empty() || Trim(p) != p) {
      throw ParseError("malformed audit category '" + std::string(t) +
                       "': empty or padded part");
    }
    if (std::any_of(p.begin(), p.end(), IsLower)) {
      throw ParseError("malformed audit category '" + std::string(t) +
                       "': parts must be uppercase");
    }
    parts.push_back(p);
  }
  return AuditCategory(std::move(parts));
}

std::string AuditCategory::Text() const { return Join(parts_, ":"); }

bool AuditCategory::IsPrefixOf(const AuditCategory& other) const {
  if (parts_.size() > other.parts_.size()) return false;
  return std::equal(parts_.begin(), parts_.end(), other.parts_.begin());
}

AuditCategory AuditRoot(const AuditCategory& category, size_t depth) {
  size_t n = std::min(std::max<size_t>(depth, 1), category.depth());
  return AuditCategory(std::vector<std::string>(
      category.parts().begin(), category.parts().begin() + n));
}

const std::vector<AuditCategory>& KnownAuditCategories() {
  static const std::vector<AuditCategory> kKnown = [] {
    const char* names[] = {
        "ANEURYSM",
        "AVM",
        "CSF:LEAK",
        "CRANIAL:TRAUMA",
        "CRANIAL:TRAUMA:SKULL FRACTURE",
        "CRANIAL:TRAUMA:CONTUSIONS",
        "CRANIAL:TRAUMA:EDH",
        "CRANIAL:TRAUMA:ICH",
        "CRANIAL:TRAUMA:IVH",
        "CRANIAL:TRAUMA:SAH",
        "CRANIAL:TRAUMA:SDH",
        "CRANIAL:TRAUMA:TBI",
        "HYDROCEPHALUS",
        "SPINE:TRAUMA",
        "SPINE:TRAUMA:FRACTURE",
        "SPINE:TRAUMA:CORD",
        "SPINE:TRAUMA:DISCO-LIGAMENTOUS",
        "SPINE:CANAL STENOSIS",
        "SPINE:CAVERNOMA",
        "SPINE:DEGENERATIVE",
        "SPINE:OTHER",
        "OTHER:FRACTURE",
        "OTHER",
        "CRANIAL:NEOPLASIA",
        "CRANIAL:NEOPLASIA:CYST",
        "CRANIAL:NEOPLASIA:GLIOMA",
        "CRANIAL:NEOPLASIA:MENINGIOMA",
        "CRANIAL:NEOPLASIA:METASTASIS",
        "CRANIAL:NEOPLASIA:PITUITARY",
        "CRANIAL:NEOPLASIA:SCHWANNOMA",
        "CRANIAL:CAVERNOMA",
        "SPINE:NEOPLASIA",
        "FISTULA",
        "LESION",
        "COMPLICATION:INFECTION",
    };
    std::vector<AuditCategory> out;
    for (const char* n : names) out.push_back(AuditCategory::Parse(n));
    return out;
  }();
  return kKnown;
}

bool IsKnownAuditCategory(const AuditCategory& category) {
  const auto& known = KnownAuditCategories();
  return std::find(known.begin(), known.end(), category) != known.end();
}

void CodeTable::Add(DiagnosisCode code, AuditCategory category) {
  auto it = entries_.find(code.segments);
  if (it != entries_.end()) {
    if (it->second.category != category) {
      throw ParseError("code " + code.Format() + " mapped to both " +
                       it->second.category.Text() + " and " + category.Text());
    }
    return;
  }
  auto key = code.segments;
  entries_.emplace(std::move(key), Entry{std::move(code), std::move(category)});
}

const CodeTable::Entry* CodeTable::Find(const DiagnosisCode& code) const {
  auto it = entries_.find(code.segments);
  return it == entries_.end() ? nullptr : &it->second;
}

std::vector<DiagnosisCode> CodeTable::MissingParents() const {
  std::vector<DiagnosisCode> out;
  for (const auto& [segments, entry] : entries_) {
    if (segments.size() < 2) continue;
    std::vector<int> parent(segments.begin(), segments.end() - 1);
    if (!entries_.count(parent)) out.push_back(entry.code);
  }
  return out;
}

CodeTable ParseCodeTable(std::string_view text, std::string_view source) {
  std::string where = source.empty() ? "code table" : std::string(source);
  DelimitedTable t = ParseDelimited(text, /*skip_comments=*/true);
  CodeTable table;
  if (t.header.empty()) return table;
  auto code_col = t.Column("code");
  auto labels_col = t.Column("labels");
  auto cat_col = t.Column("audit_category");
  if (!code_col || !cat_col) {
    throw ParseError(where + ": header must name code and audit_category");
  }
  for (const auto& row : t.rows) {
    auto field = [&](std::optional<size_t> col) -> std::string {
      if (!col || *col >= row.fields.size()) return "";
      return std::string(Trim(row.fields[*col]));
    };
    try {
      DiagnosisCode code = ParseDiagnosisCode(field(code_col), field(labels_col));
      table.Add(std::move(code), AuditCategory::Parse(field(cat_col)));
    } catch (const ParseError& e) {
      throw ParseError(where + ":" + std::to_string(row.line) + ": " + e.what());
    }
  }
  auto missing = table.MissingParents();
  if (!missing.empty()) {
    throw ParseError(where + ": code " + missing.front().Format() +
                     " has no parent entry (table must be closed under parents)");
  }
  return table;
}

CodeTable LoadCodeTable(const std::string& path) {
  return ParseCodeTable(ReadFile(path), path);
}

AuditCategory MapToAudit(const DiagnosisCode& code, const CodeTable& table) {
  DiagnosisCode probe = code;
  while (!probe.segments.empty()) {
    if (const auto* entry = table.Find(probe)) return entry->category;
    probe = probe.Parent();
  }
  throw UnmappedCodeError("no audit category for code " + code.Format() +
                          " or any of its ancestors");
}

namespace {

std::optional<std::chrono::year_month_day> ParseIsoDate(std::string_view s) {
  s = Trim(s);
  if (s.size() != 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
  long long y, m, d;
  if (!ParseInt(s.substr(0, 4), &y) || !ParseInt(s.substr(5, 2), &m) ||
      !ParseInt(s.substr(8, 2), &d)) {
    return std::nullopt;
  }
  std::chrono::year_month_day ymd{std::chrono::year(int(y)),
                                  std::chrono::month(unsigned(m)),
                                  std::chrono::day(unsigned(d))};
  if (!ymd.ok()) return std::nullopt;
  return ymd;
}

}  // namespace

std::string FormatDate(const std::chrono::year_month_day& date) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", int(date.year()),
                unsigned(date.month()), unsigned(date.day()));
  return buf;
}

std::vector<AdmissionRecord> ParseAdmissions(std::string_view text) {
  DelimitedTable t = ParseDelimited(text);
  std::vector<AdmissionRecord> records;
  if (t.header.empty()) throw IngestError("admissions file has no header row");
  auto id_col = t.Column("admission_id");
  auto date_col = t.Column("date");
  auto code_col = t.Column("diagnosis_code");
  auto labels_col = t.Column("diagnosis_labels");
  auto note_col = t.Column("note");
  std::vector<std::string> missing;
  if (!id_col) missing.push_back("admission_id");
  if (!date_col) missing.push_back("date");
  if (!code_col) missing.push_back("diagnosis_code");
  if (!note_col) missing.push_back("note");
  if (!missing.empty()) {
    throw IngestError("admissions file is missing columns: " +
                      Join(missing, ", "));
  }
  std::set<std::string> seen;
  for (const auto& row : t.rows) {
    auto field = [&](std::optional<size_t> col) -> std::string {
      if (!col || *col >= row.fields.size()) return "";
      return row.fields[*col];
    };
    AdmissionRecord rec;
    rec.admission_id = std::string(Trim(field(id_col)));
    if (rec.admission_id.empty()) {
      throw IngestError("line " + std::to_string(row.line) +
                        ": empty admission_id");
    }
    if (!seen.insert(rec.admission_id).second) {
      throw IngestError("line " + std::to_string(row.line) +
                        ": duplicate admission_id " + rec.admission_id);
    }
    rec.raw_date = std::string(Trim(field(date_col)));
    rec.date = ParseIsoDate(rec.raw_date);
    if (!rec.date && !rec.raw_date.empty()) {
      rec.flags.push_back("unparseable date '" + rec.raw_date + "'");
    }
    rec.raw_diagnosis = std::string(Trim(field(code_col)));
    if (!rec.raw_diagnosis.empty()) {
      try {
        rec.diagnosis = ParseDiagnosisCode(rec.raw_diagnosis, field(labels_col));
      } catch (const ParseError& e) {
        rec.flags.push_back(e.what());
      }
    }
    rec.note = field(note_col);
    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<AdmissionRecord> IngestAdmissions(const std::string& path) {
  return ParseAdmissions(ReadFile(path));
}

std::string FormatAdmissions(const std::vector<AdmissionRecord>& records) {
  std::string out =
      "admission_id,date,diagnosis_code,diagnosis_labels,note\n";
  for (const auto& r : records) {
    std::string date = r.date ? FormatDate(*r.date) : r.raw_date;
    std::string code = r.diagnosis ? r.diagnosis->Format() : r.raw_diagnosis;
    std::string labels = r.diagnosis ? r.diagnosis->FormatLabels() : "";
    out += FormatRow({r.admission_id, date, code, labels, r.note}, ',');
    out.push_back('\n');
  }
  return out;
}

}  // namespace auditcoder
