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

#include "auditcoder/evaluation.h"

#include <algorithm>
#include <sstream>

namespace auditcoder {

std::string_view StandardKindName(StandardKind kind) {
  switch (kind) {
    case StandardKind::kA: return "A";
    case StandardKind::kB: return "B";
    case StandardKind::kC: return "C";
  }
  return "A";
}

std::optional<StandardKind> ParseStandardKind(std::string_view text) {
  std::string t = Uppercase(Trim(text));
  if (t == "A") return StandardKind::kA;
  if (t == "B") return StandardKind::kB;
  if (t == "C") return StandardKind::kC;
  return std::nullopt;
}

std::string_view MatchTierName(MatchTier tier) {
  switch (tier) {
    case MatchTier::kExact: return "EXACT";
    case MatchTier::kRootGeneralized: return "ROOT_GENERALIZED";
    case MatchTier::kValidAlternative: return "VALID_ALTERNATIVE";
    case MatchTier::kDifferent: return "DIFFERENT";
    case MatchTier::kNoMatch: return "NO_MATCH";
  }
  return "NO_MATCH";
}

void AlternativeTable::Add(const AuditCategory& a, const AuditCategory& b) {
  if (a == b) throw EvaluationError("alternative pair of identical categories: " + a.Text());
  if (a.IsPrefixOf(b) || b.IsPrefixOf(a)) {
    throw EvaluationError("alternative pair is prefix-related: " + a.Text() +
                          " <-> " + b.Text());
  }
  pairs_.insert(a < b ? std::pair{a, b} : std::pair{b, a});
}

bool AlternativeTable::Contains(const AuditCategory& a,
                                const AuditCategory& b) const {
  return pairs_.count(a < b ? std::pair{a, b} : std::pair{b, a}) > 0;
}

namespace {

template <typename Fn>
void ForEachDataLine(std::string_view text, std::string_view source, Fn fn) {
  auto lines = Lines(text);
  for (size_t i = 0; i < lines.size(); ++i) {
    std::string_view line = Trim(lines[i]);
    if (line.empty() || line[0] == '#') continue;
    try {
      fn(line);
    } catch (const Error& e) {
      throw EvaluationError((source.empty() ? std::string("line ")
                                            : std::string(source) + ":") +
                            std::to_string(i + 1) + ": " + e.what());
    }
  }
}

}  // namespace

AlternativeTable ParseAlternatives(std::string_view text,
                                   std::string_view source) {
  AlternativeTable table;
  ForEachDataLine(text, source, [&](std::string_view line) {
    size_t arrow = line.find("<->");
    if (arrow == std::string_view::npos) {
      throw EvaluationError("expected 'CATEGORY_A <-> CATEGORY_B'");
    }
    table.Add(AuditCategory::Parse(Trim(line.substr(0, arrow))),
              AuditCategory::Parse(Trim(line.substr(arrow + 3))));
  });
  return table;
}

AlternativeTable LoadAlternatives(const std::string& path) {
  return ParseAlternatives(ReadFile(path), path);
}

void RecodeApprovals::ApproveCategory(AuditCategory category) {
  categories_.insert(std::move(category));
}

void RecodeApprovals::ApproveRecord(std::string admission_id,
                                    AuditCategory category) {
  records_.emplace(std::move(admission_id), std::move(category));
}

bool RecodeApprovals::Approves(const std::string& admission_id,
                               const AuditCategory& calculated) const {
  if (records_.count({admission_id, calculated})) return true;
  for (const auto& c : categories_) {
    if (c.IsPrefixOf(calculated)) return true;
  }
  return false;
}

RecodeApprovals ParseRecodeApprovals(std::string_view text,
                                     std::string_view source) {
  RecodeApprovals approvals;
  ForEachDataLine(text, source, [&](std::string_view line) {
    size_t at = line.find('@');
    if (at == std::string_view::npos) {
      approvals.ApproveCategory(AuditCategory::Parse(line));
      return;
    }
    std::string id(Trim(line.substr(at + 1)));
    if (id.empty()) throw EvaluationError("empty admission id after '@'");
    approvals.ApproveRecord(id, AuditCategory::Parse(Trim(line.substr(0, at))));
  });
  return approvals;
}

RecodeApprovals LoadRecodeApprovals(const std::string& path) {
  return ParseRecodeApprovals(ReadFile(path), path);
}

MatchTier TierMatch(const std::vector<AuditCategory>& calculated,
                    const AuditCategory& mapped,
                    const AlternativeTable& alternatives) {
  if (calculated.empty()) return MatchTier::kNoMatch;
  for (const auto& c : calculated) {
    if (c == mapped) return MatchTier::kExact;
  }
  for (const auto& c : calculated) {
    if (mapped.IsStrictPrefixOf(c)) return MatchTier::kRootGeneralized;
  }
  for (const auto& c : calculated) {
    if (alternatives.Contains(c, mapped)) return MatchTier::kValidAlternative;
  }
  return MatchTier::kDifferent;
}

std::vector<StandardItem> MappedItems(const std::vector<AdmissionRecord>& records,
                                      const CodeTable& table,
                                      std::vector<std::string>* excluded) {
  std::vector<StandardItem> items;
  for (const auto& r : records) {
    if (!r.diagnosis) {
      if (excluded) excluded->push_back(r.admission_id);
      continue;
    }
    try {
      items.push_back({r.admission_id, MapToAudit(*r.diagnosis, table),
                       r.diagnosis->Format()});
    } catch (const UnmappedCodeError&) {
      if (excluded) excluded->push_back(r.admission_id);
    }
  }
  return items;
}

std::set<std::string> ContentTerms(const AnnotatedNote& note) {
  std::vector<bool> skip(note.tokens.size(), false);
  for (const auto& tag : note.tags) {
    bool drop = tag.kind == TagKind::kModifier ||
                (tag.kind == TagKind::kDomainConcept &&
                 tag.payload == "function-word");
    if (!drop) continue;
    for (size_t i = tag.range.begin; i < tag.range.end && i < skip.size(); ++i) {
      skip[i] = true;
    }
  }
  std::set<std::string> terms;
  for (size_t i = 0; i < note.tokens.size(); ++i) {
    const Token& t = note.tokens[i];
    if (skip[i] || t.delimiter || t.flags.is_uncertainty_marker) continue;
    terms.insert(t.norm);
  }
  return terms;
}

ReferenceStandard BuildStandard(
    const std::vector<StandardItem>& items,
    const std::map<std::string, std::set<std::string>>& note_terms,
    StandardKind kind) {
  ReferenceStandard standard;
  standard.kind = kind;
  if (kind != StandardKind::kB) {
    standard.items = items;
    return standard;
  }
  // group -> term -> number of the group's notes holding it
  std::map<std::string, std::map<std::string, size_t>> counts;
  std::map<std::string, size_t> group_size;
  for (const auto& item : items) {
    ++group_size[item.group];
    auto it = note_terms.find(item.admission_id);
    if (it == note_terms.end()) continue;
    for (const auto& term : it->second) ++counts[item.group][term];
  }
  std::set<std::string> qualifying;
  for (const auto& [group, terms] : counts) {
    for (const auto& [term, n] : terms) {
      if (2 * n >= group_size[group]) {
        qualifying.insert(group);
        break;
      }
    }
  }
  for (const auto& item : items) {
    if (qualifying.count(item.group)) standard.items.push_back(item);
  }
  return standard;
}

long long PercentTenths(long long num, long long den) {
  return (2000 * num + den) / (2 * den);
}

std::string FormatTenths(std::optional<long long> tenths) {
  if (!tenths) return "n/a";
  return std::to_string(*tenths / 10) + "." + std::to_string(*tenths % 10) + "%";
}

void ComputeRatios(EvaluationReport& r) {
  r.precision.reset();
  r.recall.reset();
  r.f_score.reset();
  r.precision_tenths.reset();
  r.recall_tenths.reset();
  r.f_tenths.reset();
  if (r.tp + r.fp > 0) {
    r.precision = static_cast<double>(r.tp) / static_cast<double>(r.tp + r.fp);
    r.precision_tenths = PercentTenths(r.tp, r.tp + r.fp);
  }
  if (r.tp + r.fn > 0) {
    r.recall = static_cast<double>(r.tp) / static_cast<double>(r.tp + r.fn);
    r.recall_tenths = PercentTenths(r.tp, r.tp + r.fn);
  }
  if (r.precision && r.recall) {
    double p = *r.precision, q = *r.recall;
    r.f_score = p + q > 0 ? 2 * p * q / (p + q) : 0.0;
    long long pt = *r.precision_tenths, rt = *r.recall_tenths;
    r.f_tenths = pt + rt > 0 ? (4 * pt * rt + (pt + rt)) / (2 * (pt + rt)) : 0;
  }
}

EvaluationReport Score(const ReferenceStandard& standard,
                       const CalculatedCategories& calculated,
                       const AlternativeTable& alternatives,
                       const RecodeApprovals& approvals) {
  std::vector<std::string> missing;
  for (const auto& item : standard.items) {
    if (!calculated.count(item.admission_id)) missing.push_back(item.admission_id);
  }
  if (!missing.empty()) {
    std::sort(missing.begin(), missing.end());
    throw EvaluationError("no classification for " +
                          std::to_string(missing.size()) + " record(s): " +
                          Join(missing, ", "));
  }

  EvaluationReport r;
  r.kind = standard.kind;
  r.records = standard.items.size();
  for (const auto& item : standard.items) {
    const auto& calc = calculated.at(item.admission_id);
    TierCount d{item.admission_id, item.mapped,
                TierMatch(calc, item.mapped, alternatives), false};
    ++r.tiers[static_cast<size_t>(d.tier)];
    switch (d.tier) {
      case MatchTier::kExact:
      case MatchTier::kRootGeneralized:
      case MatchTier::kValidAlternative:
        ++r.tp;
        break;
      case MatchTier::kDifferent:
        if (standard.kind == StandardKind::kC && item.mapped.IsOther()) {
          for (const auto& c : calc) {
            if (approvals.Approves(item.admission_id, c)) {
              d.recode_credit = true;
              break;
            }
          }
        }
        if (d.recode_credit) {
          ++r.tp;
          ++r.recode_credits;
        } else {
          ++r.fp;
          ++r.fn;  // the mapped category was missed as well
        }
        break;
      case MatchTier::kNoMatch:
        ++r.fn;
        break;
    }
    r.details.push_back(std::move(d));
  }
  std::sort(r.details.begin(), r.details.end(),
            [](const TierCount& a, const TierCount& b) {
              return a.admission_id < b.admission_id;
            });
  ComputeRatios(r);
  return r;
}

OtherRecodeReport OtherRecode(const ReferenceStandard& standard,
                              const CalculatedCategories& calculated,
                              const AlternativeTable& alternatives,
                              const RecodeApprovals& approvals) {
  OtherRecodeReport report;
  for (const auto& item : standard.items) {
    if (!item.mapped.IsOther()) continue;
    ++report.total_other;
    auto it = calculated.find(item.admission_id);
    std::vector<AuditCategory> calc =
        it == calculated.end() ? std::vector<AuditCategory>{} : it->second;
    if (TierMatch(calc, item.mapped, alternatives) != MatchTier::kDifferent) {
      continue;
    }
    ++report.with_specific;
    RecodeEntry entry{item.admission_id, calc, false};
    for (const auto& c : calc) {
      if (approvals.Approves(item.admission_id, c)) entry.approved = true;
    }
    if (entry.approved) ++report.approved;
    report.entries.push_back(std::move(entry));
  }
  std::sort(report.entries.begin(), report.entries.end(),
            [](const RecodeEntry& a, const RecodeEntry& b) {
              return a.admission_id < b.admission_id;
            });
  return report;
}

std::string FormatReportTable(const std::vector<EvaluationReport>& reports,
                              char delimiter) {
  std::ostringstream os;
  const char d = delimiter;
  os << "Reference Standard" << d << "Precision TP / (TP + FP)" << d << d
     << "Recall TP / (TP + FN)" << d << d << "F-Score\n";
  for (const auto& r : reports) {
    os << "Type " << StandardKindName(r.kind) << d << r.tp << " / "
       << (r.tp + r.fp) << d << FormatTenths(r.precision_tenths) << d << r.tp
       << " / " << (r.tp + r.fn) << d << FormatTenths(r.recall_tenths) << d
       << FormatTenths(r.f_tenths) << "\n";
  }
  os << "\nReference Standard";
  for (size_t t = 0; t < kTierCount; ++t) {
    os << d << MatchTierName(static_cast<MatchTier>(t));
  }
  os << d << "RECODE_CREDITS" << d << "RECORDS\n";
  for (const auto& r : reports) {
    os << "Type " << StandardKindName(r.kind);
    for (auto n : r.tiers) os << d << n;
    os << d << r.recode_credits << d << r.records << "\n";
  }
  return os.str();
}

}  // namespace auditcoder
