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

#include "auditcoder/results_io.h"

namespace auditcoder {

using nlohmann::json;

namespace {

json RangeJson(const AnnotatedNote& note, const TokenRange& r) {
  json j;
  j["token_begin"] = r.begin;
  j["token_end"] = r.end;
  if (!r.empty() && r.end <= note.tokens.size()) {
    j["start"] = note.tokens[r.begin].start;
    j["end"] = note.tokens[r.end - 1].end;
    j["text"] = note.Text(r);
  }
  return j;
}

}  // namespace

json TagToJson(const AnnotatedNote& note, const ConceptTag& tag) {
  json j = RangeJson(note, tag.range);
  j["kind"] = TagKindName(tag.kind);
  j["payload"] = tag.payload;
  return j;
}

json MatchToJson(const AnnotatedNote& note, const CategoryMatch& match) {
  json j;
  j["category"] = match.category.Text();
  j["rule"] = match.rule_id;
  j["flags"] = match.flags();
  j["trigger"] = RangeJson(note, match.trigger);
  j["trigger"]["term"] = match.trigger_term;
  j["conditions"] = json::array();
  for (const auto& c : match.conditions) {
    json cj = RangeJson(note, c.range);
    cj["term"] = c.term;
    cj["sentence"] = c.sentence;
    j["conditions"].push_back(std::move(cj));
  }
  if (match.uncertainty_source) {
    j["uncertainty_source"] = RangeJson(note, *match.uncertainty_source);
  }
  try {
    j["trace"] = Explain(match, note);
  } catch (const TraceError& e) {
    j["trace"] = std::string("trace unavailable: ") + e.what();
  }
  return j;
}

json VersionsToJson(const VersionLabels& v) {
  return {{"lexicon", v.lexicon}, {"rules", v.rules}, {"config", v.config}};
}

json ReportToJson(const EvaluationReport& report) {
  json tiers = json::object();
  for (size_t t = 0; t < kTierCount; ++t) {
    tiers[std::string(MatchTierName(static_cast<MatchTier>(t)))] = report.tiers[t];
  }
  auto ratio = [](const std::optional<double>& v) {
    return v ? json(*v) : json(nullptr);
  };
  return {{"standard", StandardKindName(report.kind)},
          {"items", report.records},
          {"tp", report.tp},
          {"fp", report.fp},
          {"fn", report.fn},
          {"recode_credits", report.recode_credits},
          {"tiers", tiers},
          {"precision", ratio(report.precision)},
          {"recall", ratio(report.recall)},
          {"f_score", ratio(report.f_score)},
          {"precision_pct", FormatTenths(report.precision_tenths)},
          {"recall_pct", FormatTenths(report.recall_tenths)},
          {"f_score_pct", FormatTenths(report.f_tenths)}};
}

json ResultToJson(const ClassificationResult& r) {
  json j;
  j["admission_id"] = r.admission_id;
  j["categories"] = json::array();
  j["flags"] = json::array();
  for (const auto& m : r.categories) {
    j["categories"].push_back(m.category.Text());
    j["flags"].push_back(m.flags());
  }
  auto spans = [&](const std::vector<ConceptTag>& tags) {
    json arr = json::array();
    for (const auto& t : tags) arr.push_back(TagToJson(r.note, t));
    return arr;
  };
  j["cause_spans"] = spans(r.cause_spans);
  j["domain_tags"] = spans(r.domain_tags);
  j["unresolved"] = spans(r.unresolved);
  j["versions"] = VersionsToJson(r.versions);
  return j;
}

std::string FormatResultLine(const ClassificationResult& result) {
  return ResultToJson(result).dump();
}

std::vector<StoredResult> ParseResults(std::string_view text,
                                       std::string_view source) {
  std::vector<StoredResult> out;
  auto lines = Lines(text);
  for (size_t i = 0; i < lines.size(); ++i) {
    if (Trim(lines[i]).empty()) continue;
    std::string where = (source.empty() ? std::string("line ")
                                        : std::string(source) + ":") +
                        std::to_string(i + 1);
    try {
      json j = json::parse(lines[i]);
      StoredResult r;
      r.admission_id = j.at("admission_id").get<std::string>();
      for (const auto& c : j.at("categories")) {
        r.categories.push_back(AuditCategory::Parse(c.get<std::string>()));
      }
      if (j.contains("flags")) {
        r.flags = j.at("flags").get<std::vector<std::vector<std::string>>>();
      }
      r.flags.resize(r.categories.size());
      if (j.contains("versions")) {
        const auto& v = j.at("versions");
        r.versions.lexicon = v.value("lexicon", "");
        r.versions.rules = v.value("rules", "");
        r.versions.config = v.value("config", "");
      }
      out.push_back(std::move(r));
    } catch (const json::exception& e) {
      throw ResultsError(where + ": " + e.what());
    } catch (const ParseError& e) {
      throw ResultsError(where + ": " + e.what());
    }
  }
  return out;
}

std::vector<StoredResult> LoadResults(const std::string& path) {
  return ParseResults(ReadFile(path), path);
}

CalculatedCategories ToCalculated(const std::vector<StoredResult>& results) {
  CalculatedCategories out;
  for (const auto& r : results) {
    if (!out.emplace(r.admission_id, r.categories).second) {
      throw ResultsError("duplicate result for admission " + r.admission_id);
    }
  }
  return out;
}

CalculatedCategories ToCalculated(const std::vector<ClassificationResult>& results) {
  CalculatedCategories out;
  for (const auto& r : results) {
    if (!out.emplace(r.admission_id, r.CategoryList()).second) {
      throw ResultsError("duplicate result for admission " + r.admission_id);
    }
  }
  return out;
}

}  // namespace auditcoder
