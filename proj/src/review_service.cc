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

#include "auditcoder/review_service.h"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <filesystem>
#include <mutex>

#include "auditcoder/results_io.h"

namespace auditcoder {

namespace {

using nlohmann::json;

constexpr long long kMaxPerPage = 1000;
constexpr long long kDefaultPerPage = 50;

std::string SystemTimestamp() {
  auto now = std::chrono::floor<std::chrono::seconds>(
      std::chrono::system_clock::now());
  auto day = std::chrono::floor<std::chrono::days>(now);
  std::chrono::year_month_day ymd(day);
  std::chrono::hh_mm_ss hms(now - day);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ",
                static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
                static_cast<unsigned>(ymd.day()),
                static_cast<int>(hms.hours().count()),
                static_cast<int>(hms.minutes().count()),
                static_cast<int>(hms.seconds().count()));
  return buf;
}

std::optional<long long> ParsePositive(const std::string& text) {
  long long value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || value < 1) {
    return std::nullopt;
  }
  return value;
}

json CategoriesJson(const std::vector<AuditCategory>& categories) {
  json out = json::array();
  for (const auto& c : categories) out.push_back(c.Text());
  return out;
}

std::vector<AuditCategory> ParseCategoryArray(const json& j, const char* field) {
  if (!j.is_array()) {
    throw ReviewError(400, std::string(field) + " must be an array of strings");
  }
  std::vector<AuditCategory> out;
  for (const auto& item : j) {
    if (!item.is_string()) {
      throw ReviewError(400, std::string(field) + " must be an array of strings");
    }
    try {
      out.push_back(AuditCategory::Parse(item.get<std::string>()));
    } catch (const ParseError& e) {
      throw ReviewError(400, std::string(field) + ": " + e.what());
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string StringField(const json& body, const char* field) {
  auto it = body.find(field);
  if (it == body.end() || it->is_null()) return "";
  if (!it->is_string()) {
    throw ReviewError(400, std::string(field) + " must be a string");
  }
  return it->get<std::string>();
}

json RefinementToJson(const StagedRefinement& r) {
  return {{"id", r.id},           {"type", r.type},
          {"entry", r.entry},     {"action", r.action},
          {"reviewer", r.reviewer}, {"timestamp", r.timestamp},
          {"status", "staged"}};
}

}  // namespace

std::string_view DecisionActionName(DecisionAction action) {
  switch (action) {
    case DecisionAction::kAccept: return "ACCEPT";
    case DecisionAction::kOverride: return "OVERRIDE";
    case DecisionAction::kDefer: return "DEFER";
  }
  return "?";
}

std::optional<DecisionAction> ParseDecisionAction(std::string_view text) {
  for (auto a : {DecisionAction::kAccept, DecisionAction::kOverride,
                 DecisionAction::kDefer}) {
    if (Uppercase(text) == DecisionActionName(a)) return a;
  }
  return std::nullopt;
}

std::string_view RecordStatusName(RecordStatus status) {
  switch (status) {
    case RecordStatus::kPending: return "pending";
    case RecordStatus::kDecided: return "decided";
    case RecordStatus::kDeferred: return "deferred";
  }
  return "?";
}

std::optional<RecordStatus> ParseRecordStatus(std::string_view text) {
  for (auto s : {RecordStatus::kPending, RecordStatus::kDecided,
                 RecordStatus::kDeferred}) {
    if (Lowercase(text) == RecordStatusName(s)) return s;
  }
  return std::nullopt;
}

json DecisionToJson(const ReviewDecision& d) {
  return {{"sequence", d.sequence},
          {"admission_id", d.admission_id},
          {"action", DecisionActionName(d.action)},
          {"categories", CategoriesJson(d.categories)},
          {"final_categories", CategoriesJson(d.final_categories)},
          {"reviewer", d.reviewer},
          {"timestamp", d.timestamp},
          {"comment", d.comment}};
}

ReviewDecision DecisionFromJson(const json& j) {
  if (!j.is_object()) throw ReviewError(400, "decision must be an object");
  ReviewDecision d;
  d.admission_id = StringField(j, "admission_id");
  if (d.admission_id.empty()) throw ReviewError(400, "missing admission_id");
  auto action = ParseDecisionAction(StringField(j, "action"));
  if (!action) throw ReviewError(400, "action must be ACCEPT, OVERRIDE or DEFER");
  d.action = *action;
  if (j.contains("categories")) {
    d.categories = ParseCategoryArray(j.at("categories"), "categories");
  }
  if (j.contains("final_categories")) {
    d.final_categories =
        ParseCategoryArray(j.at("final_categories"), "final_categories");
  }
  d.reviewer = StringField(j, "reviewer");
  d.timestamp = StringField(j, "timestamp");
  d.comment = StringField(j, "comment");
  if (auto it = j.find("sequence"); it != j.end() && it->is_number_integer()) {
    d.sequence = it->get<long long>();
  }
  return d;
}

std::vector<ReviewDecision> ParseDecisions(std::string_view text) {
  std::vector<ReviewDecision> out;
  size_t n = 0;
  for (const auto& line : Lines(text)) {
    ++n;
    if (Trim(line).empty()) continue;
    try {
      out.push_back(DecisionFromJson(json::parse(line)));
    } catch (const json::exception& e) {
      throw ReviewError(400, "line " + std::to_string(n) + ": " + e.what());
    } catch (const ReviewError& e) {
      throw ReviewError(400, "line " + std::to_string(n) + ": " + e.what());
    }
  }
  return out;
}

std::vector<StandardItem> DecisionItems(
    const std::vector<ReviewDecision>& decisions,
    const std::vector<AdmissionRecord>& records) {
  std::map<std::string, const ReviewDecision*> latest;
  for (const auto& d : decisions) latest[d.admission_id] = &d;
  std::map<std::string, std::string> group;
  for (const auto& r : records) {
    group[r.admission_id] =
        r.diagnosis ? r.diagnosis->Format() : r.raw_diagnosis;
  }
  std::vector<StandardItem> items;
  for (const auto& [id, d] : latest) {
    if (d->action == DecisionAction::kDefer) continue;
    auto g = group.find(id);
    for (const auto& c : d->final_categories) {
      items.push_back({id, c, g == group.end() ? "" : g->second});
    }
  }
  return items;
}

ReviewService::ReviewService(Workspace workspace,
                             std::vector<AdmissionRecord> records,
                             std::string state_dir, Clock clock)
    : workspace_(std::move(workspace)),
      records_(std::move(records)),
      clock_(clock ? std::move(clock) : Clock(SystemTimestamp)) {
  std::error_code ec;
  std::filesystem::create_directories(state_dir, ec);
  if (ec) throw IoError("cannot create state directory: " + state_dir);
  decisions_path_ = (std::filesystem::path(state_dir) / "decisions.jsonl").string();
  refinements_path_ =
      (std::filesystem::path(state_dir) / "refinements.jsonl").string();

  results_ = ClassifyCorpus(records_, workspace_.pipeline).results;
  for (size_t i = 0; i < records_.size(); ++i) {
    entries_[records_[i].admission_id] = Entry{&records_[i], &results_[i], {}};
  }
  staged_store_ = workspace_.pipeline.store();

  size_t n = 0;
  for (const auto& line : RefinementJournal(decisions_path_).ReadAll()) {
    ++n;
    if (Trim(line).empty()) continue;
    try {
      ReviewDecision d = DecisionFromJson(json::parse(line));
      if (!entries_.count(d.admission_id)) {
        throw ReviewError(500, "unknown admission id " + d.admission_id);
      }
      ApplyDecision(std::move(d));
    } catch (const std::exception& e) {
      throw ReviewError(500, decisions_path_ + ":" + std::to_string(n) + ": " +
                                 e.what());
    }
  }
  n = 0;
  for (const auto& line : RefinementJournal(refinements_path_).ReadAll()) {
    ++n;
    if (Trim(line).empty()) continue;
    try {
      json j = json::parse(line);
      StagedRefinement r =
          ValidateRefinement(j, StringField(j, "reviewer"));
      r.timestamp = StringField(j, "timestamp");
      ApplyRefinement(r);
    } catch (const std::exception& e) {
      throw ReviewError(500, refinements_path_ + ":" + std::to_string(n) +
                                 ": " + e.what());
    }
  }
}

void ReviewService::ApplyDecision(ReviewDecision decision) {
  decision.sequence = static_cast<long long>(journal_.size()) + 1;
  journal_.push_back(std::move(decision));
  entries_.at(journal_.back().admission_id).history.push_back(journal_.size() - 1);
}

const ReviewService::Entry& ReviewService::Find(const std::string& id) const {
  auto it = entries_.find(id);
  if (it == entries_.end()) throw ReviewError(404, "unknown admission id: " + id);
  return it->second;
}

json ReviewService::Envelope(json body) const {
  body["versions"] = VersionsToJson(versions());
  return body;
}

RecordStatus ReviewService::StatusOf(const std::string& id) const {
  std::shared_lock lock(mutex_);
  const Entry& e = Find(id);
  if (e.history.empty()) return RecordStatus::kPending;
  return journal_[e.history.back()].action == DecisionAction::kDefer
             ? RecordStatus::kDeferred
             : RecordStatus::kDecided;
}

std::optional<ReviewDecision> ReviewService::CurrentDecision(
    const std::string& id) const {
  std::shared_lock lock(mutex_);
  const Entry& e = Find(id);
  if (e.history.empty()) return std::nullopt;
  return journal_[e.history.back()];
}

std::vector<ReviewDecision> ReviewService::History(const std::string& id) const {
  std::shared_lock lock(mutex_);
  std::vector<ReviewDecision> out;
  for (size_t i : Find(id).history) out.push_back(journal_[i]);
  return out;
}

json ReviewService::ListRecords(const std::string& status,
                                const std::string& category,
                                const std::string& page,
                                const std::string& per) const {
  std::optional<RecordStatus> want_status;
  if (!status.empty()) {
    want_status = ParseRecordStatus(status);
    if (!want_status) {
      throw ReviewError(400, "status must be pending, decided or deferred");
    }
  }
  std::optional<AuditCategory> want_category;
  if (!category.empty()) {
    try {
      want_category = AuditCategory::Parse(category);
    } catch (const ParseError& e) {
      throw ReviewError(400, std::string("category: ") + e.what());
    }
  }
  long long page_no = 1, per_page = kDefaultPerPage;
  if (!page.empty()) {
    auto v = ParsePositive(page);
    if (!v) throw ReviewError(400, "page must be a positive integer");
    page_no = *v;
  }
  if (!per.empty()) {
    auto v = ParsePositive(per);
    if (!v || *v > kMaxPerPage) {
      throw ReviewError(400, "per must be an integer in 1.." +
                                 std::to_string(kMaxPerPage));
    }
    per_page = *v;
  }

  std::shared_lock lock(mutex_);
  json items = json::array();
  long long total = 0;
  const long long first = (page_no - 1) * per_page;
  for (const auto& [id, e] : entries_) {
    RecordStatus s = RecordStatus::kPending;
    const ReviewDecision* current = nullptr;
    if (!e.history.empty()) {
      current = &journal_[e.history.back()];
      s = current->action == DecisionAction::kDefer ? RecordStatus::kDeferred
                                                    : RecordStatus::kDecided;
    }
    if (want_status && s != *want_status) continue;
    std::vector<AuditCategory> suggested = e.result->CategoryList();
    if (want_category) {
      auto under = [&](const AuditCategory& c) { return want_category->IsPrefixOf(c); };
      if (!std::any_of(suggested.begin(), suggested.end(), under)) continue;
    }
    if (total >= first && total < first + per_page) {
      json flags = json::array();
      for (const auto& m : e.result->categories) flags.push_back(m.flags());
      json item = {{"admission_id", id},
                   {"status", RecordStatusName(s)},
                   {"suggested", CategoriesJson(suggested)},
                   {"flags", flags}};
      item["final_categories"] =
          s == RecordStatus::kDecided ? CategoriesJson(current->final_categories)
                                      : json(nullptr);
      items.push_back(std::move(item));
    }
    ++total;
  }
  return Envelope({{"page", page_no},
                   {"per", per_page},
                   {"total", total},
                   {"records", items}});
}

json ReviewService::RecordDetail(const std::string& id) const {
  std::shared_lock lock(mutex_);
  const Entry& e = Find(id);
  const AdmissionRecord& r = *e.record;
  json body = ResultToJson(*e.result);
  body["raw_note"] = r.note;
  body["prepared_note"] = e.result->note.prepared.text;
  body["date"] = r.date ? json(FormatDate(*r.date)) : json(nullptr);
  body["diagnosis"] = r.diagnosis ? json(r.diagnosis->Format()) : json(nullptr);
  json mapped = nullptr;
  if (r.diagnosis) {
    try {
      mapped = MapToAudit(*r.diagnosis, workspace_.codes).Text();
    } catch (const UnmappedCodeError&) {
    }
  }
  body["mapped_category"] = mapped;
  json tags = json::array();
  for (const auto& t : e.result->note.tags) tags.push_back(TagToJson(e.result->note, t));
  body["tags"] = tags;
  json matches = json::array();
  for (const auto& m : e.result->categories) {
    matches.push_back(MatchToJson(e.result->note, m));
  }
  body["matches"] = matches;
  body["diagnostics"] = e.result->diagnostics;
  json history = json::array();
  for (size_t i : e.history) history.push_back(DecisionToJson(journal_[i]));
  body["history"] = history;
  if (e.history.empty()) {
    body["status"] = RecordStatusName(RecordStatus::kPending);
    body["decision"] = nullptr;
  } else {
    const ReviewDecision& d = journal_[e.history.back()];
    body["status"] = RecordStatusName(d.action == DecisionAction::kDefer
                                          ? RecordStatus::kDeferred
                                          : RecordStatus::kDecided);
    body["decision"] = DecisionToJson(d);
  }
  return Envelope(std::move(body));
}

json ReviewService::PostDecision(const std::string& id, const json& body,
                                 const std::string& reviewer_header) {
  if (!body.is_object()) throw ReviewError(400, "body must be a JSON object");
  ReviewDecision d;
  d.admission_id = id;
  auto action = ParseDecisionAction(StringField(body, "action"));
  if (!action) throw ReviewError(400, "action must be ACCEPT, OVERRIDE or DEFER");
  d.action = *action;
  if (d.action == DecisionAction::kOverride) {
    if (!body.contains("categories")) {
      throw ReviewError(400, "OVERRIDE requires categories");
    }
    d.categories = ParseCategoryArray(body.at("categories"), "categories");
    if (d.categories.empty()) {
      throw ReviewError(400, "OVERRIDE requires at least one category");
    }
    for (const auto& c : d.categories) {
      if (!IsKnownAuditCategory(c) &&
          !std::any_of(workspace_.codes.entries().begin(),
                       workspace_.codes.entries().end(),
                       [&](const auto& kv) { return kv.second.category == c; })) {
        throw ReviewError(400, "unknown audit category: " + c.Text());
      }
    }
  } else if (body.contains("categories") && !body.at("categories").empty()) {
    throw ReviewError(400, "categories are only accepted with OVERRIDE");
  }
  d.comment = StringField(body, "comment");
  d.reviewer = StringField(body, "reviewer");
  if (d.reviewer.empty()) d.reviewer = reviewer_header;
  if (d.reviewer.empty()) d.reviewer = "anonymous";

  std::unique_lock lock(mutex_);
  const Entry& e = Find(id);
  if (d.action == DecisionAction::kAccept) {
    d.final_categories = e.result->CategoryList();
  } else if (d.action == DecisionAction::kOverride) {
    d.final_categories = d.categories;
  }
  d.timestamp = clock_();
  d.sequence = static_cast<long long>(journal_.size()) + 1;
  RefinementJournal(decisions_path_).Append(DecisionToJson(d).dump());
  ApplyDecision(d);
  const ReviewDecision& stored = journal_.back();
  RecordStatus s = stored.action == DecisionAction::kDefer ? RecordStatus::kDeferred
                                                           : RecordStatus::kDecided;
  return Envelope({{"decision", DecisionToJson(stored)},
                   {"status", RecordStatusName(s)}});
}

StagedRefinement ReviewService::ValidateRefinement(
    const json& body, const std::string& reviewer) const {
  if (!body.is_object()) throw ReviewError(400, "body must be a JSON object");
  StagedRefinement r;
  r.type = StringField(body, "type");
  r.entry = StringField(body, "entry");
  r.reviewer = reviewer.empty() ? "anonymous" : reviewer;
  if (r.entry.empty()) throw ReviewError(400, "missing entry");
  if (r.type == "lexicon") {
    LexiconEntry entry;
    try {
      entry = ParseLexiconLine(r.entry);
    } catch (const LexiconError& e) {
      throw ReviewError(400, std::string("invalid lexicon entry: ") + e.what());
    }
    RefinementOutcome outcome;
    try {
      outcome = AppendRefinement(staged_store_, entry, {r.reviewer, ""});
    } catch (const LexiconConflict& e) {
      throw ReviewError(400, std::string("conflict: ") + e.what());
    } catch (const LexiconError& e) {
      throw ReviewError(400, std::string("invalid lexicon entry: ") + e.what());
    }
    if (!outcome.changed) {
      throw ReviewError(400, "duplicate: entry already present for '" +
                                 entry.surface + "'");
    }
    r.action = outcome.action;
  } else if (r.type == "rule") {
    std::vector<Rule> parsed;
    try {
      parsed = ParseRules(r.entry, "proposal",
                          workspace_.config.rule_defaults())
                   .rules();
    } catch (const RuleError& e) {
      throw ReviewError(400, std::string("invalid rule: ") + e.what());
    }
    if (parsed.size() != 1) {
      throw ReviewError(400, "a rule proposal must contain exactly one rule");
    }
    std::vector<Rule> combined = workspace_.pipeline.rules().rules();
    combined.insert(combined.end(), staged_rules_.begin(), staged_rules_.end());
    combined.push_back(parsed.front());
    try {
      RuleSet::FromRules(combined);
    } catch (const RuleError& e) {
      throw ReviewError(400, std::string("conflict: ") + e.what());
    }
    r.entry = FormatRule(parsed.front());
    r.action = "added";
  } else {
    throw ReviewError(400, "type must be lexicon or rule");
  }
  return r;
}

void ReviewService::ApplyRefinement(const StagedRefinement& refinement) {
  StagedRefinement r = refinement;
  r.id = static_cast<long long>(refinements_.size()) + 1;
  if (r.type == "lexicon") {
    LexiconEntry entry = ParseLexiconLine(r.entry);
    staged_store_ = AppendRefinement(staged_store_, entry, {r.reviewer, r.timestamp}).store;
    std::pair<LexiconKind, std::string> key{entry.kind, Lowercase(entry.surface)};
    if (std::find(staged_surfaces_.begin(), staged_surfaces_.end(), key) ==
        staged_surfaces_.end()) {
      staged_surfaces_.push_back(key);
    }
  } else {
    staged_rules_.push_back(
        ParseRules(r.entry, "proposal", workspace_.config.rule_defaults())
            .rules()
            .front());
  }
  refinements_.push_back(std::move(r));
}

json ReviewService::PostRefinement(const json& body,
                                   const std::string& reviewer_header) {
  std::string reviewer;
  if (body.is_object()) reviewer = StringField(body, "reviewer");
  if (reviewer.empty()) reviewer = reviewer_header;

  std::unique_lock lock(mutex_);
  StagedRefinement r = ValidateRefinement(body, reviewer);
  r.timestamp = clock_();
  r.id = static_cast<long long>(refinements_.size()) + 1;
  json line = RefinementToJson(r);
  line.erase("status");
  RefinementJournal(refinements_path_).Append(line.dump());
  ApplyRefinement(r);
  return Envelope({{"refinement", RefinementToJson(refinements_.back())}});
}

json ReviewService::ListRefinements() const {
  std::shared_lock lock(mutex_);
  json items = json::array();
  for (const auto& r : refinements_) items.push_back(RefinementToJson(r));
  return Envelope({{"refinements", items},
                   {"staged_lexicon_version", staged_store_.version()}});
}

json ReviewService::Metrics(const std::string& standard) const {
  auto kind = ParseStandardKind(standard.empty() ? "A" : standard);
  if (!kind) throw ReviewError(400, "standard must be A, B or C");

  std::shared_lock lock(mutex_);
  auto items = DecisionItems(journal_, records_);
  ReferenceStandard ref = BuildStandard(items, NoteTerms(results_), *kind);
  EvaluationReport report = Score(ref, ToCalculated(results_),
                                  workspace_.alternatives,
                                  workspace_.approvals);
  long long decided = 0;
  for (const auto& [id, e] : entries_) {
    if (!e.history.empty() &&
        journal_[e.history.back()].action != DecisionAction::kDefer) {
      ++decided;
    }
  }
  json body = ReportToJson(report);
  body["decided_records"] = decided;
  return Envelope(std::move(body));
}

std::string ReviewService::ExportDecisions() const {
  std::shared_lock lock(mutex_);
  std::string out;
  for (const auto& [id, e] : entries_) {
    if (e.history.empty()) continue;
    out += DecisionToJson(journal_[e.history.back()]).dump();
    out += '\n';
  }
  return out;
}

std::string ReviewService::ExportRefinements(bool rules) const {
  std::shared_lock lock(mutex_);
  std::string out;
  if (rules) {
    for (const auto& r : refinements_) {
      if (r.type != "rule") continue;
      out += "# proposed by " + r.reviewer + " at " + r.timestamp + "\n";
      out += r.entry;
      if (!out.empty() && out.back() != '\n') out += '\n';
      out += '\n';
    }
    return out;
  }
  for (const auto& [kind, surface] : staged_surfaces_) {
    const LexiconEntry* e = staged_store_.FindSurface(surface, kind);
    if (e) out += FormatLexiconLine(*e) + "\n";
  }
  return out;
}

}  // namespace auditcoder
