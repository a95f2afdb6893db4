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

#include "auditcoder/rules.h"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "auditcoder/sectioned.h"

namespace auditcoder {

std::string_view RuleScopeName(RuleScope scope) {
  switch (scope) {
    case RuleScope::kWord: return "WORD";
    case RuleScope::kSentence: return "SENTENCE";
    case RuleScope::kNote: return "NOTE";
  }
  return "WORD";
}

std::string_view UncertaintyPolicyName(UncertaintyPolicy policy) {
  switch (policy) {
    case UncertaintyPolicy::kFire: return "FIRE";
    case UncertaintyPolicy::kFireFlagged: return "FIRE_FLAGGED";
    case UncertaintyPolicy::kSuppress: return "SUPPRESS";
  }
  return "FIRE_FLAGGED";
}

std::optional<RuleScope> ParseRuleScope(std::string_view text) {
  std::string t = Uppercase(Trim(text));
  if (t == "WORD") return RuleScope::kWord;
  if (t == "SENTENCE") return RuleScope::kSentence;
  if (t == "NOTE") return RuleScope::kNote;
  return std::nullopt;
}

std::optional<UncertaintyPolicy> ParseUncertaintyPolicy(std::string_view text) {
  std::string t = Uppercase(Trim(text));
  if (t == "FIRE") return UncertaintyPolicy::kFire;
  if (t == "FIRE_FLAGGED") return UncertaintyPolicy::kFireFlagged;
  if (t == "SUPPRESS") return UncertaintyPolicy::kSuppress;
  return std::nullopt;
}

RuleTerm ParseRuleTerm(std::string_view text) {
  RuleTerm term;
  std::string_view t = Trim(text);
  if (t.empty()) throw RuleError("empty rule term");
  if (t[0] == '@') {
    std::string name = Uppercase(t.substr(1));
    term.text = "@" + name;
    if (name == "GCS_SCORE") {
      term.measurement = MeasurementKind::kGcsScore;
    } else if (name == "VERTEBRAL_LEVEL") {
      term.measurement = MeasurementKind::kVertebralLevel;
    } else if (name == "DOSE") {
      term.measurement = MeasurementKind::kDose;
    } else if (name == "SIZE") {
      term.measurement = MeasurementKind::kSize;
    } else if (name == "ADMISSION_CAUSE") {
      term.admission_cause = true;
    } else {
      throw RuleError("unknown term class '" + std::string(t) + "'");
    }
    return term;
  }
  term.text = NormalizeTerm(t);
  term.words = SplitWords(term.text);
  return term;
}

namespace {

std::string QuoteTerms(const std::vector<RuleTerm>& terms) {
  std::vector<std::string> out;
  for (const auto& t : terms) out.push_back("\"" + t.text + "\"");
  return Join(out, ", ");
}

bool ParseBool(std::string_view text, bool* out) {
  std::string t = Lowercase(Trim(text));
  if (t == "true" || t == "yes" || t == "1") {
    *out = true;
    return true;
  }
  if (t == "false" || t == "no" || t == "0") {
    *out = false;
    return true;
  }
  return false;
}

bool RuleOrder(const Rule& a, const Rule& b) {
  if (a.priority != b.priority) return a.priority > b.priority;
  return a.id < b.id;
}

}  // namespace

std::string FormatRule(const Rule& rule) {
  std::ostringstream os;
  os << "[rule " << rule.id << "]\n";
  os << "category = " << rule.category.Text() << "\n";
  os << "triggers = " << QuoteTerms(rule.triggers) << "\n";
  os << "scope = " << RuleScopeName(rule.scope) << "\n";
  std::vector<std::string> groups;
  for (const auto& g : rule.required) groups.push_back(QuoteTerms(g));
  os << "requires = " << Join(groups, " ; ") << "\n";
  os << "excludes = " << QuoteTerms(rule.excludes) << "\n";
  os << "negation_guard = " << (rule.negation_guard ? "true" : "false") << "\n";
  os << "uncertainty = " << UncertaintyPolicyName(rule.uncertainty) << "\n";
  os << "priority = " << rule.priority << "\n";
  return os.str();
}

RuleSet RuleSet::FromRules(std::vector<Rule> rules) {
  RuleSet set;
  std::map<std::string, int> seen;
  for (const auto& r : rules) {
    if (r.id.empty()) throw RuleError("line " + std::to_string(r.line) + ": empty rule id");
    if (r.triggers.empty()) {
      throw RuleError("line " + std::to_string(r.line) + ": rule '" + r.id +
                      "' has no triggers");
    }
    for (const auto& t : r.triggers) {
      if (t.IsClass()) {
        throw RuleError("line " + std::to_string(r.line) + ": rule '" + r.id +
                        "' uses class term " + t.text + " as a trigger");
      }
    }
    auto [it, fresh] = seen.emplace(r.id, r.line);
    if (!fresh) {
      throw RuleError("line " + std::to_string(r.line) + ": duplicate rule id '" +
                      r.id + "' (first defined at line " +
                      std::to_string(it->second) + ")");
    }
    if (!IsKnownAuditCategory(r.category)) {
      set.warnings_.push_back("rule '" + r.id + "': category " +
                              r.category.Text() +
                              " is not among the known audit categories");
    }
  }
  std::sort(rules.begin(), rules.end(), RuleOrder);
  set.rules_ = std::move(rules);
  if (!set.rules_.empty()) {
    std::vector<std::string> canon;
    for (const auto& r : set.rules_) canon.push_back(FormatRule(r));
    std::sort(canon.begin(), canon.end());
    set.version_ = "rules-" + HexFingerprint(Join(canon, "\n"));
  }
  return set;
}

const Rule* RuleSet::Find(std::string_view id) const {
  for (const auto& r : rules_) {
    if (r.id == id) return &r;
  }
  return nullptr;
}

RuleSet ParseRules(std::string_view text, std::string_view source,
                   const RuleDefaults& defaults) {
  std::string prefix = source.empty() ? "line " : std::string(source) + ":";
  std::vector<Section> sections;
  try {
    sections = ParseSectioned(text, source);
  } catch (const SectionedError& e) {
    throw RuleError(e.what());
  }
  std::vector<Rule> rules;
  std::map<std::string, int> seen;
  for (const auto& s : sections) {
    auto fail = [&](int line, const std::string& msg) -> RuleError {
      return RuleError(prefix + std::to_string(line) + ": " + msg);
    };
    if (s.name != "rule") throw fail(s.line, "unknown section '" + s.name + "'");
    Rule r;
    r.id = s.argument;
    r.line = s.line;
    r.scope = defaults.scope;
    r.uncertainty = defaults.uncertainty;
    if (r.id.empty()) throw fail(s.line, "rule section without id");
    auto [it, fresh] = seen.emplace(r.id, s.line);
    if (!fresh) {
      throw fail(s.line, "duplicate rule id '" + r.id +
                             "' (first defined at line " +
                             std::to_string(it->second) + ")");
    }
    bool has_category = false;
    for (const auto& kv : s.values) {
      try {
        if (kv.key == "category") {
          r.category = AuditCategory::Parse(kv.value);
          has_category = true;
        } else if (kv.key == "triggers") {
          for (const auto& t : SplitQuoted(kv.value, ',')) {
            r.triggers.push_back(ParseRuleTerm(t));
            if (r.triggers.back().IsClass()) {
              throw RuleError("class term " + r.triggers.back().text +
                              " cannot be a trigger");
            }
          }
        } else if (kv.key == "scope") {
          auto scope = ParseRuleScope(kv.value);
          if (!scope) throw RuleError("bad scope '" + kv.value + "'");
          r.scope = *scope;
        } else if (kv.key == "requires") {
          for (const auto& group : SplitOutsideQuotes(kv.value, ';')) {
            std::vector<RuleTerm> terms;
            for (const auto& t : SplitQuoted(group, ',')) {
              terms.push_back(ParseRuleTerm(t));
            }
            if (!terms.empty()) r.required.push_back(std::move(terms));
          }
        } else if (kv.key == "excludes") {
          for (const auto& t : SplitQuoted(kv.value, ',')) {
            r.excludes.push_back(ParseRuleTerm(t));
          }
        } else if (kv.key == "negation_guard") {
          if (!ParseBool(kv.value, &r.negation_guard)) {
            throw RuleError("bad boolean '" + kv.value + "'");
          }
        } else if (kv.key == "uncertainty") {
          auto policy = ParseUncertaintyPolicy(kv.value);
          if (!policy) throw RuleError("bad uncertainty policy '" + kv.value + "'");
          r.uncertainty = *policy;
        } else if (kv.key == "priority") {
          long long p = 0;
          if (!ParseInt(kv.value, &p)) throw RuleError("bad priority '" + kv.value + "'");
          r.priority = static_cast<int>(p);
        } else {
          throw RuleError("unknown key '" + kv.key + "'");
        }
      } catch (const ParseError& e) {
        throw fail(kv.line, std::string("malformed category: ") + e.what());
      } catch (const RuleError& e) {
        throw fail(kv.line, e.what());
      }
    }
    if (!has_category) throw fail(s.line, "rule '" + r.id + "' has no category");
    if (r.triggers.empty()) throw fail(s.line, "rule '" + r.id + "' has no triggers");
    rules.push_back(std::move(r));
  }
  return RuleSet::FromRules(std::move(rules));
}

RuleSet CompileRules(const std::string& path, const RuleDefaults& defaults) {
  return ParseRules(ReadFile(path), path, defaults);
}

std::vector<std::string> CategoryMatch::flags() const {
  if (uncertain) return {"UNCERTAIN"};
  return {};
}

namespace {

bool Within(const TokenRange& inner, const TokenRange& outer) {
  return inner.begin >= outer.begin && inner.end <= outer.end;
}

// Word term at token k: contiguous content tokens with equal norms, or a
// single abbreviation token resolved to the term.
std::optional<TokenRange> WordMatchAt(const AnnotatedNote& note, size_t k,
                                      const RuleTerm& term) {
  const auto& toks = note.tokens;
  if (k >= toks.size() || toks[k].delimiter) return std::nullopt;
  auto res = note.sense_resolutions.find(k);
  if (res != note.sense_resolutions.end() &&
      NormalizeTerm(res->second.expansion) == term.text) {
    return TokenRange{k, k + 1};
  }
  if (k + term.words.size() > toks.size()) return std::nullopt;
  for (size_t j = 0; j < term.words.size(); ++j) {
    const Token& t = toks[k + j];
    if (t.delimiter || t.norm != term.words[j]) return std::nullopt;
  }
  return TokenRange{k, k + term.words.size()};
}

std::vector<TokenRange> Occurrences(const AnnotatedNote& note,
                                    const RuleTerm& term,
                                    const TokenRange& region) {
  std::vector<TokenRange> out;
  if (term.measurement) {
    for (const auto& m : note.measurements) {
      if (m.kind == *term.measurement && Within(m.range, region)) {
        out.push_back(m.range);
      }
    }
    return out;
  }
  if (term.admission_cause) {
    for (const auto& tag : note.tags) {
      if (tag.kind == TagKind::kAdmissionCause && Within(tag.range, region)) {
        out.push_back(tag.range);
      }
    }
    return out;
  }
  for (size_t k = region.begin; k < region.end; ++k) {
    auto r = WordMatchAt(note, k, term);
    if (r && Within(*r, region)) out.push_back(*r);
  }
  return out;
}

const ModifierSpan* Governing(const AnnotatedNote& note, const TokenRange& r,
                              ModifierPolarity polarity) {
  for (size_t i = r.begin; i < r.end; ++i) {
    if (const auto* m = note.GoverningModifier(i, polarity)) return m;
  }
  return nullptr;
}

TokenRange ScopeRegion(const AnnotatedNote& note, const Rule& rule,
                       const TokenRange& trigger) {
  switch (rule.scope) {
    case RuleScope::kWord:
      return trigger;
    case RuleScope::kSentence: {
      auto s = note.SentenceOf(trigger.begin);
      if (s) return note.sentences[*s].range;
      return trigger;
    }
    case RuleScope::kNote:
      return note.All();
  }
  return trigger;
}

std::optional<std::vector<ConditionEvidence>> CheckConditions(
    const AnnotatedNote& note, const Rule& rule, const TokenRange& region) {
  std::vector<ConditionEvidence> evidence;
  for (const auto& group : rule.required) {
    bool satisfied = false;
    for (const auto& term : group) {
      for (const auto& occ : Occurrences(note, term, region)) {
        if (Governing(note, occ, ModifierPolarity::kNegation)) continue;
        evidence.push_back({term.text, occ, note.SentenceOf(occ.begin).value_or(0)});
        satisfied = true;
        break;
      }
      if (satisfied) break;
    }
    if (!satisfied) return std::nullopt;
  }
  for (const auto& term : rule.excludes) {
    if (!Occurrences(note, term, region).empty()) return std::nullopt;
  }
  return evidence;
}

}  // namespace

std::vector<CategoryMatch> ApplyRules(const AnnotatedNote& note,
                                      const RuleSet& rules) {
  std::vector<bool> masked(note.tokens.size(), false);
  for (const auto& tag : note.tags) {
    if (tag.kind != TagKind::kAdmissionCause) continue;
    for (size_t i = tag.range.begin; i < tag.range.end && i < masked.size(); ++i) {
      masked[i] = true;
    }
  }

  std::map<AuditCategory, CategoryMatch> best;
  for (const Rule& rule : rules.rules()) {
    auto existing = best.find(rule.category);
    if (existing != best.end() && !existing->second.uncertain) continue;
    bool done = false;
    for (size_t k = 0; k < note.tokens.size() && !done; ++k) {
      for (const auto& trig : rule.triggers) {
        auto range = WordMatchAt(note, k, trig);
        if (!range) continue;
        bool hit_mask = false;
        for (size_t i = range->begin; i < range->end; ++i) hit_mask |= masked[i];
        if (hit_mask) continue;
        if (rule.negation_guard &&
            Governing(note, *range, ModifierPolarity::kNegation)) {
          continue;
        }
        const ModifierSpan* unsure =
            Governing(note, *range, ModifierPolarity::kUncertainty);
        if (unsure && rule.uncertainty == UncertaintyPolicy::kSuppress) continue;
        TokenRange region = ScopeRegion(note, rule, *range);
        auto evidence = CheckConditions(note, rule, region);
        if (!evidence) continue;

        CategoryMatch m;
        m.category = rule.category;
        m.rule_id = rule.id;
        m.trigger = *range;
        m.trigger_term = trig.text;
        m.conditions = std::move(*evidence);
        if (unsure && rule.uncertainty == UncertaintyPolicy::kFireFlagged) {
          m.uncertain = true;
          m.uncertainty_source = unsure->trigger;
        }
        auto it = best.find(rule.category);
        if (it == best.end()) {
          best.emplace(rule.category, std::move(m));
        } else if (it->second.uncertain && !m.uncertain) {
          it->second = std::move(m);
        }
        auto now = best.find(rule.category);
        if (!now->second.uncertain) done = true;
        break;
      }
    }
  }

  std::vector<CategoryMatch> out;
  for (auto& [cat, m] : best) {
    bool shadowed = false;
    for (const auto& [other, unused] : best) {
      if (cat.IsStrictPrefixOf(other)) {
        shadowed = true;
        break;
      }
    }
    if (!shadowed) out.push_back(std::move(m));
  }
  return out;
}

std::string Explain(const CategoryMatch& match, const AnnotatedNote& note) {
  auto check = [&](const TokenRange& r, const char* what) {
    if (r.empty() || r.end > note.tokens.size() ||
        note.tokens[r.end - 1].end > note.prepared.text.size()) {
      throw TraceError(std::string("stale match: ") + what + " [" +
                       std::to_string(r.begin) + "," + std::to_string(r.end) +
                       ") outside the note (" +
                       std::to_string(note.tokens.size()) + " tokens)");
    }
  };
  auto offsets = [&](const TokenRange& r) {
    return "[" + std::to_string(note.tokens[r.begin].start) + "," +
           std::to_string(note.tokens[r.end - 1].end) + ")";
  };
  check(match.trigger, "trigger");
  for (const auto& c : match.conditions) check(c.range, "condition");
  if (match.uncertainty_source) check(*match.uncertainty_source, "modifier");

  std::ostringstream os;
  os << "rule " << match.rule_id << " -> " << match.category.Text() << "\n";
  os << "  trigger \"" << note.Text(match.trigger) << "\" (term \""
     << match.trigger_term << "\") at offsets " << offsets(match.trigger)
     << "\n";
  for (const auto& c : match.conditions) {
    os << "  requires \"" << c.term << "\" satisfied by \"" << note.Text(c.range)
       << "\" at offsets " << offsets(c.range) << " in sentence " << c.sentence
       << "\n";
  }
  if (match.uncertain) {
    if (match.uncertainty_source) {
      os << "  UNCERTAIN via '" << note.Text(*match.uncertainty_source)
         << "' at offset " << note.tokens[match.uncertainty_source->begin].start
         << "\n";
    } else {
      os << "  UNCERTAIN\n";
    }
  }
  return os.str();
}

}  // namespace auditcoder
