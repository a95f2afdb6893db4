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

#include "auditcoder/generator.h"

#include <algorithm>
#include <chrono>
#include <random>
#include <set>

#include "auditcoder/delimited.h"

namespace auditcoder {

std::string_view PerturbationKindName(PerturbationKind kind) {
  switch (kind) {
    case PerturbationKind::kNone: return "NONE";
    case PerturbationKind::kMisspelling: return "MISSPELLING";
    case PerturbationKind::kReorder: return "REORDER";
  }
  return "NONE";
}

std::vector<AdmissionRecord> GeneratedCorpus::Admissions() const {
  std::vector<AdmissionRecord> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(r.record);
  return out;
}

std::string GeneratedCorpus::CorpusCsv() const {
  return FormatAdmissions(Admissions());
}

std::string GeneratedCorpus::GroundTruthCsv() const {
  std::string out = FormatRow({"admission_id", "category", "rule", "trigger",
                               "perturbation", "detail"},
                              ',') +
                    "\n";
  for (const auto& r : records) {
    out += FormatRow({r.record.admission_id, r.category.Text(), r.rule_id,
                      r.trigger, std::string(PerturbationKindName(r.perturbation)),
                      r.perturbation_detail},
                     ',') +
           "\n";
  }
  return out;
}

namespace {

using Rng = std::mt19937_64;

size_t Pick(Rng& rng, size_t n) { return static_cast<size_t>(rng() % n); }

template <typename T>
const T& PickFrom(Rng& rng, const std::vector<T>& v) {
  return v[Pick(rng, v.size())];
}

bool Producible(const RuleTerm& term) {
  return !term.IsClass() || term.measurement.has_value() || term.admission_cause;
}

bool Generatable(const Rule& rule) {
  if (rule.scope == RuleScope::kWord && !rule.required.empty()) return false;
  for (const auto& group : rule.required) {
    if (std::none_of(group.begin(), group.end(), Producible)) return false;
  }
  return true;
}

// The lexically smallest code the table maps exactly to `category`.
const DiagnosisCode* CodeFor(const CodeTable& codes, const AuditCategory& category) {
  for (const auto& [segments, entry] : codes.entries()) {
    if (entry.category == category) return &entry.code;
  }
  return nullptr;
}

std::string VertebralLevel(Rng& rng) {
  static const std::vector<std::pair<char, int>> kRegions = {
      {'C', 7}, {'T', 12}, {'L', 5}};
  const auto& [region, count] = PickFrom(rng, kRegions);
  return std::string(1, region) + std::to_string(1 + Pick(rng, count));
}

struct Vocabulary {
  std::vector<std::string> causes;
  std::vector<std::string> laterality;
  std::vector<std::string> anatomy;
  bool has_etoh = false;
};

Vocabulary CollectVocabulary(const LexiconStore& store) {
  Vocabulary v;
  for (const auto& e : store.entries()) {
    if (e.kind == LexiconKind::kAdmissionCausePhrase ||
        e.kind == LexiconKind::kAdmissionCauseKeyword) {
      v.causes.push_back(e.surface);
    } else if (e.kind == LexiconKind::kDomainConcept && e.label == "laterality") {
      v.laterality.push_back(e.surface);
    }
  }
  for (const char* a : {"frontal", "parietal", "temporal", "occipital"}) {
    if (store.FindSurface(a, LexiconKind::kDomainConcept)) v.anatomy.push_back(a);
  }
  v.has_etoh = store.FindSurface("etoh", LexiconKind::kDomainConcept) != nullptr;
  return v;
}

std::string RenderTerm(Rng& rng, const RuleTerm& term, const Vocabulary& vocab) {
  if (term.measurement) {
    switch (*term.measurement) {
      case MeasurementKind::kGcsScore:
        return "GCS " + std::to_string(3 + Pick(rng, 13));
      case MeasurementKind::kVertebralLevel:
        return VertebralLevel(rng);
      case MeasurementKind::kDose:
        return std::to_string(5 * (1 + Pick(rng, 20))) + " mg";
      case MeasurementKind::kSize:
        return std::to_string(5 + Pick(rng, 40)) + " mm";
    }
  }
  if (term.admission_cause) return PickFrom(rng, vocab.causes);
  return Join(term.words, " ");
}

std::set<std::string> WordsOf(const std::vector<RuleTerm>& terms) {
  std::set<std::string> out;
  for (const auto& t : terms) out.insert(t.words.begin(), t.words.end());
  return out;
}

bool Touches(const std::string& text, const std::set<std::string>& words) {
  for (const auto& w : SplitWords(Lowercase(text))) {
    if (words.count(w)) return true;
  }
  return false;
}

// Single-word triggers of unrelated rules, for "no <term>" distractors.
std::vector<std::string> NegatableTerms(const RuleSet& rules, const Rule& target) {
  std::set<std::string> target_words = WordsOf(target.triggers);
  for (const auto& g : target.required) {
    auto w = WordsOf(g);
    target_words.insert(w.begin(), w.end());
  }
  std::set<std::string> excluded = WordsOf(target.excludes);
  std::set<std::string> out;
  for (const auto& r : rules.rules()) {
    if (r.category.IsPrefixOf(target.category) ||
        target.category.IsPrefixOf(r.category)) {
      continue;
    }
    for (const auto& t : r.triggers) {
      if (t.words.size() != 1) continue;
      const std::string& w = t.words[0];
      if (w.size() < 3 || !IsAlpha(w[0])) continue;
      if (target_words.count(w) || excluded.count(w)) continue;
      out.insert(w);
    }
  }
  // Drop anything that also triggers a rule related to the target.
  for (const auto& r : rules.rules()) {
    if (!(r.category.IsPrefixOf(target.category) ||
          target.category.IsPrefixOf(r.category))) {
      continue;
    }
    for (const auto& w : WordsOf(r.triggers)) out.erase(w);
  }
  return {out.begin(), out.end()};
}

std::string Misspell(Rng& rng, const std::string& word) {
  for (int attempt = 0; attempt < 16; ++attempt) {
    std::string w = word;
    size_t pos = 1 + Pick(rng, w.size() - 1);
    switch (Pick(rng, 3)) {
      case 0:
        w.erase(pos, 1);
        break;
      case 1:
        if (pos + 1 < w.size()) {
          std::swap(w[pos], w[pos + 1]);
        } else {
          std::swap(w[pos - 1], w[pos]);
        }
        break;
      default:
        w[pos] = static_cast<char>('a' + Pick(rng, 26));
        break;
    }
    if (w != word) return w;
  }
  return word + word.back();
}

}  // namespace

std::vector<AuditCategory> GeneratableCategories(const RuleSet& rules,
                                                 const CodeTable& codes) {
  std::set<AuditCategory> out;
  for (const auto& r : rules.rules()) {
    if (Generatable(r) && CodeFor(codes, r.category)) out.insert(r.category);
  }
  return {out.begin(), out.end()};
}

GeneratedCorpus GenerateCorpus(const GeneratorOptions& options,
                               const LexiconStore& store, const RuleSet& rules,
                               const CodeTable& codes) {
  if (options.size == 0) throw Error("corpus size must be at least 1");
  if (options.noise_rate < 0 || options.noise_rate > 1) {
    throw Error("noise rate must lie in [0, 1]");
  }
  auto categories = GeneratableCategories(rules, codes);
  if (categories.empty()) throw Error("no generatable audit category");
  Vocabulary vocab = CollectVocabulary(store);

  Rng rng(options.seed);
  GeneratedCorpus corpus;
  std::vector<std::vector<std::string>> clauses_of;
  std::vector<size_t> main_index;
  for (size_t i = 0; i < options.size; ++i) {
    const AuditCategory& category = PickFrom(rng, categories);
    std::vector<const Rule*> candidates;
    for (const auto& r : rules.rules()) {
      if (r.category == category && Generatable(r)) candidates.push_back(&r);
    }
    const Rule& rule = *PickFrom(rng, candidates);
    const RuleTerm& trigger = PickFrom(rng, rule.triggers);
    std::set<std::string> excluded = WordsOf(rule.excludes);
    bool needs_cause = false;
    for (const auto& g : rule.required) {
      for (const auto& t : g) needs_cause |= t.admission_cause;
    }

    std::vector<std::string> clauses;
    if (!vocab.causes.empty() && (needs_cause || Pick(rng, 2) == 0)) {
      std::string cause = PickFrom(rng, vocab.causes);
      if (!Touches(cause, excluded)) clauses.push_back(cause);
    }
    std::string main;
    if (!vocab.laterality.empty() && Pick(rng, 2) == 0) {
      main += PickFrom(rng, vocab.laterality) + " ";
    }
    if (!rule.required.empty()) {
      for (const auto& g : rule.required) {
        std::vector<RuleTerm> usable;
        for (const auto& t : g) {
          if (Producible(t) && !t.admission_cause) usable.push_back(t);
        }
        if (usable.empty()) continue;  // satisfied by the cause clause
        main += RenderTerm(rng, PickFrom(rng, usable), vocab) + " ";
      }
    } else if (!vocab.anatomy.empty() && Pick(rng, 2) == 0) {
      main += PickFrom(rng, vocab.anatomy) + " ";
    }
    main += Join(trigger.words, " ");
    main_index.push_back(clauses.size());
    clauses.push_back(main);
    if (Pick(rng, 2) == 0) clauses.push_back("GCS " + std::to_string(3 + Pick(rng, 13)));
    if (vocab.has_etoh && Pick(rng, 3) == 0) clauses.push_back("ETOH");
    auto negatable = NegatableTerms(rules, rule);
    if (!negatable.empty() && Pick(rng, 3) == 0) {
      clauses.push_back("no " + PickFrom(rng, negatable));
    }

    GeneratedRecord g;
    char id[32];
    std::snprintf(id, sizeof(id), "SYN%06zu", i + 1);
    g.record.admission_id = id;
    using namespace std::chrono;
    auto day = sys_days(year(2008) / January / 1) + days(Pick(rng, 7 * 365));
    g.record.date = year_month_day(day);
    g.record.raw_date = FormatDate(*g.record.date);
    g.record.diagnosis = *CodeFor(codes, category);
    g.record.raw_diagnosis = g.record.diagnosis->Format();
    g.category = category;
    g.rule_id = rule.id;
    g.trigger = trigger.text;
    g.clean_note = Join(clauses, ", ");
    g.record.note = g.clean_note;
    corpus.records.push_back(std::move(g));
    clauses_of.push_back(std::move(clauses));
  }

  // Exactly round(rate * size) records receive one perturbation each.
  size_t noisy = static_cast<size_t>(options.noise_rate *
                                         static_cast<double>(options.size) +
                                     0.5);
  std::vector<size_t> order(options.size);
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  for (size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[Pick(rng, i)]);
  for (size_t n = 0; n < noisy; ++n) {
    GeneratedRecord& g = corpus.records[order[n]];
    auto& clauses = clauses_of[order[n]];
    bool reorder = clauses.size() >= 2 && Pick(rng, 2) == 0;
    if (reorder) {
      size_t a = Pick(rng, clauses.size());
      size_t b = (a + 1 + Pick(rng, clauses.size() - 1)) % clauses.size();
      std::swap(clauses[a], clauses[b]);
      g.perturbation = PerturbationKind::kReorder;
      g.perturbation_detail = "clauses " + std::to_string(std::min(a, b)) +
                              "<->" + std::to_string(std::max(a, b));
      g.record.note = Join(clauses, ", ");
      continue;
    }
    std::vector<std::string> words;
    for (const auto& w : SplitWords(g.trigger)) {
      if (w.size() >= 3 && std::all_of(w.begin(), w.end(), IsAlpha)) words.push_back(w);
    }
    if (words.empty()) {
      // Nothing to misspell (e.g. "#"): fall back to reordering when possible.
      if (clauses.size() < 2) continue;
      std::swap(clauses.front(), clauses.back());
      g.perturbation = PerturbationKind::kReorder;
      g.perturbation_detail = "clauses 0<->" + std::to_string(clauses.size() - 1);
      g.record.note = Join(clauses, ", ");
      continue;
    }
    std::string word = PickFrom(rng, words);
    std::string bad = Misspell(rng, word);
    // The trigger ends the main clause.
    size_t at = 0;
    for (size_t c = 0; c < main_index[order[n]]; ++c) at += clauses[c].size() + 2;
    at += clauses[main_index[order[n]]].size() - g.trigger.size();
    size_t within = 0;
    for (const auto& w : SplitWords(g.trigger)) {
      if (w == word) break;
      within += w.size() + 1;
    }
    g.record.note.replace(at + within, word.size(), bad);
    g.perturbation = PerturbationKind::kMisspelling;
    g.perturbation_detail = word + "->" + bad;
  }
  return corpus;
}

bool IsRecoverable(const GeneratedRecord& record, const LexiconStore& store,
                   const SpellingOptions& spelling) {
  if (record.perturbation == PerturbationKind::kNone) return true;
  auto tokens = [&](const std::string& note) {
    auto words = SplitWords(Prepare(note, store, spelling).text);
    for (auto& w : words) w = Lowercase(w);
    std::sort(words.begin(), words.end());
    return words;
  };
  return tokens(record.record.note) == tokens(record.clean_note);
}

size_t ReachableCount(const GeneratedCorpus& corpus, const LexiconStore& store,
                      const SpellingOptions& spelling) {
  size_t n = 0;
  for (const auto& r : corpus.records) n += IsRecoverable(r, store, spelling);
  return n;
}

}  // namespace auditcoder
