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

#include "auditcoder/preprocessing.h"

#include <algorithm>
#include <regex>

namespace auditcoder {

std::string_view MeasurementKindName(MeasurementKind kind) {
  switch (kind) {
    case MeasurementKind::kGcsScore:
      return "GCS_SCORE";
    case MeasurementKind::kVertebralLevel:
      return "VERTEBRAL_LEVEL";
    case MeasurementKind::kDose:
      return "DOSE";
    case MeasurementKind::kSize:
      return "SIZE";
  }
  return "?";
}

std::string_view ResolutionBasisName(ResolutionBasis basis) {
  switch (basis) {
    case ResolutionBasis::kSentenceCue:
      return "SENTENCE_CUE";
    case ResolutionBasis::kNoteCue:
      return "NOTE_CUE";
    case ResolutionBasis::kFrequency:
      return "FREQUENCY";
  }
  return "?";
}

std::string_view TagKindName(TagKind kind) {
  switch (kind) {
    case TagKind::kAdmissionCause:
      return "ADMISSION_CAUSE";
    case TagKind::kAuditEvidence:
      return "AUDIT_EVIDENCE";
    case TagKind::kDomainConcept:
      return "DOMAIN_CONCEPT";
    case TagKind::kModifier:
      return "MODIFIER";
    case TagKind::kMeasurement:
      return "MEASUREMENT";
    case TagKind::kUnresolved:
      return "UNRESOLVED";
  }
  return "?";
}

std::optional<size_t> AnnotatedNote::SentenceOf(size_t i) const {
  for (size_t s = 0; s < sentences.size(); ++s) {
    if (sentences[s].range.Contains(i)) return s;
  }
  return std::nullopt;
}

std::optional<TokenRange> AnnotatedNote::ClauseOf(size_t i) const {
  auto s = SentenceOf(i);
  if (!s) return std::nullopt;
  for (const auto& c : sentences[*s].clauses) {
    if (c.Contains(i)) return c;
  }
  return std::nullopt;
}

const ModifierSpan* AnnotatedNote::GoverningModifier(
    size_t i, ModifierPolarity polarity) const {
  for (const auto& m : modifiers) {
    if (m.polarity != polarity) continue;
    if (m.scope.Contains(i) || m.retro_scope.Contains(i)) return &m;
  }
  return nullptr;
}

std::string AnnotatedNote::Text(const TokenRange& r) const {
  if (r.empty() || r.end > tokens.size()) return "";
  size_t b = tokens[r.begin].start, e = tokens[r.end - 1].end;
  return prepared.text.substr(b, e - b);
}

std::vector<Token> Tokenize(const PreparedText& prepared) {
  const std::string& text = prepared.text;
  std::vector<Token> tokens;
  auto push = [&](size_t b, size_t e) {
    Token t;
    t.start = b;
    t.end = e;
    t.text = text.substr(b, e - b);
    t.norm = Lowercase(t.text);
    bool any_alnum = false, any_lower = false, any_alpha = false;
    for (char c : t.text) {
      if (IsDigit(c)) t.flags.has_digit = true;
      if (IsAlnum(c)) any_alnum = true;
      if (IsLower(c)) any_lower = true;
      if (IsAlpha(c)) any_alpha = true;
    }
    t.flags.all_caps = any_alpha && !any_lower;
    t.flags.is_line_break = t.text == "\n";
    t.flags.is_punct = !any_alnum && !t.flags.is_line_break &&
                       static_cast<unsigned char>(t.text[0]) < 0x80;
    t.flags.is_uncertainty_marker = t.text == "?";
    t.flags.is_fracture_symbol = t.text == "#";
    t.delimiter = t.flags.is_line_break ||
                  (t.flags.is_punct && !t.flags.is_uncertainty_marker &&
                   !t.flags.is_fracture_symbol);
    tokens.push_back(std::move(t));
  };
  size_t i = 0;
  while (i < text.size()) {
    if (text[i] == '\n') {
      push(i, i + 1);
      ++i;
      continue;
    }
    if (IsSpace(text[i])) {
      ++i;
      continue;
    }
    size_t b = i;
    while (i < text.size() && !IsSpace(text[i])) ++i;
    push(b, i);
  }
  return tokens;
}

namespace {

bool EndsSentence(const std::vector<Token>& tokens, size_t i,
                  const LexiconStore* store) {
  const Token& t = tokens[i];
  if (t.flags.is_line_break || t.text == ";" || t.text == "!") return true;
  if (t.text != ".") return false;
  if (i == 0) return true;
  const Token& prev = tokens[i - 1];
  if (prev.delimiter) return true;
  if (prev.text.size() == 1 && IsAlpha(prev.text[0])) return false;
  if (prev.text.find('.') != std::string::npos) return false;
  if (store && !store->Lookup(prev.norm, LexiconKind::kAbbreviation).empty()) {
    return false;
  }
  return true;
}

}  // namespace

std::vector<Sentence> SegmentSentences(const std::vector<Token>& tokens,
                                       const LexiconStore* store) {
  std::vector<Sentence> sentences;
  Sentence current;
  bool open_sentence = false;
  bool open_clause = false;
  auto close_clause = [&] {
    open_clause = false;
  };
  auto close_sentence = [&] {
    close_clause();
    if (open_sentence) sentences.push_back(std::move(current));
    current = Sentence{};
    open_sentence = false;
  };
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].delimiter) {
      if (EndsSentence(tokens, i, store)) {
        close_sentence();
      } else {
        close_clause();
      }
      continue;
    }
    if (!open_sentence) {
      current.range = {i, i + 1};
      open_sentence = true;
    }
    current.range.end = i + 1;
    if (!open_clause) {
      current.clauses.push_back({i, i + 1});
      open_clause = true;
    }
    current.clauses.back().end = i + 1;
  }
  close_sentence();
  return sentences;
}

std::vector<ModifierSpan> IdentifyModifiers(const AnnotatedNote& note,
                                            const LexiconStore& store,
                                            const PreprocessOptions& options) {
  std::vector<ModifierSpan> out;
  const auto& tokens = note.tokens;
  size_t max_words = std::max<size_t>(store.max_phrase_words(), 1);
  for (size_t s = 0; s < note.sentences.size(); ++s) {
    const Sentence& sentence = note.sentences[s];
    for (size_t c = 0; c < sentence.clauses.size(); ++c) {
      const TokenRange clause = sentence.clauses[c];
      std::vector<ModifierSpan> found;
      size_t i = clause.begin;
      while (i < clause.end) {
        if (tokens[i].flags.is_uncertainty_marker) {
          ModifierSpan m;
          m.trigger = {i, i + 1};
          m.polarity = ModifierPolarity::kUncertainty;
          m.surface = "?";
          found.push_back(m);
          ++i;
          continue;
        }
        size_t matched = 0;
        size_t limit = std::min(max_words, clause.end - i);
        for (size_t len = limit; len >= 1 && !matched; --len) {
          std::string term;
          for (size_t k = i; k < i + len; ++k) {
            if (k > i) term.push_back(' ');
            term += tokens[k].norm;
          }
          auto hits = store.Lookup(term, LexiconKind::kModifier);
          if (hits.empty()) continue;
          const LexiconEntry* e = hits.front();
          ModifierSpan m;
          m.trigger = {i, i + len};
          m.polarity = e->polarity;
          m.retrospective = e->retrospective;
          m.surface = e->surface;
          found.push_back(m);
          matched = len;
        }
        i += matched ? matched : 1;
      }
      for (size_t k = 0; k < found.size(); ++k) {
        ModifierSpan& m = found[k];
        size_t stop = k + 1 < found.size() ? found[k + 1].trigger.begin
                                           : clause.end;
        if (m.retrospective) {
          m.scope = {m.trigger.end, m.trigger.end};
          if (m.trigger.begin > clause.begin) {
            m.retro_scope = {clause.begin, m.trigger.begin};
          } else if (c > 0) {
            m.retro_scope = sentence.clauses[c - 1];
          } else if (s > 0) {
            m.retro_scope = note.sentences[s - 1].range;
          }
          continue;
        }
        size_t end = stop;
        if (!tokens[m.trigger.begin].flags.is_uncertainty_marker) {
          end = std::min(end, m.trigger.end + options.modifier_window);
        }
        m.scope = {m.trigger.end, std::max(end, m.trigger.end)};
      }
      out.insert(out.end(), found.begin(), found.end());
    }
  }
  return out;
}

namespace {

struct LevelBounds {
  char region;
  int max;
};
constexpr LevelBounds kRegions[] = {{'C', 7}, {'T', 12}, {'L', 5}, {'S', 5}};

int RegionMax(char region) {
  for (const auto& r : kRegions) {
    if (r.region == region) return r.max;
  }
  return 0;
}

bool IsUnit(const std::string& u, const char* const* units) {
  for (const char* const* p = units; *p; ++p) {
    if (u == *p) return true;
  }
  return false;
}

constexpr const char* kDoseUnits[] = {"mg", "g", "mcg", "ug", "ml", "units",
                                      "iu", nullptr};
constexpr const char* kSizeUnits[] = {"mm", "cm", nullptr};

}  // namespace

std::vector<MeasurementSpan> IdentifyMeasurements(
    const AnnotatedNote& note, std::vector<std::string>* diagnostics) {
  static const std::regex kLevel(
      R"(^([CTLScTls])(\d{1,2})(?:[-/]([CTLScTls])?(\d{1,2}))?$)");
  static const std::regex kNumberUnit(R"(^(\d+(?:\.\d+)?)([a-zA-Z]+)$)");
  static const std::regex kNumber(R"(^\d+(?:\.\d+)?$)");
  static const std::regex kGcsValue(R"(^(\d{1,2})(?:/15)?$)");

  auto warn = [&](const std::string& msg) {
    if (diagnostics) diagnostics->push_back(msg);
  };
  std::vector<MeasurementSpan> out;
  const auto& tokens = note.tokens;
  size_t i = 0;
  while (i < tokens.size()) {
    const Token& t = tokens[i];
    std::smatch m;
    if (t.norm == "gcs") {
      size_t j = i + 1;
      if (j < tokens.size() && (tokens[j].text == ":" || tokens[j].text == "=")) {
        ++j;
      }
      if (j < tokens.size() && std::regex_match(tokens[j].text, m, kGcsValue)) {
        long long v = 0;
        ParseInt(m[1].str(), &v);
        if (v >= 3 && v <= 15) {
          out.push_back({{i, j + 1},
                         MeasurementKind::kGcsScore,
                         static_cast<double>(v),
                         std::to_string(v)});
        } else {
          warn("GCS value " + std::to_string(v) + " at offset " +
               std::to_string(tokens[j].start) + " outside [3,15]; ignored");
        }
        i = j + 1;
        continue;
      }
    }
    if (std::regex_match(t.text, m, kLevel)) {
      char r1 = ToUpper(m[1].str()[0]);
      long long l1 = 0, l2 = 0;
      ParseInt(m[2].str(), &l1);
      char r2 = m[3].matched ? ToUpper(m[3].str()[0]) : r1;
      bool range = m[4].matched;
      if (range) ParseInt(m[4].str(), &l2);
      bool ok = l1 >= 1 && l1 <= RegionMax(r1) &&
                (!range || (l2 >= 1 && l2 <= RegionMax(r2)));
      if (ok) {
        std::string desc = std::string(1, r1) + std::to_string(l1);
        if (range) desc += "-" + std::string(1, r2) + std::to_string(l2);
        out.push_back({{i, i + 1},
                       MeasurementKind::kVertebralLevel,
                       static_cast<double>(l1),
                       desc});
      } else {
        warn("vertebral level '" + t.text + "' at offset " +
             std::to_string(t.start) + " out of bounds; ignored");
      }
      ++i;
      continue;
    }
    if (std::regex_match(t.text, m, kNumberUnit)) {
      std::string unit = Lowercase(m[2].str());
      double v = 0;
      ParseDouble(m[1].str(), &v);
      if (IsUnit(unit, kDoseUnits)) {
        out.push_back({{i, i + 1}, MeasurementKind::kDose, v,
                       m[1].str() + " " + unit});
      } else if (IsUnit(unit, kSizeUnits)) {
        out.push_back({{i, i + 1}, MeasurementKind::kSize, v,
                       m[1].str() + " " + unit});
      }
      ++i;
      continue;
    }
    if (std::regex_match(t.text, kNumber) && i + 1 < tokens.size()) {
      const std::string& unit = tokens[i + 1].norm;
      double v = 0;
      ParseDouble(t.text, &v);
      if (IsUnit(unit, kDoseUnits)) {
        out.push_back({{i, i + 2}, MeasurementKind::kDose, v,
                       t.text + " " + unit});
        i += 2;
        continue;
      }
      if (IsUnit(unit, kSizeUnits)) {
        out.push_back({{i, i + 2}, MeasurementKind::kSize, v,
                       t.text + " " + unit});
        i += 2;
        continue;
      }
    }
    ++i;
  }
  return out;
}

std::map<size_t, SenseResolution> DisambiguateAbbreviations(
    const AnnotatedNote& note, const LexiconStore& store) {
  std::map<size_t, SenseResolution> out;
  const auto& tokens = note.tokens;
  auto count_cues = [&](const AbbreviationSense& sense, TokenRange range,
                        size_t self) {
    int n = 0;
    for (size_t k = range.begin; k < range.end; ++k) {
      if (k == self || tokens[k].delimiter) continue;
      if (std::find(sense.cues.begin(), sense.cues.end(), tokens[k].norm) !=
          sense.cues.end()) {
        ++n;
      }
    }
    return n;
  };
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].delimiter) continue;
    auto hits = store.Lookup(tokens[i].norm, LexiconKind::kAbbreviation);
    if (hits.empty()) continue;
    const LexiconEntry& entry = *hits.front();
    std::vector<const AbbreviationSense*> pool;
    for (const auto& s : entry.senses) pool.push_back(&s);

    ResolutionBasis basis = ResolutionBasis::kFrequency;
    // Keeps the senses with the highest cue count in `range`; true if unique.
    auto narrow = [&](TokenRange range) {
      std::vector<int> counts;
      for (const auto* s : pool) counts.push_back(count_cues(*s, range, i));
      int best = *std::max_element(counts.begin(), counts.end());
      std::vector<const AbbreviationSense*> kept;
      for (size_t k = 0; k < pool.size(); ++k) {
        if (counts[k] == best) kept.push_back(pool[k]);
      }
      bool decided = best > 0 && kept.size() == 1;
      pool = std::move(kept);
      return decided;
    };
    if (pool.size() > 1) {
      auto s = note.SentenceOf(i);
      TokenRange sentence = s ? note.sentences[*s].range : TokenRange{i, i + 1};
      if (narrow(sentence)) {
        basis = ResolutionBasis::kSentenceCue;
      } else if (narrow(note.All())) {
        basis = ResolutionBasis::kNoteCue;
      }
    }
    const AbbreviationSense* pick = *std::min_element(
        pool.begin(), pool.end(),
        [](const auto* a, const auto* b) { return a->rank < b->rank; });
    out[i] = {entry.surface, pick->expansion, pick->rank, basis};
  }
  return out;
}

AnnotatedNote Preprocess(PreparedText prepared, const LexiconStore& store,
                         const PreprocessOptions& options) {
  AnnotatedNote note;
  note.prepared = std::move(prepared);
  note.tokens = Tokenize(note.prepared);
  note.sentences = SegmentSentences(note.tokens, &store);
  note.modifiers = IdentifyModifiers(note, store, options);
  note.measurements = IdentifyMeasurements(note, &note.diagnostics);
  note.sense_resolutions = DisambiguateAbbreviations(note, store);
  return note;
}

}  // namespace auditcoder
