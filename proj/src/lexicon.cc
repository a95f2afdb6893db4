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

#include "auditcoder/lexicon.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>

#include "json.hpp"

namespace auditcoder {

namespace {

constexpr std::pair<LexiconKind, std::string_view> kKindNames[] = {
    {LexiconKind::kAbbreviation, "ABBREVIATION"},
    {LexiconKind::kDomainConcept, "DOMAIN_CONCEPT"},
    {LexiconKind::kAdmissionCausePhrase, "ADMISSION_CAUSE_PHRASE"},
    {LexiconKind::kAdmissionCauseKeyword, "ADMISSION_CAUSE_KEYWORD"},
    {LexiconKind::kModifier, "MODIFIER"},
    {LexiconKind::kSpellTarget, "SPELL_TARGET"},
};

std::string Where(const LexiconEntry& e) {
  if (e.source.empty() && e.line == 0) return "<refinement>";
  return (e.source.empty() ? std::string("line ") : e.source + ":") +
         std::to_string(e.line);
}

std::vector<std::string> NormalizedVariants(const LexiconEntry& e) {
  std::vector<std::string> out;
  for (const auto& v : e.variants) out.push_back(NormalizeTerm(v));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<AbbreviationSense> ParseSenses(std::string_view payload) {
  std::vector<AbbreviationSense> senses;
  auto blocks = Split(payload, ';');
  for (size_t i = 0; i < blocks.size(); ++i) {
    if (Trim(blocks[i]).empty()) continue;
    auto parts = Split(blocks[i], '@');
    if (parts.size() > 3) {
      throw LexiconError("malformed sense block '" +
                         std::string(Trim(blocks[i])) + "': too many '@'");
    }
    AbbreviationSense sense;
    sense.expansion = std::string(Trim(parts[0]));
    if (sense.expansion.empty()) {
      throw LexiconError("malformed sense block '" +
                         std::string(Trim(blocks[i])) + "': empty expansion");
    }
    if (parts.size() > 1) {
      for (auto& w : SplitWords(parts[1])) sense.cues.push_back(Lowercase(w));
    }
    sense.rank = static_cast<int>(senses.size()) + 1;
    if (parts.size() > 2) {
      long long r = 0;
      if (!ParseInt(Trim(parts[2]), &r) || r < 1) {
        throw LexiconError("malformed sense block '" +
                           std::string(Trim(blocks[i])) +
                           "': rank must be a positive integer");
      }
      sense.rank = static_cast<int>(r);
    }
    senses.push_back(std::move(sense));
  }
  return senses;
}

std::string FormatPayload(const LexiconEntry& e) {
  switch (e.kind) {
    case LexiconKind::kAbbreviation: {
      std::vector<std::string> blocks;
      for (const auto& s : e.senses) {
        blocks.push_back(s.expansion + " @ " + Join(s.cues, " ") + " @ " +
                         std::to_string(s.rank));
      }
      return Join(blocks, " ; ");
    }
    case LexiconKind::kModifier:
      return std::string(PolarityName(e.polarity)) +
             (e.retrospective ? ", RETROSPECTIVE" : "");
    case LexiconKind::kSpellTarget:
      return std::to_string(e.rank);
    default:
      return e.label;
  }
}

}  // namespace

std::string_view KindName(LexiconKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "?";
}

std::optional<LexiconKind> ParseKind(std::string_view name) {
  std::string upper = Uppercase(Trim(name));
  for (const auto& [k, n] : kKindNames) {
    if (n == upper) return k;
  }
  return std::nullopt;
}

std::string_view PolarityName(ModifierPolarity polarity) {
  return polarity == ModifierPolarity::kNegation ? "NEGATION" : "UNCERTAINTY";
}

bool LexiconEntry::SameContent(const LexiconEntry& other) const {
  return NormalizeTerm(surface) == NormalizeTerm(other.surface) &&
         kind == other.kind && NormalizedVariants(*this) ==
                                   NormalizedVariants(other) &&
         senses == other.senses && label == other.label &&
         polarity == other.polarity && retrospective == other.retrospective &&
         rank == other.rank;
}

LexiconEntry ParseLexiconLine(std::string_view line) {
  auto fields = Split(line, '|');
  if (fields.size() != 4) {
    throw LexiconError("expected 'surface | variants | KIND | payload', got " +
                       std::to_string(fields.size()) + " field(s)");
  }
  LexiconEntry e;
  e.surface = std::string(Trim(fields[0]));
  if (e.surface.empty()) throw LexiconError("empty surface");
  if (!Trim(fields[1]).empty()) {
    for (auto& v : Split(fields[1], ',')) {
      std::string_view t = Trim(v);
      if (t.empty()) throw LexiconError("empty variant for '" + e.surface + "'");
      e.variants.emplace_back(t);
    }
  }
  auto kind = ParseKind(fields[2]);
  if (!kind) {
    throw LexiconError("unknown lexicon kind '" + std::string(Trim(fields[2])) +
                       "'");
  }
  e.kind = *kind;
  std::string_view payload = Trim(fields[3]);
  switch (e.kind) {
    case LexiconKind::kAbbreviation:
      e.senses = ParseSenses(payload);
      break;
    case LexiconKind::kModifier: {
      auto parts = Split(payload, ',');
      std::string pol = Uppercase(Trim(parts[0]));
      if (pol == "NEGATION") {
        e.polarity = ModifierPolarity::kNegation;
      } else if (pol == "UNCERTAINTY") {
        e.polarity = ModifierPolarity::kUncertainty;
      } else {
        throw LexiconError("modifier '" + e.surface +
                           "' needs NEGATION or UNCERTAINTY");
      }
      for (size_t i = 1; i < parts.size(); ++i) {
        if (Uppercase(Trim(parts[i])) != "RETROSPECTIVE") {
          throw LexiconError("unknown modifier flag '" +
                             std::string(Trim(parts[i])) + "'");
        }
        e.retrospective = true;
      }
      break;
    }
    case LexiconKind::kSpellTarget: {
      long long r = 1;
      if (!payload.empty() && (!ParseInt(payload, &r) || r < 1)) {
        throw LexiconError("spelling rank for '" + e.surface +
                           "' must be a positive integer");
      }
      e.rank = static_cast<int>(r);
      break;
    }
    default:
      e.label = std::string(payload);
      break;
  }
  return e;
}

std::string FormatLexiconLine(const LexiconEntry& entry) {
  return entry.surface + " | " + Join(entry.variants, ", ") + " | " +
         std::string(KindName(entry.kind)) + " | " + FormatPayload(entry);
}

LexiconStore LexiconStore::FromEntries(std::vector<LexiconEntry> entries) {
  LexiconStore store;
  store.entries_ = std::move(entries);
  store.Build();
  return store;
}

void LexiconStore::Build() {
  // (kind, normalized term) -> (entry index, is_surface)
  std::map<std::pair<LexiconKind, std::string>, std::pair<size_t, bool>> owner;
  index_.clear();
  known_words_.clear();
  max_phrase_words_ = 0;
  for (size_t i = 0; i < entries_.size(); ++i) {
    const LexiconEntry& e = entries_[i];
    if (Trim(e.surface).empty()) {
      throw LexiconError(Where(e) + ": empty surface");
    }
    if (e.kind == LexiconKind::kAbbreviation) {
      if (e.senses.empty()) {
        throw LexiconError(Where(e) + ": abbreviation '" + e.surface +
                           "' has no sense");
      }
      std::set<int> ranks;
      for (const auto& s : e.senses) {
        if (!ranks.insert(s.rank).second) {
          throw LexiconError(Where(e) + ": abbreviation '" + e.surface +
                             "' repeats frequency rank " +
                             std::to_string(s.rank));
        }
      }
    }
    std::vector<std::pair<std::string, bool>> terms = {
        {NormalizeTerm(e.surface), true}};
    for (const auto& v : e.variants) {
      if (Trim(v).empty()) {
        throw LexiconError(Where(e) + ": empty variant for '" + e.surface + "'");
      }
      terms.emplace_back(NormalizeTerm(v), false);
    }
    std::set<std::string> own;
    for (const auto& [term, is_surface] : terms) {
      if (!own.insert(term).second) continue;
      auto key = std::make_pair(e.kind, term);
      auto it = owner.find(key);
      if (it != owner.end()) {
        const LexiconEntry& prev = entries_[it->second.first];
        if (is_surface && it->second.second) {
          throw LexiconError("duplicate " + std::string(KindName(e.kind)) +
                             " surface '" + e.surface + "' at " + Where(prev) +
                             " and " + Where(e));
        }
        throw LexiconError(std::string(KindName(e.kind)) + " term '" + term +
                           "' claimed by both '" + prev.surface + "' (" +
                           Where(prev) + ") and '" + e.surface + "' (" +
                           Where(e) + ")");
      }
      owner.emplace(key, std::make_pair(i, is_surface));
      index_[term].push_back(i);
      auto words = SplitWords(term);
      max_phrase_words_ = std::max(max_phrase_words_, words.size());
      for (auto& w : words) known_words_.insert(w);
    }
    for (const auto& s : e.senses) {
      for (auto& w : SplitWords(NormalizeTerm(s.expansion))) {
        known_words_.insert(w);
      }
      for (const auto& c : s.cues) known_words_.insert(c);
    }
  }

  std::vector<std::string> canonical;
  for (const auto& e : entries_) {
    LexiconEntry c = e;
    c.variants = NormalizedVariants(e);
    canonical.push_back(FormatLexiconLine(c));
  }
  std::sort(canonical.begin(), canonical.end());
  version_ = entries_.empty() ? "lex-empty"
                              : "lex-" + HexFingerprint(Join(canonical, "\n"));
}

std::vector<const LexiconEntry*> LexiconStore::Lookup(
    std::string_view term, std::optional<LexiconKind> kind) const {
  std::vector<const LexiconEntry*> out;
  auto it = index_.find(NormalizeTerm(term));
  if (it == index_.end()) return out;
  for (size_t i : it->second) {
    if (!kind || entries_[i].kind == *kind) out.push_back(&entries_[i]);
  }
  return out;
}

const LexiconEntry* LexiconStore::FindSurface(std::string_view surface,
                                              LexiconKind kind) const {
  std::string norm = NormalizeTerm(surface);
  for (const auto* e : Lookup(norm, kind)) {
    if (NormalizeTerm(e->surface) == norm) return e;
  }
  return nullptr;
}

LexiconStore LexiconStore::Merge(const LexiconStore& other) const {
  std::vector<LexiconEntry> all = entries_;
  all.insert(all.end(), other.entries_.begin(), other.entries_.end());
  return FromEntries(std::move(all));
}

bool LexiconStore::IsKnownWord(std::string_view lower_word) const {
  return known_words_.count(std::string(lower_word)) > 0;
}

LexiconStore ParseLexicon(std::string_view text, std::string_view source,
                          std::optional<LexiconKind> expected) {
  std::vector<LexiconEntry> entries;
  auto lines = Lines(text);
  for (size_t i = 0; i < lines.size(); ++i) {
    const std::string& line = lines[i];
    if (line.empty() || line[0] == '#' || Trim(line).empty()) continue;
    std::string where =
        (source.empty() ? std::string("line ") : std::string(source) + ":") +
        std::to_string(i + 1);
    LexiconEntry e;
    try {
      e = ParseLexiconLine(line);
    } catch (const LexiconError& err) {
      throw LexiconError(where + ": " + err.what());
    }
    if (expected && e.kind != *expected) {
      throw LexiconError(where + ": expected " +
                         std::string(KindName(*expected)) + " entry, found " +
                         std::string(KindName(e.kind)));
    }
    e.source = std::string(source);
    e.line = static_cast<int>(i + 1);
    entries.push_back(std::move(e));
  }
  return LexiconStore::FromEntries(std::move(entries));
}

LexiconStore LoadLexicon(const std::string& path,
                         std::optional<LexiconKind> expected) {
  return ParseLexicon(ReadFile(path), path, expected);
}

LexiconStore LoadLexiconDirectory(const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) {
    throw IoError("lexicon directory not found: " + dir);
  }
  std::vector<std::string> files;
  for (const auto& de : fs::directory_iterator(dir)) {
    if (de.is_regular_file() && de.path().extension() == ".lex") {
      files.push_back(de.path().string());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<LexiconEntry> all;
  for (const auto& f : files) {
    auto part = LoadLexicon(f);
    all.insert(all.end(), part.entries().begin(), part.entries().end());
  }
  return LexiconStore::FromEntries(std::move(all));
}

void RefinementJournal::Append(std::string_view serialized_line) const {
  std::ofstream out(path_, std::ios::app | std::ios::binary);
  if (!out) throw IoError("cannot open journal: " + path_);
  out << serialized_line << '\n';
  out.flush();
  if (!out) throw IoError("journal write failed: " + path_);
}

std::vector<std::string> RefinementJournal::ReadAll() const {
  std::error_code ec;
  if (!std::filesystem::exists(path_, ec)) return {};
  return Lines(ReadFile(path_));
}

RefinementOutcome AppendRefinement(const LexiconStore& store,
                                   const LexiconEntry& entry,
                                   const Provenance& provenance,
                                   const RefinementJournal* journal) {
  std::vector<LexiconEntry> entries = store.entries();
  RefinementOutcome outcome;
  const LexiconEntry* existing = store.FindSurface(entry.surface, entry.kind);
  if (!existing) {
    LexiconEntry fresh = entry;
    fresh.source.clear();
    fresh.line = 0;
    entries.push_back(std::move(fresh));
    outcome.action = "added";
  } else {
    size_t idx = static_cast<size_t>(existing - store.entries().data());
    LexiconEntry merged = entries[idx];
    auto conflict = [&](const std::string& what) {
      throw LexiconConflict("refinement of " +
                            std::string(KindName(entry.kind)) + " '" +
                            entry.surface + "' conflicts with " +
                            Where(*existing) + ": " + what);
    };
    if (entry.kind == LexiconKind::kDomainConcept ||
        entry.kind == LexiconKind::kAdmissionCausePhrase ||
        entry.kind == LexiconKind::kAdmissionCauseKeyword) {
      if (!entry.label.empty() && entry.label != merged.label) {
        conflict("label '" + entry.label + "' vs '" + merged.label + "'");
      }
    }
    if (entry.kind == LexiconKind::kModifier &&
        (entry.polarity != merged.polarity ||
         entry.retrospective != merged.retrospective)) {
      conflict("modifier polarity differs");
    }
    if (entry.kind == LexiconKind::kSpellTarget && entry.rank != merged.rank) {
      conflict("spelling rank " + std::to_string(entry.rank) + " vs " +
               std::to_string(merged.rank));
    }
    auto have = NormalizedVariants(merged);
    for (const auto& v : entry.variants) {
      std::string n = NormalizeTerm(v);
      if (n == NormalizeTerm(merged.surface)) continue;
      if (!std::binary_search(have.begin(), have.end(), n)) {
        merged.variants.push_back(std::string(Trim(v)));
      }
    }
    for (const auto& s : entry.senses) {
      auto same = std::find_if(
          merged.senses.begin(), merged.senses.end(), [&](const auto& m) {
            return NormalizeTerm(m.expansion) == NormalizeTerm(s.expansion);
          });
      if (same != merged.senses.end()) {
        if (same->rank != s.rank) {
          conflict("sense '" + s.expansion + "' rank " +
                   std::to_string(s.rank) + " vs " + std::to_string(same->rank));
        }
        for (const auto& c : s.cues) {
          if (std::find(same->cues.begin(), same->cues.end(), c) ==
              same->cues.end()) {
            same->cues.push_back(c);
          }
        }
      } else {
        for (const auto& m : merged.senses) {
          if (m.rank == s.rank) {
            conflict("frequency rank " + std::to_string(s.rank) +
                     " already used by sense '" + m.expansion + "'");
          }
        }
        merged.senses.push_back(s);
      }
    }
    outcome.changed = !merged.SameContent(entries[idx]);
    outcome.action = outcome.changed ? "merged" : "noop";
    entries[idx] = std::move(merged);
  }

  if (outcome.action == "noop") {
    outcome.store = store;
  } else {
    outcome.changed = true;
    try {
      outcome.store = LexiconStore::FromEntries(std::move(entries));
    } catch (const LexiconConflict&) {
      throw;
    } catch (const LexiconError& e) {
      throw LexiconConflict(e.what());
    }
  }

  if (journal) {
    nlohmann::json j = {{"type", "lexicon"},
                        {"action", outcome.action},
                        {"entry", FormatLexiconLine(entry)},
                        {"reviewer", provenance.reviewer},
                        {"timestamp", provenance.timestamp},
                        {"version", outcome.store.version()}};
    journal->Append(j.dump());
  }
  return outcome;
}

}  // namespace auditcoder
