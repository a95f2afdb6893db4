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

// Static dictionaries and the expert-refined vocabulary shared by every
// pipeline stage.
//
// Lexicon files hold one entry per line:
//
//   surface | variant1, variant2 | KIND | payload
//
// Payload by kind:
//   ABBREVIATION             expansion @ cue cue ... @ rank [; next sense]
//   DOMAIN_CONCEPT           domain tag (anatomy, laterality, ...)
//   ADMISSION_CAUSE_PHRASE   optional cause label
//   ADMISSION_CAUSE_KEYWORD  optional cause label
//   MODIFIER                 NEGATION | UNCERTAINTY [, RETROSPECTIVE]
//   SPELL_TARGET             frequency rank (1 = most frequent)
//
// A '#' in column 1 starts a comment line.

#ifndef AUDITCODER_LEXICON_H_
#define AUDITCODER_LEXICON_H_

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "auditcoder/text.h"

namespace auditcoder {

class LexiconError : public Error {
 public:
  using Error::Error;
};

// A refinement that contradicts an existing entry.
class LexiconConflict : public LexiconError {
 public:
  using LexiconError::LexiconError;
};

enum class LexiconKind {
  kAbbreviation,
  kDomainConcept,
  kAdmissionCausePhrase,
  kAdmissionCauseKeyword,
  kModifier,
  kSpellTarget,
};

std::string_view KindName(LexiconKind kind);
std::optional<LexiconKind> ParseKind(std::string_view name);

enum class ModifierPolarity { kNegation, kUncertainty };

std::string_view PolarityName(ModifierPolarity polarity);

struct AbbreviationSense {
  std::string expansion;
  std::vector<std::string> cues;  // normalized single words
  int rank = 1;                   // lower is more frequent

  friend bool operator==(const AbbreviationSense&,
                         const AbbreviationSense&) = default;
};

struct LexiconEntry {
  std::string surface;
  std::vector<std::string> variants;
  LexiconKind kind = LexiconKind::kDomainConcept;
  std::vector<AbbreviationSense> senses;  // ABBREVIATION
  std::string label;                      // domain tag or cause label
  ModifierPolarity polarity = ModifierPolarity::kNegation;  // MODIFIER
  bool retrospective = false;                               // MODIFIER
  int rank = 0;                                             // SPELL_TARGET

  // Diagnostics only; not part of entry identity.
  std::string source;
  int line = 0;

  bool SameContent(const LexiconEntry& other) const;
};

// Parses one lexicon line. Throws LexiconError on malformed input.
LexiconEntry ParseLexiconLine(std::string_view line);
// Inverse of ParseLexiconLine.
std::string FormatLexiconLine(const LexiconEntry& entry);

// Immutable, indexed collection of entries. Copies are independent versions.
class LexiconStore {
 public:
  LexiconStore() = default;

  // Validates and indexes. Throws LexiconError on duplicate (kind, surface),
  // variant collisions within a kind, or invalid abbreviation senses.
  static LexiconStore FromEntries(std::vector<LexiconEntry> entries);

  // Case-insensitive match on surface or any variant.
  std::vector<const LexiconEntry*> Lookup(
      std::string_view term,
      std::optional<LexiconKind> kind = std::nullopt) const;

  // The entry of `kind` whose surface normalizes to `surface`.
  const LexiconEntry* FindSurface(std::string_view surface,
                                  LexiconKind kind) const;

  // Union of two stores; same validation as FromEntries.
  LexiconStore Merge(const LexiconStore& other) const;

  // True when the lowercase word occurs anywhere in the store: surfaces,
  // variants, expansions or cues.
  bool IsKnownWord(std::string_view lower_word) const;

  // Longest surface/variant in words.
  size_t max_phrase_words() const { return max_phrase_words_; }

  const std::vector<LexiconEntry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  // Content-derived label; equal contents give equal labels.
  const std::string& version() const { return version_; }

 private:
  void Build();

  std::vector<LexiconEntry> entries_;
  std::unordered_map<std::string, std::vector<size_t>> index_;
  std::set<std::string> known_words_;
  size_t max_phrase_words_ = 0;
  std::string version_ = "lex-empty";
};

// Loads a lexicon file. With `expected`, every line must declare that kind.
LexiconStore LoadLexicon(const std::string& path,
                         std::optional<LexiconKind> expected = std::nullopt);
LexiconStore ParseLexicon(std::string_view text, std::string_view source = "",
                          std::optional<LexiconKind> expected = std::nullopt);

// Loads and merges every *.lex file in a directory (sorted by name).
LexiconStore LoadLexiconDirectory(const std::string& dir);

struct Provenance {
  std::string reviewer;
  std::string timestamp;  // ISO-8601
};

// Append-only newline-delimited log of refinements.
class RefinementJournal {
 public:
  explicit RefinementJournal(std::string path) : path_(std::move(path)) {}
  void Append(std::string_view serialized_line) const;
  std::vector<std::string> ReadAll() const;
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

struct RefinementOutcome {
  LexiconStore store;
  bool changed = false;
  std::string action;  // "added", "merged" or "noop"
};

// Folds `entry` into the store as a new version. An entry whose (kind,
// surface) already exists contributes new variants and senses; re-adding
// identical content is a no-op. Contradictions (different domain tag,
// polarity, rank, or a variant owned by another entry) throw LexiconConflict.
// When `journal` is given the refinement is logged, no-ops included.
RefinementOutcome AppendRefinement(const LexiconStore& store,
                                   const LexiconEntry& entry,
                                   const Provenance& provenance,
                                   const RefinementJournal* journal = nullptr);

}  // namespace auditcoder

#endif  // AUDITCODER_LEXICON_H_
