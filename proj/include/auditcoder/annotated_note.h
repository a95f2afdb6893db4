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

// The per-note analysis record threaded through pre-processing, rule
// application and concept identification.

#ifndef AUDITCODER_ANNOTATED_NOTE_H_
#define AUDITCODER_ANNOTATED_NOTE_H_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "auditcoder/lexicon.h"
#include "auditcoder/preparation.h"

namespace auditcoder {

// Half-open token index range.
struct TokenRange {
  size_t begin = 0;
  size_t end = 0;

  bool empty() const { return begin >= end; }
  size_t size() const { return empty() ? 0 : end - begin; }
  bool Contains(size_t i) const { return i >= begin && i < end; }
  bool Overlaps(const TokenRange& o) const {
    return !empty() && !o.empty() && begin < o.end && o.begin < end;
  }
  friend bool operator==(const TokenRange&, const TokenRange&) = default;
};

struct TokenFlags {
  bool has_digit = false;
  bool all_caps = false;
  bool is_punct = false;
  bool is_uncertainty_marker = false;  // "?"
  bool is_fracture_symbol = false;     // "#"
  bool is_line_break = false;
};

struct Token {
  std::string text;
  size_t start = 0;  // byte offsets into the prepared text, end exclusive
  size_t end = 0;
  TokenFlags flags;
  std::string norm;        // lowercase text
  bool delimiter = false;  // punctuation that separates clauses/sentences
};

struct Sentence {
  TokenRange range;                 // first to last content token
  std::vector<TokenRange> clauses;  // delimiter-free runs
};

struct ModifierSpan {
  TokenRange trigger;
  ModifierPolarity polarity = ModifierPolarity::kNegation;
  TokenRange scope;  // forward scope, never past the clause end
  bool retrospective = false;
  TokenRange retro_scope;  // text the modifier refers back to
  std::string surface;
};

enum class MeasurementKind { kGcsScore, kVertebralLevel, kDose, kSize };

std::string_view MeasurementKindName(MeasurementKind kind);

struct MeasurementSpan {
  TokenRange range;
  MeasurementKind kind = MeasurementKind::kGcsScore;
  double value = 0;
  std::string descriptor;  // "C5-C6", "10 mg", "3"
};

enum class ResolutionBasis { kSentenceCue, kNoteCue, kFrequency };

std::string_view ResolutionBasisName(ResolutionBasis basis);

struct SenseResolution {
  std::string abbreviation;
  std::string expansion;
  int rank = 0;
  ResolutionBasis basis = ResolutionBasis::kFrequency;
};

enum class TagKind {
  kAdmissionCause,
  kAuditEvidence,
  kDomainConcept,
  kModifier,
  kMeasurement,
  kUnresolved,
};

std::string_view TagKindName(TagKind kind);

struct ConceptTag {
  TokenRange range;
  TagKind kind = TagKind::kUnresolved;
  std::string payload;  // cause label, category, domain label
};

struct AnnotatedNote {
  PreparedText prepared;
  std::vector<Token> tokens;
  std::vector<Sentence> sentences;
  std::vector<ModifierSpan> modifiers;
  std::vector<MeasurementSpan> measurements;
  std::map<size_t, SenseResolution> sense_resolutions;
  std::vector<ConceptTag> tags;
  std::vector<std::string> diagnostics;

  // Index of the sentence holding token i.
  std::optional<size_t> SentenceOf(size_t i) const;
  // The clause holding token i, if any.
  std::optional<TokenRange> ClauseOf(size_t i) const;
  // Token range of every token; convenience for note-wide scope.
  TokenRange All() const { return {0, tokens.size()}; }

  // Modifier whose scope (forward or retrospective) covers token i.
  const ModifierSpan* GoverningModifier(size_t i,
                                        ModifierPolarity polarity) const;

  // Text of a token range in the prepared text.
  std::string Text(const TokenRange& r) const;
};

}  // namespace auditcoder

#endif  // AUDITCODER_ANNOTATED_NOTE_H_
