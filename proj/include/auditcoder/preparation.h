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

// First pipeline stage: makes raw note text ready for tokenization.
//
// Each pass returns the text it produced plus a log of the edits it made.
// Edit offsets refer to the input of the pass that produced them (`pass`), so
// ReplayEdits() over the raw text reproduces the final text exactly.

#ifndef AUDITCODER_PREPARATION_H_
#define AUDITCODER_PREPARATION_H_

#include <string>
#include <string_view>
#include <vector>

#include "auditcoder/lexicon.h"

namespace auditcoder {

enum class EditKind { kBoundary, kSpell, kRegularize, kExpand };

std::string_view EditKindName(EditKind kind);

struct Edit {
  size_t start = 0;  // [start, end) in the pass input
  size_t end = 0;
  std::string replacement;
  EditKind kind = EditKind::kBoundary;
  int pass = 0;
  std::string original;

  friend bool operator==(const Edit&, const Edit&) = default;
};

struct PreparedText {
  std::string text;
  std::vector<Edit> edits;
};

struct SpellingOptions {
  size_t min_length = 5;   // shorter tokens are never corrected
  size_t long_length = 8;  // from this length on, distance 2 is allowed
  int short_distance = 1;
  int long_distance = 2;
};

// Isolates punctuation glued to words, splits a leading '?' and any '#' into
// their own tokens, and splits "GCS3" into "GCS 3". Vertebral levels (C7,
// L4-5, C5/6) and decimals are left intact.
PreparedText FixBoundaries(std::string_view raw);

// Rewrites unambiguous variants to their canonical surface and expands
// single-sense abbreviations. Multi-sense abbreviations are left in place.
PreparedText RegularizeKeywords(const PreparedText& input,
                                const LexiconStore& store);

// Replaces unknown lowercase alphabetic tokens with the nearest spelling
// target (Damerau-Levenshtein), see SpellingOptions.
PreparedText CorrectSpelling(const PreparedText& input,
                             const LexiconStore& store,
                             const SpellingOptions& options = {});

// FixBoundaries -> RegularizeKeywords -> CorrectSpelling. When spelling makes
// a change, regularization and spelling run again so the result is a fixed
// point of Prepare().
PreparedText Prepare(std::string_view raw, const LexiconStore& store,
                     const SpellingOptions& options = {});

// Applies an edit log to the raw text pass by pass.
std::string ReplayEdits(std::string_view raw, const std::vector<Edit>& edits);

// Unrestricted Damerau-Levenshtein distance (transpositions count as one).
int DamerauLevenshtein(std::string_view a, std::string_view b);

}  // namespace auditcoder

#endif  // AUDITCODER_PREPARATION_H_
