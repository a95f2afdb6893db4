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

// Second pipeline stage: tokenization, sentence and clause structure,
// modifier and measurement identification, abbreviation disambiguation.

#ifndef AUDITCODER_PREPROCESSING_H_
#define AUDITCODER_PREPROCESSING_H_

#include <vector>

#include "auditcoder/annotated_note.h"
#include "auditcoder/lexicon.h"

namespace auditcoder {

struct PreprocessOptions {
  // Forward reach of a negation/uncertainty trigger, in tokens (1-20).
  size_t modifier_window = 6;
};

// Whitespace-delimited tokens; each '\n' is a token of its own.
std::vector<Token> Tokenize(const PreparedText& prepared);

// Sentences end at line breaks, ';', '!' and at '.' unless it follows a known
// abbreviation, a single letter or a dotted token. '?' never ends a sentence.
// Other punctuation separates clauses.
std::vector<Sentence> SegmentSentences(const std::vector<Token>& tokens,
                                       const LexiconStore* store = nullptr);

// Negation/uncertainty triggers from the MODIFIER lexicon plus the '?'
// marker. Forward scopes stop at the clause end, the window limit or the next
// trigger; '?' reaches the clause end. Retrospective triggers (NAD) refer to
// the earlier part of their clause, else the previous clause, else the
// previous sentence.
std::vector<ModifierSpan> IdentifyModifiers(const AnnotatedNote& note,
                                            const LexiconStore& store,
                                            const PreprocessOptions& options = {});

// GCS scores, vertebral levels and ranges, doses and sizes. Out-of-range values
// produce a diagnostic instead of a span.
std::vector<MeasurementSpan> IdentifyMeasurements(
    const AnnotatedNote& note, std::vector<std::string>* diagnostics = nullptr);

// Picks a sense for every token that matches an ABBREVIATION entry: most cues
// in the sentence, then most cues in the note, then best frequency rank.
std::map<size_t, SenseResolution> DisambiguateAbbreviations(
    const AnnotatedNote& note, const LexiconStore& store);

// Runs all of the above over prepared text.
AnnotatedNote Preprocess(PreparedText prepared, const LexiconStore& store,
                         const PreprocessOptions& options = {});

}  // namespace auditcoder

#endif  // AUDITCODER_PREPROCESSING_H_
