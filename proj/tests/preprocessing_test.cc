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

#include <random>
#include <set>

#include <gtest/gtest.h>

#include "auditcoder/preprocessing.h"
#include "test_support.h"

namespace auditcoder {
namespace {

using testing::Shipped;

const LexiconStore& Store() { return Shipped().pipeline.store(); }

AnnotatedNote Annotate(std::string_view raw, const LexiconStore& store = Store()) {
  return Preprocess(Prepare(raw, store), store);
}

std::vector<std::string> ClauseTexts(const AnnotatedNote& note) {
  std::vector<std::string> out;
  for (const auto& s : note.sentences) {
    for (const auto& c : s.clauses) out.push_back(note.Text(c));
  }
  return out;
}

TEST(Tokenize, MarkersAndShapes) {
  auto toks = Tokenize(PreparedText{"? SAH", {}});
  ASSERT_EQ(toks.size(), 2u);
  EXPECT_TRUE(toks[0].flags.is_uncertainty_marker);
  EXPECT_TRUE(Tokenize(PreparedText{"", {}}).empty());
  auto frac = Tokenize(PreparedText{"# R C7 superior articular facet", {}});
  ASSERT_EQ(frac.size(), 6u);
  EXPECT_TRUE(frac[0].flags.is_fracture_symbol);
  EXPECT_TRUE(frac[2].flags.has_digit);
  EXPECT_TRUE(frac[1].flags.all_caps);
}

std::string RandomText(std::mt19937& rng) {
  static const std::vector<std::string> pieces = {
      "no", "EDH", ",", ";", ".", "?", "#", "C5/6", "GCS", "3", "left",
      "frontal", "Dr.", "e.g.", "x.", "\n", "possible", "SAH", "NAD", "!",
      "(", ")", "L4-5", "10", "mg", "  ", "\t", "contusion", "PE", "chest"};
  std::string s;
  for (int i = 0, n = rng() % 20; i < n; ++i) {
    s += pieces[rng() % pieces.size()];
    s += (rng() % 5) ? " " : "";
  }
  return s;
}

TEST(Tokenize, OffsetsAreSoundOrderedAndDisjoint) {
  std::mt19937 rng(31);
  for (int n = 0; n < 1000; ++n) {
    PreparedText p = Prepare(RandomText(rng), Store());
    auto toks = Tokenize(p);
    size_t prev_end = 0;
    for (const auto& t : toks) {
      ASSERT_LT(t.start, t.end);
      ASSERT_LE(t.end, p.text.size());
      EXPECT_EQ(p.text.substr(t.start, t.end - t.start), t.text);
      EXPECT_GE(t.start, prev_end);
      prev_end = t.end;
    }
    // Everything between tokens is whitespace other than newlines.
    std::string rebuilt(p.text.size(), ' ');
    for (const auto& t : toks) rebuilt.replace(t.start, t.end - t.start, t.text);
    for (size_t i = 0; i < p.text.size(); ++i) {
      if (rebuilt[i] == ' ') {
        EXPECT_TRUE(IsSpace(p.text[i]) && p.text[i] != '\n');
      }
    }
  }
}

TEST(Sentences, ClausesPartitionContentTokens) {
  std::mt19937 rng(32);
  for (int n = 0; n < 1000; ++n) {
    AnnotatedNote note = Annotate(RandomText(rng));
    std::vector<int> covered(note.tokens.size(), 0);
    size_t prev_end = 0;
    for (const auto& s : note.sentences) {
      ASSERT_FALSE(s.range.empty());
      EXPECT_GE(s.range.begin, prev_end);
      prev_end = s.range.end;
      size_t clause_end = s.range.begin;
      for (const auto& c : s.clauses) {
        ASSERT_FALSE(c.empty());
        EXPECT_GE(c.begin, clause_end);
        EXPECT_LE(c.end, s.range.end);
        clause_end = c.end;
        for (size_t i = c.begin; i < c.end; ++i) ++covered[i];
      }
    }
    for (size_t i = 0; i < note.tokens.size(); ++i) {
      EXPECT_EQ(covered[i], note.tokens[i].delimiter ? 0 : 1)
          << "token " << i << " '" << note.tokens[i].text << "' in "
          << note.prepared.text;
    }
  }
}

TEST(Sentences, PedestrianNoteHasThreeClauses) {
  auto note = Annotate("Ped v car left frontal depressed fracture, GCS 3, ETOH");
  ASSERT_EQ(note.sentences.size(), 1u);
  EXPECT_EQ(ClauseTexts(note),
            (std::vector<std::string>{"Ped v car left frontal depressed fracture",
                                      "GCS 3", "ETOH"}));
}

TEST(Sentences, Boundaries) {
  EXPECT_EQ(Annotate("no EDH; small SDH").sentences.size(), 2u);
  EXPECT_EQ(Annotate("? SAH").sentences.size(), 1u);
  EXPECT_EQ(Annotate("SAH? maybe").sentences.size(), 1u);
  EXPECT_EQ(Annotate("grade B. fracture").sentences.size(), 1u);
  EXPECT_EQ(Annotate("MS. relapsing").sentences.size(), 1u);
  EXPECT_EQ(Annotate("fall. SDH").sentences.size(), 2u);
  EXPECT_EQ(Annotate("fall\nSDH").sentences.size(), 2u);
}

TEST(Modifiers, NegationAndUncertaintyScopes) {
  auto neg = Annotate("no EDH");
  ASSERT_EQ(neg.modifiers.size(), 1u);
  EXPECT_EQ(neg.modifiers[0].polarity, ModifierPolarity::kNegation);
  EXPECT_EQ(neg.Text(neg.modifiers[0].scope), "EDH");

  auto unc = Annotate("? SAH");
  ASSERT_EQ(unc.modifiers.size(), 1u);
  EXPECT_EQ(unc.modifiers[0].polarity, ModifierPolarity::kUncertainty);
  EXPECT_EQ(unc.Text(unc.modifiers[0].scope), "SAH");
}

TEST(Modifiers, RetrospectiveNad) {
  auto note = Annotate("frontal contusion, NAD");
  ASSERT_EQ(note.modifiers.size(), 1u);
  const auto& m = note.modifiers[0];
  EXPECT_TRUE(m.retrospective);
  EXPECT_TRUE(m.scope.empty());
  EXPECT_EQ(note.Text(m.retro_scope), "frontal contusion");
}

TEST(Modifiers, ScopesStayInsideClauseAndWindow) {
  std::mt19937 rng(33);
  for (int n = 0; n < 1000; ++n) {
    AnnotatedNote note = Annotate(RandomText(rng));
    for (const auto& m : note.modifiers) {
      if (m.scope.empty()) continue;
      EXPECT_GE(m.scope.begin, m.trigger.end);
      auto clause = note.ClauseOf(m.trigger.begin);
      ASSERT_TRUE(clause.has_value());
      EXPECT_LE(m.scope.end, clause->end) << note.prepared.text;
      EXPECT_LE(m.scope.size(), 6u);
    }
  }
}

TEST(Modifiers, WindowIsConfigurable) {
  PreprocessOptions narrow;
  narrow.modifier_window = 1;
  auto note = Preprocess(Prepare("no left frontal EDH", Store()), Store(), narrow);
  ASSERT_EQ(note.modifiers.size(), 1u);
  EXPECT_EQ(note.Text(note.modifiers[0].scope), "left");
}

TEST(Measurements, ScoresAndLevels) {
  auto gcs = Annotate("GCS 3");
  ASSERT_EQ(gcs.measurements.size(), 1u);
  EXPECT_EQ(gcs.measurements[0].kind, MeasurementKind::kGcsScore);
  EXPECT_EQ(gcs.measurements[0].value, 3);

  auto level = Annotate("C7");
  ASSERT_EQ(level.measurements.size(), 1u);
  EXPECT_EQ(level.measurements[0].kind, MeasurementKind::kVertebralLevel);
  EXPECT_EQ(level.measurements[0].descriptor, "C7");

  auto range = Annotate("C5/6");
  ASSERT_EQ(range.measurements.size(), 1u);
  EXPECT_EQ(range.measurements[0].descriptor, "C5-C6");

  auto bad = Annotate("GCS 20");
  EXPECT_TRUE(bad.measurements.empty());
  EXPECT_FALSE(bad.diagnostics.empty());
  EXPECT_TRUE(Annotate("C8").measurements.empty());
  EXPECT_TRUE(Annotate("L6").measurements.empty());
  EXPECT_EQ(Annotate("T12").measurements.size(), 1u);
}

TEST(Measurements, DoseAndSize) {
  auto note = Annotate("dexamethasone 10 mg, 1.5cm lesion");
  std::set<MeasurementKind> kinds;
  for (const auto& m : note.measurements) kinds.insert(m.kind);
  EXPECT_TRUE(kinds.count(MeasurementKind::kDose));
  EXPECT_TRUE(kinds.count(MeasurementKind::kSize));
}

// Cue counts computed independently of the disambiguator.
size_t CueCount(const AnnotatedNote& note, TokenRange r, const AbbreviationSense& s) {
  size_t n = 0;
  for (size_t i = r.begin; i < r.end; ++i) {
    for (const auto& cue : s.cues) n += note.tokens[i].norm == cue;
  }
  return n;
}

TEST(Abbreviations, SentenceCueWinsAndMatchesExhaustiveCount) {
  auto note = Annotate("PE on ctpa with dyspnoea. MS with confused orientation.");
  const LexiconEntry* pe = Store().FindSurface("PE", LexiconKind::kAbbreviation);
  const LexiconEntry* ms = Store().FindSurface("MS", LexiconKind::kAbbreviation);
  ASSERT_NE(pe, nullptr);
  ASSERT_NE(ms, nullptr);
  ASSERT_EQ(note.sense_resolutions.size(), 2u);
  for (const auto& [index, res] : note.sense_resolutions) {
    const LexiconEntry* e = note.tokens[index].norm == "pe" ? pe : ms;
    TokenRange sentence = note.sentences[*note.SentenceOf(index)].range;
    size_t best = 0;
    const AbbreviationSense* chosen = nullptr;
    for (const auto& s : e->senses) {
      size_t c = CueCount(note, sentence, s);
      if (c > best) best = c, chosen = &s;
    }
    ASSERT_NE(chosen, nullptr);
    EXPECT_EQ(res.expansion, chosen->expansion);
    EXPECT_EQ(res.basis, ResolutionBasis::kSentenceCue);
  }
}

TEST(Abbreviations, NoteCueThenFrequency) {
  auto note = Annotate("PE\nctpa arranged");
  ASSERT_EQ(note.sense_resolutions.size(), 1u);
  EXPECT_EQ(note.sense_resolutions.begin()->second.basis, ResolutionBasis::kNoteCue);
  EXPECT_EQ(note.sense_resolutions.begin()->second.expansion, "pulmonary embolism");

  auto bare = Annotate("MS");
  ASSERT_EQ(bare.sense_resolutions.size(), 1u);
  EXPECT_EQ(bare.sense_resolutions.begin()->second.basis, ResolutionBasis::kFrequency);
  EXPECT_EQ(bare.sense_resolutions.begin()->second.rank, 1);
}

TEST(Abbreviations, SingleSenseResolvesByFrequency) {
  auto store = ParseLexicon("TBI | | ABBREVIATION | traumatic brain injury @ @ 1\n");
  AnnotatedNote note = Preprocess(PreparedText{"TBI", {}}, store);
  ASSERT_EQ(note.sense_resolutions.size(), 1u);
  EXPECT_EQ(note.sense_resolutions.begin()->second.basis, ResolutionBasis::kFrequency);
}

TEST(Abbreviations, Deterministic) {
  std::mt19937 rng(34);
  for (int n = 0; n < 200; ++n) {
    std::string raw = RandomText(rng);
    auto a = Annotate(raw);
    auto b = Annotate(raw);
    ASSERT_EQ(a.sense_resolutions.size(), b.sense_resolutions.size());
    for (const auto& [k, v] : a.sense_resolutions) {
      EXPECT_EQ(b.sense_resolutions.at(k).expansion, v.expansion);
    }
  }
}

}  // namespace
}  // namespace auditcoder
