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

#include <map>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "auditcoder/preparation.h"
#include "test_support.h"

namespace auditcoder {
namespace {

using testing::Shipped;

const LexiconStore& Store() { return Shipped().pipeline.store(); }

// Every string one insertion, deletion, substitution or adjacent
// transposition away from `w`.
std::set<std::string> Neighbours(const std::string& w) {
  std::set<std::string> out;
  const std::string letters = "abcdefghijklmnopqrstuvwxyz";
  for (size_t i = 0; i <= w.size(); ++i) {
    for (char c : letters) out.insert(w.substr(0, i) + c + w.substr(i));
  }
  for (size_t i = 0; i < w.size(); ++i) {
    out.insert(w.substr(0, i) + w.substr(i + 1));
    for (char c : letters) {
      std::string s = w;
      s[i] = c;
      out.insert(s);
    }
    if (i + 1 < w.size()) {
      std::string s = w;
      std::swap(s[i], s[i + 1]);
      out.insert(s);
    }
  }
  out.erase(w);
  return out;
}

std::vector<std::string> SpellTargets(const LexiconStore& store) {
  std::vector<std::string> out;
  for (const auto& e : store.entries()) {
    if (e.kind == LexiconKind::kSpellTarget) out.push_back(e.surface);
  }
  return out;
}

// Expected correction by brute force over the neighbourhoods.
std::string OracleCorrection(const std::string& w, const LexiconStore& store) {
  if (w.size() < 5 || store.IsKnownWord(w)) return w;
  auto targets = SpellTargets(store);
  auto near = Neighbours(w);
  std::vector<std::string> best;
  for (const auto& t : targets) {
    if (near.count(t)) best.push_back(t);
  }
  if (best.empty() && w.size() >= 8) {
    static std::map<std::string, std::set<std::string>> cache;
    for (const auto& t : targets) {
      auto it = cache.find(t);
      if (it == cache.end()) it = cache.emplace(t, Neighbours(t)).first;
      const auto& tn = it->second;
      for (const auto& n : near) {
        if (tn.count(n)) {
          best.push_back(t);
          break;
        }
      }
    }
  }
  if (best.size() != 1) return w;  // shipped targets all share rank 1
  return best.front();
}

std::string CorrectOne(const std::string& w, const LexiconStore& store) {
  return CorrectSpelling(PreparedText{w, {}}, store).text;
}

TEST(Boundaries, UncertaintyAndFractureMarkers) {
  auto p = FixBoundaries("?SAH");
  EXPECT_EQ(p.text, "? SAH");
  EXPECT_EQ(p.edits.size(), 1u);
  EXPECT_EQ(FixBoundaries("#R C7 sup art facet").text, "# R C7 sup art facet");
  EXPECT_EQ(FixBoundaries("?SAH ?contusions").text, "? SAH ? contusions");
  auto empty = FixBoundaries("");
  EXPECT_EQ(empty.text, "");
  EXPECT_TRUE(empty.edits.empty());
}

TEST(Boundaries, ProtectedShapesSurvive) {
  EXPECT_EQ(FixBoundaries("C7, L4-5 and C5/6 1.5cm").text, "C7 , L4-5 and C5/6 1.5cm");
  EXPECT_EQ(FixBoundaries("GCS3").text, "GCS 3");
  EXPECT_EQ(FixBoundaries("(left)").text, "( left )");
}

TEST(Regularize, VariantsAndSingleSenseAbbreviations) {
  auto prep = [](std::string_view s) {
    return RegularizeKeywords(FixBoundaries(s), Store()).text;
  };
  EXPECT_EQ(prep("sup art facet"), "superior articular facet");
  EXPECT_EQ(prep("NAD"), "no abnormality detected");
  EXPECT_EQ(prep("PE on CT"), "PE on CT");
  EXPECT_EQ(prep("MS changes"), "MS changes");
}

TEST(Spelling, PedestrianNotes) {
  ASSERT_EQ(OracleCorrection("fractre", Store()), "fracture");
  EXPECT_EQ(CorrectOne("fractre", Store()), "fracture");
  EXPECT_EQ(CorrectOne("GCS", Store()), "GCS");
  EXPECT_EQ(CorrectOne("C7", Store()), "C7");
  EXPECT_EQ(CorrectOne("Fractre", Store()), "Fracture");
  EXPECT_EQ(CorrectOne("FRactre", Store()), "FRactre");
  EXPECT_EQ(CorrectOne("fract", Store()), "fract");
}

TEST(Spelling, AgreesWithNeighbourhoodOracle) {
  std::mt19937 rng(17);
  auto targets = SpellTargets(Store());
  ASSERT_FALSE(targets.empty());
  const std::string letters = "abcdefghijklmnopqrstuvwxyz";
  int checked = 0;
  for (int n = 0; n < 3000; ++n) {
    std::string w = targets[rng() % targets.size()];
    int edits = 1 + rng() % 2;
    for (int k = 0; k < edits; ++k) {
      size_t i = rng() % w.size();
      switch (rng() % 4) {
        case 0: w.insert(w.begin() + i, letters[rng() % 26]); break;
        case 1: if (w.size() > 1) w.erase(i, 1); break;
        case 2: w[i] = letters[rng() % 26]; break;
        default:
          if (i + 1 < w.size()) std::swap(w[i], w[i + 1]);
      }
    }
    bool alpha = std::all_of(w.begin(), w.end(), [](char c) { return IsLower(c); });
    if (!alpha) continue;
    ++checked;
    EXPECT_EQ(CorrectOne(w, Store()), OracleCorrection(w, Store())) << w;
  }
  EXPECT_GT(checked, 2000);
}

TEST(Spelling, RankBreaksTiesAndEqualRanksAbstain) {
  auto ranked = ParseLexicon(
      "lesion | | SPELL_TARGET | 1\n"
      "lesson | | SPELL_TARGET | 2\n");
  EXPECT_EQ(CorrectOne("lesspn", ranked), "lesson");
  EXPECT_EQ(CorrectOne("lesoon", ranked), "lesion");
  auto tied = ParseLexicon(
      "lesion | | SPELL_TARGET | 1\n"
      "lesson | | SPELL_TARGET | 1\n");
  EXPECT_EQ(CorrectOne("lesdon", tied), "lesdon");
}

TEST(Spelling, DistanceTwoOnlyForLongTokens) {
  auto store = ParseLexicon("haematoma | | SPELL_TARGET | 1\ncontusion | | SPELL_TARGET | 1\n");
  EXPECT_EQ(CorrectOne("hamatoam", store), "haematoma");
  EXPECT_EQ(CorrectOne("ctnusion", store), "contusion");
  auto short_store = ParseLexicon("spine | | SPELL_TARGET | 1\n");
  EXPECT_EQ(CorrectOne("spien", short_store), "spine");
  EXPECT_EQ(CorrectOne("sipen", short_store), "sipen");
}

TEST(Prepare, PedestrianNoteNeedsNoSpelling) {
  auto p = Prepare("Ped v car left frontal depressed fracture, GCS 3, ETOH", Store());
  EXPECT_EQ(p.text, "Ped v car left frontal depressed fracture , GCS 3 , ETOH");
  for (const auto& e : p.edits) EXPECT_NE(e.kind, EditKind::kSpell);
}

std::string RandomTelegraphic(std::mt19937& rng) {
  static const std::vector<std::string> pieces = {
      "Ped v car", "fall", "left", "Rt", "frontal", "fractre", "#", "?",
      "?SAH", "SDH", "EDH,", "GCS3", "GCS 14", "C7", "L4-5", "C5/6", "1.5cm",
      "NAD", "PE", "MS", "sup art facet", "ETOH", "EtOH", "no", "possible",
      "haematomma", "contusions", "(query", "tumour)", "hemorrhage.", "and",
      "10mg", "lt", "R", "cord", "spinal", "menignioma", "hydrocephlus", ";",
      "..", "-", "x", "abc123", "vertebra", "CT:", "MRI", "\n", "SAH?", "#R"};
  std::string s;
  int n = 1 + rng() % 12;
  for (int i = 0; i < n; ++i) {
    if (i && rng() % 4) s += ' ';
    s += pieces[rng() % pieces.size()];
  }
  return s;
}

TEST(Prepare, IdempotentOverRandomTelegraphicText) {
  std::mt19937 rng(2024);
  for (int n = 0; n < 1000; ++n) {
    std::string raw = RandomTelegraphic(rng);
    auto once = Prepare(raw, Store());
    auto twice = Prepare(once.text, Store());
    EXPECT_TRUE(twice.edits.empty()) << "raw: " << raw << "\nonce: " << once.text
                                     << "\ntwice: " << twice.text;
    EXPECT_EQ(twice.text, once.text);
  }
}

TEST(Prepare, EditLogReplaysExactly) {
  std::mt19937 rng(99);
  for (int n = 0; n < 1000; ++n) {
    std::string raw = RandomTelegraphic(rng);
    auto p = Prepare(raw, Store());
    EXPECT_EQ(ReplayEdits(raw, p.edits), p.text) << raw;
    for (size_t i = 1; i < p.edits.size(); ++i) {
      if (p.edits[i].pass == p.edits[i - 1].pass) {
        EXPECT_LE(p.edits[i - 1].end, p.edits[i].start) << raw;
      }
    }
  }
}

TEST(DamerauLevenshtein, MatchesNeighbourhoodDistance) {
  std::mt19937 rng(8);
  const std::string letters = "abc";
  for (int n = 0; n < 300; ++n) {
    std::string a, b;
    for (int i = 0, len = 1 + rng() % 5; i < len; ++i) a += letters[rng() % 3];
    for (int i = 0, len = 1 + rng() % 5; i < len; ++i) b += letters[rng() % 3];
    int d = DamerauLevenshtein(a, b);
    EXPECT_EQ(d == 0, a == b);
    EXPECT_EQ(d == 1, Neighbours(a).count(b) == 1) << a << " " << b;
    EXPECT_EQ(DamerauLevenshtein(b, a), d);
  }
  EXPECT_EQ(DamerauLevenshtein("ca", "abc"), 2);
}

}  // namespace
}  // namespace auditcoder
