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

#include <gtest/gtest.h>

#include "auditcoder/lexicon.h"
#include "auditcoder/preprocessing.h"
#include "test_support.h"

namespace auditcoder {
namespace {

using testing::Shipped;

const LexiconStore& Store() { return Shipped().pipeline.store(); }

TEST(LexiconLine, AbbreviationWithOneSense) {
  auto e = ParseLexiconLine("NAD | | ABBREVIATION | no abnormality detected @ @ 1");
  EXPECT_EQ(e.kind, LexiconKind::kAbbreviation);
  ASSERT_EQ(e.senses.size(), 1u);
  EXPECT_EQ(e.senses[0].expansion, "no abnormality detected");
  EXPECT_EQ(ParseLexiconLine(FormatLexiconLine(e)).SameContent(e), true);
}

TEST(LexiconLine, MalformedLinesThrow) {
  EXPECT_THROW(ParseLexiconLine("x | | NOT_A_KIND | y"), LexiconError);
  EXPECT_THROW(ParseLexiconLine("x | | ABBREVIATION | a @ b @ 1 @ 2"), LexiconError);
  EXPECT_THROW(ParseLexiconLine("x | | ABBREVIATION | a @ b @ first"), LexiconError);
  EXPECT_THROW(ParseLexiconLine("x | | ABBREVIATION |  @ b @ 1"), LexiconError);
  EXPECT_THROW(ParseLexicon("PE | | ABBREVIATION | a @ @ 1 ; b @ @ 1\n"),
               LexiconError);
  EXPECT_THROW(ParseLexiconLine(" | | DOMAIN_CONCEPT | anatomy"), LexiconError);
  EXPECT_THROW(ParseLexiconLine("x | | MODIFIER | MAYBE"), LexiconError);
}

TEST(LexiconLine, FormatRoundTripsShippedEntries) {
  for (const auto& e : Store().entries()) {
    EXPECT_TRUE(ParseLexiconLine(FormatLexiconLine(e)).SameContent(e))
        << FormatLexiconLine(e);
  }
}

TEST(Lexicon, EmptyFileGivesEmptyStore) {
  EXPECT_TRUE(ParseLexicon("").empty());
  EXPECT_TRUE(ParseLexicon("# only a comment\n\n").empty());
}

TEST(Lexicon, DuplicateSurfaceReportsBothLines) {
  try {
    ParseLexicon("SDH | | DOMAIN_CONCEPT | pathology\n# c\nsdh | | DOMAIN_CONCEPT | pathology\n",
                 "p.lex");
    FAIL();
  } catch (const LexiconError& e) {
    std::string msg = e.what();
    EXPECT_NE(msg.find("1"), std::string::npos) << msg;
    EXPECT_NE(msg.find("3"), std::string::npos) << msg;
  }
}

TEST(Lexicon, ExpectedKindIsEnforced) {
  EXPECT_THROW(ParseLexicon("x | | DOMAIN_CONCEPT | anatomy\n", "f",
                            LexiconKind::kModifier),
               LexiconError);
}

TEST(Lexicon, LookupIsCaseInsensitiveAndVariantAware) {
  auto nad = Store().Lookup("nad");
  ASSERT_EQ(nad.size(), 1u);
  EXPECT_EQ(nad[0]->surface, "NAD");
  EXPECT_TRUE(Store().Lookup("no such term").empty());
  auto facet = Store().Lookup("sup art facet", LexiconKind::kDomainConcept);
  ASSERT_EQ(facet.size(), 1u);
  EXPECT_EQ(facet[0]->surface, "superior articular facet");
}

TEST(Lexicon, EveryVariantFindsItsSurfaceEntry) {
  for (const auto& e : Store().entries()) {
    auto by_surface = Store().Lookup(e.surface, e.kind);
    ASSERT_FALSE(by_surface.empty()) << e.surface;
    for (const auto& v : e.variants) {
      EXPECT_EQ(Store().Lookup(v, e.kind), by_surface) << v;
    }
  }
}

TEST(Lexicon, VersionFollowsContent) {
  auto a = ParseLexicon("x | | DOMAIN_CONCEPT | anatomy\n");
  auto b = ParseLexicon("x  |  | DOMAIN_CONCEPT | anatomy\n", "other");
  auto c = ParseLexicon("x | | DOMAIN_CONCEPT | pathology\n");
  EXPECT_EQ(a.version(), b.version());
  EXPECT_NE(a.version(), c.version());
}

TEST(Refinement, FractureSymbolVariant) {
  auto entry = ParseLexiconLine("fracture | # | DOMAIN_CONCEPT | injury");
  auto out = AppendRefinement(Store(), entry, {"expert", "2024-01-01T00:00:00Z"});
  EXPECT_TRUE(out.changed);
  EXPECT_EQ(out.action, "merged");
  auto hits = out.store.Lookup("#", LexiconKind::kDomainConcept);
  ASSERT_EQ(hits.size(), 1u);
  EXPECT_EQ(hits[0]->surface, "fracture");
  EXPECT_TRUE(Store().Lookup("#", LexiconKind::kDomainConcept).empty());
  EXPECT_NE(out.store.version(), Store().version());
}

TEST(Refinement, IdenticalEntryIsJournaledNoop) {
  testing::TempDir dir;
  RefinementJournal journal(dir.File("j.jsonl"));
  auto entry = ParseLexiconLine("left | lt | DOMAIN_CONCEPT | laterality");
  auto out = AppendRefinement(Store(), entry, {"expert", "t"}, &journal);
  EXPECT_FALSE(out.changed);
  EXPECT_EQ(out.action, "noop");
  EXPECT_EQ(out.store.version(), Store().version());
  EXPECT_EQ(journal.ReadAll().size(), 1u);
}

TEST(Refinement, Idempotent) {
  auto entry = ParseLexiconLine("right | Rt | DOMAIN_CONCEPT | laterality");
  auto once = AppendRefinement(Store(), entry, {"e", "t"});
  auto twice = AppendRefinement(once.store, entry, {"e", "t"});
  EXPECT_EQ(once.store.version(), twice.store.version());
  EXPECT_FALSE(twice.changed);
}

TEST(Refinement, ConflictingTagIsRejected) {
  auto entry = ParseLexiconLine("left | | DOMAIN_CONCEPT | anatomy");
  EXPECT_THROW(AppendRefinement(Store(), entry, {"e", "t"}), LexiconConflict);
  auto stolen = ParseLexiconLine("frontal | lt | DOMAIN_CONCEPT | anatomy");
  EXPECT_THROW(AppendRefinement(Store(), stolen, {"e", "t"}), LexiconConflict);
}

TEST(Refinement, SecondSenseIsSelectedByCues) {
  auto base = ParseLexicon(
      "EDH | | ABBREVIATION | extradural haematoma @ skull fracture @ 1\n");
  auto added = AppendRefinement(
      base, ParseLexiconLine("EDH | | ABBREVIATION | "
                             "emergency department handover @ triage nurse @ 2"),
      {"e", "t"});
  const LexiconEntry* e = added.store.FindSurface("EDH", LexiconKind::kAbbreviation);
  ASSERT_NE(e, nullptr);
  ASSERT_EQ(e->senses.size(), 2u);

  AnnotatedNote note = Preprocess(
      Prepare("EDH after skull fracture. EDH from triage nurse.", added.store),
      added.store);
  ASSERT_EQ(note.sense_resolutions.size(), 2u);
  auto first = note.sense_resolutions.begin();
  auto second = std::next(first);
  EXPECT_EQ(first->second.expansion, "extradural haematoma");
  EXPECT_EQ(second->second.expansion, "emergency department handover");
}

TEST(Lexicon, DirectoryMergesAllFiles) {
  auto store = LoadLexiconDirectory(testing::DataPath("lexicon"));
  EXPECT_EQ(store.version(), Store().version());
  EXPECT_FALSE(store.Lookup("Ped v car").empty());
  EXPECT_FALSE(store.Lookup("ETOH").empty());
  EXPECT_FALSE(store.Lookup("GCS").empty());
}

}  // namespace
}  // namespace auditcoder
