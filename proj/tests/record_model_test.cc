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

#include <gtest/gtest.h>

#include "auditcoder/record_model.h"
#include "test_support.h"

namespace auditcoder {
namespace {

using testing::Shipped;

TEST(DiagnosisCode, ParsesSegmentsAndLabels) {
  auto c = ParseDiagnosisCode("218-224-309-310-315",
                              "Cranial>Trauma>Osseous Injury>Skull>Depressed");
  EXPECT_EQ(c.segments, (std::vector<int>{218, 224, 309, 310, 315}));
  ASSERT_EQ(c.labels.size(), 5u);
  EXPECT_EQ(c.labels[2], "Osseous Injury");
  EXPECT_EQ(ParseDiagnosisCode("218", "Cranial").segments.size(), 1u);
}

TEST(DiagnosisCode, EmptySegmentNamesPosition) {
  try {
    ParseDiagnosisCode("218--309");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("segment 2"), std::string::npos) << e.what();
  }
  EXPECT_THROW(ParseDiagnosisCode("218-x"), ParseError);
  EXPECT_THROW(ParseDiagnosisCode(""), ParseError);
}

TEST(DiagnosisCode, IdentityIgnoresLabels) {
  EXPECT_EQ(ParseDiagnosisCode("218-224", "A>B"), ParseDiagnosisCode("218-224"));
}

TEST(DiagnosisCode, FormatParseRoundTrip) {
  std::mt19937 rng(11);
  for (int n = 0; n < 1000; ++n) {
    DiagnosisCode c;
    int len = 1 + rng() % 6;
    for (int i = 0; i < len; ++i) c.segments.push_back(1 + rng() % 999);
    EXPECT_EQ(ParseDiagnosisCode(c.Format()), c);
  }
}

TEST(AuditCategory, ParseAndRoot) {
  auto c = AuditCategory::Parse("CRANIAL:TRAUMA:CONTUSIONS");
  EXPECT_EQ(AuditRoot(c, 2).Text(), "CRANIAL:TRAUMA");
  EXPECT_EQ(AuditRoot(AuditCategory::Parse("CRANIAL:TRAUMA"), 5).Text(),
            "CRANIAL:TRAUMA");
  EXPECT_EQ(AuditRoot(AuditCategory::Parse("SPINE:TRAUMA:FRACTURE"), 1).Text(),
            "SPINE");
  EXPECT_THROW(AuditCategory::Parse("cranial"), ParseError);
  EXPECT_THROW(AuditCategory::Parse("CRANIAL::X"), ParseError);
}

TEST(AuditCategory, RootIsAlwaysPrefix) {
  for (const auto& c : KnownAuditCategories()) {
    EXPECT_EQ(AuditRoot(c, c.depth()), c);
    for (size_t d = 1; d <= c.depth() + 1; ++d) {
      EXPECT_TRUE(AuditRoot(c, d).IsPrefixOf(c));
    }
  }
}

TEST(AuditCategory, PrefixIsPartwise) {
  auto a = AuditCategory::Parse("SPINE");
  auto b = AuditCategory::Parse("SPINE:TRAUMA");
  auto c = AuditCategory::Parse("SPINEX");
  EXPECT_TRUE(a.IsStrictPrefixOf(b));
  EXPECT_FALSE(a.IsPrefixOf(c));
  EXPECT_FALSE(b.IsPrefixOf(a));
}

TEST(CodeTable, MapsKnownRows) {
  const CodeTable& t = Shipped().codes;
  EXPECT_EQ(MapToAudit(ParseDiagnosisCode("218-224-309-310-315"), t).Text(),
            "CRANIAL:TRAUMA:SKULL FRACTURE");
  EXPECT_EQ(MapToAudit(ParseDiagnosisCode("218-220-251-242"), t).Text(),
            "CRANIAL:NEOPLASIA:MENINGIOMA");
}

TEST(CodeTable, FallsBackToNearestAncestor) {
  const CodeTable& t = Shipped().codes;
  EXPECT_EQ(MapToAudit(ParseDiagnosisCode("218-224-309-310-315-999"), t).Text(),
            "CRANIAL:TRAUMA:SKULL FRACTURE");
  EXPECT_THROW(MapToAudit(ParseDiagnosisCode("999-1"), t), UnmappedCodeError);
}

TEST(CodeTable, TotalUnderMappedRoots) {
  const CodeTable& t = Shipped().codes;
  std::mt19937 rng(3);
  for (const auto& [segments, entry] : t.entries()) {
    DiagnosisCode c = entry.code;
    for (int k = 0; k < 3; ++k) c.segments.push_back(900 + rng() % 99);
    EXPECT_NO_THROW(MapToAudit(c, t)) << c.Format();
  }
  EXPECT_TRUE(t.MissingParents().empty());
}

TEST(CodeTable, RejectsHierarchyGapAndConflicts) {
  EXPECT_THROW(ParseCodeTable("code,labels,audit_category\n218-224,,CRANIAL\n"),
               ParseError);
  EXPECT_THROW(ParseCodeTable("code,labels,audit_category\n218,,CRANIAL\n218,,SPINE\n"),
               ParseError);
}

TEST(Ingest, PreservesRowCountAndFlagsBadRows) {
  testing::TempDir dir;
  std::string path = dir.File("a.csv");
  WriteFile(path,
            "admission_id,date,diagnosis_code,diagnosis_labels,note\n"
            "A1,2010-01-02,218-224,,Ped v car\n"
            "A2,2010-01-03,garbage,,\n"
            "A3,not-a-date,218,,\"fall, GCS 3\"\n");
  auto records = IngestAdmissions(path);
  ASSERT_EQ(records.size(), 3u);
  EXPECT_TRUE(records[0].flags.empty());
  EXPECT_FALSE(records[1].diagnosis.has_value());
  EXPECT_EQ(records[1].raw_diagnosis, "garbage");
  EXPECT_FALSE(records[1].flags.empty());
  EXPECT_EQ(records[1].note, "");
  EXPECT_FALSE(records[2].date.has_value());
  EXPECT_FALSE(records[2].flags.empty());
  EXPECT_EQ(records[2].note, "fall, GCS 3");
}

TEST(Ingest, MissingColumnsAreListed) {
  try {
    ParseAdmissions("admission_id,date\nA1,2010-01-01\n");
    FAIL();
  } catch (const IngestError& e) {
    std::string msg = e.what();
    EXPECT_NE(msg.find("diagnosis_code"), std::string::npos) << msg;
    EXPECT_NE(msg.find("note"), std::string::npos) << msg;
  }
}

TEST(Ingest, DuplicateIdsAndUnreadableFile) {
  EXPECT_THROW(ParseAdmissions("admission_id,date,diagnosis_code,note\n"
                               "A,2010-01-01,218,x\nA,2010-01-01,218,y\n"),
               IngestError);
  EXPECT_THROW(IngestAdmissions("/nonexistent/admissions.csv"), IoError);
}

TEST(Ingest, TabDelimitedAndFormatRoundTrip) {
  auto records = ParseAdmissions(
      "admission_id\tdate\tdiagnosis_code\tnote\nA1\t2011-02-03\t218-224\tx, \"y\"\n");
  ASSERT_EQ(records.size(), 1u);
  auto again = ParseAdmissions(FormatAdmissions(records));
  ASSERT_EQ(again.size(), 1u);
  EXPECT_EQ(again[0].note, records[0].note);
  EXPECT_EQ(again[0].diagnosis, records[0].diagnosis);
  EXPECT_EQ(again[0].date, records[0].date);
}

}  // namespace
}  // namespace auditcoder
