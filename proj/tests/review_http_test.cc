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

#include <memory>
#include <thread>

#include <gtest/gtest.h>

#include "auditcoder/generator.h"
#include "auditcoder/review_http.h"
#include "test_support.h"

namespace auditcoder {
namespace {

using nlohmann::json;
using testing::Record;

class ReviewHttpTest : public ::testing::Test {
 protected:
  void SetUp() override {
    Start({
        Record("R1", "Ped v car left frontal depressed fracture, GCS 3, ETOH",
               "218-224-309-310-315"),
        Record("R2", "fall, acute SDH", "218-224"),
        Record("R3", "", "218-224"),
    });
  }

  void Start(std::vector<AdmissionRecord> records) {
    service_ = std::make_unique<ReviewService>(testing::Shipped(), records, dir_.path(),
                                               [] { return std::string("2024-02-02T00:00:00Z"); });
    RegisterReviewRoutes(server_, *service_);
    port_ = server_.bind_to_any_port("127.0.0.1");
    ASSERT_GT(port_, 0);
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
    client_ = std::make_unique<httplib::Client>("127.0.0.1", port_);
  }

  void TearDown() override {
    server_.stop();
    if (thread_.joinable()) thread_.join();
  }

  httplib::Result Post(const std::string& path, const json& body,
                       const std::string& reviewer = "") {
    httplib::Headers headers;
    if (!reviewer.empty()) headers.emplace(kReviewerHeader, reviewer);
    return client_->Post(path, headers, body.dump(), "application/json");
  }

  void ExpectVersionHeaders(const httplib::Result& res) {
    ASSERT_TRUE(res);
    auto v = service_->versions();
    EXPECT_EQ(res->get_header_value("X-Lexicon-Version"), v.lexicon);
    EXPECT_EQ(res->get_header_value("X-Ruleset-Version"), v.rules);
    EXPECT_EQ(res->get_header_value("X-Config-Version"), v.config);
  }

  testing::TempDir dir_;
  std::unique_ptr<ReviewService> service_;
  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
  std::unique_ptr<httplib::Client> client_;
};

TEST_F(ReviewHttpTest, ListAndFilter) {
  auto res = client_->Get("/records?status=pending");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  ExpectVersionHeaders(res);
  auto body = json::parse(res->body);
  EXPECT_EQ(body["total"], 3);
  EXPECT_EQ(body["versions"]["rules"], service_->versions().rules);

  auto filtered = json::parse(client_->Get("/records?category=CRANIAL:TRAUMA:SDH")->body);
  ASSERT_EQ(filtered["records"].size(), 1u);
  EXPECT_EQ(filtered["records"][0]["admission_id"], "R2");

  auto bad = client_->Get("/records?per=0");
  EXPECT_EQ(bad->status, 400);
  ExpectVersionHeaders(bad);
  EXPECT_FALSE(json::parse(bad->body)["error"].get<std::string>().empty());
}

TEST_F(ReviewHttpTest, DetailAndNotFound) {
  auto res = client_->Get("/records/R1");
  EXPECT_EQ(res->status, 200);
  auto body = json::parse(res->body);
  EXPECT_EQ(body["categories"][0], "CRANIAL:TRAUMA:SKULL FRACTURE");
  auto missing = client_->Get("/records/NOPE");
  EXPECT_EQ(missing->status, 404);
  ExpectVersionHeaders(missing);
  auto route = client_->Get("/no/such/route");
  EXPECT_EQ(route->status, 404);
  ExpectVersionHeaders(route);
  EXPECT_TRUE(json::parse(route->body).contains("error"));
}

TEST_F(ReviewHttpTest, DecisionReadYourWrites) {
  auto res = Post("/records/R1/decision", {{"action", "ACCEPT"}}, "ana");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  ExpectVersionHeaders(res);
  auto detail = json::parse(client_->Get("/records/R1")->body);
  EXPECT_EQ(detail["status"], "decided");
  EXPECT_EQ(detail["decision"]["reviewer"], "ana");
  EXPECT_EQ(detail["decision"]["timestamp"], "2024-02-02T00:00:00Z");

  EXPECT_EQ(Post("/records/R1/decision", {{"action", "NOPE"}})->status, 400);
  EXPECT_EQ(Post("/records/X/decision", {{"action", "ACCEPT"}})->status, 404);
  auto garbage = client_->Post("/records/R1/decision", "{oops", "application/json");
  EXPECT_EQ(garbage->status, 400);
  ExpectVersionHeaders(garbage);
}

TEST_F(ReviewHttpTest, RefinementsAndExports) {
  auto res = Post("/refinements",
                  {{"type", "lexicon"}, {"entry", "right | Rt | DOMAIN_CONCEPT | laterality"}},
                  "ana");
  EXPECT_EQ(res->status, 200);
  auto dup = Post("/refinements",
                  {{"type", "lexicon"}, {"entry", "right | Rt | DOMAIN_CONCEPT | laterality"}});
  EXPECT_EQ(dup->status, 400);
  auto listed = json::parse(client_->Get("/refinements")->body);
  EXPECT_EQ(listed["refinements"].size(), 1u);

  auto lex = client_->Get("/export/refinements?type=lexicon");
  EXPECT_EQ(lex->status, 200);
  EXPECT_NO_THROW(ParseLexicon(lex->body));
  EXPECT_NE(lex->body.find("Rt"), std::string::npos);
  EXPECT_EQ(client_->Get("/export/refinements?type=bogus")->status, 400);

  Post("/records/R2/decision", {{"action", "ACCEPT"}});
  auto decisions = client_->Get("/export/decisions");
  EXPECT_EQ(decisions->status, 200);
  EXPECT_EQ(ParseDecisions(decisions->body).size(), 1u);
}

TEST_F(ReviewHttpTest, Metrics) {
  Post("/records/R1/decision", {{"action", "ACCEPT"}});
  auto res = client_->Get("/metrics?standard=A");
  EXPECT_EQ(res->status, 200);
  auto body = json::parse(res->body);
  EXPECT_EQ(body["standard"], "A");
  EXPECT_EQ(body["precision_pct"], "100.0%");
  EXPECT_EQ(client_->Get("/metrics?standard=Q")->status, 400);
}

class ReviewLoopTest : public ReviewHttpTest {
 protected:
  void SetUp() override {
    GeneratorOptions options;
    options.seed = 20;
    options.size = 20;
    const auto& ws = testing::Shipped();
    Start(GenerateCorpus(options, ws.pipeline.store(), ws.pipeline.rules(), ws.codes)
              .Admissions());
  }
};

TEST_F(ReviewLoopTest, AcceptingEverySuggestionGivesFullPrecision) {
  auto listed = json::parse(client_->Get("/records?per=1000")->body);
  ASSERT_EQ(listed["total"], 20);
  for (const auto& r : listed["records"]) {
    std::string id = r["admission_id"];
    ASSERT_EQ(Post("/records/" + id + "/decision", {{"action", "ACCEPT"}}, "ana")->status, 200);
  }
  auto metrics = json::parse(client_->Get("/metrics")->body);
  EXPECT_EQ(metrics["decided_records"], 20);
  EXPECT_EQ(metrics["precision_pct"], "100.0%");
  EXPECT_EQ(json::parse(client_->Get("/records?status=pending")->body)["total"], 0);
}

}  // namespace
}  // namespace auditcoder
