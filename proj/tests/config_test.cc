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

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "auditcoder/workspace.h"
#include "test_support.h"

namespace auditcoder {
namespace {

namespace fs = std::filesystem;
using testing::TempDir;

const char* kPaths =
    "[paths]\nlexicon_dir = lexicon\nrules = rules/starter.rules\n"
    "code_table = tables/codes.csv\n";

PipelineConfig Parse(const std::string& extra) {
  return ParseConfig(std::string(kPaths) + extra, testing::DataDir(), "t.conf");
}

std::string ErrorOf(const std::string& text) {
  try {
    ParseConfig(text, testing::DataDir(), "t.conf");
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

// A writable copy of the shipped data directory.
std::string CopyData(const TempDir& dir) {
  fs::copy(testing::DataDir(), dir.path() + "/data", fs::copy_options::recursive);
  return dir.path() + "/data";
}

TEST(Config, ShippedFileLoads) {
  auto c = LoadConfig(testing::ConfigPath());
  EXPECT_EQ(c.preprocess.modifier_window, 6u);
  EXPECT_EQ(c.uncertainty_default, UncertaintyPolicy::kFireFlagged);
  EXPECT_TRUE(fs::exists(c.rules));
  EXPECT_FALSE(c.alternatives.empty());
  EXPECT_EQ(c.source, testing::ConfigPath());
}

TEST(Config, OptionalTablesMayBeOmitted) {
  auto c = Parse("");
  EXPECT_TRUE(c.alternatives.empty());
  EXPECT_TRUE(c.recode_approvals.empty());
  auto ws = LoadWorkspace(c);
  EXPECT_EQ(ws.alternatives.size(), 0u);
  EXPECT_TRUE(ws.approvals.empty());
}

TEST(Config, RangesAreEnforced) {
  EXPECT_NE(ErrorOf(std::string(kPaths) + "[tunables]\nmodifier_window = 0\n"), "");
  EXPECT_NE(ErrorOf(std::string(kPaths) + "[tunables]\nspell_short_distance = 9\n"), "");
  EXPECT_NE(ErrorOf(std::string(kPaths) + "[tunables]\nspell_min_length = x\n"), "");
  EXPECT_NE(ErrorOf(std::string(kPaths) + "[tunables]\nuncertainty_default = MAYBE\n"), "");
  EXPECT_NE(ErrorOf(std::string(kPaths) + "[tunables]\nbogus = 1\n"), "");
  EXPECT_NE(ErrorOf(std::string(kPaths) + "[other]\n"), "");
  EXPECT_EQ(Parse("[tunables]\nmodifier_window = 3\n").preprocess.modifier_window, 3u);
}

TEST(Config, MissingPathIsNamed) {
  std::string msg = ErrorOf("[paths]\nlexicon_dir = lexicon\nrules = rules/nope.rules\n"
                            "code_table = tables/codes.csv\n");
  EXPECT_NE(msg.find("nope.rules"), std::string::npos) << msg;
  EXPECT_NE(ErrorOf("[paths]\nlexicon_dir = lexicon\n").find("rules"), std::string::npos);
  EXPECT_THROW(LoadConfig("/nonexistent/audit.conf"), Error);
}

TEST(Config, LabelFollowsTunables) {
  EXPECT_EQ(Parse("").Label(), Parse("").Label());
  EXPECT_EQ(Parse("").Label().rfind("config-", 0), 0u);
  EXPECT_NE(Parse("").Label(), Parse("[tunables]\nmodifier_window = 3\n").Label());
}

TEST(Config, EnvironmentFallback) {
  ::setenv(kConfigEnvVar, "/from/env.conf", 1);
  EXPECT_EQ(ResolveConfigPath(""), "/from/env.conf");
  EXPECT_EQ(ResolveConfigPath("/explicit.conf"), "/explicit.conf");
  ::unsetenv(kConfigEnvVar);
  EXPECT_EQ(ResolveConfigPath(""), "");
}

TEST(Workspace, TunablesReachThePipeline) {
  TempDir dir;
  std::string data = CopyData(dir);
  std::string conf = ReadFile(data + "/audit.conf");
  conf.replace(conf.find("modifier_window = 6"), 19, "modifier_window = 1");
  WriteFile(data + "/audit.conf", conf);
  auto ws = LoadWorkspace(data + "/audit.conf");
  EXPECT_EQ(ws.pipeline.options().preprocess.modifier_window, 1u);
  EXPECT_NE(ws.pipeline.versions().config, testing::Shipped().pipeline.versions().config);
}

TEST(Validate, ShippedConfigIsClean) {
  auto r = ValidateConfig(testing::ConfigPath());
  EXPECT_TRUE(r.ok());
  EXPECT_TRUE(r.errors.empty());
  EXPECT_FALSE(r.summary.empty());
}

TEST(Validate, CollectsAllFindings) {
  TempDir dir;
  std::string data = CopyData(dir);
  std::ofstream(data + "/lexicon/domain.lex", std::ios::app)
      << "frontal | | DOMAIN_CONCEPT | anatomy\n";
  std::ofstream(data + "/rules/starter.rules", std::ios::app)
      << "\n[rule novel]\ncategory = BRAND:NEW\ntriggers = zzqx\n";
  auto r = ValidateConfig(data + "/audit.conf");
  EXPECT_FALSE(r.ok());
  std::string errors;
  for (const auto& e : r.errors) errors += e + "\n";
  EXPECT_NE(errors.find("frontal"), std::string::npos) << errors;
  std::string warnings;
  for (const auto& w : r.warnings) warnings += w + "\n";
  EXPECT_NE(warnings.find("BRAND:NEW"), std::string::npos) << warnings;
}

TEST(Validate, MissingConfigIsAnError) {
  auto r = ValidateConfig("/nonexistent/audit.conf");
  EXPECT_FALSE(r.ok());
}

}  // namespace
}  // namespace auditcoder
