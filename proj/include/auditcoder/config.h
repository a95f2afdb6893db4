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

// Pipeline configuration file:
//
//   [paths]
//   lexicon_dir = lexicon
//   rules = rules/starter.rules
//   code_table = tables/codes.csv
//   alternatives = tables/alternatives.txt      (optional)
//   recode_approvals = tables/recode_approvals.txt  (optional)
//
//   [tunables]
//   spell_min_length = 5
//   spell_long_length = 8
//   spell_short_distance = 1
//   spell_long_distance = 2
//   modifier_window = 6
//   uncertainty_default = FIRE_FLAGGED
//
// Relative paths resolve against the directory holding the config file.

#ifndef AUDITCODER_CONFIG_H_
#define AUDITCODER_CONFIG_H_

#include <string>
#include <string_view>

#include "auditcoder/concepts.h"
#include "auditcoder/rules.h"

namespace auditcoder {

class ConfigError : public Error {
 public:
  using Error::Error;
};

inline constexpr const char* kConfigEnvVar = "AUDIT_CONFIG";

struct PipelineConfig {
  std::string source;  // config file path, if any

  std::string lexicon_dir;
  std::string rules;
  std::string code_table;
  std::string alternatives;      // empty when not configured
  std::string recode_approvals;  // empty when not configured

  SpellingOptions spelling;
  PreprocessOptions preprocess;
  UncertaintyPolicy uncertainty_default = UncertaintyPolicy::kFireFlagged;

  // "config-<hash>" over the tunables; echoed into result version labels.
  std::string Label() const;
  RuleDefaults rule_defaults() const;
  PipelineOptions pipeline_options() const;
};

// Throws ConfigError on unknown sections/keys, out-of-range tunables or
// referenced paths that do not exist.
PipelineConfig ParseConfig(std::string_view text, const std::string& base_dir,
                           std::string_view source = "");
PipelineConfig LoadConfig(const std::string& path);

// `explicit_path` if non-empty, else $AUDIT_CONFIG, else empty.
std::string ResolveConfigPath(const std::string& explicit_path);

}  // namespace auditcoder

#endif  // AUDITCODER_CONFIG_H_
