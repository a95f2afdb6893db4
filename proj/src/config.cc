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

#include "auditcoder/config.h"

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "auditcoder/sectioned.h"

namespace auditcoder {

namespace fs = std::filesystem;

std::string PipelineConfig::Label() const {
  std::ostringstream os;
  os << "spell_min_length=" << spelling.min_length
     << ";spell_long_length=" << spelling.long_length
     << ";spell_short_distance=" << spelling.short_distance
     << ";spell_long_distance=" << spelling.long_distance
     << ";modifier_window=" << preprocess.modifier_window
     << ";uncertainty_default=" << UncertaintyPolicyName(uncertainty_default);
  return "config-" + HexFingerprint(os.str());
}

RuleDefaults PipelineConfig::rule_defaults() const {
  RuleDefaults d;
  d.uncertainty = uncertainty_default;
  return d;
}

PipelineOptions PipelineConfig::pipeline_options() const {
  PipelineOptions o;
  o.spelling = spelling;
  o.preprocess = preprocess;
  o.config_label = Label();
  return o;
}

PipelineConfig ParseConfig(std::string_view text, const std::string& base_dir,
                           std::string_view source) {
  std::string prefix = source.empty() ? "line " : std::string(source) + ":";
  std::vector<Section> sections;
  try {
    sections = ParseSectioned(text, source);
  } catch (const SectionedError& e) {
    throw ConfigError(e.what());
  }
  PipelineConfig cfg;
  cfg.source = std::string(source);
  auto fail = [&](int line, const std::string& msg) {
    return ConfigError(prefix + std::to_string(line) + ": " + msg);
  };
  auto resolve = [&](const KeyValue& kv) {
    fs::path p(kv.value);
    if (p.is_relative()) p = fs::path(base_dir) / p;
    std::error_code ec;
    if (!fs::exists(p, ec)) {
      throw fail(kv.line, kv.key + " path does not exist: " + p.string());
    }
    return p.lexically_normal().string();
  };
  auto integer = [&](const KeyValue& kv, long long lo, long long hi) {
    long long v = 0;
    if (!ParseInt(kv.value, &v) || v < lo || v > hi) {
      throw fail(kv.line, kv.key + " must be an integer in [" +
                              std::to_string(lo) + ", " + std::to_string(hi) +
                              "], got '" + kv.value + "'");
    }
    return v;
  };

  for (const auto& s : sections) {
    if (s.name == "paths") {
      for (const auto& kv : s.values) {
        if (kv.key == "lexicon_dir") {
          cfg.lexicon_dir = resolve(kv);
        } else if (kv.key == "rules") {
          cfg.rules = resolve(kv);
        } else if (kv.key == "code_table") {
          cfg.code_table = resolve(kv);
        } else if (kv.key == "alternatives") {
          cfg.alternatives = resolve(kv);
        } else if (kv.key == "recode_approvals") {
          cfg.recode_approvals = resolve(kv);
        } else {
          throw fail(kv.line, "unknown path key '" + kv.key + "'");
        }
      }
    } else if (s.name == "tunables") {
      for (const auto& kv : s.values) {
        if (kv.key == "spell_min_length") {
          cfg.spelling.min_length = static_cast<size_t>(integer(kv, 1, 64));
        } else if (kv.key == "spell_long_length") {
          cfg.spelling.long_length = static_cast<size_t>(integer(kv, 1, 64));
        } else if (kv.key == "spell_short_distance") {
          cfg.spelling.short_distance = static_cast<int>(integer(kv, 0, 3));
        } else if (kv.key == "spell_long_distance") {
          cfg.spelling.long_distance = static_cast<int>(integer(kv, 0, 3));
        } else if (kv.key == "modifier_window") {
          cfg.preprocess.modifier_window = static_cast<size_t>(integer(kv, 1, 20));
        } else if (kv.key == "uncertainty_default") {
          auto p = ParseUncertaintyPolicy(kv.value);
          if (!p) throw fail(kv.line, "bad uncertainty_default '" + kv.value + "'");
          cfg.uncertainty_default = *p;
        } else {
          throw fail(kv.line, "unknown tunable '" + kv.key + "'");
        }
      }
    } else {
      throw fail(s.line, "unknown section '" + s.name + "'");
    }
  }
  if (cfg.spelling.long_length < cfg.spelling.min_length) {
    throw ConfigError(prefix.substr(0, prefix.size() - 1) +
                      ": spell_long_length must be >= spell_min_length");
  }
  if (cfg.spelling.long_distance < cfg.spelling.short_distance) {
    throw ConfigError(prefix.substr(0, prefix.size() - 1) +
                      ": spell_long_distance must be >= spell_short_distance");
  }
  for (auto [name, value] : {std::pair{"lexicon_dir", &cfg.lexicon_dir},
                             std::pair{"rules", &cfg.rules},
                             std::pair{"code_table", &cfg.code_table}}) {
    if (value->empty()) {
      throw ConfigError((source.empty() ? std::string("config")
                                        : std::string(source)) +
                        ": [paths] " + name + " is required");
    }
  }
  return cfg;
}

PipelineConfig LoadConfig(const std::string& path) {
  std::string text;
  try {
    text = ReadFile(path);
  } catch (const IoError& e) {
    throw ConfigError(std::string("cannot read config: ") + e.what());
  }
  fs::path base = fs::path(path).parent_path();
  if (base.empty()) base = ".";
  return ParseConfig(text, base.string(), path);
}

std::string ResolveConfigPath(const std::string& explicit_path) {
  if (!explicit_path.empty()) return explicit_path;
  if (const char* env = std::getenv(kConfigEnvVar)) return env;
  return "";
}

}  // namespace auditcoder
