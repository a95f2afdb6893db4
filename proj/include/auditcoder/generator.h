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

// Seeded synthetic corpus generator with ground truth, plus the oracle that
// decides whether a perturbed note is recoverable by text preparation.

#ifndef AUDITCODER_GENERATOR_H_
#define AUDITCODER_GENERATOR_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "auditcoder/lexicon.h"
#include "auditcoder/preparation.h"
#include "auditcoder/record_model.h"
#include "auditcoder/rules.h"

namespace auditcoder {

enum class PerturbationKind { kNone, kMisspelling, kReorder };

std::string_view PerturbationKindName(PerturbationKind kind);

struct GeneratorOptions {
  std::uint64_t seed = 1;
  size_t size = 100;
  // Fraction of records (rounded to the nearest count) that receive exactly
  // one perturbation.
  double noise_rate = 0.0;
};

struct GeneratedRecord {
  AdmissionRecord record;  // note carries the perturbation, if any
  AuditCategory category;
  std::string rule_id;
  std::string trigger;
  std::string clean_note;
  PerturbationKind perturbation = PerturbationKind::kNone;
  std::string perturbation_detail;
};

struct GeneratedCorpus {
  std::vector<GeneratedRecord> records;

  std::vector<AdmissionRecord> Admissions() const;
  // Admissions file in the ingest format.
  std::string CorpusCsv() const;
  // admission_id,category,rule,trigger,perturbation,detail
  std::string GroundTruthCsv() const;
};

// Categories the generator can emit: a rule fires for them, every `requires`
// group has a producible term, and the code table maps some code exactly to
// them.
std::vector<AuditCategory> GeneratableCategories(const RuleSet& rules,
                                                 const CodeTable& codes);

// Deterministic for fixed (options, store, rules, codes). Throws Error when
// size is zero or nothing is generatable.
GeneratedCorpus GenerateCorpus(const GeneratorOptions& options,
                               const LexiconStore& store, const RuleSet& rules,
                               const CodeTable& codes);

// A record is recoverable when preparing its note yields the same token
// multiset as preparing its clean note. Unperturbed records are recoverable.
bool IsRecoverable(const GeneratedRecord& record, const LexiconStore& store,
                   const SpellingOptions& spelling = {});

size_t ReachableCount(const GeneratedCorpus& corpus, const LexiconStore& store,
                      const SpellingOptions& spelling = {});

}  // namespace auditcoder

#endif  // AUDITCODER_GENERATOR_H_
