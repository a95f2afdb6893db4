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

#include "auditcoder/concepts.h"

#include <algorithm>
#include <atomic>
#include <thread>

namespace auditcoder {

Pipeline::Pipeline(LexiconStore store, RuleSet rules, PipelineOptions options)
    : store_(std::move(store)),
      rules_(std::move(rules)),
      options_(std::move(options)) {}

VersionLabels Pipeline::versions() const {
  return {store_.version(), rules_.version(), options_.config_label};
}

std::vector<AuditCategory> ClassificationResult::CategoryList() const {
  std::vector<AuditCategory> out;
  for (const auto& m : categories) out.push_back(m.category);
  return out;
}

namespace {

// owner[i] = index into note.tags covering token i, or -1.
std::vector<int> Owners(const AnnotatedNote& note) {
  std::vector<int> owner(note.tokens.size(), -1);
  for (size_t t = 0; t < note.tags.size(); ++t) {
    const auto& r = note.tags[t].range;
    for (size_t i = r.begin; i < r.end && i < owner.size(); ++i) {
      if (owner[i] < 0) owner[i] = static_cast<int>(t);
    }
  }
  return owner;
}

bool Free(const AnnotatedNote& note, const std::vector<int>& owner, size_t i) {
  return i < note.tokens.size() && !note.tokens[i].delimiter && owner[i] < 0;
}

void AddTag(AnnotatedNote& note, std::vector<int>& owner, TokenRange range,
            TagKind kind, std::string payload) {
  note.tags.push_back({range, kind, std::move(payload)});
  for (size_t i = range.begin; i < range.end; ++i) {
    owner[i] = static_cast<int>(note.tags.size() - 1);
  }
}

// Longest run of free tokens from k that names an entry of `kind`.
std::pair<size_t, const LexiconEntry*> LongestMatch(
    const AnnotatedNote& note, const std::vector<int>& owner, size_t k,
    const LexiconStore& store, LexiconKind kind) {
  size_t avail = 0;
  while (avail < store.max_phrase_words() && Free(note, owner, k + avail)) {
    ++avail;
  }
  for (size_t n = avail; n >= 1; --n) {
    std::string term;
    for (size_t j = 0; j < n; ++j) {
      if (j) term += ' ';
      term += note.tokens[k + j].norm;
    }
    auto hits = store.Lookup(term, kind);
    if (!hits.empty()) return {n, hits.front()};
  }
  return {0, nullptr};
}

std::vector<ConceptTag> TagLongest(AnnotatedNote& note,
                                   const LexiconStore& store, LexiconKind kind,
                                   TagKind tag_kind, bool use_label) {
  std::vector<ConceptTag> out;
  auto owner = Owners(note);
  for (size_t k = 0; k < note.tokens.size();) {
    if (!Free(note, owner, k)) {
      ++k;
      continue;
    }
    auto [n, entry] = LongestMatch(note, owner, k, store, kind);
    if (n == 0) {
      ++k;
      continue;
    }
    std::string payload = use_label && !entry->label.empty() ? entry->label
                                                             : entry->surface;
    AddTag(note, owner, {k, k + n}, tag_kind, payload);
    out.push_back(note.tags.back());
    k += n;
  }
  return out;
}

bool AllDigits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!IsDigit(c) && c != '.') return false;
  }
  return IsDigit(s.front());
}

}  // namespace

void TagPreprocessedSpans(AnnotatedNote& note) {
  auto owner = Owners(note);
  auto free_range = [&](const TokenRange& r) {
    if (r.empty() || r.end > note.tokens.size()) return false;
    for (size_t i = r.begin; i < r.end; ++i) {
      if (owner[i] >= 0) return false;
    }
    return true;
  };
  for (const auto& m : note.modifiers) {
    if (!free_range(m.trigger)) continue;
    std::string payload(PolarityName(m.polarity));
    if (m.retrospective) payload += ",RETROSPECTIVE";
    AddTag(note, owner, m.trigger, TagKind::kModifier, payload);
  }
  for (const auto& m : note.measurements) {
    if (!free_range(m.range)) continue;
    AddTag(note, owner, m.range, TagKind::kMeasurement,
           std::string(MeasurementKindName(m.kind)) + ":" + m.descriptor);
  }
}

std::vector<ConceptTag> IdentifyAdmissionCause(AnnotatedNote& note,
                                               const LexiconStore& store) {
  auto out = TagLongest(note, store, LexiconKind::kAdmissionCausePhrase,
                        TagKind::kAdmissionCause, false);
  auto more = TagLongest(note, store, LexiconKind::kAdmissionCauseKeyword,
                         TagKind::kAdmissionCause, false);
  out.insert(out.end(), more.begin(), more.end());
  std::sort(out.begin(), out.end(), [](const ConceptTag& a, const ConceptTag& b) {
    return a.range.begin < b.range.begin;
  });
  return out;
}

std::vector<CategoryMatch> IdentifyAuditCategories(AnnotatedNote& note,
                                                   const RuleSet& rules) {
  auto matches = ApplyRules(note, rules);
  auto owner = Owners(note);
  // One tag per maximal run of free tokens inside r.
  auto tag = [&](const TokenRange& r, const std::string& payload) {
    for (size_t i = r.begin; i < r.end;) {
      if (!Free(note, owner, i)) {
        ++i;
        continue;
      }
      size_t j = i;
      while (j < r.end && Free(note, owner, j)) ++j;
      AddTag(note, owner, {i, j}, TagKind::kAuditEvidence, payload);
      i = j;
    }
  };
  for (const auto& m : matches) {
    tag(m.trigger, m.category.Text());
    for (const auto& c : m.conditions) tag(c.range, m.category.Text());
  }
  return matches;
}

std::vector<ConceptTag> IdentifyDomainConcepts(AnnotatedNote& note,
                                               const LexiconStore& store) {
  auto owner = Owners(note);
  std::vector<ConceptTag> out;
  for (size_t k = 0; k < note.tokens.size();) {
    if (!Free(note, owner, k)) {
      ++k;
      continue;
    }
    auto [n, entry] =
        LongestMatch(note, owner, k, store, LexiconKind::kDomainConcept);
    if (n > 0) {
      AddTag(note, owner, {k, k + n}, TagKind::kDomainConcept,
             entry->label.empty() ? entry->surface : entry->label);
      out.push_back(note.tags.back());
      k += n;
      continue;
    }
    const Token& tok = note.tokens[k];
    auto res = note.sense_resolutions.find(k);
    if (res != note.sense_resolutions.end()) {
      auto hits = store.Lookup(res->second.expansion, LexiconKind::kDomainConcept);
      std::string payload = hits.empty() || hits.front()->label.empty()
                                ? "abbreviation:" + res->second.expansion
                                : hits.front()->label;
      AddTag(note, owner, {k, k + 1}, TagKind::kDomainConcept, payload);
    } else if (AllDigits(tok.text)) {
      AddTag(note, owner, {k, k + 1}, TagKind::kDomainConcept, "number");
    } else {
      AddTag(note, owner, {k, k + 1}, TagKind::kUnresolved, tok.text);
    }
    out.push_back(note.tags.back());
    ++k;
  }
  return out;
}

ClassificationResult ClassifyNote(const AdmissionRecord& record,
                                  const Pipeline& pipeline) {
  ClassificationResult result;
  result.admission_id = record.admission_id;
  result.versions = pipeline.versions();
  result.diagnostics = record.flags;
  if (Trim(record.note).empty()) return result;

  PreparedText prepared =
      Prepare(record.note, pipeline.store(), pipeline.options().spelling);
  AnnotatedNote note = Preprocess(std::move(prepared), pipeline.store(),
                                  pipeline.options().preprocess);
  TagPreprocessedSpans(note);
  result.cause_spans = IdentifyAdmissionCause(note, pipeline.store());
  result.categories = IdentifyAuditCategories(note, pipeline.rules());
  for (auto& tag : IdentifyDomainConcepts(note, pipeline.store())) {
    if (tag.kind == TagKind::kUnresolved) {
      result.unresolved.push_back(std::move(tag));
    } else {
      result.domain_tags.push_back(std::move(tag));
    }
  }
  std::stable_sort(note.tags.begin(), note.tags.end(),
                   [](const ConceptTag& a, const ConceptTag& b) {
                     return a.range.begin < b.range.begin;
                   });
  result.diagnostics.insert(result.diagnostics.end(), note.diagnostics.begin(),
                            note.diagnostics.end());
  result.note = std::move(note);
  return result;
}

CorpusClassification ClassifyCorpus(const std::vector<AdmissionRecord>& records,
                                    const Pipeline& pipeline,
                                    unsigned threads) {
  CorpusClassification out;
  out.results.resize(records.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, std::max<size_t>(1, records.size()));

  std::atomic<size_t> next{0};
  auto work = [&] {
    for (size_t i = next++; i < records.size(); i = next++) {
      try {
        out.results[i] = ClassifyNote(records[i], pipeline);
      } catch (const std::exception& e) {
        ClassificationResult failed;
        failed.admission_id = records[i].admission_id;
        failed.versions = pipeline.versions();
        failed.diagnostics.push_back(std::string("classification failed: ") +
                                     e.what());
        out.results[i] = std::move(failed);
      }
    }
  };
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  CorpusSummary& s = out.summary;
  s.records = out.results.size();
  for (const auto& r : out.results) {
    if (r.categories.empty()) ++s.records_without_category;
    for (const auto& m : r.categories) ++s.category_histogram[m.category.Text()];
    for (const auto& t : r.note.tokens) {
      if (!t.delimiter) ++s.content_tokens;
    }
    s.unresolved_tokens += r.unresolved.size();
    for (const auto& d : r.diagnostics) {
      if (StartsWith(d, "classification failed")) {
        s.failures.push_back(r.admission_id + ": " + d);
      }
    }
  }
  return out;
}

}  // namespace auditcoder
