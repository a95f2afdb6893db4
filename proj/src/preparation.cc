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

#include "auditcoder/preparation.h"

#include <algorithm>
#include <array>
#include <limits>
#include <optional>
#include <set>

namespace auditcoder {

namespace {

struct Word {
  size_t start;
  size_t end;
};

std::vector<Word> Words(std::string_view text) {
  std::vector<Word> out;
  size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && IsSpace(text[i])) ++i;
    size_t b = i;
    while (i < text.size() && !IsSpace(text[i])) ++i;
    if (i > b) out.push_back({b, i});
  }
  return out;
}

int NextPass(const std::vector<Edit>& edits) {
  int pass = 0;
  for (const auto& e : edits) pass = std::max(pass, e.pass + 1);
  return pass;
}

// Applies one pass worth of ordered, non-overlapping edits.
std::string ApplyPass(std::string_view text, const std::vector<Edit>& edits) {
  std::string out;
  out.reserve(text.size() + edits.size() * 4);
  size_t pos = 0;
  for (const auto& e : edits) {
    out.append(text.substr(pos, e.start - pos));
    out.append(e.replacement);
    pos = e.end;
  }
  out.append(text.substr(pos));
  return out;
}

PreparedText WithPass(const PreparedText& input, std::vector<Edit> fresh) {
  PreparedText out;
  out.text = ApplyPass(input.text, fresh);
  out.edits = input.edits;
  int pass = NextPass(input.edits);
  for (auto& e : fresh) {
    e.pass = pass;
    out.edits.push_back(std::move(e));
  }
  return out;
}

bool AlwaysIsolated(char c) {
  switch (c) {
    case ';':
    case '(':
    case ')':
    case '[':
    case ']':
    case '{':
    case '}':
    case '"':
    case '!':
    case '=':
    case '?':
    case '#':
      return true;
    default:
      return false;
  }
}

// Whether character i must stand as its own token.
bool Isolated(std::string_view s, size_t i) {
  char c = s[i];
  if (AlwaysIsolated(c)) return true;
  bool has_prev = i > 0, has_next = i + 1 < s.size();
  switch (c) {
    case '.':
      return !(has_prev && has_next && IsAlnum(s[i - 1]) && IsAlnum(s[i + 1]));
    case ',':
    case ':':
      return !(has_prev && has_next && IsDigit(s[i - 1]) && IsDigit(s[i + 1]));
    default:
      return false;
  }
}

// "GCS3" -> split before the digit.
bool GcsSplit(std::string_view s, size_t i) {
  if (i < 3 || !IsDigit(s[i])) return false;
  if (Lowercase(s.substr(i - 3, 3)) != "gcs") return false;
  return i == 3 || IsSpace(s[i - 4]) || Isolated(s, i - 4);
}

}  // namespace

std::string_view EditKindName(EditKind kind) {
  switch (kind) {
    case EditKind::kBoundary:
      return "BOUNDARY";
    case EditKind::kSpell:
      return "SPELL";
    case EditKind::kRegularize:
      return "REGULARIZE";
    case EditKind::kExpand:
      return "EXPAND";
  }
  return "?";
}

PreparedText FixBoundaries(std::string_view raw) {
  std::vector<Edit> edits;
  for (size_t i = 1; i < raw.size(); ++i) {
    if (IsSpace(raw[i - 1]) || IsSpace(raw[i])) continue;
    if (Isolated(raw, i - 1) || Isolated(raw, i) || GcsSplit(raw, i)) {
      edits.push_back({i, i, " ", EditKind::kBoundary, 0, ""});
    }
  }
  return WithPass(PreparedText{std::string(raw), {}}, std::move(edits));
}

PreparedText RegularizeKeywords(const PreparedText& input,
                                const LexiconStore& store) {
  const std::string& text = input.text;
  auto words = Words(text);
  std::vector<Edit> edits;
  size_t max_words = std::max<size_t>(store.max_phrase_words(), 1);
  size_t i = 0;
  while (i < words.size()) {
    size_t matched = 0;
    std::optional<std::pair<std::string, EditKind>> rewrite;
    size_t limit = std::min(max_words, words.size() - i);
    for (size_t len = limit; len >= 1; --len) {
      // Phrases never span a line break.
      bool crosses_line = false;
      std::string term;
      for (size_t k = i; k < i + len; ++k) {
        if (k > i) {
          std::string_view gap(text.data() + words[k - 1].end,
                               words[k].start - words[k - 1].end);
          if (gap.find('\n') != std::string_view::npos) crosses_line = true;
          term.push_back(' ');
        }
        term += Lowercase(std::string_view(text).substr(
            words[k].start, words[k].end - words[k].start));
      }
      if (crosses_line) continue;
      auto entries = store.Lookup(term);
      if (entries.empty()) continue;
      matched = len;
      bool ambiguous = false, canonical = false;
      std::set<std::string> targets;
      std::optional<std::pair<std::string, EditKind>> candidate;
      for (const auto* e : entries) {
        if (e->kind == LexiconKind::kAbbreviation) {
          if (e->senses.size() != 1) {
            ambiguous = true;
            continue;
          }
          targets.insert(NormalizeTerm(e->senses[0].expansion));
          candidate = {e->senses[0].expansion, EditKind::kExpand};
        } else if (NormalizeTerm(e->surface) == term) {
          canonical = true;
        } else {
          targets.insert(NormalizeTerm(e->surface));
          candidate = {e->surface, EditKind::kRegularize};
        }
      }
      if (!ambiguous && !canonical && targets.size() == 1) rewrite = candidate;
      break;
    }
    if (matched == 0) {
      ++i;
      continue;
    }
    if (rewrite) {
      size_t b = words[i].start, e = words[i + matched - 1].end;
      std::string original = text.substr(b, e - b);
      if (original != rewrite->first) {
        edits.push_back({b, e, rewrite->first, rewrite->second, 0, original});
      }
    }
    i += matched;
  }
  return WithPass(input, std::move(edits));
}

int DamerauLevenshtein(std::string_view a, std::string_view b) {
  const size_t n = a.size(), m = b.size();
  const int inf = static_cast<int>(n + m);
  std::vector<std::vector<int>> d(n + 2, std::vector<int>(m + 2, 0));
  std::array<size_t, 256> last_row{};
  d[0][0] = inf;
  for (size_t i = 0; i <= n; ++i) {
    d[i + 1][0] = inf;
    d[i + 1][1] = static_cast<int>(i);
  }
  for (size_t j = 0; j <= m; ++j) {
    d[0][j + 1] = inf;
    d[1][j + 1] = static_cast<int>(j);
  }
  for (size_t i = 1; i <= n; ++i) {
    size_t last_match_col = 0;
    for (size_t j = 1; j <= m; ++j) {
      size_t i1 = last_row[static_cast<unsigned char>(b[j - 1])];
      size_t j1 = last_match_col;
      int cost = 1;
      if (a[i - 1] == b[j - 1]) {
        cost = 0;
        last_match_col = j;
      }
      d[i + 1][j + 1] = std::min({
          d[i][j] + cost,
          d[i + 1][j] + 1,
          d[i][j + 1] + 1,
          d[i1][j1] + static_cast<int>((i - i1 - 1) + 1 + (j - j1 - 1)),
      });
    }
    last_row[static_cast<unsigned char>(a[i - 1])] = i;
  }
  return d[n + 1][m + 1];
}

PreparedText CorrectSpelling(const PreparedText& input,
                             const LexiconStore& store,
                             const SpellingOptions& options) {
  struct Target {
    std::string word;
    int rank;
  };
  std::vector<Target> targets;
  for (const auto& e : store.entries()) {
    if (e.kind != LexiconKind::kSpellTarget) continue;
    std::string w = NormalizeTerm(e.surface);
    if (w.find(' ') != std::string::npos) continue;
    targets.push_back({std::move(w), e.rank});
  }

  const std::string& text = input.text;
  std::vector<Edit> edits;
  for (const Word& w : Words(text)) {
    std::string_view token(text.data() + w.start, w.end - w.start);
    if (token.size() < options.min_length) continue;
    if (!std::all_of(token.begin(), token.end(), IsAlpha)) continue;
    if (std::any_of(token.begin() + 1, token.end(), IsUpper)) continue;
    std::string lower = Lowercase(token);
    if (store.IsKnownWord(lower)) continue;
    int max_d = token.size() >= options.long_length ? options.long_distance
                                                    : options.short_distance;
    int best_d = std::numeric_limits<int>::max();
    std::vector<const Target*> best;
    for (const auto& t : targets) {
      int len_gap = std::abs(static_cast<int>(t.word.size()) -
                             static_cast<int>(lower.size()));
      if (len_gap > max_d) continue;
      int d = DamerauLevenshtein(lower, t.word);
      if (d > max_d) continue;
      if (d < best_d) {
        best_d = d;
        best.clear();
      }
      if (d == best_d) best.push_back(&t);
    }
    if (best.empty()) continue;
    const Target* pick = best.front();
    if (best.size() > 1) {
      std::sort(best.begin(), best.end(),
                [](const Target* x, const Target* y) { return x->rank < y->rank; });
      if (best[0]->rank == best[1]->rank) continue;
      pick = best[0];
    }
    std::string replacement = pick->word;
    if (IsUpper(token[0])) replacement[0] = ToUpper(replacement[0]);
    edits.push_back(
        {w.start, w.end, replacement, EditKind::kSpell, 0, std::string(token)});
  }
  return WithPass(input, std::move(edits));
}

PreparedText Prepare(std::string_view raw, const LexiconStore& store,
                     const SpellingOptions& options) {
  PreparedText out = FixBoundaries(raw);
  for (int round = 0; round < 4; ++round) {
    out = RegularizeKeywords(out, store);
    size_t before = out.edits.size();
    out = CorrectSpelling(out, store, options);
    if (out.edits.size() == before) break;
  }
  return out;
}

std::string ReplayEdits(std::string_view raw, const std::vector<Edit>& edits) {
  std::string text(raw);
  size_t i = 0;
  while (i < edits.size()) {
    size_t j = i;
    while (j < edits.size() && edits[j].pass == edits[i].pass) ++j;
    std::vector<Edit> group(edits.begin() + i, edits.begin() + j);
    text = ApplyPass(text, group);
    i = j;
  }
  return text;
}

}  // namespace auditcoder
