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

// Small string helpers shared by every stage. All case folding is ASCII-only;
// bytes >= 0x80 are treated as ordinary word characters.

#ifndef AUDITCODER_TEXT_H_
#define AUDITCODER_TEXT_H_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace auditcoder {

// Base class for every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// I/O failure on a named file.
class IoError : public Error {
 public:
  using Error::Error;
};

inline bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' ||
         c == '\v';
}
inline bool IsDigit(char c) { return c >= '0' && c <= '9'; }
inline bool IsUpper(char c) { return c >= 'A' && c <= 'Z'; }
inline bool IsLower(char c) { return c >= 'a' && c <= 'z'; }
inline bool IsAlpha(char c) { return IsUpper(c) || IsLower(c); }
inline bool IsAlnum(char c) { return IsAlpha(c) || IsDigit(c); }
inline char ToLower(char c) { return IsUpper(c) ? char(c - 'A' + 'a') : c; }
inline char ToUpper(char c) { return IsLower(c) ? char(c - 'a' + 'A') : c; }

std::string Lowercase(std::string_view s);
std::string Uppercase(std::string_view s);
std::string_view Trim(std::string_view s);

// Lowercases, trims and collapses internal whitespace runs to one space.
std::string NormalizeTerm(std::string_view s);

// Splits on a single delimiter character. Empty fields are kept.
std::vector<std::string> Split(std::string_view s, char delim);

// Splits on whitespace runs. Never returns empty pieces.
std::vector<std::string> SplitWords(std::string_view s);

std::string Join(const std::vector<std::string>& parts, std::string_view sep);

bool StartsWith(std::string_view s, std::string_view prefix);

// Parses a whole string as a base-10 integer; false on any junk.
bool ParseInt(std::string_view s, long long* out);
bool ParseDouble(std::string_view s, double* out);

// 64-bit FNV-1a; used for content-derived version labels.
std::uint64_t Fingerprint(std::string_view s);
std::string HexFingerprint(std::string_view s);

// Reads a whole file; throws IoError naming the path.
std::string ReadFile(const std::string& path);
void WriteFile(const std::string& path, std::string_view contents);

// Splits file contents into lines, dropping a trailing '\r' from each.
std::vector<std::string> Lines(std::string_view contents);

}  // namespace auditcoder

#endif  // AUDITCODER_TEXT_H_
