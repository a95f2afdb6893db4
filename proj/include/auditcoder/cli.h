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

// Command-line front end: classify, evaluate, query, generate, validate and
// serve. Exit statuses are a stable scripting contract.

#ifndef AUDITCODER_CLI_H_
#define AUDITCODER_CLI_H_

#include <iosfwd>

namespace auditcoder {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;  // bad arguments or configuration
inline constexpr int kExitData = 2;   // unreadable or inconsistent data

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err);

}  // namespace auditcoder

#endif  // AUDITCODER_CLI_H_
