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

// HTTP routes of the review service.
//
//   GET  /records?status=&category=&page=&per=
//   GET  /records/{id}
//   POST /records/{id}/decision
//   GET  /refinements
//   POST /refinements
//   GET  /metrics?standard=A|B|C
//   GET  /export/decisions
//   GET  /export/refinements[?type=rule]
//
// Every response carries X-Lexicon-Version and X-Ruleset-Version headers.
// JSON bodies also carry the version labels. Errors are {"error": message}.

#ifndef AUDITCODER_REVIEW_HTTP_H_
#define AUDITCODER_REVIEW_HTTP_H_

#include "httplib.h"

#include "auditcoder/review_service.h"

namespace auditcoder {

inline constexpr const char* kReviewerHeader = "X-Reviewer";

void RegisterReviewRoutes(httplib::Server& server, ReviewService& service);

}  // namespace auditcoder

#endif  // AUDITCODER_REVIEW_HTTP_H_
