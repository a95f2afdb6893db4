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

#include "auditcoder/review_http.h"

#include "auditcoder/results_io.h"

namespace auditcoder {

namespace {

using nlohmann::json;

void SetVersionHeaders(const ReviewService& service, httplib::Response& res) {
  VersionLabels v = service.versions();
  res.set_header("X-Lexicon-Version", v.lexicon);
  res.set_header("X-Ruleset-Version", v.rules);
  res.set_header("X-Config-Version", v.config);
}

void SendJson(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

// Runs `handler`, mapping errors onto status codes.
template <typename Handler>
httplib::Server::Handler Wrap(ReviewService& service, Handler handler) {
  return [&service, handler](const httplib::Request& req, httplib::Response& res) {
    SetVersionHeaders(service, res);
    try {
      handler(req, res);
    } catch (const ReviewError& e) {
      json body = {{"error", e.what()},
                   {"versions", VersionsToJson(service.versions())}};
      SendJson(res, e.status(), body);
    } catch (const json::exception& e) {
      SendJson(res, 400, {{"error", std::string("malformed JSON: ") + e.what()},
                          {"versions", VersionsToJson(service.versions())}});
    } catch (const std::exception& e) {
      SendJson(res, 500, {{"error", e.what()},
                          {"versions", VersionsToJson(service.versions())}});
    }
  };
}

std::string Param(const httplib::Request& req, const char* name) {
  return req.has_param(name) ? req.get_param_value(name) : "";
}

json ParseBody(const httplib::Request& req) {
  if (req.body.empty()) throw ReviewError(400, "empty request body");
  return json::parse(req.body);
}

}  // namespace

void RegisterReviewRoutes(httplib::Server& server, ReviewService& service) {
  server.set_error_handler([&service](const httplib::Request&,
                                      httplib::Response& res) {
    SetVersionHeaders(service, res);
    if (res.body.empty()) {
      SendJson(res, res.status,
               {{"error", httplib::status_message(res.status)},
                {"versions", VersionsToJson(service.versions())}});
    }
  });
  server.Get("/records", Wrap(service, [&service](const httplib::Request& req,
                                                  httplib::Response& res) {
    SendJson(res, 200,
             service.ListRecords(Param(req, "status"), Param(req, "category"),
                                 Param(req, "page"), Param(req, "per")));
  }));
  server.Get(R"(/records/([^/]+))",
             Wrap(service, [&service](const httplib::Request& req,
                                      httplib::Response& res) {
               SendJson(res, 200, service.RecordDetail(req.matches[1]));
             }));
  server.Post(R"(/records/([^/]+)/decision)",
              Wrap(service, [&service](const httplib::Request& req,
                                       httplib::Response& res) {
                SendJson(res, 200,
                         service.PostDecision(req.matches[1], ParseBody(req),
                                              req.get_header_value(kReviewerHeader)));
              }));
  server.Get("/refinements", Wrap(service, [&service](const httplib::Request&,
                                                      httplib::Response& res) {
    SendJson(res, 200, service.ListRefinements());
  }));
  server.Post("/refinements", Wrap(service, [&service](const httplib::Request& req,
                                                       httplib::Response& res) {
    SendJson(res, 200,
             service.PostRefinement(ParseBody(req),
                                    req.get_header_value(kReviewerHeader)));
  }));
  server.Get("/metrics", Wrap(service, [&service](const httplib::Request& req,
                                                  httplib::Response& res) {
    SendJson(res, 200, service.Metrics(Param(req, "standard")));
  }));
  server.Get("/export/decisions",
             Wrap(service, [&service](const httplib::Request&,
                                      httplib::Response& res) {
               res.set_content(service.ExportDecisions(), "application/x-ndjson");
             }));
  server.Get("/export/refinements",
             Wrap(service, [&service](const httplib::Request& req,
                                      httplib::Response& res) {
               std::string type = Param(req, "type");
               if (!type.empty() && type != "lexicon" && type != "rule") {
                 throw ReviewError(400, "type must be lexicon or rule");
               }
               res.set_content(service.ExportRefinements(type == "rule"),
                               "text/plain");
             }));
}

}  // namespace auditcoder
