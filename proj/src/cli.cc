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

#include "auditcoder/cli.h"

#include <cstdio>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"

#include "auditcoder/generator.h"
#include "auditcoder/results_io.h"
#include "auditcoder/review_http.h"
#include "auditcoder/review_service.h"
#include "auditcoder/workspace.h"

namespace auditcoder {

namespace {

// Carries an exit status out of a command.
struct CommandFailure {
  int status;
  std::string message;
};

[[noreturn]] void Fail(int status, std::string message) {
  throw CommandFailure{status, std::move(message)};
}

Workspace LoadConfigured(const std::string& config_flag) {
  std::string path = ResolveConfigPath(config_flag);
  if (path.empty()) {
    Fail(kExitUsage, std::string("no configuration: pass --config or set ") +
                         kConfigEnvVar);
  }
  try {
    return LoadWorkspace(path);
  } catch (const std::exception& e) {
    Fail(kExitUsage, std::string("configuration error: ") + e.what());
  }
}

std::vector<AdmissionRecord> LoadCorpus(const std::string& path) {
  try {
    return IngestAdmissions(path);
  } catch (const std::exception& e) {
    Fail(kExitData, e.what());
  }
}

std::vector<StoredResult> LoadStored(const std::string& path) {
  try {
    return LoadResults(path);
  } catch (const std::exception& e) {
    Fail(kExitData, e.what());
  }
}

void Write(const std::string& path, std::string_view contents) {
  try {
    WriteFile(path, contents);
  } catch (const std::exception& e) {
    Fail(kExitData, e.what());
  }
}

std::string Percent(size_t num, size_t den) {
  if (den == 0) return "n/a";
  std::ostringstream os;
  os << std::fixed << std::setprecision(1) << 100.0 * num / den << '%';
  return os.str();
}

struct ClassifyArgs {
  std::string input, config, out;
  unsigned threads = 0;
};

int Classify(const ClassifyArgs& a, std::ostream& out, std::ostream& err) {
  Workspace ws = LoadConfigured(a.config);
  auto records = LoadCorpus(a.input);
  auto corpus = ClassifyCorpus(records, ws.pipeline, a.threads);
  std::string text;
  for (const auto& r : corpus.results) text += FormatResultLine(r) + "\n";
  Write(a.out, text);

  const CorpusSummary& s = corpus.summary;
  out << "records: " << s.records << "\n";
  out << "records without category: " << s.records_without_category << "\n";
  out << "categories:\n";
  for (const auto& [cat, n] : s.category_histogram) {
    out << "  " << cat << "\t" << n << "\n";
  }
  out << "unresolved tokens: " << s.unresolved_tokens << " / "
      << s.content_tokens << " ("
      << Percent(s.unresolved_tokens, s.content_tokens) << ")\n";
  out << "versions: " << ws.pipeline.versions().lexicon << " "
      << ws.pipeline.versions().rules << " " << ws.pipeline.versions().config
      << "\n";
  for (const auto& f : s.failures) err << "warning: " << f << "\n";
  return kExitOk;
}

struct EvaluateArgs {
  std::string results, corpus, standard = "A", config, decisions, report;
};

std::vector<StandardKind> ParseKinds(const std::string& text) {
  if (Lowercase(text) == "all") {
    return {StandardKind::kA, StandardKind::kB, StandardKind::kC};
  }
  std::vector<StandardKind> kinds;
  for (const auto& part : Split(text, ',')) {
    auto k = ParseStandardKind(Trim(part));
    if (!k) Fail(kExitUsage, "standard must be A, B, C or all: " + text);
    kinds.push_back(*k);
  }
  if (kinds.empty()) Fail(kExitUsage, "standard must be A, B, C or all");
  return kinds;
}

int Evaluate(const EvaluateArgs& a, std::ostream& out, std::ostream& err) {
  auto kinds = ParseKinds(a.standard);
  Workspace ws = LoadConfigured(a.config);
  auto records = LoadCorpus(a.corpus);
  auto stored = LoadStored(a.results);

  std::set<std::string> corpus_ids, result_ids;
  for (const auto& r : records) corpus_ids.insert(r.admission_id);
  for (const auto& r : stored) result_ids.insert(r.admission_id);
  std::vector<std::string> missing, extra;
  for (const auto& id : corpus_ids) {
    if (!result_ids.count(id)) missing.push_back(id);
  }
  for (const auto& id : result_ids) {
    if (!corpus_ids.count(id)) extra.push_back(id);
  }
  if (!missing.empty() || !extra.empty()) {
    std::string msg = "results do not cover the corpus";
    if (!missing.empty()) msg += "\nmissing from results: " + Join(missing, ", ");
    if (!extra.empty()) msg += "\nnot in corpus: " + Join(extra, ", ");
    Fail(kExitData, msg);
  }
  for (const auto& r : stored) {
    if (!(r.versions == ws.pipeline.versions())) {
      err << "warning: results were produced with different versions ("
          << r.versions.lexicon << " " << r.versions.rules << " "
          << r.versions.config << ")\n";
      break;
    }
  }

  std::vector<StandardItem> items;
  std::vector<std::string> excluded;
  if (!a.decisions.empty()) {
    try {
      items = DecisionItems(ParseDecisions(ReadFile(a.decisions)), records);
    } catch (const std::exception& e) {
      Fail(kExitData, a.decisions + ": " + e.what());
    }
  } else {
    items = MappedItems(records, ws.codes, &excluded);
  }
  std::map<std::string, std::set<std::string>> terms;
  for (auto k : kinds) {
    if (k == StandardKind::kB) {
      terms = NoteTerms(ClassifyCorpus(records, ws.pipeline).results);
      break;
    }
  }

  CalculatedCategories calc;
  std::vector<EvaluationReport> reports;
  try {
    calc = ToCalculated(stored);
    for (auto k : kinds) {
      reports.push_back(Score(BuildStandard(items, terms, k), calc,
                              ws.alternatives, ws.approvals));
    }
  } catch (const std::exception& e) {
    Fail(kExitData, e.what());
  }
  out << FormatReportTable(reports);
  if (!excluded.empty()) {
    out << "excluded (no mapped category): " << excluded.size() << "\n";
  }
  for (auto k : kinds) {
    if (k != StandardKind::kC) continue;
    auto other = OtherRecode(BuildStandard(items, terms, k), calc,
                             ws.alternatives, ws.approvals);
    out << "OTHER records: " << other.total_other
        << "\twith specific category: " << other.with_specific
        << "\tapproved recodes: " << other.approved << "\n";
  }
  if (!a.report.empty()) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& r : reports) j.push_back(ReportToJson(r));
    Write(a.report, j.dump(2) + "\n");
  }
  return kExitOk;
}

struct QueryArgs {
  std::string category, results, input, config;
};

int Query(const QueryArgs& a, std::ostream& out) {
  AuditCategory want;
  try {
    want = AuditCategory::Parse(a.category);
  } catch (const ParseError& e) {
    Fail(kExitUsage, std::string("malformed category: ") + e.what());
  }
  if (a.results.empty() == a.input.empty()) {
    Fail(kExitUsage, "query needs exactly one of --results or --input");
  }
  std::vector<std::pair<std::string, std::vector<AuditCategory>>> rows;
  if (!a.results.empty()) {
    for (auto& r : LoadStored(a.results)) {
      rows.emplace_back(r.admission_id, std::move(r.categories));
    }
  } else {
    Workspace ws = LoadConfigured(a.config);
    for (const auto& r : ClassifyCorpus(LoadCorpus(a.input), ws.pipeline).results) {
      rows.emplace_back(r.admission_id, r.CategoryList());
    }
  }
  for (const auto& [id, cats] : rows) {
    for (const auto& c : cats) {
      if (want.IsPrefixOf(c)) {
        out << id << "\n";
        break;
      }
    }
  }
  return kExitOk;
}

struct GenerateArgs {
  std::uint64_t seed = 1;
  size_t size = 100;
  double noise = 0.0;
  std::string out, truth, config;
};

int Generate(const GenerateArgs& a, std::ostream& out) {
  if (a.size < 1) Fail(kExitUsage, "size must be at least 1");
  if (!(a.noise >= 0.0 && a.noise <= 1.0)) {
    Fail(kExitUsage, "noise must be within 0..1");
  }
  Workspace ws = LoadConfigured(a.config);
  GeneratorOptions options;
  options.seed = a.seed;
  options.size = a.size;
  options.noise_rate = a.noise;
  GeneratedCorpus corpus;
  try {
    corpus = GenerateCorpus(options, ws.pipeline.store(), ws.pipeline.rules(),
                            ws.codes);
  } catch (const std::exception& e) {
    Fail(kExitUsage, e.what());
  }
  std::string truth = a.truth.empty() ? a.out + ".truth.csv" : a.truth;
  Write(a.out, corpus.CorpusCsv());
  Write(truth, corpus.GroundTruthCsv());
  size_t perturbed = 0;
  for (const auto& r : corpus.records) {
    if (r.perturbation != PerturbationKind::kNone) ++perturbed;
  }
  out << "generated " << corpus.records.size() << " records (" << perturbed
      << " perturbed) -> " << a.out << ", " << truth << "\n";
  return kExitOk;
}

int Validate(const std::string& config_flag, std::ostream& out) {
  std::string path = ResolveConfigPath(config_flag);
  if (path.empty()) {
    Fail(kExitUsage, std::string("no configuration: pass --config or set ") +
                         kConfigEnvVar);
  }
  ValidationReport report = ValidateConfig(path);
  for (const auto& e : report.errors) out << "error: " << e << "\n";
  for (const auto& w : report.warnings) out << "warning: " << w << "\n";
  for (const auto& s : report.summary) out << s << "\n";
  if (!report.ok()) {
    out << report.errors.size() << " error(s)\n";
    return kExitUsage;
  }
  out << "OK\n";
  return kExitOk;
}

struct ServeArgs {
  std::string host = "127.0.0.1", state, input, config;
  int port = 8080;
};

int Serve(const ServeArgs& a, std::ostream& out) {
  Workspace ws = LoadConfigured(a.config);
  auto records = LoadCorpus(a.input);
  std::unique_ptr<ReviewService> service;
  try {
    service = std::make_unique<ReviewService>(std::move(ws), std::move(records),
                                              a.state);
  } catch (const std::exception& e) {
    Fail(kExitData, e.what());
  }
  httplib::Server server;
  RegisterReviewRoutes(server, *service);
  if (!server.bind_to_port(a.host, a.port)) {
    Fail(kExitUsage, "cannot bind " + a.host + ":" + std::to_string(a.port));
  }
  out << "serving " << service->results().size() << " records on http://"
      << a.host << ":" << a.port << "\n"
      << std::flush;
  server.listen_after_bind();
  return kExitOk;
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Audit category classification of admission notes"};
  app.require_subcommand(1);
  std::string config_help =
      std::string("configuration file (default: $") + kConfigEnvVar + ")";

  ClassifyArgs classify;
  auto* c = app.add_subcommand("classify", "classify an admissions file");
  c->add_option("--input", classify.input, "admissions CSV")->required();
  c->add_option("--config", classify.config, config_help);
  c->add_option("--out", classify.out, "results file (JSON lines)")->required();
  c->add_option("--threads", classify.threads, "worker threads (0 = all cores)");

  EvaluateArgs evaluate;
  auto* e = app.add_subcommand("evaluate", "score results against a reference standard");
  e->add_option("--results", evaluate.results, "results file")->required();
  e->add_option("--corpus", evaluate.corpus, "admissions CSV")->required();
  e->add_option("--standard", evaluate.standard, "A, B, C, a comma list, or all");
  e->add_option("--config", evaluate.config, config_help);
  e->add_option("--decisions", evaluate.decisions,
                "exported review decisions used as ground truth");
  e->add_option("--report", evaluate.report, "write the report as JSON");

  QueryArgs query;
  auto* q = app.add_subcommand("query", "list records whose categories fall under a category");
  q->add_option("--category", query.category, "audit category")->required();
  q->add_option("--results", query.results, "results file");
  q->add_option("--input", query.input, "admissions CSV (classified on the fly)");
  q->add_option("--config", query.config, config_help);

  GenerateArgs generate;
  auto* g = app.add_subcommand("generate", "write a synthetic corpus with ground truth");
  g->add_option("--seed", generate.seed, "random seed");
  g->add_option("--size", generate.size, "number of records");
  g->add_option("--noise", generate.noise, "fraction of perturbed records");
  g->add_option("--out", generate.out, "corpus CSV")->required();
  g->add_option("--truth", generate.truth, "ground-truth CSV (default: <out>.truth.csv)");
  g->add_option("--config", generate.config, config_help);

  std::string validate_config;
  auto* v = app.add_subcommand("validate", "load and check every configured artifact");
  v->add_option("--config", validate_config, config_help);

  ServeArgs serve;
  auto* s = app.add_subcommand("serve", "run the review service");
  s->add_option("--port", serve.port, "TCP port");
  s->add_option("--host", serve.host, "bind address");
  s->add_option("--state", serve.state, "journal directory")->required();
  s->add_option("--input", serve.input, "admissions CSV")->required();
  s->add_option("--config", serve.config, config_help);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& ex) {
    int code = app.exit(ex, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*c) return Classify(classify, out, err);
    if (*e) return Evaluate(evaluate, out, err);
    if (*q) return Query(query, out);
    if (*g) return Generate(generate, out);
    if (*v) return Validate(validate_config, out);
    if (*s) return Serve(serve, out);
  } catch (const CommandFailure& f) {
    err << "error: " << f.message << "\n";
    return f.status;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace auditcoder
