// Copyright 2026 The EBR Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// ebr: command-line front end. Every flag also reads EBR_<FLAG> from the
// environment when it is not given.

#include <unistd.h>

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "ebr/errors.h"
#include "ebr/http.h"
#include "ebr/service.h"

namespace fs = std::filesystem;
using namespace ebr;

namespace {

void WriteText(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out.flush()) throw Error("cannot write '" + path + "'");
}

struct AnalyzeArgs {
  std::string kb, alert, evidence, out = "-", bundle, data;
  int workers = 1;
};

int Analyze(const AnalyzeArgs& a) {
  const bool scratch = a.data.empty();
  const fs::path data =
      scratch ? fs::temp_directory_path() /
                    ("ebr-analyze-" + std::to_string(::getpid()))
              : fs::path(a.data);
  if (scratch) fs::remove_all(data);
  int rc = 0;
  {
    ServiceConfig config;
    config.data_dir = data;
    config.workers = a.workers;
    ReasonerService service(config);
    service.PutKb(FromJson<KnowledgeBase>(ReadJsonFile(a.kb)));
    if (!a.evidence.empty()) service.LoadEvidence(ReadJsonFile(a.evidence));
    const auto submitted = service.SubmitAlert(ReadJsonFile(a.alert));
    service.Run(submitted.id);
    const auto bundle = service.Get(submitted.id);
    if (!bundle.parked.empty()) {
      std::cerr << "analysis " << bundle.id << " parked: " << bundle.parked << "\n";
      rc = 1;
    } else {
      WriteText(a.out, RenderReport(BuildReport(bundle)));
      if (!a.bundle.empty()) WriteText(a.bundle, Dump(ToJson(bundle)));
    }
  }
  if (scratch) fs::remove_all(data);
  return rc;
}

struct ServeArgs {
  std::string host = "127.0.0.1", data = "ebr-data", mode = "autonomous", kb,
              evidence;
  int port = 8080, workers = 1, veto = -1;
};

int ServeCommand(const ServeArgs& a) {
  ServiceConfig config;
  config.data_dir = a.data;
  config.mode = ParseMode(a.mode);
  config.workers = a.workers;
  if (a.veto >= 0) config.veto_window = std::chrono::seconds(a.veto);
  ReasonerService service(config);
  if (!a.kb.empty()) service.PutKb(FromJson<KnowledgeBase>(ReadJsonFile(a.kb)));
  if (!a.evidence.empty()) service.LoadEvidence(ReadJsonFile(a.evidence));
  service.Start();
  std::cerr << "ebr serving on " << a.host << ":" << a.port << " (" << a.mode
            << ", data " << a.data << ")\n";
  Serve(service, a.host, a.port);
  return 0;
}

int ValidateKb(const std::string& file) {
  const auto kb = FromJson<KnowledgeBase>(ReadJsonFile(file));
  const auto problems = ValidateKnowledgeBase(kb);
  for (const auto& p : problems) std::cout << p << "\n";
  if (!problems.empty()) return 1;
  std::cout << "ok " << KbVersion(kb) << ": " << kb.explanation_rules.size()
            << " explanation rules, " << kb.decomposition_rules.size()
            << " decomposition rules, " << kb.cases.size() << " cases, "
            << kb.patterns.size() << " patterns, " << kb.profiles.size()
            << " profiles\n";
  return 0;
}

int EvalNetwork(const std::string& file) {
  const auto network = FromJson<ArgumentationNetwork>(ReadJsonFile(file));
  const auto eval = Evaluate(network);
  Json out = {{"evaluation", ToJson(eval)}};
  if (!network.competing_roots().empty()) {
    Json ranking = Json::array();
    for (const auto& s : CompareCompeting(network, eval)) {
      ranking.push_back({{"id", s.id},
                         {"probability", ToJson(s.probability)},
                         {"coverage",
                          {{"answered", s.coverage.answered},
                           {"total", s.coverage.total}}}});
    }
    out["ranking"] = ranking;
  }
  std::cout << Dump(out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Evidence-based reasoning engine"};
  app.require_subcommand(1);

  AnalyzeArgs analyze;
  auto* an = app.add_subcommand("analyze", "Run one alert to a report");
  an->add_option("--kb", analyze.kb, "Knowledge base file")
      ->envname("EBR_KB")->required();
  an->add_option("--alert", analyze.alert, "Alert document")
      ->envname("EBR_ALERT")->required();
  an->add_option("--evidence", analyze.evidence, "Evidence repository document")
      ->envname("EBR_EVIDENCE");
  an->add_option("--out", analyze.out, "Report text output, - for stdout")
      ->envname("EBR_OUT")->capture_default_str();
  an->add_option("--bundle", analyze.bundle, "Also write the concluded bundle")
      ->envname("EBR_BUNDLE");
  an->add_option("--data", analyze.data, "Keep state here instead of a scratch dir")
      ->envname("EBR_DATA");
  an->add_option("--workers", analyze.workers, "Candidate workers")
      ->envname("EBR_WORKERS")->check(CLI::PositiveNumber)->capture_default_str();

  ServeArgs serve;
  auto* sv = app.add_subcommand("serve", "Run the HTTP service");
  sv->add_option("--port", serve.port, "Listen port")
      ->envname("EBR_PORT")->capture_default_str();
  sv->add_option("--host", serve.host, "Listen address")
      ->envname("EBR_HOST")->capture_default_str();
  sv->add_option("--data", serve.data, "State directory")
      ->envname("EBR_DATA")->capture_default_str();
  sv->add_option("--mode", serve.mode, "autonomous, on-the-loop or in-the-loop")
      ->envname("EBR_MODE")
      ->check(CLI::IsMember({"autonomous", "on-the-loop", "in-the-loop"}))
      ->capture_default_str();
  sv->add_option("--workers", serve.workers, "Candidate workers")
      ->envname("EBR_WORKERS")->check(CLI::PositiveNumber)->capture_default_str();
  sv->add_option("--veto-window", serve.veto, "Seconds; default per mode")
      ->envname("EBR_VETO_WINDOW");
  sv->add_option("--kb", serve.kb, "Knowledge base to install at start")
      ->envname("EBR_KB");
  sv->add_option("--evidence", serve.evidence, "Evidence document to load at start")
      ->envname("EBR_EVIDENCE");

  std::string kb_file;
  auto* vk = app.add_subcommand("validate-kb", "Check a knowledge base file");
  vk->add_option("file", kb_file)->required();

  std::string network_file;
  auto* en = app.add_subcommand("eval-network", "Evaluate a network file");
  en->add_option("file", network_file)->required();

  CLI11_PARSE(app, argc, argv);
  try {
    if (an->parsed()) return Analyze(analyze);
    if (sv->parsed()) return ServeCommand(serve);
    if (vk->parsed()) return ValidateKb(kb_file);
    if (en->parsed()) return EvalNetwork(network_file);
  } catch (const ValidationError& e) {
    std::cerr << "ebr: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "ebr: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
