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

#include <unistd.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "ebr/errors.h"
#include "ebr/service.h"

namespace ebr {
namespace fs = std::filesystem;

std::string_view ModeName(Mode mode) {
  switch (mode) {
    case Mode::kAutonomous: return "autonomous";
    case Mode::kOnTheLoop: return "on-the-loop";
    case Mode::kInTheLoop: return "in-the-loop";
  }
  return "autonomous";
}

Mode ParseMode(std::string_view text) {
  if (text == "autonomous") return Mode::kAutonomous;
  if (text == "on-the-loop") return Mode::kOnTheLoop;
  if (text == "in-the-loop") return Mode::kInTheLoop;
  throw ParseError("unknown mode '" + std::string(text) +
                   "' (autonomous, on-the-loop, in-the-loop)");
}

std::chrono::seconds DefaultVetoWindow(Mode mode) {
  return mode == Mode::kOnTheLoop ? std::chrono::seconds(30)
                                  : std::chrono::seconds(0);
}

Alert ParseAlert(const Json& j) {
  try {
    if (!j.is_object() || !j.contains("statement")) {
      throw ParseError("alert needs a \"statement\"");
    }
    Alert a;
    const Timestamp at = j.contains("received_at")
                             ? Timestamp::Parse(j.at("received_at").get<std::string>())
                             : Timestamp();
    a.observation = ParseObservation(j.value("id", std::string("alert")),
                                     j.at("statement").get<std::string>(), at);
    a.dedup_key = j.value("dedup_key", std::string());
    return a;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("alert: ") + e.what());
  }
}

std::vector<CollectionRequest> AnalysisBundle::Requests() const {
  std::vector<CollectionRequest> out;
  for (const auto& c : candidates) {
    out.insert(out.end(), c.requests.begin(), c.requests.end());
  }
  return out;
}

namespace {

Json StandingJson(const RootStanding& s) {
  return {{"id", s.id},
          {"probability", ToJson(s.probability)},
          {"coverage", {{"answered", s.coverage.answered}, {"total", s.coverage.total}}}};
}

Json WorkJson(const CandidateWork& w) {
  Json steps = Json::array();
  for (const auto& s : w.steps) {
    steps.push_back({{"argument", s.argument},
                     {"node", s.node},
                     {"rule", s.rule},
                     {"bindings", ToJson(s.bindings)}});
  }
  Json requests = Json::array();
  for (const auto& r : w.requests) requests.push_back(ToJson(r));
  return {{"candidate", ToJson(w.candidate)},
          {"steps", steps},
          {"unobserved", std::vector<std::string>(w.unobserved.begin(),
                                                  w.unobserved.end())},
          {"requests", requests},
          {"failures", w.failures}};
}

CandidateWork WorkFrom(const Json& j) {
  CandidateWork w;
  w.candidate = FromJson<HypothesisCandidate>(j.at("candidate"));
  for (const auto& s : j.at("steps")) {
    w.steps.push_back({s.at("argument").get<std::string>(),
                       s.at("node").get<std::string>(),
                       s.at("rule").get<std::string>(),
                       FromJson<Bindings>(s.at("bindings"))});
  }
  for (const auto& u : j.at("unobserved")) w.unobserved.insert(u.get<std::string>());
  for (const auto& r : j.at("requests")) {
    w.requests.push_back(FromJson<CollectionRequest>(r));
  }
  w.failures = j.at("failures").get<std::vector<std::string>>();
  return w;
}

void WriteDurably(const fs::path& path, const std::string& data, bool append) {
  std::FILE* f = std::fopen(path.c_str(), append ? "ab" : "wb");
  if (!f) throw Error("cannot open '" + path.string() + "' for writing");
  const bool ok = std::fwrite(data.data(), 1, data.size(), f) == data.size() &&
                  std::fflush(f) == 0 && ::fsync(::fileno(f)) == 0;
  std::fclose(f);
  if (!ok) throw Error("write to '" + path.string() + "' failed");
}

std::string ReadAll(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<Json> LogLines(const fs::path& path) {
  std::vector<Json> out;
  std::istringstream in(ReadAll(path));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto j = Json::parse(line, nullptr, false);
    if (j.is_discarded()) break;  // torn tail from a crash mid-append
    out.push_back(std::move(j));
  }
  return out;
}

void CheckId(const std::string& id) {
  if (id.empty() || id.find_first_of("/\\.") != std::string::npos) {
    throw NotFound("no analysis '" + id + "'");
  }
}

}  // namespace

Json ToJson(const AnalysisBundle& b) {
  Json candidates = Json::array();
  for (const auto& c : b.candidates) candidates.push_back(WorkJson(c));
  Json evidence = Json::array();
  for (const auto& e : b.evidence) evidence.push_back(ToJson(e));
  Json ranking = Json::array();
  for (const auto& s : b.ranking) ranking.push_back(StandingJson(s));
  Json biases = Json::array();
  for (const auto& f : b.biases) biases.push_back(ToJson(f));
  Json events = Json::array();
  for (const auto& e : b.events) events.push_back(ToJson(e));
  Json audit = Json::array();
  for (const auto& a : b.audit) {
    audit.push_back({{"version", a.version}, {"from", a.from}, {"to", a.to}, {"at", a.at}});
  }
  Json alert = ToJson(b.alert.observation);
  alert["dedup_key"] = b.alert.dedup_key;
  return {{"id", b.id},
          {"version", b.version},
          {"alert", alert},
          {"kb_version", b.kb_version},
          {"mode", std::string(ModeName(b.mode))},
          {"status", b.status},
          {"gate", b.gate},
          {"parked", b.parked},
          {"candidates", candidates},
          {"network", ToJson(b.network)},
          {"evidence", evidence},
          {"evaluation", b.evaluation ? ToJson(*b.evaluation) : Json()},
          {"ranking", ranking},
          {"trace", ToJson(b.trace)},
          {"biases", biases},
          {"sequence", b.sequence},
          {"events", events},
          {"audit", audit}};
}

template <>
AnalysisBundle FromJson<AnalysisBundle>(const Json& j) {
  try {
    AnalysisBundle b;
    b.id = j.at("id").get<std::string>();
    b.version = j.at("version").get<std::uint64_t>();
    b.alert = ParseAlert(j.at("alert"));
    b.kb_version = j.at("kb_version").get<std::string>();
    b.mode = ParseMode(j.at("mode").get<std::string>());
    b.status = j.at("status").get<std::string>();
    b.gate = j.value("gate", std::string());
    b.parked = j.value("parked", std::string());
    for (const auto& c : j.at("candidates")) b.candidates.push_back(WorkFrom(c));
    b.network = FromJson<ArgumentationNetwork>(j.at("network"));
    for (const auto& e : j.at("evidence")) {
      b.evidence.push_back(FromJson<EvidenceEntry>(e));
    }
    if (!j.at("evaluation").is_null()) {
      b.evaluation = FromJson<EvaluationResult>(j.at("evaluation"));
    }
    for (const auto& s : j.at("ranking")) {
      b.ranking.push_back({s.at("id").get<std::string>(),
                           FromJson<Prob>(s.at("probability")),
                           {s.at("coverage").at("answered").get<int>(),
                            s.at("coverage").at("total").get<int>()}});
    }
    b.trace = FromJson<AbductionTrace>(j.at("trace"));
    for (const auto& f : j.at("biases")) b.biases.push_back(FromJson<BiasFinding>(f));
    b.sequence = j.at("sequence").get<std::uint64_t>();
    for (const auto& e : j.at("events")) b.events.push_back(FromJson<ChangeEvent>(e));
    for (const auto& a : j.at("audit")) {
      b.audit.push_back({a.at("version").get<std::uint64_t>(),
                         a.at("from").get<std::string>(),
                         a.at("to").get<std::string>(),
                         a.at("at").get<std::int64_t>()});
    }
    return b;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bundle: ") + e.what());
  }
}

BundleStore::BundleStore(fs::path dir) : dir_(std::move(dir) / "analyses") {
  fs::create_directories(dir_);
}

void BundleStore::Write(const AnalysisBundle& bundle) {
  CheckId(bundle.id);
  const auto current = Load(bundle.id);
  const std::uint64_t expected = current ? current->version + 1 : 1;
  if (bundle.version != expected) {
    throw ContractViolation("bundle " + bundle.id + " version " +
                            std::to_string(bundle.version) + " does not follow " +
                            std::to_string(expected - 1));
  }
  const fs::path dir = dir_ / bundle.id;
  fs::create_directories(dir);
  const Json j = ToJson(bundle);
  WriteDurably(dir / "log.jsonl", j.dump() + "\n", true);
  WriteDurably(dir / "snapshot.json.tmp", Dump(j), false);
  fs::rename(dir / "snapshot.json.tmp", dir / "snapshot.json");
}

std::optional<AnalysisBundle> BundleStore::Load(const std::string& id) const {
  CheckId(id);
  const fs::path dir = dir_ / id;
  if (!fs::exists(dir / "log.jsonl")) return std::nullopt;
  std::optional<AnalysisBundle> snapshot;
  if (fs::exists(dir / "snapshot.json")) {
    auto j = Json::parse(ReadAll(dir / "snapshot.json"), nullptr, false);
    if (!j.is_discarded()) snapshot = FromJson<AnalysisBundle>(j);
  }
  // The snapshot is replaced after the log append, so it can only lag.
  const auto lines = LogLines(dir / "log.jsonl");
  if (lines.empty()) return snapshot;
  const auto last_version = lines.back().at("version").get<std::uint64_t>();
  if (snapshot && snapshot->version == last_version) return snapshot;
  return FromJson<AnalysisBundle>(lines.back());
}

std::vector<AnalysisBundle> BundleStore::History(const std::string& id) const {
  CheckId(id);
  std::vector<AnalysisBundle> out;
  for (const auto& j : LogLines(dir_ / id / "log.jsonl")) {
    out.push_back(FromJson<AnalysisBundle>(j));
  }
  return out;
}

std::vector<std::string> BundleStore::Ids() const {
  std::vector<std::string> out;
  for (const auto& e : fs::directory_iterator(dir_)) {
    if (e.is_directory() && fs::exists(e.path() / "log.jsonl")) {
      out.push_back(e.path().filename().string());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

KbStore::KbStore(fs::path dir) : dir_(std::move(dir) / "kb") {
  fs::create_directories(dir_);
}

std::string KbStore::Put(KnowledgeBase kb) {
  const auto problems = ValidateKnowledgeBase(kb);
  if (!problems.empty()) {
    throw ValidationError("knowledge base rejected:", problems);
  }
  kb.version = KbVersion(kb);
  if (kb.version.find_first_of("/\\") != std::string::npos ||
      kb.version.front() == '.') {
    throw Rejected("knowledge base version '" + kb.version + "' is not a file name");
  }
  std::lock_guard lock(mu_);
  const fs::path file = dir_ / (kb.version + ".json");
  const std::string text = Dump(ToJson(kb));
  if (fs::exists(file)) {
    if (ReadAll(file) != text) {
      throw Rejected("knowledge base version '" + kb.version +
                     "' already exists with different content");
    }
  } else {
    WriteDurably(dir_ / "kb.tmp", text, false);
    fs::rename(dir_ / "kb.tmp", file);
  }
  WriteDurably(dir_ / "CURRENT.tmp", kb.version + "\n", false);
  fs::rename(dir_ / "CURRENT.tmp", dir_ / "CURRENT");
  cache_[kb.version] = kb;
  return kb.version;
}

KnowledgeBase KbStore::Current() const {
  std::string version;
  {
    std::lock_guard lock(mu_);
    std::ifstream in(dir_ / "CURRENT");
    if (!in || !std::getline(in, version) || version.empty()) {
      throw NotFound("no knowledge base loaded");
    }
  }
  return Get(version);
}

KnowledgeBase KbStore::Get(const std::string& version) const {
  std::lock_guard lock(mu_);
  if (auto it = cache_.find(version); it != cache_.end()) return it->second;
  const fs::path file = dir_ / (version + ".json");
  if (version.empty() || version.find('/') != std::string::npos ||
      !fs::exists(file)) {
    throw NotFound("no knowledge base version '" + version + "'");
  }
  KnowledgeBase kb = FromJson<KnowledgeBase>(ReadJsonFile(file));
  cache_[version] = kb;
  return kb;
}

bool KbStore::Empty() const {
  std::lock_guard lock(mu_);
  return !fs::exists(dir_ / "CURRENT");
}

}  // namespace ebr
