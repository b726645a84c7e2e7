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

#include "ebr/service.h"

#include <algorithm>
#include <fstream>

#include "ebr/errors.h"

namespace ebr {
namespace fs = std::filesystem;
namespace {

std::int64_t NowSeconds() {
  return std::chrono::duration_cast<std::chrono::seconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

bool Runnable(const AnalysisBundle& b) {
  return b.parked.empty() && b.status != kStatusConcluded &&
         b.status != kStatusAwaitingHuman;
}

struct Task {
  std::size_t index;
  int attempt;
};

}  // namespace

ReasonerService::ReasonerService(ServiceConfig config)
    : config_(std::move(config)),
      bundles_(config_.data_dir),
      kbs_(config_.data_dir) {
  if (config_.workers < 1) throw Rejected("workers must be at least 1");
  if (!(config_.coverage_threshold > 0.0 && config_.coverage_threshold <= 1.0)) {
    throw Rejected("coverage threshold must lie in (0, 1]");
  }
  const fs::path saved = config_.data_dir / "evidence.json";
  if (fs::exists(saved)) {
    const Json doc = ReadJsonFile(saved);
    for (const auto& p : doc.at("profiles")) {
      repo_.UpsertProfile(FromJson<SourceProfile>(p));
    }
    for (const auto& e : doc.at("items")) repo_.Upsert(FromJson<EvidenceEntry>(e));
  }
}

ReasonerService::~ReasonerService() { Stop(); }

std::string ReasonerService::PutKb(KnowledgeBase kb) {
  return kbs_.Put(std::move(kb));
}

KnowledgeBase ReasonerService::CurrentKb() const { return kbs_.Current(); }

void ReasonerService::PersistEvidence() {
  const fs::path tmp = config_.data_dir / "evidence.json.tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << Dump(RepositoryToJson(repo_));
    if (!out.flush()) throw Error("cannot write " + tmp.string());
  }
  fs::rename(tmp, config_.data_dir / "evidence.json");
}

void ReasonerService::LoadEvidence(const Json& document) {
  std::lock_guard lock(evidence_mu_);
  const KnowledgeBase kb = kbs_.Empty() ? KnowledgeBase{} : kbs_.Current();
  LoadRepository(document, kb, repo_);
  PersistEvidence();
}

std::mutex& ReasonerService::LockFor(const std::string& id) {
  std::lock_guard lock(locks_mu_);
  auto& m = locks_[id];
  if (!m) m = std::make_unique<std::mutex>();
  return *m;
}

SubmitResult ReasonerService::SubmitAlert(const Json& alert_doc) {
  const Alert alert = ParseAlert(alert_doc);
  if (kbs_.Empty()) throw Rejected("no knowledge base loaded");
  const KnowledgeBase kb = kbs_.Current();
  const std::string key = alert.observation.id + "\n" +
                          Canonical(alert.observation.statement) + "\n" +
                          alert.observation.received_at.str() + "\n" +
                          kb.version + "\n" + alert.dedup_key;
  const std::string id = "a-" + Hex64(Fnv1a64(key));
  {
    std::lock_guard lock(LockFor(id));
    if (bundles_.Load(id)) return {id, false};
    AnalysisBundle b;
    b.id = id;
    b.version = 1;
    b.alert = alert;
    b.kb_version = kb.version;
    b.mode = config_.mode;
    b.audit.push_back({1, "", kStatusQueued, NowSeconds()});
    bundles_.Write(b);
  }
  Enqueue(id);
  return {id, true};
}

void ReasonerService::Transition(AnalysisBundle& b, const std::string& to) {
  b.audit.push_back({b.version + 1, b.status, to, NowSeconds()});
  b.status = to;
  ++b.version;
  bundles_.Write(b);
  settled_cv_.notify_all();
  if (config_.on_transition) config_.on_transition(b.id, to);
}

void ReasonerService::Generate(AnalysisBundle& b, const KnowledgeBase& kb) {
  b.candidates.clear();
  for (auto& c : Abduce(b.alert.observation, kb.explanation_rules, 1)) {
    for (auto& r : AnalogicalRefine(c, kb.cases)) {
      b.candidates.push_back({std::move(r), {}, {}, {}, {}});
    }
  }
}

void ReasonerService::CollectStage(AnalysisBundle& b, const KnowledgeBase& kb) {
  const std::size_t n = b.candidates.size();
  std::vector<ArgumentationNetwork> networks(n);
  std::vector<std::vector<CollectedHit>> hits(n);
  std::deque<Task> tasks;
  for (std::size_t i = 0; i < n; ++i) tasks.push_back({i, 1});
  std::mutex mu;
  std::vector<std::string> errors;

  auto work = [&] {
    for (;;) {
      Task t;
      {
        std::lock_guard lock(mu);
        if (tasks.empty()) return;
        t = tasks.front();
        tasks.pop_front();
      }
      CandidateWork& w = b.candidates[t.index];
      try {
        if (config_.on_candidate) config_.on_candidate(w.candidate.id, t.attempt);
        Decomposition d = Decompose(w.candidate, kb.decomposition_rules,
                                    config_.decomposition_depth);
        auto requests = GenerateRequests(d.network, {repo_.id()},
                                         b.alert.observation.received_at, {},
                                         d.unobserved);
        auto collected = Collect(requests, repo_, d.network);
        AttachEvidence(d.network, collected.hits);
        w.steps = std::move(d.steps);
        w.unobserved = std::move(d.unobserved);
        w.requests = std::move(collected.requests);
        w.failures = std::move(collected.failures);
        networks[t.index] = std::move(d.network);
        hits[t.index] = std::move(collected.hits);
      } catch (const WorkerCrash& e) {
        std::lock_guard lock(mu);
        if (t.attempt < config_.max_attempts) {
          tasks.push_back({t.index, t.attempt + 1});
        } else {
          errors.push_back(w.candidate.id + ": " + e.what());
        }
      } catch (const std::exception& e) {
        std::lock_guard lock(mu);
        errors.push_back(w.candidate.id + ": " + e.what());
      }
    }
  };
  // A crashed task goes back on the queue, so keep draining until both the
  // queue and every worker are done.
  for (;;) {
    const std::size_t count =
        std::min<std::size_t>(config_.workers, std::max<std::size_t>(tasks.size(), 1));
    std::vector<std::thread> pool;
    for (std::size_t i = 1; i < count; ++i) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    if (tasks.empty()) break;
  }
  if (!errors.empty()) {
    std::sort(errors.begin(), errors.end());
    throw Error("candidate development failed: " + errors.front());
  }

  b.network = ArgumentationNetwork();
  std::map<std::string, EvidenceEntry> entries;
  for (std::size_t i = 0; i < n; ++i) {
    b.network.Merge(networks[i]);
    b.network.AddCompetingRoot(b.candidates[i].candidate.id);
    for (const auto& h : hits[i]) entries.emplace(h.entry.item.id, h.entry);
  }
  b.evidence.clear();
  for (auto& [id, e] : entries) b.evidence.push_back(std::move(e));
}

void ReasonerService::Refresh(AnalysisBundle& b) {
  const EvaluationResult& eval = *b.evaluation;
  b.ranking.clear();
  if (!b.network.competing_roots().empty()) {
    b.ranking = CompareCompeting(b.network, eval);
  }

  std::map<std::string, const CandidateWork*> work;
  for (const auto& c : b.candidates) work[c.candidate.id] = &c;
  InvestigationStep step;
  step.index = 1;
  step.observations = {b.alert.observation};
  for (const auto& s : b.ranking) {
    const auto& c = work.at(s.id)->candidate;
    CandidateSummary sum;
    sum.id = s.id;
    sum.statement = Canonical(c.statement);
    sum.description = c.description;
    sum.species = c.species.Name();
    sum.probability = s.probability;
    sum.coverage = s.coverage;
    std::set<std::string> items;
    for (const auto& node : b.network.Subtree(s.id)) {
      for (const auto& l : b.network.LinksOf(node)) {
        items.insert(b.network.link(l).evidence);
      }
    }
    sum.evidence.assign(items.begin(), items.end());
    sum.survived = true;
    step.selected.push_back(s.id);
    step.verified = step.verified || s.coverage.answered > 0;
    step.candidates.push_back(std::move(sum));
  }
  b.trace = AbductionTrace();
  b.trace.candidates_examined = static_cast<int>(b.candidates.size());
  if (b.candidates.empty()) {
    b.trace.stop_reason = kStopNoExplanation;
  } else {
    const bool confident =
        std::any_of(b.ranking.begin(), b.ranking.end(), [](const RootStanding& s) {
          return s.probability >= Prob::kAlmostCertain;
        });
    b.trace.stop_reason = confident ? kStopConfident : kStopMaxDepth;
    b.trace.steps.push_back(std::move(step));
  }
  const auto requests = b.Requests();
  b.biases = DetectBiases(b.network, requests, b.trace, eval,
                          config_.coverage_threshold);
}

void ReasonerService::Analyze(AnalysisBundle& b) {
  b.evaluation = Evaluate(b.network);
  Refresh(b);
}

bool ReasonerService::Step(const std::string& id) {
  std::lock_guard lock(LockFor(id));
  auto loaded = bundles_.Load(id);
  if (!loaded) throw NotFound("no analysis '" + id + "'");
  AnalysisBundle b = std::move(*loaded);
  if (!Runnable(b)) return false;
  const std::string at = b.status;
  try {
    if (at == kStatusQueued) {
      Transition(b, kStatusGenerating);
    } else if (at == kStatusGenerating) {
      Generate(b, kbs_.Get(b.kb_version));
      Transition(b, kStatusCollecting);
    } else if (at == kStatusCollecting) {
      CollectStage(b, kbs_.Get(b.kb_version));
      if (b.mode == Mode::kInTheLoop) {
        b.gate = kGatePruning;
        Transition(b, kStatusAwaitingHuman);
      } else {
        Transition(b, kStatusAnalyzing);
      }
    } else if (at == kStatusAnalyzing) {
      Analyze(b);
      if (b.mode == Mode::kInTheLoop) {
        b.gate = kGateConclusion;
        Transition(b, kStatusAwaitingHuman);
      } else {
        Transition(b, kStatusConcluded);
      }
    } else {
      throw ContractViolation("unknown status '" + at + "'");
    }
  } catch (const std::exception& e) {
    auto fresh = bundles_.Load(id);
    fresh->parked = "stage " + at + " failed: " + e.what();
    ++fresh->version;
    bundles_.Write(*fresh);
    settled_cv_.notify_all();
    return false;
  }
  return true;
}

void ReasonerService::Run(const std::string& id) {
  while (Step(id)) {
  }
}

void ReasonerService::RunPending() {
  for (const auto& id : bundles_.Ids()) {
    if (Runnable(*bundles_.Load(id))) Run(id);
  }
}

void ReasonerService::Enqueue(const std::string& id) {
  std::lock_guard lock(queue_mu_);
  if (!dispatcher_.joinable()) return;
  queue_.push_back(id);
  queue_cv_.notify_one();
}

void ReasonerService::Dispatch() {
  for (;;) {
    std::string id;
    {
      std::unique_lock lock(queue_mu_);
      queue_cv_.wait(lock, [&] { return stopping_ || !queue_.empty(); });
      if (stopping_) return;
      id = queue_.front();
      queue_.pop_front();
    }
    try {
      Run(id);
    } catch (const std::exception&) {
      // The bundle carries the failure; nothing else to report here.
    }
    settled_cv_.notify_all();
  }
}

void ReasonerService::Start() {
  {
    std::lock_guard lock(queue_mu_);
    if (dispatcher_.joinable()) return;
    stopping_ = false;
    dispatcher_ = std::thread([this] { Dispatch(); });
  }
  for (const auto& id : bundles_.Ids()) {
    if (Runnable(*bundles_.Load(id))) Enqueue(id);
  }
}

void ReasonerService::Stop() {
  {
    std::lock_guard lock(queue_mu_);
    if (!dispatcher_.joinable()) return;
    stopping_ = true;
  }
  queue_cv_.notify_all();
  dispatcher_.join();
  std::lock_guard lock(queue_mu_);
  dispatcher_ = std::thread();
  queue_.clear();
}

AnalysisBundle ReasonerService::WaitSettled(const std::string& id,
                                            std::chrono::milliseconds timeout) {
  const auto deadline = std::chrono::steady_clock::now() + timeout;
  for (;;) {
    AnalysisBundle b = Get(id);
    if (!Runnable(b) || std::chrono::steady_clock::now() >= deadline) return b;
    std::unique_lock lock(queue_mu_);
    settled_cv_.wait_for(lock, std::chrono::milliseconds(20));
  }
}

AnalysisBundle ReasonerService::Get(const std::string& id) const {
  auto b = bundles_.Load(id);
  if (!b) throw NotFound("no analysis '" + id + "'");
  return *b;
}

std::vector<AnalysisBundle> ReasonerService::History(const std::string& id) const {
  auto out = bundles_.History(id);
  if (out.empty()) throw NotFound("no analysis '" + id + "'");
  return out;
}

AssumptionResult ReasonerService::PostAssumption(const std::string& id,
                                                 const std::string& node,
                                                 std::optional<Prob> value) {
  std::lock_guard lock(LockFor(id));
  AnalysisBundle b = Get(id);
  if (!b.evaluation) {
    throw Rejected("analysis " + id + " has not been evaluated yet");
  }
  if (!b.network.HasNode(node)) {
    throw Rejected("analysis " + id + " has no node '" + node + "'");
  }
  b.evaluation = WhatIf(b.network, {{node, value}});
  b.network.SetAssumption(node, value);
  Refresh(b);
  ++b.version;
  bundles_.Write(b);
  return {*b.evaluation, b.ranking, b.version};
}

AnalysisBundle ReasonerService::Resume(const std::string& id,
                                       const std::string& action,
                                       const std::string& reason) {
  AnalysisBundle b;
  {
    std::lock_guard lock(LockFor(id));
    b = Get(id);
    if (action == "approve") {
      if (!b.parked.empty()) {
        b.parked.clear();
        ++b.version;
        bundles_.Write(b);
      } else if (b.status == kStatusAwaitingHuman) {
        const std::string next =
            b.gate == kGatePruning ? kStatusAnalyzing : kStatusConcluded;
        b.gate.clear();
        Transition(b, next);
      } else {
        throw Rejected("analysis " + id + " is not waiting for approval");
      }
    } else if (action == "veto") {
      if (!b.parked.empty()) throw Rejected("analysis " + id + " is already parked");
      bool allowed = b.status == kStatusAwaitingHuman;
      if (!allowed && b.mode == Mode::kOnTheLoop) {
        const auto window = config_.veto_window.value_or(DefaultVetoWindow(b.mode));
        allowed = NowSeconds() - b.audit.back().at <= window.count();
        if (!allowed) {
          throw Rejected("veto window of " + std::to_string(window.count()) +
                         " s after the last transition has expired");
        }
      }
      if (!allowed) throw Rejected("analysis " + id + " cannot be vetoed");
      b.parked = "vetoed" + (reason.empty() ? std::string() : ": " + reason);
      ++b.version;
      bundles_.Write(b);
    } else {
      throw Rejected("unknown action '" + action + "' (approve, veto)");
    }
  }
  settled_cv_.notify_all();
  if (Runnable(b)) Enqueue(id);
  return b;
}

std::vector<std::string> ReasonerService::IngestEvidence(const Json& item) {
  std::lock_guard evidence_lock(evidence_mu_);
  const KnowledgeBase kb = kbs_.Empty() ? KnowledgeBase{} : kbs_.Current();
  const auto profiles = repo_.Profiles();
  const EvidenceEntry entry = ResolveEntry(item, kb, profiles);
  const UpsertResult result = repo_.Upsert(entry);
  PersistEvidence();
  if (result == UpsertResult::kUnchanged) return {};

  std::vector<std::string> affected;
  for (const auto& id : bundles_.Ids()) {
    std::lock_guard lock(LockFor(id));
    AnalysisBundle b = Get(id);
    if (b.network.nodes().empty()) continue;
    const auto changes = ChangesFor(b.network, b.Requests(), entry);
    if (changes.empty()) continue;
    for (const auto& change : changes) {
      if (b.evaluation) {
        auto update = ApplyEvidenceChange(b.network, *b.evaluation, change);
        b.network = std::move(update.network);
        b.evaluation = std::move(update.result);
      } else if (change.kind == EvidenceChange::Kind::kAdd) {
        b.network.AddEvidenceLink(change.link);
      } else if (change.kind == EvidenceChange::Kind::kRetract) {
        b.network.RemoveEvidenceLink(change.link_id);
      } else {
        b.network.SetLinkCredibility(change.link_id, change.credibility);
      }
    }
    for (auto& c : b.candidates) {
      for (auto& r : c.requests) {
        if (Matches(r.query, entry.item)) {
          r.status = RequestStatus::kFulfilled;
          r.failure.clear();
        }
      }
    }
    auto it = std::find_if(b.evidence.begin(), b.evidence.end(), [&](auto& e) {
      return e.item.id == entry.item.id;
    });
    if (it != b.evidence.end()) {
      *it = entry;
    } else {
      b.evidence.insert(std::upper_bound(b.evidence.begin(), b.evidence.end(), entry,
                                         [](auto& x, auto& y) {
                                           return x.item.id < y.item.id;
                                         }),
                        entry);
    }
    ++b.sequence;
    b.events.push_back({id, b.sequence,
                        result == UpsertResult::kAdded ? "add" : "revise", entry});
    if (b.evaluation) Refresh(b);
    ++b.version;
    bundles_.Write(b);
    affected.push_back(id);
  }
  return affected;
}

StructuredReport ReasonerService::Report(const std::string& id) const {
  return BuildReport(Get(id));
}

std::vector<BiasFinding> ReasonerService::Biases(const std::string& id) const {
  AnalysisBundle b = Get(id);
  if (!b.evaluation) {
    throw Rejected("analysis " + id + " has not been evaluated yet");
  }
  return b.biases;
}

}  // namespace ebr
