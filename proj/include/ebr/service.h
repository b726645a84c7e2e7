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

/// @file service.h
/// The analysis pipeline, its persistent bundles and structured reports.
///
/// An analysis moves through generating, collecting and analyzing to
/// concluded. Every transition is written as a new bundle version before the
/// next stage starts, so a restarted service resumes from the last version.
#ifndef EBR_SERVICE_H_
#define EBR_SERVICE_H_

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "ebr/errors.h"
#include "ebr/io.h"

namespace ebr {

enum class Mode { kAutonomous, kOnTheLoop, kInTheLoop };

std::string_view ModeName(Mode mode);
/// Accepts "autonomous", "on-the-loop" and "in-the-loop".
Mode ParseMode(std::string_view text);
/// 0 s autonomous, 30 s on the loop, 0 s in the loop (it waits instead).
std::chrono::seconds DefaultVetoWindow(Mode mode);

inline constexpr const char* kStatusQueued = "queued";
inline constexpr const char* kStatusGenerating = "generating";
inline constexpr const char* kStatusCollecting = "collecting";
inline constexpr const char* kStatusAnalyzing = "analyzing";
inline constexpr const char* kStatusConcluded = "concluded";
inline constexpr const char* kStatusAwaitingHuman = "awaiting-human";

/// Gates an in-the-loop analysis stops at.
inline constexpr const char* kGatePruning = "pruning";
inline constexpr const char* kGateConclusion = "conclusion";

struct Alert {
  Observation observation;
  std::string dedup_key;

  bool operator==(const Alert&) const = default;
};

/// {"id", "statement", "received_at", "dedup_key"}; id defaults to "alert".
/// Throws ParseError when the statement is not ground.
Alert ParseAlert(const Json& j);

/// One candidate's share of the analysis.
struct CandidateWork {
  HypothesisCandidate candidate;
  std::vector<DecompositionStep> steps;
  std::set<std::string> unobserved;
  std::vector<CollectionRequest> requests;
  std::vector<std::string> failures;

  bool operator==(const CandidateWork&) const = default;
};

struct AuditEvent {
  std::uint64_t version = 0;
  std::string from;
  std::string to;
  /// Wall-clock seconds since the epoch; only consulted for veto windows.
  std::int64_t at = 0;

  bool operator==(const AuditEvent&) const = default;
};

struct AnalysisBundle {
  std::string id;
  std::uint64_t version = 0;
  Alert alert;
  std::string kb_version;
  Mode mode = Mode::kAutonomous;
  std::string status = kStatusQueued;
  std::string gate;    // set while awaiting-human
  std::string parked;  // error or veto detail; empty while runnable
  std::vector<CandidateWork> candidates;
  /// Every candidate network merged, with the candidates as competing roots.
  ArgumentationNetwork network;
  /// Entries linked into the network, by item id.
  std::vector<EvidenceEntry> evidence;
  std::optional<EvaluationResult> evaluation;
  std::vector<RootStanding> ranking;
  AbductionTrace trace;
  std::vector<BiasFinding> biases;
  std::uint64_t sequence = 0;  // last evidence event applied
  std::vector<ChangeEvent> events;
  std::vector<AuditEvent> audit;

  std::vector<CollectionRequest> Requests() const;
  bool operator==(const AnalysisBundle&) const = default;
};

Json ToJson(const AnalysisBundle& b);
template <> AnalysisBundle FromJson<AnalysisBundle>(const Json& j);

/// Append-only per-analysis log plus an atomically replaced snapshot.
class BundleStore {
 public:
  explicit BundleStore(std::filesystem::path dir);

  /// Appends and snapshots; throws ContractViolation unless the version is
  /// exactly one past the stored one.
  void Write(const AnalysisBundle& bundle);
  /// Latest version; the log wins over a snapshot left behind by a crash.
  std::optional<AnalysisBundle> Load(const std::string& id) const;
  /// Every stored version of one analysis, oldest first.
  std::vector<AnalysisBundle> History(const std::string& id) const;
  std::vector<std::string> Ids() const;

 private:
  std::filesystem::path dir_;
};

/// Content-versioned KB files under <data>/kb plus a "current" pointer.
class KbStore {
 public:
  explicit KbStore(std::filesystem::path dir);

  /// Validates, stores and makes current. Returns the version; throws
  /// ValidationError listing every problem.
  std::string Put(KnowledgeBase kb);
  /// Throws NotFound when no KB was ever stored.
  KnowledgeBase Current() const;
  KnowledgeBase Get(const std::string& version) const;
  bool Empty() const;

 private:
  std::filesystem::path dir_;
  mutable std::mutex mu_;
  mutable std::map<std::string, KnowledgeBase> cache_;
};

struct ReportConclusion {
  std::string id;
  std::string statement;
  std::string description;
  std::string species;
  Prob probability = Prob::kNoSupport;
  Coverage coverage;
  bool assumption_dependent = false;
};

struct ReportCitation {
  std::string id;
  std::string type;
  std::string source;
  std::string statement;
  Prob credibility = Prob::kNoSupport;
  std::vector<std::string> links;
};

struct StructuredReport {
  std::string analysis;
  std::string alert;
  std::string kb_version;
  std::vector<ReportConclusion> conclusions;  // ranking order
  std::vector<std::string> outline;           // indented lines
  std::vector<ReportCitation> citations;      // by item id
  std::map<std::string, Prob> assumptions;
  std::vector<BiasFinding> biases;
  /// Latest of the alert time and every cited item's recorded time.
  Timestamp generated_at;
};

/// Throws Rejected for a bundle that was never evaluated.
StructuredReport BuildReport(const AnalysisBundle& bundle);
std::string RenderReport(const StructuredReport& report);
Json ToJson(const StructuredReport& report);

/// Thrown by a fault hook to simulate a worker dying mid-candidate.
class WorkerCrash : public Error {
 public:
  explicit WorkerCrash(const std::string& msg) : Error(msg) {}
};

struct ServiceConfig {
  std::filesystem::path data_dir;
  Mode mode = Mode::kAutonomous;
  int workers = 1;
  std::optional<std::chrono::seconds> veto_window;  // default per mode
  double coverage_threshold = kDefaultCoverageThreshold;
  int decomposition_depth = kDefaultDecompositionDepth;
  /// Attempts per candidate before the stage fails.
  int max_attempts = 3;
  /// Called after each transition is durable, with the new status.
  std::function<void(const std::string& analysis, const std::string& status)>
      on_transition;
  /// Called before a worker handles a candidate; may throw WorkerCrash.
  std::function<void(const std::string& candidate, int attempt)> on_candidate;
};

struct SubmitResult {
  std::string id;
  bool created = false;
};

struct AssumptionResult {
  EvaluationResult evaluation;
  std::vector<RootStanding> ranking;
  std::uint64_t version = 0;
};

class ReasonerService {
 public:
  explicit ReasonerService(ServiceConfig config);
  ~ReasonerService();

  ReasonerService(const ReasonerService&) = delete;
  ReasonerService& operator=(const ReasonerService&) = delete;

  const ServiceConfig& config() const { return config_; }

  std::string PutKb(KnowledgeBase kb);
  KnowledgeBase CurrentKb() const;

  /// Loads {"profiles", "items"} into the repository and persists it.
  void LoadEvidence(const Json& document);
  const EvidenceRepository& repository() const { return repo_; }

  /// Idempotent on (alert, KB version, dedup key). Queues the analysis when
  /// the background dispatcher runs.
  SubmitResult SubmitAlert(const Json& alert);

  /// Runs stages until concluded, awaiting-human or parked.
  void Run(const std::string& id);
  /// Runs every analysis that is neither finished nor waiting.
  void RunPending();

  /// Background dispatcher for serve mode; resumes pending work first.
  void Start();
  void Stop();
  /// Blocks until the analysis leaves the runnable states or the deadline.
  AnalysisBundle WaitSettled(const std::string& id,
                             std::chrono::milliseconds timeout);

  AnalysisBundle Get(const std::string& id) const;
  std::vector<AnalysisBundle> History(const std::string& id) const;

  /// Sets (value) or clears (nullopt) an assumption and re-evaluates.
  AssumptionResult PostAssumption(const std::string& id, const std::string& node,
                                  std::optional<Prob> value);
  /// "approve" or "veto". Approval releases a gate or retries a parked
  /// analysis; a veto parks it. Throws Rejected when the action does not
  /// apply.
  AnalysisBundle Resume(const std::string& id, const std::string& action,
                        const std::string& reason = {});

  /// Upserts one entry and updates every analysis whose requests it
  /// answers. Returns those analysis ids.
  std::vector<std::string> IngestEvidence(const Json& item);

  StructuredReport Report(const std::string& id) const;
  std::vector<BiasFinding> Biases(const std::string& id) const;

 private:
  void Transition(AnalysisBundle& b, const std::string& to);
  bool Step(const std::string& id);
  void Generate(AnalysisBundle& b, const KnowledgeBase& kb);
  void CollectStage(AnalysisBundle& b, const KnowledgeBase& kb);
  void Analyze(AnalysisBundle& b);
  void Refresh(AnalysisBundle& b);
  std::mutex& LockFor(const std::string& id);
  void Enqueue(const std::string& id);
  void PersistEvidence();
  void Dispatch();

  ServiceConfig config_;
  BundleStore bundles_;
  KbStore kbs_;
  EvidenceRepository repo_;
  std::mutex evidence_mu_;

  mutable std::mutex locks_mu_;
  std::map<std::string, std::unique_ptr<std::mutex>> locks_;

  std::mutex queue_mu_;
  std::condition_variable queue_cv_;
  std::condition_variable settled_cv_;
  std::deque<std::string> queue_;
  bool stopping_ = false;
  std::thread dispatcher_;
};

}  // namespace ebr

#endif  // EBR_SERVICE_H_
