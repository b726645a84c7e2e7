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

/// @file collection.h
/// Decomposition of hypotheses into a network skeleton, collection requests
/// for its leaves, evidence sources and the change monitor.
#ifndef EBR_COLLECTION_H_
#define EBR_COLLECTION_H_

#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <shared_mutex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ebr/abduction.h"
#include "ebr/evidence.h"
#include "ebr/network.h"
#include "ebr/statement.h"

namespace ebr {

/// "If the parent held, every child would hold too."
struct DecompositionRule {
  std::string id;
  Statement parent;
  Side side = Side::kFavoring;
  Prob relevance = Prob::kLikely;
  std::vector<Statement> children;
  /// Child variables that the parent pattern does not bind.
  std::set<std::string> fresh;

  bool operator==(const DecompositionRule&) const = default;
};

std::vector<std::string> ValidateRule(const DecompositionRule& rule);

inline constexpr int kDefaultDecompositionDepth = 5;

/// Why an argument exists: the rule and the unifier that produced it.
struct DecompositionStep {
  std::string argument;
  std::string node;
  std::string rule;  // "conjunction" for the built-in split
  Bindings bindings;

  bool operator==(const DecompositionStep&) const = default;
};

struct Decomposition {
  ArgumentationNetwork network;
  std::vector<DecompositionStep> steps;
  /// Constants standing for entities nobody has observed yet. Queries treat
  /// them as variables.
  std::set<std::string> unobserved;
};

/// Root node id = candidate id. A conjunctive statement is first split by a
/// favoring "conjunction" argument of relevance C, one child per atom. Every
/// rule (either side) whose parent pattern matches a node adds an argument
/// "<node>/<rule>" with children "<node>/<rule>.<k>". Nodes at `max_depth`
/// stay leaves. Throws ContractViolation when max_depth < 1.
Decomposition Decompose(const HypothesisCandidate& candidate,
                        std::span<const DecompositionRule> rules,
                        int max_depth = kDefaultDecompositionDepth);

enum class RequestStatus { kOpen, kFulfilled, kExhausted };

std::string_view StatusName(RequestStatus status);
RequestStatus ParseRequestStatus(std::string_view text);

struct CollectionRequest {
  std::string id;  // "<leaf>@<source>"
  std::string leaf;
  std::string source;
  Statement query;
  /// Side of the argument the leaf hangs from.
  Side side = Side::kFavoring;
  RequestStatus status = RequestStatus::kOpen;
  Timestamp issued_at;
  std::string failure;

  bool operator==(const CollectionRequest&) const = default;
};

/// Leaf statement with unobserved constants replaced by variables.
Statement LeafQuery(const ArgumentationNetwork& network, const std::string& leaf,
                    const std::set<std::string>& unobserved);

/// One request per (leaf, source) pair not already in `existing`, ordered by
/// leaf id then source id. Throws Rejected when `sources` is empty.
std::vector<CollectionRequest> GenerateRequests(
    const ArgumentationNetwork& skeleton,
    const std::vector<std::string>& sources, const Timestamp& issued_at,
    std::span<const CollectionRequest> existing = {},
    const std::set<std::string>& unobserved = {});

/// An item as a source returns it: the side it bears on and, optionally, a
/// relevance the source vouches for.
struct EvidenceEntry {
  EvidenceItem item;
  Side side = Side::kFavoring;
  std::optional<Prob> relevance;

  bool operator==(const EvidenceEntry&) const = default;
};

/// "file-repository", "in-memory-fixture" or "external-adapter".
class EvidenceSource {
 public:
  virtual ~EvidenceSource() = default;
  virtual std::string id() const = 0;
  virtual std::string kind() const = 0;
  virtual std::string capability() const = 0;
  /// Entries whose statement contains a match for `query`, in item id order.
  /// May throw on source failure.
  virtual std::vector<EvidenceEntry> Query(const Statement& query) const = 0;
};

enum class UpsertResult { kAdded, kRevised, kUnchanged };

/// One writer, many readers.
class EvidenceRepository : public EvidenceSource {
 public:
  explicit EvidenceRepository(std::string id = "repository",
                              std::string kind = "in-memory-fixture")
      : id_(std::move(id)), kind_(std::move(kind)) {}

  std::string id() const override { return id_; }
  std::string kind() const override { return kind_; }
  std::string capability() const override {
    return "statement pattern match over stored items";
  }
  std::vector<EvidenceEntry> Query(const Statement& query) const override;

  UpsertResult Upsert(EvidenceEntry entry);
  std::optional<EvidenceEntry> Find(const std::string& item_id) const;
  std::vector<EvidenceEntry> Entries() const;
  std::size_t size() const;

  void UpsertProfile(SourceProfile profile);
  std::optional<SourceProfile> FindProfile(const std::string& id) const;
  std::vector<SourceProfile> Profiles() const;

 private:
  std::string id_;
  std::string kind_;
  mutable std::shared_mutex mu_;
  std::map<std::string, EvidenceEntry> entries_;
  std::map<std::string, SourceProfile> profiles_;
};

/// True when `query` occurs within the item's statement.
bool Matches(const Statement& query, const EvidenceItem& item);

struct CollectedHit {
  std::string request;
  std::string leaf;
  EvidenceEntry entry;
  Prob relevance = Prob::kCertain;  // resolved

  bool operator==(const CollectedHit&) const = default;
};

struct CollectResult {
  std::vector<CollectedHit> hits;
  /// Every request passed in, with updated status.
  std::vector<CollectionRequest> requests;
  std::vector<std::string> failures;
};

/// Relevance of the argument the leaf hangs from (C for a root).
Prob IncomingRelevance(const ArgumentationNetwork& network,
                       const std::string& leaf);

/// Runs the open requests addressed to `source`. Hits fulfil a request, an
/// empty answer exhausts it, a throwing source leaves it open with the
/// reason recorded.
CollectResult Collect(std::span<const CollectionRequest> requests,
                      const EvidenceSource& source,
                      const ArgumentationNetwork& skeleton);

std::string LinkId(const std::string& leaf, const std::string& item);

/// Adds (or refreshes) one link "<leaf>#<item>" per hit.
void AttachEvidence(ArgumentationNetwork& network,
                    std::span<const CollectedHit> hits);

/// Network edits that bring the links for `entry` up to date on every leaf
/// whose request query it matches.
std::vector<EvidenceChange> ChangesFor(
    const ArgumentationNetwork& network,
    std::span<const CollectionRequest> requests, const EvidenceEntry& entry);

struct ChangeEvent {
  std::string analysis;
  std::uint64_t sequence = 0;
  std::string kind;  // "add" or "revise"
  EvidenceEntry entry;

  bool operator==(const ChangeEvent&) const = default;
};

class Monitor {
 public:
  explicit Monitor(std::function<bool(const std::string&)> analysis_exists)
      : exists_(std::move(analysis_exists)) {}

  /// Throws Rejected for an unknown analysis.
  void Subscribe(const std::string& analysis, Statement query);
  void Unsubscribe(const std::string& analysis);

  /// One event per subscribed analysis with a matching query, in analysis id
  /// order. Unchanged upserts emit nothing.
  std::vector<ChangeEvent> Notify(const EvidenceEntry& entry, UpsertResult kind);

  std::vector<ChangeEvent> Log(const std::string& analysis) const;
  std::uint64_t LastSequence(const std::string& analysis) const;

 private:
  std::function<bool(const std::string&)> exists_;
  mutable std::mutex mu_;
  std::map<std::string, std::vector<Statement>> subscriptions_;
  std::map<std::string, std::vector<ChangeEvent>> log_;
};

}  // namespace ebr

#endif  // EBR_COLLECTION_H_
