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

#include "ebr/collection.h"

#include <algorithm>
#include <deque>
#include <tuple>

#include "ebr/errors.h"

namespace ebr {
namespace {

struct Pending {
  std::string id;
  Statement statement;
  int depth = 0;
};

}  // namespace

std::vector<std::string> ValidateRule(const DecompositionRule& rule) {
  std::vector<std::string> out;
  if (rule.id.empty()) out.push_back("decomposition rule has an empty id");
  if (rule.parent.empty()) out.push_back(rule.id + ": parent pattern is empty");
  if (rule.children.empty()) out.push_back(rule.id + ": no child patterns");
  const auto bound = Variables(rule.parent);
  for (const auto& child : rule.children) {
    if (child.empty()) out.push_back(rule.id + ": empty child pattern");
    for (const auto& v : Variables(child)) {
      if (!bound.count(v) && !rule.fresh.count(v)) {
        out.push_back(rule.id + ": child variable ?" + v +
                      " is neither bound by the parent nor declared fresh");
      }
    }
  }
  return out;
}

Decomposition Decompose(const HypothesisCandidate& candidate,
                        std::span<const DecompositionRule> rules,
                        int max_depth) {
  if (max_depth < 1) {
    throw ContractViolation("decomposition depth must be at least 1");
  }
  std::vector<const DecompositionRule*> sorted;
  for (const auto& r : rules) sorted.push_back(&r);
  std::sort(sorted.begin(), sorted.end(),
            [](const auto* a, const auto* b) { return a->id < b->id; });

  Decomposition out;
  for (const auto& e : candidate.fresh_entities) out.unobserved.insert(e.id);
  ArgumentationNetwork& net = out.network;
  net.AddNode({candidate.id, Canonical(candidate.statement), std::nullopt});

  std::deque<Pending> queue{{candidate.id, candidate.statement, 0}};
  auto add_argument = [&](const Pending& p, const std::string& rule, Side side,
                          Prob relevance, const std::vector<Statement>& children,
                          int child_depth, Bindings bindings) {
    Argument arg{p.id + "/" + rule, p.id, side, relevance, {}};
    for (std::size_t k = 0; k < children.size(); ++k) {
      const std::string child = arg.id + "." + std::to_string(k + 1);
      net.AddNode({child, Canonical(children[k]), std::nullopt});
      arg.children.push_back(child);
      queue.push_back({child, children[k], child_depth});
    }
    out.steps.push_back({arg.id, p.id, rule, std::move(bindings)});
    net.AddArgument(std::move(arg));
  };

  while (!queue.empty()) {
    Pending p = std::move(queue.front());
    queue.pop_front();
    if (p.statement.atoms.size() > 1) {
      std::vector<Statement> parts;
      for (const auto& a : p.statement.atoms) parts.push_back(Statement{{a}});
      add_argument(p, "conjunction", Side::kFavoring, Prob::kCertain, parts,
                   p.depth, {});
      continue;
    }
    if (p.depth >= max_depth) continue;
    for (const DecompositionRule* rule : sorted) {
      Bindings b;
      if (!Match(rule->parent, p.statement, b)) continue;
      std::vector<Statement> children;
      for (const auto& c : rule->children) children.push_back(Substitute(c, b));
      add_argument(p, rule->id, rule->side, rule->relevance, children,
                   p.depth + 1, std::move(b));
    }
  }
  return out;
}

std::string_view StatusName(RequestStatus status) {
  switch (status) {
    case RequestStatus::kOpen: return "open";
    case RequestStatus::kFulfilled: return "fulfilled";
    case RequestStatus::kExhausted: return "exhausted";
  }
  return "open";
}

RequestStatus ParseRequestStatus(std::string_view text) {
  if (text == "open") return RequestStatus::kOpen;
  if (text == "fulfilled") return RequestStatus::kFulfilled;
  if (text == "exhausted") return RequestStatus::kExhausted;
  throw ParseError("unknown request status '" + std::string(text) + "'");
}

Statement LeafQuery(const ArgumentationNetwork& network, const std::string& leaf,
                    const std::set<std::string>& unobserved) {
  Statement s = ParseStatement(network.node(leaf).statement);
  for (auto& atom : s.atoms) {
    for (auto& t : atom.args) {
      if (!t.variable && unobserved.count(t.name)) t.variable = true;
    }
  }
  return s;
}

std::vector<CollectionRequest> GenerateRequests(
    const ArgumentationNetwork& skeleton,
    const std::vector<std::string>& sources, const Timestamp& issued_at,
    std::span<const CollectionRequest> existing,
    const std::set<std::string>& unobserved) {
  if (sources.empty()) {
    throw Rejected(
        "no evidence source is registered; register a repository or adapter "
        "before generating collection requests");
  }
  const std::set<std::string> source_set(sources.begin(), sources.end());
  std::set<std::pair<std::string, std::string>> taken;
  for (const auto& r : existing) taken.emplace(r.leaf, r.source);

  std::vector<CollectionRequest> out;
  for (const auto& [id, node] : skeleton.nodes()) {
    if (!skeleton.IsLeaf(id)) continue;
    const auto& parents = skeleton.ParentArgumentsOf(id);
    const Side side = parents.empty() ? Side::kFavoring
                                      : skeleton.argument(parents.front()).side;
    const Statement query = LeafQuery(skeleton, id, unobserved);
    for (const auto& source : source_set) {
      if (taken.count({id, source})) continue;
      out.push_back({id + "@" + source, id, source, query, side,
                     RequestStatus::kOpen, issued_at, {}});
    }
  }
  return out;
}

bool Matches(const Statement& query, const EvidenceItem& item) {
  Bindings b;
  return MatchWithin(query, item.statement, b);
}

std::vector<EvidenceEntry> EvidenceRepository::Query(
    const Statement& query) const {
  std::shared_lock lock(mu_);
  std::vector<EvidenceEntry> out;
  for (const auto& [id, entry] : entries_) {
    if (Matches(query, entry.item)) out.push_back(entry);
  }
  return out;
}

UpsertResult EvidenceRepository::Upsert(EvidenceEntry entry) {
  std::unique_lock lock(mu_);
  auto it = entries_.find(entry.item.id);
  if (it == entries_.end()) {
    const std::string id = entry.item.id;
    entries_.emplace(id, std::move(entry));
    return UpsertResult::kAdded;
  }
  if (it->second == entry) return UpsertResult::kUnchanged;
  it->second = std::move(entry);
  return UpsertResult::kRevised;
}

std::optional<EvidenceEntry> EvidenceRepository::Find(
    const std::string& item_id) const {
  std::shared_lock lock(mu_);
  auto it = entries_.find(item_id);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::vector<EvidenceEntry> EvidenceRepository::Entries() const {
  std::shared_lock lock(mu_);
  std::vector<EvidenceEntry> out;
  for (const auto& [id, e] : entries_) out.push_back(e);
  return out;
}

std::size_t EvidenceRepository::size() const {
  std::shared_lock lock(mu_);
  return entries_.size();
}

void EvidenceRepository::UpsertProfile(SourceProfile profile) {
  std::unique_lock lock(mu_);
  const std::string id = profile.id;
  profiles_[id] = std::move(profile);
}

std::optional<SourceProfile> EvidenceRepository::FindProfile(
    const std::string& id) const {
  std::shared_lock lock(mu_);
  auto it = profiles_.find(id);
  if (it == profiles_.end()) return std::nullopt;
  return it->second;
}

std::vector<SourceProfile> EvidenceRepository::Profiles() const {
  std::shared_lock lock(mu_);
  std::vector<SourceProfile> out;
  for (const auto& [id, p] : profiles_) out.push_back(p);
  return out;
}

Prob IncomingRelevance(const ArgumentationNetwork& network,
                       const std::string& leaf) {
  const auto& parents = network.ParentArgumentsOf(leaf);
  if (parents.empty()) return Prob::kCertain;
  return network.argument(parents.front()).relevance;
}

CollectResult Collect(std::span<const CollectionRequest> requests,
                      const EvidenceSource& source,
                      const ArgumentationNetwork& skeleton) {
  CollectResult out;
  const std::string source_id = source.id();
  for (const auto& request : requests) {
    CollectionRequest r = request;
    if (r.source == source_id && r.status == RequestStatus::kOpen) {
      try {
        const auto entries = source.Query(r.query);
        for (const auto& e : entries) {
          out.hits.push_back(
              {r.id, r.leaf, e,
               e.relevance.value_or(IncomingRelevance(skeleton, r.leaf))});
        }
        r.status = entries.empty() ? RequestStatus::kExhausted
                                   : RequestStatus::kFulfilled;
        r.failure.clear();
      } catch (const std::exception& ex) {
        r.failure = ex.what();
        out.failures.push_back(r.id + ": " + r.failure);
      }
    }
    out.requests.push_back(std::move(r));
  }
  return out;
}

std::string LinkId(const std::string& leaf, const std::string& item) {
  return leaf + "#" + item;
}

namespace {

EvidenceLink MakeLink(const std::string& leaf, const EvidenceEntry& e,
                      Prob relevance) {
  return {LinkId(leaf, e.item.id),
          leaf,
          e.item.id,
          e.side,
          relevance,
          e.item.credibility,
          e.item.type == EvidenceType::kMissing};
}

}  // namespace

void AttachEvidence(ArgumentationNetwork& network,
                    std::span<const CollectedHit> hits) {
  for (const auto& h : hits) {
    EvidenceLink link = MakeLink(h.leaf, h.entry, h.relevance);
    if (network.links().count(link.id)) network.RemoveEvidenceLink(link.id);
    network.AddEvidenceLink(std::move(link));
  }
}

std::vector<EvidenceChange> ChangesFor(
    const ArgumentationNetwork& network,
    std::span<const CollectionRequest> requests, const EvidenceEntry& entry) {
  std::set<std::string> leaves;
  for (const auto& r : requests) {
    if (network.HasNode(r.leaf) && Matches(r.query, entry.item)) {
      leaves.insert(r.leaf);
    }
  }
  std::vector<EvidenceChange> out;
  for (const auto& leaf : leaves) {
    const EvidenceLink want = MakeLink(
        leaf, entry, entry.relevance.value_or(IncomingRelevance(network, leaf)));
    auto it = network.links().find(want.id);
    if (it == network.links().end()) {
      out.push_back(EvidenceChange::Add(want));
      continue;
    }
    const EvidenceLink& have = it->second;
    if (have == want) continue;
    EvidenceLink only_credibility = have;
    only_credibility.credibility = want.credibility;
    if (only_credibility == want) {
      out.push_back(EvidenceChange::Revise(want.id, want.credibility));
    } else {
      out.push_back(EvidenceChange::Retract(want.id));
      out.push_back(EvidenceChange::Add(want));
    }
  }
  return out;
}

void Monitor::Subscribe(const std::string& analysis, Statement query) {
  if (!exists_ || !exists_(analysis)) {
    throw Rejected("cannot subscribe: analysis '" + analysis +
                   "' does not exist");
  }
  std::lock_guard lock(mu_);
  auto& queries = subscriptions_[analysis];
  if (std::find(queries.begin(), queries.end(), query) == queries.end()) {
    queries.push_back(std::move(query));
  }
}

void Monitor::Unsubscribe(const std::string& analysis) {
  std::lock_guard lock(mu_);
  subscriptions_.erase(analysis);
}

std::vector<ChangeEvent> Monitor::Notify(const EvidenceEntry& entry,
                                         UpsertResult kind) {
  std::vector<ChangeEvent> out;
  if (kind == UpsertResult::kUnchanged) return out;
  std::lock_guard lock(mu_);
  for (const auto& [analysis, queries] : subscriptions_) {
    const bool hit = std::any_of(queries.begin(), queries.end(),
                                 [&](const Statement& q) {
                                   return Matches(q, entry.item);
                                 });
    if (!hit) continue;
    auto& log = log_[analysis];
    ChangeEvent e{analysis, log.size() + 1,
                  kind == UpsertResult::kAdded ? "add" : "revise", entry};
    log.push_back(e);
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<ChangeEvent> Monitor::Log(const std::string& analysis) const {
  std::lock_guard lock(mu_);
  auto it = log_.find(analysis);
  return it == log_.end() ? std::vector<ChangeEvent>{} : it->second;
}

std::uint64_t Monitor::LastSequence(const std::string& analysis) const {
  std::lock_guard lock(mu_);
  auto it = log_.find(analysis);
  return it == log_.end() ? 0 : it->second.size();
}

}  // namespace ebr
