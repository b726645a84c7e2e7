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

/// @file network.h
/// Probabilistic inference networks: hypotheses decomposed into favoring
/// and disfavoring arguments that bottom out in evidence.
///
/// Evaluation is bottom-up and deterministic. A leaf's probability balances
/// the strongest favoring evidence force against the strongest disfavoring
/// one; an internal node does the same over its arguments, where each
/// argument contributes min(relevance, conjunction of its children). Beside
/// the probability every node reports Baconian coverage: how many of the
/// leaves below it have been answered by evidence or an assumption.
#ifndef EBR_NETWORK_H_
#define EBR_NETWORK_H_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ebr/probability.h"

namespace ebr {

enum class Side { kFavoring, kDisfavoring };

std::string_view SideName(Side side);
Side ParseSide(std::string_view text);

enum class NodeRole { kRoot, kIntermediate, kLeaf };

std::string_view RoleName(NodeRole role);

struct HypothesisNode {
  std::string id;
  std::string statement;
  std::optional<Prob> assumption;

  bool operator==(const HypothesisNode&) const = default;
};

/// One independent line of argument for or against `parent`. The children
/// are read as a conjunction.
struct Argument {
  std::string id;
  std::string parent;
  Side side = Side::kFavoring;
  Prob relevance = Prob::kCertain;
  std::vector<std::string> children;

  bool operator==(const Argument&) const = default;
};

/// Evidence attached to a leaf. `credibility` is the assessed credibility of
/// the referenced item; `missing` marks expected-but-absent evidence, which
/// never answers the leaf.
struct EvidenceLink {
  std::string id;
  std::string parent;
  std::string evidence;
  Side side = Side::kFavoring;
  Prob relevance = Prob::kCertain;
  Prob credibility = Prob::kNoSupport;
  bool missing = false;

  bool operator==(const EvidenceLink&) const = default;
};

/// A directed acyclic argumentation structure. Plain value type: copies are
/// independent, and the adjacency indexes travel with the value.
class ArgumentationNetwork {
 public:
  ArgumentationNetwork() = default;

  void AddNode(HypothesisNode node);
  void AddArgument(Argument argument);
  void AddEvidenceLink(EvidenceLink link);
  void AddCompetingRoot(std::string id);

  /// Throws NotFound for unknown ids.
  void SetAssumption(const std::string& node_id, std::optional<Prob> value);
  void RemoveEvidenceLink(const std::string& link_id);
  void SetLinkCredibility(const std::string& link_id, Prob credibility);

  /// Adds every node, argument, link and competing root of `other`.
  void Merge(const ArgumentationNetwork& other);

  const std::map<std::string, HypothesisNode>& nodes() const { return nodes_; }
  const std::map<std::string, Argument>& arguments() const { return arguments_; }
  const std::map<std::string, EvidenceLink>& links() const { return links_; }
  const std::set<std::string>& competing_roots() const { return roots_; }

  bool HasNode(const std::string& id) const { return nodes_.count(id) != 0; }
  const HypothesisNode& node(const std::string& id) const;
  const Argument& argument(const std::string& id) const;
  const EvidenceLink& link(const std::string& id) const;

  /// Argument ids whose parent is `node_id`, sorted.
  const std::vector<std::string>& ArgumentsOf(const std::string& node_id) const;
  /// Argument ids listing `node_id` as a child, sorted.
  const std::vector<std::string>& ParentArgumentsOf(
      const std::string& node_id) const;
  /// Evidence link ids attached to `node_id`, sorted.
  const std::vector<std::string>& LinksOf(const std::string& node_id) const;

  NodeRole Role(const std::string& node_id) const;
  bool IsLeaf(const std::string& node_id) const {
    return ArgumentsOf(node_id).empty();
  }

  /// Competing roots if any are declared, otherwise every parentless node.
  std::vector<std::string> Roots() const;

  /// Node ids reachable downward from `node_id` (inclusive), sorted.
  std::set<std::string> Subtree(const std::string& node_id) const;
  /// Distinct leaves below `node_id`, sorted.
  std::vector<std::string> LeavesBelow(const std::string& node_id) const;
  /// Every ancestor of `node_id` (exclusive), sorted.
  std::set<std::string> Ancestors(const std::string& node_id) const;

  /// Equal content; indexes are derived and not compared.
  bool operator==(const ArgumentationNetwork& other) const;

 private:
  static void InsertSorted(std::vector<std::string>& v, const std::string& id);
  static void EraseValue(std::vector<std::string>& v, const std::string& id);

  std::map<std::string, HypothesisNode> nodes_;
  std::map<std::string, Argument> arguments_;
  std::map<std::string, EvidenceLink> links_;
  std::set<std::string> roots_;

  std::map<std::string, std::vector<std::string>> args_by_parent_;
  std::map<std::string, std::vector<std::string>> args_by_child_;
  std::map<std::string, std::vector<std::string>> links_by_parent_;
};

/// One structural problem: which rule was broken and by what id.
struct Defect {
  std::string rule;
  std::string id;
  std::string message;

  std::string ToString() const { return rule + ": " + id + ": " + message; }
  bool operator==(const Defect&) const = default;
};

/// Empty iff the network is well formed.
std::vector<Defect> Validate(const ArgumentationNetwork& network);

/// Baconian coverage: answered leaves over distinct leaves below a node.
struct Coverage {
  int answered = 0;
  int total = 0;

  double Ratio() const {
    return total == 0 ? 0.0 : static_cast<double>(answered) / total;
  }
  bool operator==(const Coverage&) const = default;
};

/// A single application of a calculus operator during evaluation.
struct TraceStep {
  std::string node;
  std::string op;
  std::vector<std::string> inputs;
  Prob output = Prob::kNoSupport;

  bool operator==(const TraceStep&) const = default;
};

struct NodeEvaluation {
  Prob probability = Prob::kNoSupport;
  Prob favoring = Prob::kNoSupport;
  Prob disfavoring = Prob::kNoSupport;
  Coverage coverage;
  bool assumption_dependent = false;
  std::vector<TraceStep> trace;

  bool operator==(const NodeEvaluation&) const = default;
};

struct EvaluationResult {
  std::map<std::string, NodeEvaluation> nodes;
  /// Children-before-parents evaluation order.
  std::vector<std::string> order;

  const NodeEvaluation& at(const std::string& id) const;
  Prob probability(const std::string& id) const { return at(id).probability; }
  Coverage coverage(const std::string& id) const { return at(id).coverage; }

  /// All trace steps in evaluation order.
  std::vector<TraceStep> Trace() const;

  bool operator==(const EvaluationResult&) const = default;
};

/// Full bottom-up evaluation. Throws ValidationError listing the defects
/// when the network is malformed.
EvaluationResult Evaluate(const ArgumentationNetwork& network);

/// Evaluates a copy with the given assumptions set (value) or cleared
/// (nullopt). Throws NotFound for unknown node ids.
EvaluationResult WhatIf(
    const ArgumentationNetwork& network,
    const std::map<std::string, std::optional<Prob>>& overrides);

struct EvidenceChange {
  enum class Kind { kAdd, kReviseCredibility, kRetract };

  Kind kind = Kind::kAdd;
  EvidenceLink link;        // kAdd
  std::string link_id;      // kReviseCredibility, kRetract
  Prob credibility = Prob::kNoSupport;  // kReviseCredibility

  static EvidenceChange Add(EvidenceLink link);
  static EvidenceChange Revise(std::string link_id, Prob credibility);
  static EvidenceChange Retract(std::string link_id);
};

struct IncrementalUpdate {
  ArgumentationNetwork network;
  EvaluationResult result;
  /// Node ids that were re-evaluated, in evaluation order.
  std::vector<std::string> recomputed;
};

/// Applies one evidence change and re-evaluates only the touched leaf and
/// its ancestors, starting from `prior` (the evaluation of `network`).
/// Throws NotFound for unknown ids and Rejected for a link on a non-leaf or
/// a duplicate link id.
IncrementalUpdate ApplyEvidenceChange(const ArgumentationNetwork& network,
                                      const EvaluationResult& prior,
                                      const EvidenceChange& change);

/// Convenience form that evaluates `network` first.
EvaluationResult ApplyEvidenceChange(const ArgumentationNetwork& network,
                                     const EvidenceChange& change);

struct RootStanding {
  std::string id;
  Prob probability = Prob::kNoSupport;
  Coverage coverage;

  bool operator==(const RootStanding&) const = default;
};

/// Probability descending, then coverage ratio descending, then id.
void RankStandings(std::vector<RootStanding>& standings);

/// Ranks the competing roots. Throws Rejected when none are declared.
std::vector<RootStanding> CompareCompeting(const ArgumentationNetwork& network,
                                           const EvaluationResult& result);
std::vector<RootStanding> CompareCompeting(const ArgumentationNetwork& network);

}  // namespace ebr

#endif  // EBR_NETWORK_H_
