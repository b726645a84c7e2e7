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

#include "ebr/network.h"

#include <algorithm>
#include <iterator>
#include <tuple>
#include <unordered_map>
#include <utility>

#include "ebr/errors.h"

namespace ebr {
namespace {

const std::vector<std::string> kNoIds;

const std::vector<std::string>& Lookup(
    const std::map<std::string, std::vector<std::string>>& index,
    const std::string& key) {
  auto it = index.find(key);
  return it == index.end() ? kNoIds : it->second;
}

std::string P(Prob p) { return std::string(Abbreviation(p)); }

}  // namespace

std::string_view SideName(Side side) {
  return side == Side::kFavoring ? "favoring" : "disfavoring";
}

Side ParseSide(std::string_view text) {
  if (text == "favoring") return Side::kFavoring;
  if (text == "disfavoring") return Side::kDisfavoring;
  throw ParseError("unknown side '" + std::string(text) + "'");
}

std::string_view RoleName(NodeRole role) {
  switch (role) {
    case NodeRole::kRoot: return "root";
    case NodeRole::kIntermediate: return "intermediate";
    case NodeRole::kLeaf: return "leaf";
  }
  return "leaf";
}

// ---------------------------------------------------------------------------
// ArgumentationNetwork

void ArgumentationNetwork::InsertSorted(std::vector<std::string>& v,
                                        const std::string& id) {
  auto it = std::lower_bound(v.begin(), v.end(), id);
  if (it == v.end() || *it != id) v.insert(it, id);
}

void ArgumentationNetwork::EraseValue(std::vector<std::string>& v,
                                      const std::string& id) {
  auto it = std::lower_bound(v.begin(), v.end(), id);
  if (it != v.end() && *it == id) v.erase(it);
}

void ArgumentationNetwork::AddNode(HypothesisNode node) {
  const std::string id = node.id;
  nodes_.insert_or_assign(id, std::move(node));
}

void ArgumentationNetwork::AddArgument(Argument argument) {
  const std::string id = argument.id;
  if (auto old = arguments_.find(id); old != arguments_.end()) {
    EraseValue(args_by_parent_[old->second.parent], id);
    for (const auto& c : old->second.children) EraseValue(args_by_child_[c], id);
  }
  InsertSorted(args_by_parent_[argument.parent], id);
  for (const auto& c : argument.children) InsertSorted(args_by_child_[c], id);
  arguments_.insert_or_assign(id, std::move(argument));
}

void ArgumentationNetwork::AddEvidenceLink(EvidenceLink link) {
  const std::string id = link.id;
  if (auto old = links_.find(id); old != links_.end()) {
    EraseValue(links_by_parent_[old->second.parent], id);
  }
  InsertSorted(links_by_parent_[link.parent], id);
  links_.insert_or_assign(id, std::move(link));
}

void ArgumentationNetwork::AddCompetingRoot(std::string id) {
  roots_.insert(std::move(id));
}

void ArgumentationNetwork::SetAssumption(const std::string& node_id,
                                         std::optional<Prob> value) {
  auto it = nodes_.find(node_id);
  if (it == nodes_.end()) throw NotFound("unknown node '" + node_id + "'");
  it->second.assumption = value;
}

void ArgumentationNetwork::RemoveEvidenceLink(const std::string& link_id) {
  auto it = links_.find(link_id);
  if (it == links_.end()) {
    throw NotFound("unknown evidence link '" + link_id + "'");
  }
  EraseValue(links_by_parent_[it->second.parent], link_id);
  links_.erase(it);
}

void ArgumentationNetwork::SetLinkCredibility(const std::string& link_id,
                                              Prob credibility) {
  auto it = links_.find(link_id);
  if (it == links_.end()) {
    throw NotFound("unknown evidence link '" + link_id + "'");
  }
  it->second.credibility = credibility;
}

void ArgumentationNetwork::Merge(const ArgumentationNetwork& other) {
  for (const auto& [id, n] : other.nodes_) AddNode(n);
  for (const auto& [id, a] : other.arguments_) AddArgument(a);
  for (const auto& [id, l] : other.links_) AddEvidenceLink(l);
  for (const auto& r : other.roots_) AddCompetingRoot(r);
}

const HypothesisNode& ArgumentationNetwork::node(const std::string& id) const {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) throw NotFound("unknown node '" + id + "'");
  return it->second;
}

const Argument& ArgumentationNetwork::argument(const std::string& id) const {
  auto it = arguments_.find(id);
  if (it == arguments_.end()) throw NotFound("unknown argument '" + id + "'");
  return it->second;
}

const EvidenceLink& ArgumentationNetwork::link(const std::string& id) const {
  auto it = links_.find(id);
  if (it == links_.end()) throw NotFound("unknown evidence link '" + id + "'");
  return it->second;
}

const std::vector<std::string>& ArgumentationNetwork::ArgumentsOf(
    const std::string& node_id) const {
  return Lookup(args_by_parent_, node_id);
}

const std::vector<std::string>& ArgumentationNetwork::ParentArgumentsOf(
    const std::string& node_id) const {
  return Lookup(args_by_child_, node_id);
}

const std::vector<std::string>& ArgumentationNetwork::LinksOf(
    const std::string& node_id) const {
  return Lookup(links_by_parent_, node_id);
}

NodeRole ArgumentationNetwork::Role(const std::string& node_id) const {
  if (ParentArgumentsOf(node_id).empty()) return NodeRole::kRoot;
  return IsLeaf(node_id) ? NodeRole::kLeaf : NodeRole::kIntermediate;
}

std::vector<std::string> ArgumentationNetwork::Roots() const {
  if (!roots_.empty()) return {roots_.begin(), roots_.end()};
  std::vector<std::string> out;
  for (const auto& [id, n] : nodes_) {
    if (ParentArgumentsOf(id).empty()) out.push_back(id);
  }
  return out;
}

std::set<std::string> ArgumentationNetwork::Subtree(
    const std::string& node_id) const {
  std::set<std::string> seen{node_id};
  std::vector<std::string> stack{node_id};
  while (!stack.empty()) {
    const std::string id = std::move(stack.back());
    stack.pop_back();
    for (const auto& a : ArgumentsOf(id)) {
      auto it = arguments_.find(a);
      if (it == arguments_.end()) continue;
      for (const auto& c : it->second.children) {
        if (seen.insert(c).second) stack.push_back(c);
      }
    }
  }
  return seen;
}

std::vector<std::string> ArgumentationNetwork::LeavesBelow(
    const std::string& node_id) const {
  std::vector<std::string> out;
  for (const auto& id : Subtree(node_id)) {
    if (IsLeaf(id) && nodes_.count(id)) out.push_back(id);
  }
  return out;
}

std::set<std::string> ArgumentationNetwork::Ancestors(
    const std::string& node_id) const {
  std::set<std::string> seen;
  std::vector<std::string> stack{node_id};
  while (!stack.empty()) {
    const std::string id = std::move(stack.back());
    stack.pop_back();
    for (const auto& a : ParentArgumentsOf(id)) {
      auto it = arguments_.find(a);
      if (it == arguments_.end()) continue;
      if (seen.insert(it->second.parent).second) {
        stack.push_back(it->second.parent);
      }
    }
  }
  seen.erase(node_id);
  return seen;
}

bool ArgumentationNetwork::operator==(const ArgumentationNetwork& other) const {
  return nodes_ == other.nodes_ && arguments_ == other.arguments_ &&
         links_ == other.links_ && roots_ == other.roots_;
}

// ---------------------------------------------------------------------------
// Validation

std::vector<Defect> Validate(const ArgumentationNetwork& network) {
  std::vector<Defect> defects;
  const auto& nodes = network.nodes();

  for (const auto& [id, arg] : network.arguments()) {
    if (!nodes.count(arg.parent)) {
      defects.push_back({"unknown-parent", id,
                         "argument parent '" + arg.parent + "' does not exist"});
    }
    if (arg.children.empty()) {
      defects.push_back({"empty-children", id, "argument has no children"});
    }
    std::set<std::string> distinct;
    for (const auto& c : arg.children) {
      if (!nodes.count(c)) {
        defects.push_back(
            {"unknown-child", id, "argument child '" + c + "' does not exist"});
      }
      if (!distinct.insert(c).second) {
        defects.push_back(
            {"duplicate-child", id, "child '" + c + "' listed twice"});
      }
    }
  }

  for (const auto& [id, link] : network.links()) {
    if (!nodes.count(link.parent)) {
      defects.push_back({"unknown-link-parent", id,
                         "evidence link parent '" + link.parent +
                             "' does not exist"});
    } else if (!network.ArgumentsOf(link.parent).empty()) {
      defects.push_back({"leaf-only", id,
                         "evidence attached to '" + link.parent +
                             "', which has child arguments"});
    }
    if (link.evidence.empty()) {
      defects.push_back({"unknown-evidence", id, "evidence id is empty"});
    }
  }

  for (const auto& r : network.competing_roots()) {
    if (!nodes.count(r)) {
      defects.push_back(
          {"unknown-root", r, "competing root does not exist"});
    } else if (!network.ParentArgumentsOf(r).empty()) {
      defects.push_back({"root-has-parent", r,
                         "competing root is the child of argument '" +
                             network.ParentArgumentsOf(r).front() + "'"});
    }
  }

  // Cycle detection: iterative DFS with colors, following argument edges.
  enum Color : std::uint8_t { kWhite, kGray, kBlack };
  std::unordered_map<std::string, Color> color;
  std::set<std::string> reported;
  for (const auto& [start, n] : nodes) {
    if (color[start] != kWhite) continue;
    // Frame: node id + index into its outgoing (argument, child) edges.
    struct Frame {
      std::string id;
      std::vector<std::pair<std::string, std::string>> edges;
      std::size_t next = 0;
    };
    auto make_frame = [&](const std::string& id) {
      Frame f{id, {}, 0};
      for (const auto& a : network.ArgumentsOf(id)) {
        for (const auto& c : network.argument(a).children) {
          if (nodes.count(c)) f.edges.emplace_back(a, c);
        }
      }
      return f;
    };
    std::vector<Frame> stack;
    stack.push_back(make_frame(start));
    color[start] = kGray;
    while (!stack.empty()) {
      Frame& top = stack.back();
      if (top.next == top.edges.size()) {
        color[top.id] = kBlack;
        stack.pop_back();
        continue;
      }
      const auto [arg, child] = top.edges[top.next++];
      Color& c = color[child];
      if (c == kGray) {
        if (reported.insert(arg).second) {
          defects.push_back({"cycle", arg,
                             "argument makes '" + child +
                                 "' its own ancestor"});
        }
      } else if (c == kWhite) {
        c = kGray;
        stack.push_back(make_frame(child));
      }
    }
  }

  if (!network.competing_roots().empty()) {
    std::set<std::string> reached;
    for (const auto& r : network.competing_roots()) {
      if (nodes.count(r)) reached.merge(network.Subtree(r));
    }
    for (const auto& [id, n] : nodes) {
      if (!network.IsLeaf(id) && !reached.count(id)) {
        defects.push_back(
            {"unreachable", id, "internal node not reached from any root"});
      }
    }
  }

  std::sort(defects.begin(), defects.end(), [](const Defect& a, const Defect& b) {
    return std::tie(a.rule, a.id, a.message) < std::tie(b.rule, b.id, b.message);
  });
  return defects;
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

void ThrowIfInvalid(const ArgumentationNetwork& network) {
  auto defects = Validate(network);
  if (defects.empty()) return;
  std::vector<std::string> text;
  for (const auto& d : defects) text.push_back(d.ToString());
  throw ValidationError("network is malformed", std::move(text));
}

/// Children before parents; siblings in id order. Assumes acyclic.
std::vector<std::string> EvaluationOrder(const ArgumentationNetwork& network) {
  std::vector<std::string> order;
  order.reserve(network.nodes().size());
  std::set<std::string> done;
  struct Frame {
    std::string id;
    std::vector<std::string> children;
    std::size_t next = 0;
  };
  auto make_frame = [&](const std::string& id) {
    Frame f{id, {}, 0};
    for (const auto& a : network.ArgumentsOf(id)) {
      for (const auto& c : network.argument(a).children) f.children.push_back(c);
    }
    return f;
  };
  for (const auto& [start, n] : network.nodes()) {
    if (done.count(start)) continue;
    std::vector<Frame> stack;
    stack.push_back(make_frame(start));
    while (!stack.empty()) {
      Frame& top = stack.back();
      if (top.next == top.children.size()) {
        if (done.insert(top.id).second) order.push_back(top.id);
        stack.pop_back();
        continue;
      }
      const std::string child = top.children[top.next++];
      if (!done.count(child)) stack.push_back(make_frame(child));
    }
  }
  return order;
}

bool LeafAnswered(const ArgumentationNetwork& network, const std::string& id) {
  if (network.node(id).assumption) return true;
  for (const auto& l : network.LinksOf(id)) {
    if (!network.link(l).missing) return true;
  }
  return false;
}

/// Probability, forces, assumption flag and trace of one node, given that
/// every child is already present in `done`. Coverage is left untouched.
void EvaluateNode(const ArgumentationNetwork& network, const std::string& id,
                  std::map<std::string, NodeEvaluation>& done) {
  NodeEvaluation& out = done[id];
  const Coverage keep = out.coverage;
  out = NodeEvaluation{};
  out.coverage = keep;

  const HypothesisNode& node = network.node(id);
  Prob favoring = Prob::kNoSupport;
  Prob disfavoring = Prob::kNoSupport;
  bool dependent = false;

  if (network.IsLeaf(id)) {
    const auto& links = network.LinksOf(id);
    if (links.empty() && !node.assumption) {
      out.trace.push_back({id, "unanswered", {}, Prob::kNoSupport});
    }
    for (const auto& lid : links) {
      const EvidenceLink& link = network.link(lid);
      const Prob force = InferentialForce(link.credibility, link.relevance);
      out.trace.push_back({id, "inferential_force",
                           {lid, P(link.credibility), P(link.relevance)},
                           force});
      Prob& side =
          link.side == Side::kFavoring ? favoring : disfavoring;
      side = std::max(side, force);
    }
  } else {
    for (const auto& aid : network.ArgumentsOf(id)) {
      const Argument& arg = network.argument(aid);
      std::vector<Prob> values;
      std::vector<std::string> inputs;
      for (const auto& c : arg.children) {
        const NodeEvaluation& child = done.at(c);
        values.push_back(child.probability);
        inputs.push_back(c + "=" + P(child.probability));
        dependent = dependent || child.assumption_dependent;
      }
      const Prob conj = Conjoin(values);
      out.trace.push_back({id, "conjoin", inputs, conj});
      const Prob contribution = std::min(arg.relevance, conj);
      out.trace.push_back(
          {id, "argument", {aid, P(arg.relevance), P(conj)}, contribution});
      Prob& side = arg.side == Side::kFavoring ? favoring : disfavoring;
      side = std::max(side, contribution);
    }
  }

  out.favoring = favoring;
  out.disfavoring = disfavoring;
  out.trace.push_back({id, "disjoin_favoring", {}, favoring});
  out.trace.push_back({id, "disjoin_disfavoring", {}, disfavoring});
  Prob computed = Balance(favoring, disfavoring);
  out.trace.push_back({id, "balance", {P(favoring), P(disfavoring)}, computed});
  if (favoring == disfavoring && favoring != Prob::kNoSupport) {
    out.trace.push_back({id, "conflict", {P(favoring), P(disfavoring)},
                         Prob::kNoSupport});
  }

  if (node.assumption) {
    computed = *node.assumption;
    dependent = true;
    out.trace.push_back({id, "assumption", {}, computed});
  }
  out.probability = computed;
  out.assumption_dependent = dependent;
}

}  // namespace

const NodeEvaluation& EvaluationResult::at(const std::string& id) const {
  auto it = nodes.find(id);
  if (it == nodes.end()) throw NotFound("no evaluation for node '" + id + "'");
  return it->second;
}

std::vector<TraceStep> EvaluationResult::Trace() const {
  std::vector<TraceStep> out;
  for (const auto& id : order) {
    const auto& t = nodes.at(id).trace;
    out.insert(out.end(), t.begin(), t.end());
  }
  return out;
}

EvaluationResult Evaluate(const ArgumentationNetwork& network) {
  ThrowIfInvalid(network);
  EvaluationResult result;
  result.order = EvaluationOrder(network);

  // Distinct leaves below each node, as sorted leaf indices.
  std::unordered_map<std::string, std::vector<int>> leaf_sets;
  std::vector<bool> answered;
  for (const auto& id : result.order) {
    std::vector<int> leaves;
    if (network.IsLeaf(id)) {
      leaves.push_back(static_cast<int>(answered.size()));
      answered.push_back(LeafAnswered(network, id));
    } else {
      for (const auto& a : network.ArgumentsOf(id)) {
        for (const auto& c : network.argument(a).children) {
          const auto& child = leaf_sets.at(c);
          std::vector<int> merged;
          merged.reserve(leaves.size() + child.size());
          std::set_union(leaves.begin(), leaves.end(), child.begin(),
                         child.end(), std::back_inserter(merged));
          leaves = std::move(merged);
        }
      }
    }
    Coverage cov;
    cov.total = static_cast<int>(leaves.size());
    for (int l : leaves) cov.answered += answered[l] ? 1 : 0;
    result.nodes[id].coverage = cov;
    leaf_sets[id] = std::move(leaves);
    EvaluateNode(network, id, result.nodes);
  }
  return result;
}

EvaluationResult WhatIf(
    const ArgumentationNetwork& network,
    const std::map<std::string, std::optional<Prob>>& overrides) {
  ArgumentationNetwork copy = network;
  for (const auto& [id, value] : overrides) copy.SetAssumption(id, value);
  return Evaluate(copy);
}

EvidenceChange EvidenceChange::Add(EvidenceLink link) {
  EvidenceChange c;
  c.kind = Kind::kAdd;
  c.link_id = link.id;
  c.link = std::move(link);
  return c;
}

EvidenceChange EvidenceChange::Revise(std::string link_id, Prob credibility) {
  EvidenceChange c;
  c.kind = Kind::kReviseCredibility;
  c.link_id = std::move(link_id);
  c.credibility = credibility;
  return c;
}

EvidenceChange EvidenceChange::Retract(std::string link_id) {
  EvidenceChange c;
  c.kind = Kind::kRetract;
  c.link_id = std::move(link_id);
  return c;
}

IncrementalUpdate ApplyEvidenceChange(const ArgumentationNetwork& network,
                                      const EvaluationResult& prior,
                                      const EvidenceChange& change) {
  IncrementalUpdate update{network, prior, {}};
  ArgumentationNetwork& net = update.network;

  std::string leaf;
  switch (change.kind) {
    case EvidenceChange::Kind::kAdd: {
      const EvidenceLink& link = change.link;
      if (!net.HasNode(link.parent)) {
        throw NotFound("unknown node '" + link.parent + "'");
      }
      if (!net.IsLeaf(link.parent)) {
        throw Rejected("evidence may attach only to leaves; '" + link.parent +
                       "' has child arguments");
      }
      if (net.links().count(link.id)) {
        throw Rejected("evidence link '" + link.id + "' already exists");
      }
      leaf = link.parent;
      net.AddEvidenceLink(link);
      break;
    }
    case EvidenceChange::Kind::kReviseCredibility:
      leaf = net.link(change.link_id).parent;
      net.SetLinkCredibility(change.link_id, change.credibility);
      break;
    case EvidenceChange::Kind::kRetract:
      leaf = net.link(change.link_id).parent;
      net.RemoveEvidenceLink(change.link_id);
      break;
  }

  const bool was_answered = LeafAnswered(network, leaf);
  const bool now_answered = LeafAnswered(net, leaf);
  const int delta = static_cast<int>(now_answered) - static_cast<int>(was_answered);

  std::set<std::string> affected = net.Ancestors(leaf);
  affected.insert(leaf);
  auto& nodes = update.result.nodes;
  if (delta != 0) {
    for (const auto& id : affected) nodes.at(id).coverage.answered += delta;
  }
  for (const auto& id : update.result.order) {
    if (!affected.count(id)) continue;
    EvaluateNode(net, id, nodes);
    update.recomputed.push_back(id);
  }
  return update;
}

EvaluationResult ApplyEvidenceChange(const ArgumentationNetwork& network,
                                     const EvidenceChange& change) {
  return ApplyEvidenceChange(network, Evaluate(network), change).result;
}

void RankStandings(std::vector<RootStanding>& standings) {
  std::sort(standings.begin(), standings.end(),
            [](const RootStanding& a, const RootStanding& b) {
              if (a.probability != b.probability) {
                return a.probability > b.probability;
              }
              // Compare answered/total ratios without division.
              const long lhs = static_cast<long>(a.coverage.answered) *
                               std::max(b.coverage.total, 1);
              const long rhs = static_cast<long>(b.coverage.answered) *
                               std::max(a.coverage.total, 1);
              if (lhs != rhs) return lhs > rhs;
              return a.id < b.id;
            });
}

std::vector<RootStanding> CompareCompeting(const ArgumentationNetwork& network,
                                           const EvaluationResult& result) {
  if (network.competing_roots().empty()) {
    throw Rejected("network declares no competing roots");
  }
  std::vector<RootStanding> out;
  for (const auto& r : network.competing_roots()) {
    const auto& e = result.at(r);
    out.push_back({r, e.probability, e.coverage});
  }
  RankStandings(out);
  return out;
}

std::vector<RootStanding> CompareCompeting(const ArgumentationNetwork& network) {
  return CompareCompeting(network, Evaluate(network));
}

}  // namespace ebr
