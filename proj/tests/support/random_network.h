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

// Seeded generators for property tests over networks.
#ifndef EBR_TESTS_SUPPORT_RANDOM_NETWORK_H_
#define EBR_TESTS_SUPPORT_RANDOM_NETWORK_H_

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "ebr/network.h"

namespace ebr::testing {

inline Prob RandomProb(std::mt19937& rng) {
  return static_cast<Prob>(std::uniform_int_distribution<int>(0, 5)(rng));
}

inline std::string NodeName(int i) {
  return "n" + std::string(i < 10 ? "0" : "") + std::to_string(i);
}

// A valid DAG with up to `max_nodes` nodes. Arguments only point from
// lower to higher node indices, so there are no cycles; children may be
// shared between parents. Every parentless node is a competing root.
inline ArgumentationNetwork RandomNetwork(std::mt19937& rng,
                                          int max_nodes = 50) {
  std::uniform_int_distribution<int> size_dist(2, max_nodes);
  const int n = size_dist(rng);
  ArgumentationNetwork net;
  for (int i = 0; i < n; ++i) net.AddNode({NodeName(i), "h" + std::to_string(i), {}});

  std::bernoulli_distribution coin(0.5);
  int arg_count = 0;
  for (int i = 0; i < n - 1; ++i) {
    if (std::bernoulli_distribution(0.55)(rng) == false) continue;
    const int args = std::uniform_int_distribution<int>(1, 2)(rng);
    for (int a = 0; a < args; ++a) {
      Argument arg;
      arg.id = "a" + std::to_string(arg_count++);
      arg.parent = NodeName(i);
      arg.side = std::bernoulli_distribution(0.7)(rng) ? Side::kFavoring
                                                       : Side::kDisfavoring;
      arg.relevance = RandomProb(rng);
      const int k = std::uniform_int_distribution<int>(1, 3)(rng);
      for (int c = 0; c < k; ++c) {
        const int child = std::uniform_int_distribution<int>(i + 1, n - 1)(rng);
        const std::string id = NodeName(child);
        if (std::find(arg.children.begin(), arg.children.end(), id) ==
            arg.children.end()) {
          arg.children.push_back(id);
        }
      }
      net.AddArgument(arg);
    }
  }

  int link_count = 0;
  for (int i = 0; i < n; ++i) {
    const std::string id = NodeName(i);
    if (!net.IsLeaf(id)) continue;
    const int links = std::uniform_int_distribution<int>(0, 3)(rng);
    for (int l = 0; l < links; ++l) {
      EvidenceLink link;
      link.id = "l" + std::to_string(link_count++);
      link.parent = id;
      link.evidence = "item-" + link.id;
      link.side = coin(rng) ? Side::kFavoring : Side::kDisfavoring;
      link.relevance = RandomProb(rng);
      link.credibility = RandomProb(rng);
      link.missing = std::bernoulli_distribution(0.1)(rng);
      net.AddEvidenceLink(link);
    }
    if (std::bernoulli_distribution(0.1)(rng)) {
      net.SetAssumption(id, RandomProb(rng));
    }
  }
  for (const auto& [id, node] : net.nodes()) {
    if (net.ParentArgumentsOf(id).empty()) net.AddCompetingRoot(id);
  }
  return net;
}

// One add, revise or retract. Falls back to add when there are no links.
inline EvidenceChange RandomChange(std::mt19937& rng,
                                   const ArgumentationNetwork& net) {
  std::vector<std::string> leaves, links;
  for (const auto& [id, n] : net.nodes()) {
    if (net.IsLeaf(id)) leaves.push_back(id);
  }
  for (const auto& [id, l] : net.links()) links.push_back(id);
  int kind = std::uniform_int_distribution<int>(0, 2)(rng);
  if (links.empty()) kind = 0;
  if (kind == 0) {
    EvidenceLink link;
    link.id = "new-link";
    link.parent = leaves[std::uniform_int_distribution<std::size_t>(
        0, leaves.size() - 1)(rng)];
    link.evidence = "new-item";
    link.side = std::bernoulli_distribution(0.5)(rng) ? Side::kFavoring
                                                      : Side::kDisfavoring;
    link.relevance = RandomProb(rng);
    link.credibility = RandomProb(rng);
    return EvidenceChange::Add(link);
  }
  const std::string& target =
      links[std::uniform_int_distribution<std::size_t>(0, links.size() - 1)(rng)];
  if (kind == 1) return EvidenceChange::Revise(target, RandomProb(rng));
  return EvidenceChange::Retract(target);
}

// The network after applying `change`, built without the incremental path.
inline ArgumentationNetwork Mutated(const ArgumentationNetwork& net,
                                    const EvidenceChange& change) {
  ArgumentationNetwork out = net;
  switch (change.kind) {
    case EvidenceChange::Kind::kAdd: out.AddEvidenceLink(change.link); break;
    case EvidenceChange::Kind::kReviseCredibility:
      out.SetLinkCredibility(change.link_id, change.credibility);
      break;
    case EvidenceChange::Kind::kRetract: out.RemoveEvidenceLink(change.link_id); break;
  }
  return out;
}

}  // namespace ebr::testing

#endif  // EBR_TESTS_SUPPORT_RANDOM_NETWORK_H_
