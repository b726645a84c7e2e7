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

#include <gtest/gtest.h>

#include <random>

#include "ebr/errors.h"
#include "../support/fixtures.h"
#include "../support/oracles.h"
#include "../support/random_network.h"

namespace ebr {
namespace {

using testing::SampleEvidence;
using testing::SampleNetwork;
using testing::IdentityChain;

constexpr Prob NS = Prob::kNoSupport;
constexpr Prob BL = Prob::kBarelyLikely;
constexpr Prob L = Prob::kLikely;
constexpr Prob VL = Prob::kVeryLikely;
constexpr Prob AC = Prob::kAlmostCertain;
constexpr Prob C = Prob::kCertain;

bool HasRule(const std::vector<Defect>& defects, const std::string& rule) {
  for (const auto& d : defects) {
    if (d.rule == rule) return true;
  }
  return false;
}

TEST(ValidateTest, WellFormedFixtureHasNoDefects) {
  EXPECT_TRUE(Validate(SampleNetwork()).empty());
  EXPECT_TRUE(Validate(IdentityChain()).empty());
}

TEST(ValidateTest, DetectsCycle) {
  auto n = SampleNetwork();
  n.AddArgument({"back", "H2a", Side::kFavoring, C, {"H"}});
  auto defects = Validate(n);
  EXPECT_TRUE(HasRule(defects, "cycle"));
  // H is also no longer a valid competing root.
  EXPECT_TRUE(HasRule(defects, "root-has-parent"));
}

TEST(ValidateTest, DetectsSelfLoop) {
  ArgumentationNetwork n;
  n.AddNode({"A", "a", {}});
  n.AddArgument({"loop", "A", Side::kFavoring, C, {"A"}});
  auto defects = Validate(n);
  ASSERT_TRUE(HasRule(defects, "cycle"));
}

TEST(ValidateTest, DetectsEvidenceOnInternalNode) {
  auto n = SampleNetwork();
  n.AddEvidenceLink({"bad", "H2", "item-x", Side::kFavoring, C, C, false});
  auto defects = Validate(n);
  ASSERT_EQ(defects.size(), 1u);
  EXPECT_EQ(defects[0].rule, "leaf-only");
  EXPECT_EQ(defects[0].id, "bad");
}

TEST(ValidateTest, DetectsDanglingReferences) {
  ArgumentationNetwork n;
  n.AddNode({"A", "a", {}});
  n.AddArgument({"x", "A", Side::kFavoring, C, {"ghost"}});
  n.AddArgument({"y", "nobody", Side::kFavoring, C, {"A"}});
  n.AddArgument({"z", "A", Side::kFavoring, C, {}});
  n.AddEvidenceLink({"l", "ghost", "item", Side::kFavoring, C, C, false});
  n.AddCompetingRoot("missing-root");
  auto defects = Validate(n);
  EXPECT_TRUE(HasRule(defects, "unknown-child"));
  EXPECT_TRUE(HasRule(defects, "unknown-parent"));
  EXPECT_TRUE(HasRule(defects, "empty-children"));
  EXPECT_TRUE(HasRule(defects, "unknown-link-parent"));
  EXPECT_TRUE(HasRule(defects, "unknown-root"));
}

TEST(ValidateTest, DetectsUnreachableInternalNode) {
  auto n = SampleNetwork();
  n.AddNode({"orphan", "o", {}});
  n.AddNode({"orphan-child", "oc", {}});
  n.AddArgument({"o-fav", "orphan", Side::kFavoring, C, {"orphan-child"}});
  EXPECT_TRUE(HasRule(Validate(n), "unreachable"));
}

TEST(EvaluateTest, H2aBalancesFavoringAgainstDisfavoring) {
  auto r = Evaluate(SampleNetwork());
  const auto& h2a = r.at("H2a");
  EXPECT_EQ(h2a.favoring, VL);      // max(min(VL,C)=VL, min(L,L)=L)
  EXPECT_EQ(h2a.disfavoring, BL);   // min(BL,VL)
  EXPECT_EQ(h2a.probability, L);    // balance(VL, BL)
  EXPECT_EQ(h2a.coverage, (Coverage{1, 1}));
}

TEST(EvaluateTest, UnansweredLeafIsNoSupportAndCounted) {
  auto r = Evaluate(SampleNetwork());
  EXPECT_EQ(r.probability("H2b"), NS);
  EXPECT_EQ(r.coverage("H2b"), (Coverage{0, 1}));
  EXPECT_EQ(r.probability("H2"), NS);
  EXPECT_EQ(r.probability("H"), NS);
  EXPECT_EQ(r.coverage("H"), (Coverage{3, 4}));
  EXPECT_EQ(r.coverage("H2"), (Coverage{1, 2}));
}

TEST(EvaluateTest, IdentityChain) {
  auto r = Evaluate(IdentityChain(C));
  EXPECT_EQ(r.probability("R"), C);
  EXPECT_TRUE(r.at("R").assumption_dependent);
  EXPECT_EQ(r.coverage("R"), (Coverage{1, 1}));
}

TEST(EvaluateTest, AllLeavesNoSupportGivesNoSupportEverywhere) {
  ArgumentationNetwork n = SampleNetwork({NS, C, NS, C, NS, C});
  n.SetLinkCredibility("E4", NS);
  n.SetLinkCredibility("E5", NS);
  auto r = Evaluate(n);
  for (const auto& [id, e] : r.nodes) EXPECT_EQ(e.probability, NS) << id;
}

TEST(EvaluateTest, AssumptionOverridesOnlyAtItsNodeAndPropagatesFlag) {
  auto n = SampleNetwork();
  n.SetAssumption("H2a", C);
  auto r = Evaluate(n);
  EXPECT_EQ(r.probability("H2a"), C);
  EXPECT_TRUE(r.at("H2a").assumption_dependent);
  EXPECT_TRUE(r.at("H2").assumption_dependent);
  EXPECT_TRUE(r.at("H").assumption_dependent);
  EXPECT_FALSE(r.at("H1").assumption_dependent);
  EXPECT_FALSE(r.at("H3").assumption_dependent);
}

TEST(EvaluateTest, EqualForcesRecordConflict) {
  auto n = SampleNetwork({L, C, NS, C, L, C});
  auto r = Evaluate(n);
  EXPECT_EQ(r.probability("H2a"), NS);
  bool conflict = false;
  for (const auto& s : r.at("H2a").trace) conflict |= s.op == "conflict";
  EXPECT_TRUE(conflict);
}

TEST(EvaluateTest, MissingEvidenceDoesNotAnswerLeaf) {
  auto n = IdentityChain();
  n.AddEvidenceLink({"m", "X", "missing:ais", Side::kFavoring, C, NS, true});
  auto r = Evaluate(n);
  EXPECT_EQ(r.coverage("R"), (Coverage{0, 1}));
  EXPECT_EQ(r.probability("R"), NS);
}

TEST(EvaluateTest, SharedLeafCountedOnce) {
  ArgumentationNetwork n;
  for (const char* id : {"R", "A", "B", "S"}) n.AddNode({id, id, {}});
  n.AddArgument({"r", "R", Side::kFavoring, C, {"A", "B"}});
  n.AddArgument({"a", "A", Side::kFavoring, C, {"S"}});
  n.AddArgument({"b", "B", Side::kFavoring, C, {"S"}});
  n.AddCompetingRoot("R");
  n.AddEvidenceLink({"e", "S", "item", Side::kFavoring, C, VL, false});
  auto r = Evaluate(n);
  EXPECT_EQ(r.coverage("R"), (Coverage{1, 1}));
  EXPECT_EQ(r.probability("R"), VL);
}

TEST(EvaluateTest, RejectsMalformedNetwork) {
  auto n = SampleNetwork();
  n.AddArgument({"back", "H2a", Side::kFavoring, C, {"H"}});
  EXPECT_THROW(Evaluate(n), ValidationError);
}

TEST(EvaluateTest, DeterministicAcrossCopies) {
  auto a = Evaluate(SampleNetwork());
  auto b = Evaluate(ArgumentationNetwork(SampleNetwork()));
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.Trace(), b.Trace());
}

TEST(SampleOracleTest, AgreesForAllEvidenceAssignments) {
  int checked = 0;
  for (int h2b : {-1, 4}) {
    for (int i = 0; i < 46656; ++i) {
      int v = i;
      Prob p[6];
      for (auto& x : p) {
        x = static_cast<Prob>(v % 6);
        v /= 6;
      }
      SampleEvidence e{p[0], p[1], p[2], p[3], p[4], p[5]};
      std::optional<Prob> assumption;
      if (h2b >= 0) assumption = static_cast<Prob>(h2b);
      auto r = Evaluate(SampleNetwork(e, assumption));
      auto o = testing::SampleOracle(e, h2b);
      ASSERT_EQ(Rank(r.probability("H2a")), o.h2a);
      ASSERT_EQ(Rank(r.probability("H2")), o.h2);
      ASSERT_EQ(Rank(r.probability("H")), o.h);
      ++checked;
    }
  }
  EXPECT_EQ(checked, 2 * 46656);
}

TEST(WhatIfTest, RaisingUnansweredLeafRaisesRoot) {
  auto n = IdentityChain();
  EXPECT_EQ(Evaluate(n).probability("R"), NS);
  auto r = WhatIf(n, {{"X", C}});
  EXPECT_EQ(r.probability("R"), C);
  EXPECT_EQ(n.node("X").assumption, std::nullopt);  // input untouched
}

TEST(WhatIfTest, ClearingOnlyAssumptionEqualsPlainEvaluation) {
  auto n = IdentityChain(C);
  auto cleared = WhatIf(n, {{"X", std::nullopt}});
  EXPECT_EQ(cleared, Evaluate(IdentityChain()));
}

TEST(WhatIfTest, SiblingAssumptionMatchesFullEvaluation) {
  auto r = WhatIf(SampleNetwork(), {{"H2b", VL}});
  auto full = Evaluate(SampleNetwork({}, VL));
  EXPECT_EQ(r, full);
  EXPECT_EQ(r.probability("H2"), L);   // min(C, min(L, VL))
  EXPECT_EQ(r.probability("H"), BL);   // balance(min(VL, min(AC, L)), min(L, BL))
}

TEST(WhatIfTest, UnknownNodeRejected) {
  EXPECT_THROW(WhatIf(SampleNetwork(), {{"nope", C}}), NotFound);
}

TEST(EvidenceChangeTest, RetractDisfavoring) {
  auto r = ApplyEvidenceChange(SampleNetwork(), EvidenceChange::Retract("E3"));
  EXPECT_EQ(r.probability("H2a"), VL);
}

TEST(EvidenceChangeTest, ReviseCredibility) {
  auto r = ApplyEvidenceChange(SampleNetwork(), EvidenceChange::Revise("E1", BL));
  // favoring = max(min(BL,C), min(L,L)) = L; balance(L, BL) = BL
  EXPECT_EQ(r.probability("H2a"), BL);
}

TEST(EvidenceChangeTest, AddThenRetractRoundTrips) {
  const auto net = SampleNetwork();
  const auto base = Evaluate(net);
  auto added = ApplyEvidenceChange(
      net, base,
      EvidenceChange::Add({"E6", "H2b", "item-6", Side::kFavoring, C, AC, false}));
  EXPECT_EQ(added.result.coverage("H"), (Coverage{4, 4}));
  auto back = ApplyEvidenceChange(added.network, added.result,
                                  EvidenceChange::Retract("E6"));
  EXPECT_EQ(back.result, base);
  EXPECT_EQ(back.network, net);
}

TEST(EvidenceChangeTest, RecomputesOnlyAncestorChain) {
  auto net = SampleNetwork();
  auto u = ApplyEvidenceChange(net, Evaluate(net),
                               EvidenceChange::Revise("E1", BL));
  EXPECT_EQ(u.recomputed, (std::vector<std::string>{"H2a", "H2", "H"}));
}

TEST(EvidenceChangeTest, Errors) {
  auto net = SampleNetwork();
  EXPECT_THROW(ApplyEvidenceChange(net, EvidenceChange::Retract("nope")),
               NotFound);
  EXPECT_THROW(ApplyEvidenceChange(net, EvidenceChange::Revise("nope", C)),
               NotFound);
  EXPECT_THROW(
      ApplyEvidenceChange(net, EvidenceChange::Add(
                                   {"x", "H2", "i", Side::kFavoring, C, C, false})),
      Rejected);
  EXPECT_THROW(
      ApplyEvidenceChange(net, EvidenceChange::Add(
                                   {"E1", "H2a", "i", Side::kFavoring, C, C, false})),
      Rejected);
  EXPECT_THROW(
      ApplyEvidenceChange(net, EvidenceChange::Add(
                                   {"x", "ghost", "i", Side::kFavoring, C, C, false})),
      NotFound);
}

TEST(CompareCompetingTest, OrdersByProbabilityCoverageThenId) {
  std::vector<RootStanding> s = {{"C", BL, {2, 2}},
                                 {"B", L, {1, 4}},
                                 {"A", L, {3, 3}}};
  RankStandings(s);
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(s[0].id, "A");
  EXPECT_EQ(s[1].id, "B");
  EXPECT_EQ(s[2].id, "C");
}

TEST(CompareCompetingTest, AllNoSupportZeroCoverageOrdersById) {
  std::vector<RootStanding> s = {{"z", NS, {0, 3}}, {"a", NS, {0, 0}},
                                 {"m", NS, {0, 1}}};
  RankStandings(s);
  EXPECT_EQ(s[0].id, "a");
  EXPECT_EQ(s[1].id, "m");
  EXPECT_EQ(s[2].id, "z");
}

TEST(CompareCompetingTest, SingleRootAndErrors) {
  auto s = CompareCompeting(SampleNetwork());
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].id, "H");
  ArgumentationNetwork empty;
  empty.AddNode({"A", "a", {}});
  EXPECT_THROW(CompareCompeting(empty), Rejected);
}

// --- properties over random networks ---------------------------------------

TEST(NetworkPropertyTest, IncrementalEqualsFull) {
  std::mt19937 rng(20261018);
  for (int i = 0; i < 300; ++i) {
    auto net = testing::RandomNetwork(rng);
    ASSERT_TRUE(Validate(net).empty());
    auto change = testing::RandomChange(rng, net);
    auto inc = ApplyEvidenceChange(net, Evaluate(net), change);
    auto full = Evaluate(testing::Mutated(net, change));
    ASSERT_EQ(inc.result, full) << "case " << i;
  }
}

// Parity of the number of disfavoring arguments on the paths from each
// ancestor down to `leaf`: {0} all even, {1} all odd, {0,1} mixed.
std::map<std::string, std::set<int>> PathParities(const ArgumentationNetwork& net,
                                                  const std::string& leaf) {
  std::map<std::string, std::set<int>> parity{{leaf, {0}}};
  std::vector<std::pair<std::string, int>> stack{{leaf, 0}};
  while (!stack.empty()) {
    auto [id, p] = stack.back();
    stack.pop_back();
    for (const auto& a : net.ParentArgumentsOf(id)) {
      const Argument& arg = net.argument(a);
      const int q = p ^ (arg.side == Side::kDisfavoring ? 1 : 0);
      if (parity[arg.parent].insert(q).second) stack.push_back({arg.parent, q});
    }
  }
  return parity;
}

TEST(NetworkPropertyTest, MonotoneInEvidenceCredibility) {
  std::mt19937 rng(7);
  int checked = 0;
  for (int i = 0; i < 200; ++i) {
    auto net = testing::RandomNetwork(rng);
    const auto base = Evaluate(net);
    for (const auto& [lid, link] : net.links()) {
      if (link.credibility == C) continue;
      auto raised = net;
      raised.SetLinkCredibility(lid, FromRank(Rank(link.credibility) + 1));
      const auto r = Evaluate(raised);
      const int link_flip = link.side == Side::kDisfavoring ? 1 : 0;
      for (const auto& [id, parities] : PathParities(net, link.parent)) {
        if (parities.size() != 1) continue;
        if ((*parities.begin() ^ link_flip) == 0) {
          EXPECT_GE(r.probability(id), base.probability(id)) << id;
        } else {
          EXPECT_LE(r.probability(id), base.probability(id)) << id;
        }
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 1000);
}

TEST(NetworkPropertyTest, MonotoneWhenAllArgumentsFavor) {
  std::mt19937 rng(11);
  for (int i = 0; i < 200; ++i) {
    auto net = testing::RandomNetwork(rng);
    ArgumentationNetwork favoring_only;
    favoring_only.Merge(net);
    for (auto [id, arg] : net.arguments()) {
      arg.side = Side::kFavoring;
      favoring_only.AddArgument(arg);
    }
    const auto base = Evaluate(favoring_only);
    for (const auto& [lid, link] : favoring_only.links()) {
      if (link.credibility == C) continue;
      auto raised = favoring_only;
      raised.SetLinkCredibility(lid, FromRank(Rank(link.credibility) + 1));
      const auto r = Evaluate(raised);
      for (const auto& id : favoring_only.Ancestors(link.parent)) {
        if (link.side == Side::kFavoring) {
          EXPECT_GE(r.probability(id), base.probability(id));
        } else {
          EXPECT_LE(r.probability(id), base.probability(id));
        }
      }
    }
  }
}

TEST(NetworkPropertyTest, CoverageSoundness) {
  std::mt19937 rng(99);
  int exercised = 0;
  for (int i = 0; i < 200; ++i) {
    auto net = testing::RandomNetwork(rng);
    const auto base = Evaluate(net);
    for (const auto& [id, node] : net.nodes()) {
      if (!net.IsLeaf(id) || base.coverage(id).answered != 0) continue;
      auto u = ApplyEvidenceChange(
          net, base,
          EvidenceChange::Add({"probe", id, "probe-item", Side::kFavoring, C, L,
                               false}));
      std::set<std::string> chain = net.Ancestors(id);
      chain.insert(id);
      for (const auto& [nid, e] : base.nodes) {
        const auto& after = u.result.coverage(nid);
        EXPECT_EQ(after.total, e.coverage.total);
        EXPECT_EQ(after.answered, e.coverage.answered + (chain.count(nid) ? 1 : 0));
      }
      ++exercised;
      break;
    }
  }
  EXPECT_GT(exercised, 50);
}

}  // namespace
}  // namespace ebr
