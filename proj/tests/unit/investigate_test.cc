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

#include "ebr/investigate.h"

#include <gtest/gtest.h>

#include <algorithm>

#include "ebr/errors.h"
#include "../support/ladder.h"

namespace ebr {
namespace {

class LadderTest : public ::testing::Test {
 protected:
  void SetUp() override { testing::FillLadderRepository(fx, repo); }

  Investigation Run(int depth, int beam) {
    return MultiStepInvestigate(fx.observation, fx.rules, fx.decomposition, {},
                                repo, {depth, beam, 5});
  }

  testing::LadderFixture fx = testing::MakeLadder();
  EvidenceRepository repo{"repo"};
};

TEST_F(LadderTest, FixtureShape) {
  EXPECT_EQ(fx.rules.size(), 39u);
  EXPECT_EQ(EnumerateChains(fx.observation, fx.rules, 3).size(), 27u);
  EXPECT_EQ(EnumerateChains(fx.observation, fx.rules, 1).size(), 3u);
}

TEST_F(LadderTest, BeamOneFollowsPlantedChain) {
  const auto inv = Run(3, 1);
  const auto& t = inv.trace;
  EXPECT_EQ(t.candidates_examined, 9);
  EXPECT_EQ(t.stop_reason, kStopMaxDepth);
  ASSERT_EQ(t.steps.size(), 3u);
  EXPECT_EQ(t.steps[0].selected, std::vector<std::string>{"f"});
  EXPECT_EQ(t.steps[1].selected, std::vector<std::string>{"f.g"});
  EXPECT_EQ(t.steps[2].selected, std::vector<std::string>{"f.g.h"});
  EXPECT_EQ(t.steps[1].observations[0].id, "f");
  for (const auto& s : t.steps) {
    EXPECT_TRUE(s.verified);
    EXPECT_EQ(s.candidates.size(), 3u);
    EXPECT_EQ(s.candidates[0].probability, Prob::kVeryLikely);
  }
  ASSERT_EQ(inv.survivors.size(), 1u);
  EXPECT_EQ(Canonical(inv.survivors.at("f.g.h").candidate.statement),
            "h(X:case)");
}

TEST_F(LadderTest, UnboundedBeamKeepsEverything) {
  const auto inv = Run(3, 0);
  EXPECT_EQ(inv.trace.candidates_examined, 3 + 9 + 27);
  for (const auto& s : inv.trace.steps) {
    EXPECT_EQ(s.selected.size(), s.candidates.size());
  }
  std::set<std::string> survivors;
  for (const auto& [id, d] : inv.survivors) {
    survivors.insert(Canonical(d.candidate.statement));
  }
  std::set<std::string> exhaustive;
  for (const auto& chain : EnumerateChains(fx.observation, fx.rules, 3)) {
    exhaustive.insert(chain.back());
  }
  EXPECT_EQ(survivors.size(), 27u);
  EXPECT_EQ(survivors, exhaustive);
}

TEST_F(LadderTest, BeamBoundsExamined) {
  for (int beam = 1; beam <= 4; ++beam) {
    const auto inv = Run(3, beam);
    EXPECT_LE(inv.trace.candidates_examined, beam * 3 * 3) << beam;
  }
}

TEST_F(LadderTest, DepthOneIsAbducePlusEvaluate) {
  const auto inv = Run(1, 1);
  ASSERT_EQ(inv.trace.steps.size(), 1u);
  EXPECT_EQ(inv.trace.candidates_examined, 3);
  const auto abduced = Abduce(fx.observation, fx.rules);
  ASSERT_EQ(abduced.size(), 3u);
  for (const auto& c : abduced) {
    const auto d = DevelopCandidate(c, fx.decomposition, repo, {});
    const auto& s = inv.trace.steps[0].candidates;
    auto it = std::find_if(s.begin(), s.end(),
                           [&](auto& x) { return x.id == c.id; });
    ASSERT_NE(it, s.end());
    EXPECT_EQ(it->probability, d.standing.probability);
  }
}

TEST_F(LadderTest, Deterministic) {
  EXPECT_EQ(Run(3, 2).trace, Run(3, 2).trace);
}

TEST_F(LadderTest, NoRulesMatchAfterLastLevel) {
  const auto inv = Run(5, 1);
  EXPECT_EQ(inv.trace.steps.size(), 3u);
  EXPECT_EQ(inv.trace.stop_reason, kStopNoRules);
  EXPECT_EQ(inv.survivors.count("f.g.h"), 1u);
}

TEST_F(LadderTest, ConfidentSurvivorStops) {
  EvidenceEntry strong = *repo.Find("sign-1");  // sign-f
  strong.item.credibility = Prob::kCertain;
  repo.Upsert(strong);
  const auto inv = Run(3, 1);
  EXPECT_EQ(inv.trace.steps.size(), 1u);
  EXPECT_EQ(inv.trace.stop_reason, kStopConfident);
}

TEST_F(LadderTest, UnverifiedStepMarked) {
  EvidenceRepository empty("repo");
  const auto inv = MultiStepInvestigate(fx.observation, fx.rules,
                                        fx.decomposition, {}, empty, {2, 1, 5});
  ASSERT_EQ(inv.trace.steps.size(), 2u);
  EXPECT_FALSE(inv.trace.steps[0].verified);
  EXPECT_FALSE(inv.trace.steps[1].verified);
}

TEST_F(LadderTest, NoExplanation) {
  const auto inv = MultiStepInvestigate(
      ParseObservation("o", "unrelated(Y)"), fx.rules, fx.decomposition, {},
      repo, {3, 1, 5});
  EXPECT_TRUE(inv.trace.steps.empty());
  EXPECT_EQ(inv.trace.stop_reason, kStopNoExplanation);
  EXPECT_THROW(Run(0, 1), ContractViolation);
}

TEST_F(LadderTest, AnalogicalRefinementsAreDeveloped) {
  const std::vector<CaseRecord> cases{
      {"c1", ParseStatement("f(?x:case)"), ParseStatement("sign-g(?x:case)"), ""}};
  const auto inv = MultiStepInvestigate(fx.observation, fx.rules,
                                        fx.decomposition, cases, repo, {1, 0, 5});
  EXPECT_EQ(inv.trace.candidates_examined, 4);
  EXPECT_EQ(inv.survivors.at("f+c1").candidate.species.form,
            AbductionForm::kAnalogical);
}

}  // namespace
}  // namespace ebr
