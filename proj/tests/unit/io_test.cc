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

#include "ebr/io.h"

#include <gtest/gtest.h>

#include <random>

#include "ebr/errors.h"
#include "../support/ladder.h"
#include "../support/fixtures.h"
#include "../support/random_network.h"

namespace ebr {
namespace {

template <typename T>
T RoundTrip(const T& value) {
  return FromJson<T>(ParseJson(Dump(ToJson(value))));
}

KnowledgeBase LadderKb() {
  const auto fx = testing::MakeLadder();
  KnowledgeBase kb;
  kb.version = "ladder";
  kb.explanation_rules = fx.rules;
  kb.decomposition_rules = fx.decomposition;
  std::sort(kb.explanation_rules.begin(), kb.explanation_rules.end(),
            [](auto& a, auto& b) { return a.id < b.id; });
  std::sort(kb.decomposition_rules.begin(), kb.decomposition_rules.end(),
            [](auto& a, auto& b) { return a.id < b.id; });
  kb.cases = {{"c1", ParseStatement("f(?x:case)"),
               ParseStatement("sign-f(?x:case) & near(?x:case, ?y:port)"), "n"}};
  kb.profiles = {{"coastguard", "Coast guard",
                  {{"competence", {Prob::kVeryLikely, "on station"}},
                   {"veracity", {Prob::kLikely, "long record"}}}}};
  return kb;
}

TEST(JsonRoundTripTest, RandomNetworksAndEvaluations) {
  std::mt19937 rng(5);
  for (int i = 0; i < 100; ++i) {
    const auto n = testing::RandomNetwork(rng, 25);
    EXPECT_EQ(RoundTrip(n), n);
    const auto eval = Evaluate(n);
    EXPECT_EQ(RoundTrip(eval), eval);
  }
}

TEST(JsonRoundTripTest, SampleWithAssumption) {
  auto n = testing::SampleNetwork();
  n.SetAssumption("H2b", Prob::kLikely);
  EXPECT_EQ(RoundTrip(n), n);
}

TEST(JsonRoundTripTest, KnowledgeBase) {
  const auto kb = LadderKb();
  EXPECT_EQ(RoundTrip(kb), kb);
  EXPECT_EQ(Dump(ToJson(RoundTrip(kb))), Dump(ToJson(kb)));
}

TEST(JsonRoundTripTest, BuiltinPatterns) {
  for (const auto& p : BuiltinPatterns()) EXPECT_EQ(RoundTrip(p), p);
}

TEST(JsonRoundTripTest, TraceCandidatesAndRequests) {
  const auto fx = testing::MakeLadder();
  EvidenceRepository repo;
  testing::FillLadderRepository(fx, repo);
  const auto inv = MultiStepInvestigate(fx.observation, fx.rules,
                                        fx.decomposition, {}, repo, {});
  EXPECT_EQ(RoundTrip(inv.trace), inv.trace);
  for (const auto& [id, dev] : inv.survivors) {
    EXPECT_EQ(RoundTrip(dev.candidate), dev.candidate);
    const auto d = RoundTrip(dev.decomposition);
    EXPECT_EQ(d.network, dev.decomposition.network);
    EXPECT_EQ(d.steps, dev.decomposition.steps);
    for (const auto& r : dev.requests) EXPECT_EQ(RoundTrip(r), r);
  }
}

TEST(JsonRoundTripTest, ExistentialCandidateBindings) {
  ExplanationRule r;
  r.id = "meet";
  r.hypothesis = ParseStatement("meets(?s:ship, ?v:vessel)");
  r.observable = ParseAtom("dark(?s:ship)");
  const auto obs = ParseObservation("o", "dark(S1:ship)", Timestamp());
  const std::vector<ExplanationRule> rules{r};
  for (const auto& c : Abduce(obs, rules)) EXPECT_EQ(RoundTrip(c), c);
}

TEST(JsonRoundTripTest, EvidenceEntryAndEvent) {
  EvidenceEntry e;
  e.item.id = "x";
  e.item.type = EvidenceType::kTestimonialDirect;
  e.item.statement = ParseStatement("seen(S1:ship)");
  e.item.source = "coastguard";
  e.item.observed_at = Timestamp::Parse("2026-03-01T10:00:00Z");
  e.item.recorded_at = Timestamp::Parse("2026-03-01T11:00:00Z");
  e.item.credibility = Prob::kLikely;
  e.side = Side::kDisfavoring;
  e.relevance = Prob::kVeryLikely;
  EXPECT_EQ(RoundTrip(e), e);
  const ChangeEvent ev{"a-1", 4, "revise", e};
  EXPECT_EQ(RoundTrip(ev), ev);
}

TEST(JsonInputTest, LabelsAccepted) {
  EXPECT_EQ(FromJson<Prob>(Json("very likely")), Prob::kVeryLikely);
  EXPECT_EQ(FromJson<Prob>(Json("AC")), Prob::kAlmostCertain);
  EXPECT_THROW(FromJson<Prob>(Json("sure")), ParseError);
}

TEST(JsonInputTest, MalformedDocuments) {
  EXPECT_THROW(ParseJson("{"), ParseError);
  EXPECT_THROW(FromJson<ArgumentationNetwork>(ParseJson("{}")), ParseError);
  EXPECT_THROW(FromJson<KnowledgeBase>(ParseJson(R"j({"cases":[{"id":1}]})j")),
               ParseError);
}

TEST(KnowledgeBaseTest, ValidationFindsDuplicatesAndBadRules) {
  auto kb = LadderKb();
  EXPECT_TRUE(ValidateKnowledgeBase(kb).empty());
  kb.cases.push_back(kb.cases.front());
  ExplanationRule bad;
  bad.id = "bad";
  bad.hypothesis = ParseStatement("h(?a:case)");
  bad.observable = ParseAtom("o(?a:case)");
  bad.species_hints = {AbductionForm::kExistential};
  kb.explanation_rules.push_back(bad);
  const auto problems = ValidateKnowledgeBase(kb);
  EXPECT_GE(problems.size(), 2u);
  EXPECT_EQ(problems.front(), "duplicate case id 'c1'");
}

TEST(KnowledgeBaseTest, VersionIsContentHashUnlessGiven) {
  auto kb = LadderKb();
  EXPECT_EQ(KbVersion(kb), "ladder");
  kb.version.clear();
  const auto v = KbVersion(kb);
  EXPECT_EQ(v.rfind("kb-", 0), 0u);
  EXPECT_EQ(KbVersion(RoundTrip(kb)), v);
  kb.cases.clear();
  EXPECT_NE(KbVersion(kb), v);
}

TEST(ResolveEntryTest, AssessesFromProfile) {
  const auto kb = LadderKb();
  const auto j = ParseJson(R"j({"id":"t1","type":"testimonial-direct",
      "statement":"seen(S1:ship)","source":"coastguard",
      "observed_at":"2026-03-01T10:00:00Z"})j");
  const auto e = ResolveEntry(j, kb);
  EXPECT_EQ(e.item.credibility,
            AssessItem(e.item, kb).credibility);
  EXPECT_EQ(e.item.recorded_at, e.item.observed_at);
}

TEST(ResolveEntryTest, UnknownTestimonialSourceRejected) {
  const auto kb = LadderKb();
  const auto j = ParseJson(R"j({"id":"t1","type":"testimonial-direct",
      "statement":"seen(S1:ship)","source":"rumour"})j");
  EXPECT_THROW(ResolveEntry(j, kb), Rejected);
  auto with_cred = j;
  with_cred["credibility"] = "L";
  EXPECT_THROW(ResolveEntry(with_cred, kb), Rejected);
}

TEST(ResolveEntryTest, RepositoryDocumentRoundTrip) {
  const auto kb = LadderKb();
  EvidenceRepository repo;
  LoadRepository(ParseJson(R"j({"profiles":[{"id":"harbour","name":"Harbour master",
      "assessments":{"veracity":{"value":"VL"}}}],
      "items":[{"id":"t2","type":"testimonial-direct",
      "statement":"seen(S1:ship)","source":"harbour"},
      {"id":"r1","type":"tangible-real","statement":"log(S1:ship)",
      "credibility":"AC","side":"disfavoring"}]})j"),
                 kb, repo);
  ASSERT_EQ(repo.size(), 2u);
  EvidenceRepository again;
  LoadRepository(RepositoryToJson(repo), kb, again);
  EXPECT_EQ(again.Entries(), repo.Entries());
  EXPECT_EQ(again.Profiles(), repo.Profiles());
}

}  // namespace
}  // namespace ebr
