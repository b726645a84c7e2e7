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

// Network fixtures shared by unit and acceptance tests.
#ifndef EBR_TESTS_SUPPORT_FIXTURES_H_
#define EBR_TESTS_SUPPORT_FIXTURES_H_

#include <optional>
#include <string>

#include "ebr/network.h"

namespace ebr::testing {

struct SampleEvidence {
  Prob e1_credibility = Prob::kVeryLikely;
  Prob e1_relevance = Prob::kCertain;
  Prob e2_credibility = Prob::kLikely;
  Prob e2_relevance = Prob::kLikely;
  Prob e3_credibility = Prob::kBarelyLikely;
  Prob e3_relevance = Prob::kVeryLikely;
};

// Relevances on the upper arguments are arbitrary but fixed.
inline constexpr Prob kSampleRootFavoringRelevance = Prob::kVeryLikely;
inline constexpr Prob kSampleRootDisfavoringRelevance = Prob::kLikely;
inline constexpr Prob kSampleH2Relevance = Prob::kCertain;
inline constexpr Prob kSampleH1Force = Prob::kAlmostCertain;  // E4: AC, C
inline constexpr Prob kSampleH3Force = Prob::kBarelyLikely;   // E5: BL, VL

// H <- favoring {H1 & H2}, disfavoring {H3}; H2 <- favoring {H2a & H2b};
// H2a carries favoring E1, E2 and disfavoring E3; H2b has no evidence.
inline ArgumentationNetwork SampleNetwork(
    const SampleEvidence& e = {},
    std::optional<Prob> h2b_assumption = std::nullopt) {
  ArgumentationNetwork n;
  for (const char* id : {"H", "H1", "H2", "H3", "H2a", "H2b"}) {
    n.AddNode({id, std::string("hypothesis ") + id, std::nullopt});
  }
  n.AddCompetingRoot("H");
  n.AddArgument({"H-fav", "H", Side::kFavoring, kSampleRootFavoringRelevance,
                 {"H1", "H2"}});
  n.AddArgument({"H-dis", "H", Side::kDisfavoring,
                 kSampleRootDisfavoringRelevance, {"H3"}});
  n.AddArgument({"H2-fav", "H2", Side::kFavoring, kSampleH2Relevance,
                 {"H2a", "H2b"}});
  n.AddEvidenceLink({"E1", "H2a", "item-1", Side::kFavoring, e.e1_relevance,
                     e.e1_credibility, false});
  n.AddEvidenceLink({"E2", "H2a", "item-2", Side::kFavoring, e.e2_relevance,
                     e.e2_credibility, false});
  n.AddEvidenceLink({"E3", "H2a", "item-3", Side::kDisfavoring, e.e3_relevance,
                     e.e3_credibility, false});
  n.AddEvidenceLink({"E4", "H1", "item-4", Side::kFavoring, Prob::kCertain,
                     Prob::kAlmostCertain, false});
  n.AddEvidenceLink({"E5", "H3", "item-5", Side::kFavoring, Prob::kVeryLikely,
                     Prob::kBarelyLikely, false});
  if (h2b_assumption) n.SetAssumption("H2b", h2b_assumption);
  return n;
}

// Root R <- favoring (relevance C) {X}; X is a leaf with no evidence.
inline ArgumentationNetwork IdentityChain(
    std::optional<Prob> leaf_assumption = std::nullopt) {
  ArgumentationNetwork n;
  n.AddNode({"R", "root", std::nullopt});
  n.AddNode({"X", "leaf", leaf_assumption});
  n.AddArgument({"R-fav", "R", Side::kFavoring, Prob::kCertain, {"X"}});
  n.AddCompetingRoot("R");
  return n;
}

}  // namespace ebr::testing

#endif  // EBR_TESTS_SUPPORT_FIXTURES_H_
