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

// Three-level explanation tree: e is explained by f, fi, fj; f by g, gm, gn;
// g by h, hp, hq. Off-chain hypotheses get prefixed names ("fi-g", ...).
// Every hypothesis P decomposes into one leaf sign-P(?x); the repository
// holds a sign for every hypothesis, strongest along f, g, h.
#ifndef EBR_TESTS_SUPPORT_LADDER_H_
#define EBR_TESTS_SUPPORT_LADDER_H_

#include <string>
#include <vector>

#include "ebr/collection.h"

namespace ebr::testing {

struct LadderFixture {
  Observation observation;
  std::vector<ExplanationRule> rules;
  std::vector<DecompositionRule> decomposition;
  std::vector<std::string> planted;  // f, g, h
  std::vector<std::string> hypotheses;
};

inline std::vector<std::string> LadderChildren(const std::string& parent,
                                             int level) {
  static const char* kLetters[] = {"", "f", "g", "h"};
  static const char* kSuffix[3][3] = {{"", "i", "j"}, {"", "m", "n"},
                                      {"", "p", "q"}};
  const std::string base = kLetters[level];
  const bool on_chain = parent == "e" || parent == kLetters[level - 1];
  std::vector<std::string> out;
  for (const char* s : kSuffix[level - 1]) {
    out.push_back(on_chain ? base + s : parent + "-" + base + s);
  }
  return out;
}

inline LadderFixture MakeLadder() {
  LadderFixture fx;
  fx.observation = ParseObservation("alert", "e(X:case)",
                                    Timestamp::Parse("2026-01-01T00:00:00Z"));
  fx.planted = {"f", "g", "h"};
  std::vector<std::string> level{"e"};
  for (int depth = 1; depth <= 3; ++depth) {
    std::vector<std::string> next;
    for (const auto& parent : level) {
      for (const auto& child : LadderChildren(parent, depth)) {
        ExplanationRule r;
        r.id = child;
        r.hypothesis = ParseStatement(child + "(?x:case)");
        r.observable = ParseAtom(parent + "(?x:case)");
        r.prior_relevance = Prob::kLikely;
        fx.rules.push_back(std::move(r));

        DecompositionRule d;
        d.id = "sign-of-" + child;
        d.parent = ParseStatement(child + "(?x:case)");
        d.side = Side::kFavoring;
        d.relevance = Prob::kCertain;
        d.children = {ParseStatement("sign-" + child + "(?x:case)")};
        fx.decomposition.push_back(std::move(d));

        fx.hypotheses.push_back(child);
        next.push_back(child);
      }
    }
    level = std::move(next);
  }
  return fx;
}

inline void FillLadderRepository(const LadderFixture& fx, EvidenceRepository& repo) {
  int n = 0;
  for (const auto& h : fx.hypotheses) {
    EvidenceEntry e;
    e.item.id = "sign-" + std::to_string(++n);
    e.item.type = EvidenceType::kTangibleReal;
    e.item.statement = ParseStatement("sign-" + h + "(X:case)");
    const bool planted =
        std::find(fx.planted.begin(), fx.planted.end(), h) != fx.planted.end();
    e.item.credibility = planted ? Prob::kVeryLikely
                         : n % 2 ? Prob::kLikely
                                 : Prob::kBarelyLikely;
    repo.Upsert(std::move(e));
  }
}

}  // namespace ebr::testing

#endif  // EBR_TESTS_SUPPORT_LADDER_H_
