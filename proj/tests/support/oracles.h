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

// Independent reference evaluators. They restate the calculus directly as
// formulas or literal enumerations and share no code with the engine beyond
// the scale itself.
#ifndef EBR_TESTS_SUPPORT_ORACLES_H_
#define EBR_TESTS_SUPPORT_ORACLES_H_

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "ebr/probability.h"
#include "fixtures.h"

namespace ebr::testing {

inline int OMin(int a, int b) { return a < b ? a : b; }
inline int OMax(int a, int b) { return a > b ? a : b; }
inline int OBalance(int f, int d) { return f - d > 0 ? f - d : 0; }

struct SampleOracleValues {
  int h = 0, h1 = 0, h2 = 0, h3 = 0, h2a = 0, h2b = 0;
};

// Hand-expanded formulas for SampleNetwork on integer ranks.
inline SampleOracleValues SampleOracle(const SampleEvidence& e, int h2b_assumption) {
  auto r = [](Prob p) { return static_cast<int>(p); };
  SampleOracleValues v;
  const int f1 = OMin(r(e.e1_credibility), r(e.e1_relevance));
  const int f2 = OMin(r(e.e2_credibility), r(e.e2_relevance));
  const int f3 = OMin(r(e.e3_credibility), r(e.e3_relevance));
  v.h2a = OBalance(OMax(f1, f2), f3);
  v.h2b = h2b_assumption;  // -1 means unanswered
  if (v.h2b < 0) v.h2b = 0;
  v.h1 = r(kSampleH1Force);
  v.h3 = r(kSampleH3Force);
  v.h2 = OBalance(OMin(r(kSampleH2Relevance), OMin(v.h2a, v.h2b)), 0);
  v.h = OBalance(OMin(r(kSampleRootFavoringRelevance), OMin(v.h1, v.h2)),
                 OMin(r(kSampleRootDisfavoringRelevance), v.h3));
  return v;
}

// "Disjunction of all possible conjunctions": enumerate every non-empty
// subset of the present indicators; a subset that the table lists
// contributes min(relevance, its members); take the maximum.
inline Prob CombinedIndicatorBruteForce(
    const std::vector<IndicatorCombination>& table,
    const std::map<std::string, Prob>& present) {
  std::vector<std::string> ids;
  for (const auto& [k, v] : present) ids.push_back(k);
  int best = 0;
  const unsigned n = static_cast<unsigned>(ids.size());
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::set<std::string> subset;
    int conj = 5;
    for (unsigned i = 0; i < n; ++i) {
      if (mask & (1u << i)) {
        subset.insert(ids[i]);
        conj = OMin(conj, static_cast<int>(present.at(ids[i])));
      }
    }
    for (const auto& row : table) {
      if (row.indicators == subset) {
        best = OMax(best, OMin(static_cast<int>(row.relevance), conj));
      }
    }
  }
  return static_cast<Prob>(best);
}

}  // namespace ebr::testing

#endif  // EBR_TESTS_SUPPORT_ORACLES_H_
