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

#include "ebr/probability.h"

#include <algorithm>

#include "ebr/errors.h"

namespace ebr {
namespace {

constexpr std::array<std::string_view, kScaleSize> kLabels = {
    "no support", "barely likely", "likely",
    "very likely", "almost certain", "certain"};

constexpr std::array<std::string_view, kScaleSize> kAbbreviations = {
    "NS", "BL", "L", "VL", "AC", "C"};

}  // namespace

Prob FromRank(int rank) {
  if (rank < 0 || rank >= kScaleSize) {
    throw ContractViolation("probability rank out of range: " +
                            std::to_string(rank));
  }
  return static_cast<Prob>(rank);
}

std::string_view Label(Prob p) { return kLabels[Rank(p)]; }

std::string_view Abbreviation(Prob p) { return kAbbreviations[Rank(p)]; }

std::optional<Prob> ParseProbability(std::string_view text) {
  for (int i = 0; i < kScaleSize; ++i) {
    if (text == kLabels[i] || text == kAbbreviations[i]) return FromRank(i);
  }
  return std::nullopt;
}

Prob ParseProbabilityOrThrow(std::string_view text) {
  auto p = ParseProbability(text);
  if (!p) {
    throw ParseError("unknown probability label '" + std::string(text) + "'");
  }
  return *p;
}

Prob Conjoin(std::span<const Prob> values) {
  if (values.empty()) throw ContractViolation("conjoin of an empty list");
  return *std::min_element(values.begin(), values.end());
}

Prob Conjoin(std::initializer_list<Prob> values) {
  return Conjoin(std::span<const Prob>(values.begin(), values.size()));
}

Prob Disjoin(std::span<const Prob> values) {
  if (values.empty()) throw ContractViolation("disjoin of an empty list");
  return *std::max_element(values.begin(), values.end());
}

Prob Disjoin(std::initializer_list<Prob> values) {
  return Disjoin(std::span<const Prob>(values.begin(), values.size()));
}

Prob CombinedIndicator(std::span<const IndicatorCombination> pattern,
                       const std::map<IndicatorId, Prob>& present) {
  Prob best = Prob::kNoSupport;
  for (const auto& combination : pattern) {
    if (combination.indicators.empty()) continue;
    Prob conj = Prob::kCertain;
    bool applicable = true;
    for (const auto& id : combination.indicators) {
      auto it = present.find(id);
      if (it == present.end()) {
        applicable = false;
        break;
      }
      conj = std::min(conj, it->second);
    }
    if (!applicable) continue;
    best = std::max(best, std::min(combination.relevance, conj));
  }
  return best;
}

std::optional<std::string> FindDuplicateCombination(
    std::span<const IndicatorCombination> pattern) {
  std::set<std::set<IndicatorId>> seen;
  for (const auto& c : pattern) {
    if (!seen.insert(c.indicators).second) {
      std::string names;
      for (const auto& i : c.indicators) {
        if (!names.empty()) names += ",";
        names += i;
      }
      return "{" + names + "}";
    }
  }
  return std::nullopt;
}

}  // namespace ebr
