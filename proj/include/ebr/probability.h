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

/// @file probability.h
/// The ordered symbolic probability scale and its min/max calculus.
///
/// Every strength in the engine (credibility, relevance, inferential force,
/// hypothesis probability) is one of six ordered labels. Conjunction takes the
/// minimum, disjunction the maximum. There is no numeric probability anywhere.
#ifndef EBR_PROBABILITY_H_
#define EBR_PROBABILITY_H_

#include <array>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ebr {

/// Ordered qualitative probability. The underlying value is the rank.
enum class SymbolicProbability : std::uint8_t {
  kNoSupport = 0,
  kBarelyLikely = 1,
  kLikely = 2,
  kVeryLikely = 3,
  kAlmostCertain = 4,
  kCertain = 5,
};

using Prob = SymbolicProbability;

inline constexpr int kScaleSize = 6;

/// All levels in ascending order.
inline constexpr std::array<Prob, kScaleSize> kScale = {
    Prob::kNoSupport,  Prob::kBarelyLikely,  Prob::kLikely,
    Prob::kVeryLikely, Prob::kAlmostCertain, Prob::kCertain};

constexpr int Rank(Prob p) { return static_cast<int>(p); }

/// Level at `rank`; throws ContractViolation outside [0, 5].
Prob FromRank(int rank);

/// Lowercase serialized label, e.g. "barely likely".
std::string_view Label(Prob p);

/// Short symbol, e.g. "BL".
std::string_view Abbreviation(Prob p);

/// Accepts the serialized label or the abbreviation.
std::optional<Prob> ParseProbability(std::string_view text);

/// Like ParseProbability but throws ParseError.
Prob ParseProbabilityOrThrow(std::string_view text);

/// Minimum of a non-empty list.
Prob Conjoin(std::span<const Prob> values);
Prob Conjoin(std::initializer_list<Prob> values);

/// Maximum of a non-empty list.
Prob Disjoin(std::span<const Prob> values);
Prob Disjoin(std::initializer_list<Prob> values);

/// Force of one item of evidence: min(credibility, relevance).
constexpr Prob InferentialForce(Prob credibility, Prob relevance) {
  return credibility < relevance ? credibility : relevance;
}

/// Net probability from the strongest favoring and disfavoring forces.
/// Rank subtraction clamped at "no support". This is the only place the
/// balancing rule lives.
constexpr Prob Balance(Prob favoring, Prob disfavoring) {
  const int r = Rank(favoring) - Rank(disfavoring);
  return static_cast<Prob>(r > 0 ? r : 0);
}

using IndicatorId = std::string;

/// Relevance of one combination of present sub-indicators to their parent.
struct IndicatorCombination {
  std::set<IndicatorId> indicators;
  Prob relevance = Prob::kNoSupport;

  bool operator==(const IndicatorCombination&) const = default;
};

/// The combined-indicator operator: the disjunction over every applicable
/// combination of min(relevance, conjunction of its indicators). A
/// combination applies when all its indicators are present. Returns
/// "no support" when none applies.
Prob CombinedIndicator(std::span<const IndicatorCombination> pattern,
                       const std::map<IndicatorId, Prob>& present);

/// Returns the first pair of combinations sharing an indicator set, if any.
std::optional<std::string> FindDuplicateCombination(
    std::span<const IndicatorCombination> pattern);

}  // namespace ebr

#endif  // EBR_PROBABILITY_H_
