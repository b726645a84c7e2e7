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

/// @file investigate.h
/// Multi-step abduce / collect / test loop with beam pruning.
#ifndef EBR_INVESTIGATE_H_
#define EBR_INVESTIGATE_H_

#include <map>
#include <span>
#include <string>
#include <vector>

#include "ebr/abduction.h"
#include "ebr/collection.h"
#include "ebr/network.h"

namespace ebr {

struct InvestigationLimits {
  int max_depth = 3;
  /// Survivors kept per step; 0 keeps everything.
  int beam_width = 1;
  int decomposition_depth = kDefaultDecompositionDepth;
};

/// A candidate taken through decomposition, collection and evaluation.
struct DevelopedCandidate {
  HypothesisCandidate candidate;
  Decomposition decomposition;  // network carries the attached evidence
  std::vector<CollectionRequest> requests;
  EvaluationResult result;
  RootStanding standing;
};

DevelopedCandidate DevelopCandidate(const HypothesisCandidate& candidate,
                                    std::span<const DecompositionRule> rules,
                                    const EvidenceSource& source,
                                    const Timestamp& issued_at,
                                    int decomposition_depth =
                                        kDefaultDecompositionDepth);

struct CandidateSummary {
  std::string id;
  std::string statement;
  std::string description;
  std::string species;
  Prob probability = Prob::kNoSupport;
  Coverage coverage;
  std::vector<std::string> evidence;  // item ids linked into its network
  /// False when the candidate was generated but never networked and tested.
  bool developed = true;
  bool survived = false;

  bool operator==(const CandidateSummary&) const = default;
};

struct InvestigationStep {
  int index = 0;
  /// One per survivor of the previous step (the alert at step 1).
  std::vector<Observation> observations;
  std::vector<CandidateSummary> candidates;  // in ranking order
  std::vector<std::string> selected;
  /// False when no selected candidate had any answered leaf: the step was
  /// accepted without evidence.
  bool verified = false;

  bool operator==(const InvestigationStep&) const = default;
};

struct AbductionTrace {
  std::vector<InvestigationStep> steps;
  std::string stop_reason;
  int candidates_examined = 0;

  bool operator==(const AbductionTrace&) const = default;
};

struct Investigation {
  AbductionTrace trace;
  std::map<std::string, DevelopedCandidate> survivors;
};

inline constexpr const char* kStopNoExplanation = "no explanation in KB";
inline constexpr const char* kStopNoRules = "no rules match";
inline constexpr const char* kStopConfident = "confident survivor";
inline constexpr const char* kStopMaxDepth = "max depth";

/// Candidate ids at step k > 1 are "<survivor id>.<rule id>". Pruned
/// candidates stay in the trace and are never reopened. Throws
/// ContractViolation when max_depth < 1 or beam_width < 0.
Investigation MultiStepInvestigate(const Observation& observation,
                                   std::span<const ExplanationRule> rules,
                                   std::span<const DecompositionRule> decomposition,
                                   std::span<const CaseRecord> cases,
                                   const EvidenceSource& source,
                                   const InvestigationLimits& limits);

/// Every chain of abductions of exactly `depth` links, without evaluation.
/// Chains are candidate statement texts in order.
std::vector<std::vector<std::string>> EnumerateChains(
    const Observation& observation, std::span<const ExplanationRule> rules,
    int depth);

}  // namespace ebr

#endif  // EBR_INVESTIGATE_H_
