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

/// @file bias.h
/// Self-checks over an analysis. Every detector is a pure function and every
/// finding is advisory.
#ifndef EBR_BIAS_H_
#define EBR_BIAS_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ebr/collection.h"
#include "ebr/investigate.h"
#include "ebr/network.h"

namespace ebr {

enum class BiasKind { kConfirmation, kSatisficing, kAbsenceOfEvidence };

std::string_view BiasKindName(BiasKind kind);
BiasKind ParseBiasKind(std::string_view text);

struct BiasFinding {
  BiasKind kind = BiasKind::kConfirmation;
  std::string location;
  std::string severity;  // "advisory" or "warning"
  std::string explanation;
  std::string rule;
  std::vector<std::string> cited;

  bool operator==(const BiasFinding&) const = default;
};

inline constexpr double kDefaultCoverageThreshold = 0.5;

/// A node whose subtree has favoring evidence, no disfavoring argument, no
/// disfavoring link, and no disfavoring request ever issued. Only the topmost
/// such nodes are reported.
std::vector<BiasFinding> DetectConfirmation(
    const ArgumentationNetwork& network,
    std::span<const CollectionRequest> requests);

/// Alternatives were generated but only one was developed.
std::vector<BiasFinding> DetectSatisficing(const ArgumentationNetwork& network,
                                           const AbductionTrace& trace);

/// Roots at "likely" or above whose coverage ratio is below `threshold`.
/// Throws Rejected when threshold is outside (0, 1].
std::vector<BiasFinding> DetectAbsenceOfEvidence(
    const ArgumentationNetwork& network, const EvaluationResult& evaluation,
    double threshold = kDefaultCoverageThreshold);

/// All three detectors, in kind order.
std::vector<BiasFinding> DetectBiases(const ArgumentationNetwork& network,
                                      std::span<const CollectionRequest> requests,
                                      const AbductionTrace& trace,
                                      const EvaluationResult& evaluation,
                                      double threshold = kDefaultCoverageThreshold);

}  // namespace ebr

#endif  // EBR_BIAS_H_
