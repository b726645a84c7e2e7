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

/// @file kb.h
/// The reference knowledge base an analysis pins.
#ifndef EBR_KB_H_
#define EBR_KB_H_

#include <span>
#include <string>
#include <vector>

#include "ebr/abduction.h"
#include "ebr/collection.h"
#include "ebr/evidence.h"

namespace ebr {

struct KnowledgeBase {
  /// Empty means "derive from content" (see KbVersion in io.h).
  std::string version;
  std::vector<ExplanationRule> explanation_rules;
  std::vector<DecompositionRule> decomposition_rules;
  std::vector<CaseRecord> cases;
  /// Added to the built-in patterns; a pattern with a built-in id replaces it.
  std::vector<CredibilityPattern> patterns;
  std::vector<SourceProfile> profiles;

  bool operator==(const KnowledgeBase&) const = default;
};

/// Built-in patterns overlaid with the KB's own, in id order.
std::vector<CredibilityPattern> EffectivePatterns(const KnowledgeBase& kb);

/// Duplicate ids plus every per-entry validation message.
std::vector<std::string> ValidateKnowledgeBase(const KnowledgeBase& kb);

/// Credibility for an item that arrived without one. Testimonial items need a
/// known source profile; other types need a pattern for their type (a
/// pattern with a default value, or a profile keyed by the item's source).
/// Throws Rejected when the item cannot be assessed.
CredibilityAssessment AssessItem(const EvidenceItem& item,
                                 const KnowledgeBase& kb,
                                 std::span<const SourceProfile> extra_profiles = {});

}  // namespace ebr

#endif  // EBR_KB_H_
