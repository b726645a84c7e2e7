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

/// @file evidence.h
/// Evidence taxonomy, evidence items, source profiles and credibility
/// patterns.
///
/// A credibility pattern is a tree of indicators. Leaf indicators are read
/// from the source profile; each parent is computed with the combined
/// indicator operator over its combination table. An indicator assessed
/// directly in the profile overrides its subtree.
#ifndef EBR_EVIDENCE_H_
#define EBR_EVIDENCE_H_

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ebr/probability.h"
#include "ebr/statement.h"

namespace ebr {

enum class EvidenceType {
  kTangibleReal,
  kTangibleDemonstrative,
  kTestimonialDirect,
  kTestimonialSecondhand,
  kTestimonialOpinion,
  kAuthoritativeRecord,
  kMissing,
};

inline constexpr EvidenceType kAllEvidenceTypes[] = {
    EvidenceType::kTangibleReal,          EvidenceType::kTangibleDemonstrative,
    EvidenceType::kTestimonialDirect,     EvidenceType::kTestimonialSecondhand,
    EvidenceType::kTestimonialOpinion,    EvidenceType::kAuthoritativeRecord,
    EvidenceType::kMissing};

std::string_view TypeTag(EvidenceType type);
EvidenceType ParseEvidenceType(std::string_view tag);
bool IsTestimonial(EvidenceType type);

/// UTC instant written as "YYYY-MM-DDTHH:MM:SSZ". Ordering is textual,
/// which is chronological for this fixed layout.
class Timestamp {
 public:
  Timestamp() : text_("1970-01-01T00:00:00Z") {}
  /// Throws ParseError on any other layout.
  static Timestamp Parse(std::string_view text);

  const std::string& str() const { return text_; }
  auto operator<=>(const Timestamp&) const = default;
  bool operator==(const Timestamp&) const = default;

 private:
  explicit Timestamp(std::string text) : text_(std::move(text)) {}
  std::string text_;
};

struct EvidenceItem {
  std::string id;
  EvidenceType type = EvidenceType::kTangibleReal;
  Statement statement;
  std::string source;  // SourceProfile id; required for testimonial items
  Timestamp observed_at;
  Timestamp recorded_at;
  Prob credibility = Prob::kNoSupport;
  std::string provenance;

  bool operator==(const EvidenceItem&) const = default;
};

/// Broken item invariants, one message each.
std::vector<std::string> ValidateItem(const EvidenceItem& item);

/// Indicators a source profile may assess.
const std::vector<IndicatorId>& IndicatorVocabulary();

struct IndicatorAssessment {
  Prob value = Prob::kNoSupport;
  std::string note;

  bool operator==(const IndicatorAssessment&) const = default;
};

struct SourceProfile {
  std::string id;
  std::string name;
  std::map<IndicatorId, IndicatorAssessment> assessments;

  bool operator==(const SourceProfile&) const = default;
};

std::vector<std::string> ValidateProfile(const SourceProfile& profile);

struct IndicatorSpec {
  IndicatorId id;
  std::string question;
  std::vector<IndicatorId> children;
  std::vector<IndicatorCombination> combinations;

  bool operator==(const IndicatorSpec&) const = default;
};

struct CredibilityPattern {
  std::string id;
  EvidenceType applicable_type = EvidenceType::kTestimonialDirect;
  IndicatorId root = "credibility";
  std::map<IndicatorId, IndicatorSpec> indicators;
  /// Used when the root ends up absent (nothing assessed).
  std::optional<Prob> default_value;

  const IndicatorSpec* find(const IndicatorId& id) const;
  /// Indicators with no children, in id order.
  std::vector<IndicatorId> LeafIndicators() const;

  bool operator==(const CredibilityPattern&) const = default;
};

/// Tree and table problems, one message each.
std::vector<std::string> ValidatePattern(const CredibilityPattern& pattern);

/// all children -> C, any single child -> BL, anything in between -> L.
/// A single child maps to C.
std::vector<IndicatorCombination> DefaultCombinationTable(
    const std::vector<IndicatorId>& children);

/// Testimonial (direct observation), internet-source demonstrative tangible,
/// and authoritative-record patterns.
std::vector<CredibilityPattern> BuiltinPatterns();

struct AssessmentStep {
  IndicatorId indicator;
  /// "profile", "combined", "default" or "absent".
  std::string method;
  std::vector<std::string> applied;  // combinations that applied
  std::optional<Prob> value;

  bool operator==(const AssessmentStep&) const = default;
};

struct CredibilityAssessment {
  Prob credibility = Prob::kNoSupport;
  std::vector<AssessmentStep> trace;
  EvidenceItem item;  // the input with credibility set

  bool operator==(const CredibilityAssessment&) const = default;
};

/// Throws Rejected when the pattern does not apply to the item's type.
CredibilityAssessment AssessCredibility(const EvidenceItem& item,
                                        const SourceProfile& profile,
                                        const CredibilityPattern& pattern);

/// Expected-but-absent evidence. Credibility stays "no support" and it never
/// answers the leaf it is linked to.
EvidenceItem MarkMissing(const std::string& expected, const std::string& reason,
                         const Timestamp& at = {});

}  // namespace ebr

#endif  // EBR_EVIDENCE_H_
