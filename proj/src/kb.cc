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

#include "ebr/kb.h"

#include <map>
#include <set>

#include "ebr/errors.h"

namespace ebr {
namespace {

template <typename T>
void CheckUnique(const std::vector<T>& items, const std::string& what,
                 std::vector<std::string>& out) {
  std::set<std::string> seen;
  for (const auto& i : items) {
    if (!seen.insert(i.id).second) {
      out.push_back("duplicate " + what + " id '" + i.id + "'");
    }
  }
}

void Append(std::vector<std::string>& out, std::vector<std::string> more) {
  for (auto& m : more) out.push_back(std::move(m));
}

}  // namespace

std::vector<CredibilityPattern> EffectivePatterns(const KnowledgeBase& kb) {
  std::map<std::string, CredibilityPattern> by_id;
  for (auto& p : BuiltinPatterns()) by_id[p.id] = std::move(p);
  for (const auto& p : kb.patterns) by_id[p.id] = p;
  std::vector<CredibilityPattern> out;
  for (auto& [id, p] : by_id) out.push_back(std::move(p));
  return out;
}

std::vector<std::string> ValidateKnowledgeBase(const KnowledgeBase& kb) {
  std::vector<std::string> out;
  CheckUnique(kb.explanation_rules, "explanation rule", out);
  CheckUnique(kb.decomposition_rules, "decomposition rule", out);
  CheckUnique(kb.cases, "case", out);
  CheckUnique(kb.patterns, "pattern", out);
  CheckUnique(kb.profiles, "source profile", out);
  for (const auto& r : kb.explanation_rules) Append(out, ValidateRule(r));
  for (const auto& r : kb.decomposition_rules) Append(out, ValidateRule(r));
  for (const auto& c : kb.cases) Append(out, ValidateCase(c));
  for (const auto& p : kb.patterns) Append(out, ValidatePattern(p));
  for (const auto& p : kb.profiles) Append(out, ValidateProfile(p));
  return out;
}

CredibilityAssessment AssessItem(const EvidenceItem& item,
                                 const KnowledgeBase& kb,
                                 std::span<const SourceProfile> extra_profiles) {
  if (item.type == EvidenceType::kMissing) {
    CredibilityAssessment out;
    out.item = item;
    out.item.credibility = out.credibility = Prob::kNoSupport;
    return out;
  }
  const SourceProfile* profile = nullptr;
  for (const auto& p : extra_profiles) {
    if (p.id == item.source) profile = &p;
  }
  for (const auto& p : kb.profiles) {
    if (!profile && p.id == item.source) profile = &p;
  }
  if (IsTestimonial(item.type) && !profile) {
    throw Rejected("testimonial item '" + item.id + "' cites unknown source '" +
                   item.source + "'");
  }
  const auto patterns = EffectivePatterns(kb);
  const CredibilityPattern* pattern = nullptr;
  for (const auto& p : patterns) {
    if (p.applicable_type == item.type) {
      pattern = &p;
      break;
    }
  }
  if (!pattern) {
    throw Rejected("item '" + item.id + "' has no credibility and no pattern "
                   "covers " + std::string(TypeTag(item.type)) + " evidence");
  }
  const SourceProfile empty{item.source, {}, {}};
  return AssessCredibility(item, profile ? *profile : empty, *pattern);
}

}  // namespace ebr
