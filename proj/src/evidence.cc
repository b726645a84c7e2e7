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

#include "ebr/evidence.h"

#include <algorithm>
#include <cctype>
#include <functional>

#include "ebr/errors.h"

namespace ebr {
namespace {

struct TypeName {
  EvidenceType type;
  std::string_view tag;
};

constexpr TypeName kTypeNames[] = {
    {EvidenceType::kTangibleReal, "tangible-real"},
    {EvidenceType::kTangibleDemonstrative, "tangible-demonstrative"},
    {EvidenceType::kTestimonialDirect, "testimonial-direct"},
    {EvidenceType::kTestimonialSecondhand, "testimonial-secondhand"},
    {EvidenceType::kTestimonialOpinion, "testimonial-opinion"},
    {EvidenceType::kAuthoritativeRecord, "authoritative-record"},
    {EvidenceType::kMissing, "missing"},
};

std::string JoinSet(const std::set<IndicatorId>& ids) {
  std::string out = "{";
  for (const auto& id : ids) {
    if (out.size() > 1) out += ",";
    out += id;
  }
  return out + "}";
}

IndicatorSpec Leaf(IndicatorId id, std::string question) {
  return {std::move(id), std::move(question), {}, {}};
}

IndicatorSpec Parent(IndicatorId id, std::string question,
                     std::vector<IndicatorId> children) {
  IndicatorSpec spec{std::move(id), std::move(question), std::move(children), {}};
  spec.combinations = DefaultCombinationTable(spec.children);
  return spec;
}

void Put(CredibilityPattern& p, IndicatorSpec spec) {
  const IndicatorId id = spec.id;
  p.indicators.emplace(id, std::move(spec));
}

}  // namespace

std::string_view TypeTag(EvidenceType type) {
  for (const auto& t : kTypeNames) {
    if (t.type == type) return t.tag;
  }
  return "missing";
}

EvidenceType ParseEvidenceType(std::string_view tag) {
  for (const auto& t : kTypeNames) {
    if (t.tag == tag) return t.type;
  }
  throw ParseError("unknown evidence type '" + std::string(tag) + "'");
}

bool IsTestimonial(EvidenceType type) {
  return type == EvidenceType::kTestimonialDirect ||
         type == EvidenceType::kTestimonialSecondhand ||
         type == EvidenceType::kTestimonialOpinion;
}

Timestamp Timestamp::Parse(std::string_view text) {
  // YYYY-MM-DDTHH:MM:SSZ
  static constexpr std::string_view kShape = "dddd-dd-ddTdd:dd:ddZ";
  bool ok = text.size() == kShape.size();
  for (std::size_t i = 0; ok && i < kShape.size(); ++i) {
    ok = kShape[i] == 'd' ? std::isdigit(static_cast<unsigned char>(text[i])) != 0
                          : text[i] == kShape[i];
  }
  if (ok) {
    const int month = std::stoi(std::string(text.substr(5, 2)));
    const int day = std::stoi(std::string(text.substr(8, 2)));
    const int hour = std::stoi(std::string(text.substr(11, 2)));
    const int minute = std::stoi(std::string(text.substr(14, 2)));
    const int second = std::stoi(std::string(text.substr(17, 2)));
    ok = month >= 1 && month <= 12 && day >= 1 && day <= 31 && hour < 24 &&
         minute < 60 && second < 61;
  }
  if (!ok) {
    throw ParseError("timestamp '" + std::string(text) +
                     "' is not YYYY-MM-DDTHH:MM:SSZ");
  }
  return Timestamp(std::string(text));
}

std::vector<std::string> ValidateItem(const EvidenceItem& item) {
  std::vector<std::string> out;
  if (item.id.empty()) out.push_back("evidence item has an empty id");
  if (item.statement.empty()) out.push_back(item.id + ": empty statement");
  if (IsTestimonial(item.type) && item.source.empty()) {
    out.push_back(item.id + ": testimonial evidence must reference a source");
  }
  if (item.type == EvidenceType::kMissing &&
      item.credibility != Prob::kNoSupport) {
    out.push_back(item.id + ": missing evidence must have credibility " +
                  std::string(Label(Prob::kNoSupport)));
  }
  if (item.recorded_at < item.observed_at) {
    out.push_back(item.id + ": recorded-at precedes observed-at");
  }
  return out;
}

const std::vector<IndicatorId>& IndicatorVocabulary() {
  static const std::vector<IndicatorId> kVocabulary = {
      "competence",     "veracity",
      "accuracy",       "truthfulness-of-information",
      "trustworthiness", "corroborative-evidence",
      "contradictory-evidence", "character",
      "reliability",    "goals",
      // internet-source pattern
      "authority-of-publisher", "corroboration", "recency",
      // a profile may state the overall credibility directly
      "credibility"};
  return kVocabulary;
}

std::vector<std::string> ValidateProfile(const SourceProfile& profile) {
  std::vector<std::string> out;
  if (profile.id.empty()) out.push_back("source profile has an empty id");
  const auto& vocab = IndicatorVocabulary();
  for (const auto& [id, a] : profile.assessments) {
    if (std::find(vocab.begin(), vocab.end(), id) == vocab.end()) {
      out.push_back(profile.id + ": unknown indicator '" + id + "'");
    }
    if (a.note.empty()) {
      out.push_back(profile.id + ": assessment of '" + id +
                    "' cites no supporting note");
    }
  }
  return out;
}

const IndicatorSpec* CredibilityPattern::find(const IndicatorId& id) const {
  auto it = indicators.find(id);
  return it == indicators.end() ? nullptr : &it->second;
}

std::vector<IndicatorId> CredibilityPattern::LeafIndicators() const {
  std::vector<IndicatorId> out;
  for (const auto& [id, spec] : indicators) {
    if (spec.children.empty()) out.push_back(id);
  }
  return out;
}

std::vector<std::string> ValidatePattern(const CredibilityPattern& pattern) {
  std::vector<std::string> out;
  const std::string& pid = pattern.id;
  if (pattern.indicators.empty()) {
    if (!pattern.default_value) {
      out.push_back(pid + ": pattern has no indicators and no default");
    }
    return out;
  }
  if (!pattern.find(pattern.root)) {
    out.push_back(pid + ": root indicator '" + pattern.root + "' is not defined");
  }
  for (const auto& [id, spec] : pattern.indicators) {
    std::set<IndicatorId> children(spec.children.begin(), spec.children.end());
    for (const auto& c : spec.children) {
      if (!pattern.find(c)) {
        out.push_back(pid + ": '" + id + "' lists undefined child '" + c + "'");
      }
    }
    if (!spec.children.empty() && spec.combinations.empty()) {
      out.push_back(pid + ": '" + id + "' has children but no combination table");
    }
    for (const auto& combo : spec.combinations) {
      if (combo.indicators.empty()) {
        out.push_back(pid + ": '" + id + "' has an empty combination");
      }
      for (const auto& i : combo.indicators) {
        if (!children.count(i)) {
          out.push_back(pid + ": combination " + JoinSet(combo.indicators) +
                        " of '" + id + "' uses non-child '" + i + "'");
        }
      }
    }
    if (auto dup = FindDuplicateCombination(spec.combinations)) {
      out.push_back(pid + ": '" + id + "' repeats combination " + *dup);
    }
  }
  // Acyclic: DFS from every indicator with an explicit path stack.
  std::map<IndicatorId, int> state;  // 0 new, 1 on stack, 2 done
  std::function<bool(const IndicatorId&)> visit = [&](const IndicatorId& id) {
    int& s = state[id];
    if (s == 1) return false;
    if (s == 2) return true;
    s = 1;
    if (const auto* spec = pattern.find(id)) {
      for (const auto& c : spec->children) {
        if (!visit(c)) return false;
      }
    }
    state[id] = 2;
    return true;
  };
  for (const auto& [id, spec] : pattern.indicators) {
    if (!visit(id)) {
      out.push_back(pid + ": indicator tree has a cycle through '" + id + "'");
      break;
    }
  }
  return out;
}

std::vector<IndicatorCombination> DefaultCombinationTable(
    const std::vector<IndicatorId>& children) {
  std::vector<IndicatorCombination> out;
  const std::size_t n = children.size();
  if (n == 0 || n > 16) return out;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    IndicatorCombination c;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) c.indicators.insert(children[i]);
    }
    const std::size_t k = c.indicators.size();
    c.relevance = k == n ? Prob::kCertain
                  : k == 1 ? Prob::kBarelyLikely
                           : Prob::kLikely;
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(),
            [](const IndicatorCombination& a, const IndicatorCombination& b) {
              if (a.indicators.size() != b.indicators.size()) {
                return a.indicators.size() > b.indicators.size();
              }
              return a.indicators < b.indicators;
            });
  return out;
}

std::vector<CredibilityPattern> BuiltinPatterns() {
  std::vector<CredibilityPattern> out;

  CredibilityPattern testimonial;
  testimonial.id = "testimonial-direct";
  testimonial.applicable_type = EvidenceType::kTestimonialDirect;
  testimonial.root = "credibility";
  {
    IndicatorSpec root{"credibility",
                       "How far can this source's report of the event be believed?",
                       {"competence", "veracity", "accuracy"},
                       {{{"competence", "veracity", "accuracy"}, Prob::kCertain},
                        {{"competence", "veracity"}, Prob::kLikely},
                        {{"veracity"}, Prob::kBarelyLikely}}};
    Put(testimonial, std::move(root));
  }
  Put(testimonial,
      Leaf("competence",
           "Did the source have access to the event and the background to "
           "understand what was observed?"));
  Put(testimonial,
      Leaf("accuracy",
           "Were the source's senses and the observing conditions good enough "
           "to register the event correctly?"));
  Put(testimonial, Parent("veracity",
                          "Does the source believe what they report?",
                          {"truthfulness-of-information", "trustworthiness"}));
  Put(testimonial,
      Parent("truthfulness-of-information",
             "Is the information itself borne out by other evidence?",
             {"corroborative-evidence", "contradictory-evidence"}));
  Put(testimonial, Parent("trustworthiness", "Can this source be trusted?",
                          {"character", "reliability", "goals"}));
  Put(testimonial,
      Leaf("corroborative-evidence",
           "Does any independent evidence confirm this report?"));
  Put(testimonial,
      Leaf("contradictory-evidence",
           "How well does the report survive the evidence that conflicts "
           "with it? (high = little or no conflict)"));
  Put(testimonial,
      Leaf("character", "What is known about this source's honesty?"));
  Put(testimonial,
      Leaf("reliability",
           "How often have this source's earlier reports proved true?"));
  Put(testimonial,
      Leaf("goals",
           "Is the report free of any benefit to the source's own aims?"));
  out.push_back(std::move(testimonial));

  CredibilityPattern internet;
  internet.id = "internet-source";
  internet.applicable_type = EvidenceType::kTangibleDemonstrative;
  internet.root = "credibility";
  Put(internet, Parent("credibility",
                       "How far can this published material be relied on?",
                       {"authority-of-publisher", "corroboration", "recency"}));
  Put(internet, Leaf("authority-of-publisher",
                     "Is the publisher an established authority on the topic?"));
  Put(internet, Leaf("corroboration",
                     "Do independent publications report the same thing?"));
  Put(internet, Leaf("recency", "Is the material current?"));
  out.push_back(std::move(internet));

  CredibilityPattern record;
  record.id = "authoritative-record";
  record.applicable_type = EvidenceType::kAuthoritativeRecord;
  record.root = "credibility";
  record.default_value = Prob::kAlmostCertain;
  out.push_back(std::move(record));

  return out;
}

CredibilityAssessment AssessCredibility(const EvidenceItem& item,
                                        const SourceProfile& profile,
                                        const CredibilityPattern& pattern) {
  if (pattern.applicable_type != item.type) {
    throw Rejected("pattern '" + pattern.id + "' applies to " +
                   std::string(TypeTag(pattern.applicable_type)) +
                   " evidence, not " + std::string(TypeTag(item.type)));
  }
  CredibilityAssessment out;
  std::set<IndicatorId> visiting;

  // nullopt = indicator not present.
  std::function<std::optional<Prob>(const IndicatorId&)> value =
      [&](const IndicatorId& id) -> std::optional<Prob> {
    if (auto it = profile.assessments.find(id); it != profile.assessments.end()) {
      out.trace.push_back({id, "profile", {}, it->second.value});
      return it->second.value;
    }
    const IndicatorSpec* spec = pattern.find(id);
    if (!spec || spec->children.empty() || !visiting.insert(id).second) {
      out.trace.push_back({id, "absent", {}, std::nullopt});
      return std::nullopt;
    }
    std::map<IndicatorId, Prob> present;
    for (const auto& c : spec->children) {
      if (auto v = value(c)) present[c] = *v;
    }
    visiting.erase(id);
    if (present.empty()) {
      out.trace.push_back({id, "absent", {}, std::nullopt});
      return std::nullopt;
    }
    AssessmentStep step{id, "combined", {}, std::nullopt};
    for (const auto& combo : spec->combinations) {
      bool applies = !combo.indicators.empty();
      for (const auto& i : combo.indicators) applies = applies && present.count(i);
      if (applies) {
        step.applied.push_back(JoinSet(combo.indicators) + "->" +
                               std::string(Abbreviation(combo.relevance)));
      }
    }
    const Prob v = CombinedIndicator(spec->combinations, present);
    step.value = v;
    out.trace.push_back(std::move(step));
    return v;
  };

  std::optional<Prob> root;
  if (item.type != EvidenceType::kMissing && !pattern.indicators.empty()) {
    root = value(pattern.root);
  }
  if (!root && pattern.default_value && item.type != EvidenceType::kMissing) {
    root = pattern.default_value;
    out.trace.push_back({pattern.root, "default", {}, root});
  }
  out.credibility = root.value_or(Prob::kNoSupport);
  out.item = item;
  out.item.credibility = out.credibility;
  return out;
}

EvidenceItem MarkMissing(const std::string& expected, const std::string& reason,
                         const Timestamp& at) {
  EvidenceItem item;
  item.statement = ParseStatement(expected);
  item.id = "missing:" + Canonical(item.statement);
  item.type = EvidenceType::kMissing;
  item.credibility = Prob::kNoSupport;
  item.observed_at = at;
  item.recorded_at = at;
  item.provenance = reason;
  return item;
}

}  // namespace ebr
