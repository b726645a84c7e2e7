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

#include "ebr/abduction.h"

#include <algorithm>
#include <cctype>
#include <map>

#include "ebr/errors.h"

namespace ebr {
namespace {

std::string Lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

/// Type declared for `var` anywhere in the statement.
std::string VariableType(const Statement& s, const std::string& var) {
  for (const auto& a : s.atoms) {
    for (const auto& t : a.args) {
      if (t.variable && t.name == var && !t.type.empty()) return t.type;
    }
  }
  return {};
}

}  // namespace

std::string_view FormName(AbductionForm form) {
  switch (form) {
    case AbductionForm::kSimple: return "simple";
    case AbductionForm::kExistential: return "existential";
    case AbductionForm::kAnalogical: return "analogical";
  }
  return "simple";
}

AbductionForm ParseForm(std::string_view text) {
  if (text == "simple") return AbductionForm::kSimple;
  if (text == "existential") return AbductionForm::kExistential;
  if (text == "analogical") return AbductionForm::kAnalogical;
  throw ParseError("unknown abduction form '" + std::string(text) + "'");
}

std::string_view CodingName(AbductionCoding coding) {
  return coding == AbductionCoding::kOvercoded ? "overcoded" : "undercoded";
}

AbductionCoding ParseCoding(std::string_view text) {
  if (text == "overcoded") return AbductionCoding::kOvercoded;
  if (text == "undercoded") return AbductionCoding::kUndercoded;
  throw ParseError("unknown abduction coding '" + std::string(text) + "'");
}

std::string Species::Name() const {
  return std::string(FormName(form)) + " " + std::string(CodingName(coding));
}

std::set<std::string> ExplanationRule::ExistentialVariables() const {
  std::set<std::string> out = Variables(hypothesis);
  for (const auto& v : Variables(observable)) out.erase(v);
  return out;
}

std::vector<std::string> ValidateRule(const ExplanationRule& rule) {
  std::vector<std::string> out;
  if (rule.id.empty()) out.push_back("explanation rule has an empty id");
  if (rule.hypothesis.empty()) {
    out.push_back(rule.id + ": hypothesis pattern is empty");
  }
  if (rule.observable.predicate.empty()) {
    out.push_back(rule.id + ": observable pattern is empty");
  }
  const bool existential = !rule.ExistentialVariables().empty();
  if (rule.species_hints.count(AbductionForm::kExistential) && !existential) {
    out.push_back(rule.id +
                  ": hinted existential but every hypothesis variable is bound "
                  "by the observable");
  }
  if (existential && !rule.species_hints.empty() &&
      !rule.species_hints.count(AbductionForm::kExistential)) {
    out.push_back(rule.id +
                  ": introduces unobserved entities but is not hinted "
                  "existential");
  }
  return out;
}

Observation ParseObservation(std::string id, std::string_view text,
                             Timestamp received_at) {
  Observation obs{std::move(id), ParseStatement(text), received_at};
  if (!obs.statement.ground()) {
    throw ParseError("observation '" + std::string(text) +
                     "' contains unbound variables " );
  }
  return obs;
}

std::vector<std::string> ValidateCase(const CaseRecord& record) {
  std::vector<std::string> out;
  if (record.hypothesis.empty() || record.cooccurring.empty()) {
    out.push_back(record.id + ": case needs both H and K patterns");
    return out;
  }
  const auto h = Variables(record.hypothesis);
  const auto k = Variables(record.cooccurring);
  bool shared = false;
  for (const auto& v : k) shared = shared || h.count(v);
  if (!shared) out.push_back(record.id + ": H and K share no variable");
  return out;
}

std::vector<HypothesisCandidate> Abduce(const Observation& observation,
                                        std::span<const ExplanationRule> kb,
                                        int step, std::string_view id_prefix) {
  if (!observation.statement.ground()) {
    throw ContractViolation("observation '" + Canonical(observation.statement) +
                            "' is not ground");
  }
  std::vector<const ExplanationRule*> rules;
  for (const auto& r : kb) rules.push_back(&r);
  std::sort(rules.begin(), rules.end(),
            [](const auto* a, const auto* b) { return a->id < b->id; });

  std::vector<HypothesisCandidate> out;
  std::set<std::string> matched_rules;
  for (const ExplanationRule* rule : rules) {
    const auto& atoms = observation.statement.atoms;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      Bindings b;
      if (!Match(rule->observable, atoms[i], b)) continue;
      matched_rules.insert(rule->id);

      HypothesisCandidate c;
      c.id = std::string(id_prefix) + rule->id +
             (i == 0 ? "" : "@" + std::to_string(i));
      c.rule = rule->id;
      c.prior_relevance = rule->prior_relevance;
      for (const auto& var : rule->ExistentialVariables()) {
        FreshEntity e{Lower(var) + "-" + std::to_string(step), var,
                      VariableType(rule->hypothesis, var), rule->id};
        b[var] = Term::Constant(e.id, e.type);
        c.fresh_entities.push_back(std::move(e));
      }
      c.statement = Substitute(rule->hypothesis, b);
      c.bindings = std::move(b);
      c.description = rule->description.empty()
                          ? Display(c.statement)
                          : Describe(rule->description, c.bindings);
      c.species.form = c.fresh_entities.empty() ? AbductionForm::kSimple
                                                : AbductionForm::kExistential;
      out.push_back(std::move(c));
    }
  }
  const AbductionCoding coding = matched_rules.size() == 1
                                     ? AbductionCoding::kOvercoded
                                     : AbductionCoding::kUndercoded;
  for (auto& c : out) c.species.coding = coding;
  std::stable_sort(out.begin(), out.end(),
                   [](const HypothesisCandidate& a, const HypothesisCandidate& b) {
                     return a.prior_relevance > b.prior_relevance;
                   });
  return out;
}

std::vector<HypothesisCandidate> AnalogicalRefine(
    const HypothesisCandidate& candidate, std::span<const CaseRecord> cases) {
  std::vector<const CaseRecord*> sorted;
  for (const auto& c : cases) sorted.push_back(&c);
  std::sort(sorted.begin(), sorted.end(),
            [](const auto* a, const auto* b) { return a->id < b->id; });

  std::vector<HypothesisCandidate> out{candidate};
  for (const CaseRecord* record : sorted) {
    Bindings b;
    if (!MatchWithin(record->hypothesis, candidate.statement, b)) continue;
    HypothesisCandidate refined = candidate;
    for (const auto& var : Variables(record->cooccurring)) {
      if (b.count(var)) continue;
      FreshEntity e{Lower(var) + "-" + record->id, var,
                    VariableType(record->cooccurring, var), record->id};
      b[var] = Term::Constant(e.id, e.type);
      refined.fresh_entities.push_back(std::move(e));
    }
    const Statement k = Substitute(record->cooccurring, b);
    refined.id = candidate.id + "+" + record->id;
    refined.statement = ConjoinStatements(candidate.statement, k);
    refined.description = candidate.description + " & " + Display(k);
    refined.species.form = AbductionForm::kAnalogical;
    refined.parent = candidate.id;
    refined.case_id = record->id;
    for (const auto& [var, term] : b) refined.bindings.emplace(var, term);
    out.push_back(std::move(refined));
  }
  return out;
}

}  // namespace ebr
