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

/// @file abduction.h
/// Rule-based hypothesis generation.
///
/// An explanation rule reads "if the hypothesis held, the observable would
/// be seen". Abduction runs the rules backwards: every rule whose observable
/// pattern matches the observation yields a candidate hypothesis. Candidates
/// are classified along two axes: how many rules competed (overcoded when
/// one, undercoded when several) and what the hypothesis posits (simple,
/// existential when it introduces an unobserved entity, analogical when it
/// was refined by a past case).
#ifndef EBR_ABDUCTION_H_
#define EBR_ABDUCTION_H_

#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ebr/evidence.h"
#include "ebr/probability.h"
#include "ebr/statement.h"

namespace ebr {

enum class AbductionForm { kSimple, kExistential, kAnalogical };
enum class AbductionCoding { kOvercoded, kUndercoded };

std::string_view FormName(AbductionForm form);
AbductionForm ParseForm(std::string_view text);
std::string_view CodingName(AbductionCoding coding);
AbductionCoding ParseCoding(std::string_view text);

/// One in-scope cell of the species-of-abduction table.
struct Species {
  AbductionForm form = AbductionForm::kSimple;
  AbductionCoding coding = AbductionCoding::kOvercoded;

  /// e.g. "existential undercoded"
  std::string Name() const;
  bool operator==(const Species&) const = default;
};

struct ExplanationRule {
  std::string id;
  Statement hypothesis;
  Atom observable;
  /// Free text with "?var" placeholders, e.g. "?ship performs covert goods
  /// transfer". Empty means the hypothesis statement is displayed.
  std::string description;
  std::set<AbductionForm> species_hints;
  Prob prior_relevance = Prob::kLikely;

  /// Variables of the hypothesis that the observable does not bind.
  std::set<std::string> ExistentialVariables() const;

  bool operator==(const ExplanationRule&) const = default;
};

std::vector<std::string> ValidateRule(const ExplanationRule& rule);

struct Observation {
  std::string id;
  Statement statement;
  Timestamp received_at;

  bool operator==(const Observation&) const = default;
};

/// Throws ParseError when the text is malformed or not ground.
Observation ParseObservation(std::string id, std::string_view text,
                             Timestamp received_at = {});

struct FreshEntity {
  std::string id;
  std::string variable;
  std::string type;
  std::string rule;

  bool operator==(const FreshEntity&) const = default;
};

struct HypothesisCandidate {
  std::string id;
  Statement statement;
  std::string description;
  std::string rule;
  Species species;
  Bindings bindings;
  std::vector<FreshEntity> fresh_entities;
  Prob prior_relevance = Prob::kLikely;
  /// Candidate this one was derived from (previous step or unrefined form).
  std::string parent;
  /// Case record used for analogical refinement, if any.
  std::string case_id;

  bool operator==(const HypothesisCandidate&) const = default;
};

/// "In past cases where H held, K held too."
struct CaseRecord {
  std::string id;
  Statement hypothesis;
  Statement cooccurring;
  std::string note;

  bool operator==(const CaseRecord&) const = default;
};

std::vector<std::string> ValidateCase(const CaseRecord& record);

/// One candidate per (rule, observation atom) match, ordered by prior
/// relevance descending, then rule id. Fresh entities are named
/// "<variable>-<step>". Candidate ids are `id_prefix` + rule id. Returns an
/// empty list when nothing matches. Throws ContractViolation when the
/// observation is not ground.
std::vector<HypothesisCandidate> Abduce(const Observation& observation,
                                        std::span<const ExplanationRule> kb,
                                        int step = 1,
                                        std::string_view id_prefix = {});

/// The candidate itself followed by one "H & K" refinement per case whose
/// hypothesis pattern matches it.
std::vector<HypothesisCandidate> AnalogicalRefine(
    const HypothesisCandidate& candidate, std::span<const CaseRecord> cases);

}  // namespace ebr

#endif  // EBR_ABDUCTION_H_
