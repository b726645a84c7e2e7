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

#include "ebr/investigate.h"

#include <algorithm>

#include "ebr/errors.h"

namespace ebr {

DevelopedCandidate DevelopCandidate(const HypothesisCandidate& candidate,
                                    std::span<const DecompositionRule> rules,
                                    const EvidenceSource& source,
                                    const Timestamp& issued_at,
                                    int decomposition_depth) {
  DevelopedCandidate d;
  d.candidate = candidate;
  d.decomposition = Decompose(candidate, rules, decomposition_depth);
  auto& net = d.decomposition.network;
  const auto requests = GenerateRequests(net, {source.id()}, issued_at, {},
                                         d.decomposition.unobserved);
  auto collected = Collect(requests, source, net);
  AttachEvidence(net, collected.hits);
  d.requests = std::move(collected.requests);
  d.result = Evaluate(net);
  d.standing = {candidate.id, d.result.probability(candidate.id),
                d.result.coverage(candidate.id)};
  return d;
}

namespace {

CandidateSummary Summarize(const DevelopedCandidate& d) {
  CandidateSummary s;
  s.id = d.candidate.id;
  s.statement = Canonical(d.candidate.statement);
  s.description = d.candidate.description;
  s.species = d.candidate.species.Name();
  s.probability = d.standing.probability;
  s.coverage = d.standing.coverage;
  std::set<std::string> items;
  for (const auto& [id, link] : d.decomposition.network.links()) {
    items.insert(link.evidence);
  }
  s.evidence.assign(items.begin(), items.end());
  return s;
}

std::vector<HypothesisCandidate> Generate(const Observation& observation,
                                          std::span<const ExplanationRule> rules,
                                          std::span<const CaseRecord> cases,
                                          int step, const std::string& prefix) {
  std::vector<HypothesisCandidate> out;
  for (auto& c : Abduce(observation, rules, step, prefix)) {
    if (step > 1) c.parent = observation.id;
    for (auto& r : AnalogicalRefine(c, cases)) out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

Investigation MultiStepInvestigate(const Observation& observation,
                                   std::span<const ExplanationRule> rules,
                                   std::span<const DecompositionRule> decomposition,
                                   std::span<const CaseRecord> cases,
                                   const EvidenceSource& source,
                                   const InvestigationLimits& limits) {
  if (limits.max_depth < 1 || limits.beam_width < 0 ||
      limits.decomposition_depth < 1) {
    throw ContractViolation("investigation limits must be positive");
  }
  Investigation out;
  std::vector<Observation> frontier{observation};
  for (int depth = 1; depth <= limits.max_depth; ++depth) {
    std::vector<HypothesisCandidate> candidates;
    for (const auto& o : frontier) {
      const std::string prefix = depth == 1 ? "" : o.id + ".";
      for (auto& c : Generate(o, rules, cases, depth, prefix)) {
        candidates.push_back(std::move(c));
      }
    }
    if (candidates.empty()) {
      out.trace.stop_reason = depth == 1 ? kStopNoExplanation : kStopNoRules;
      return out;
    }

    std::map<std::string, DevelopedCandidate> developed;
    std::vector<RootStanding> standings;
    for (const auto& c : candidates) {
      auto d = DevelopCandidate(c, decomposition, source, observation.received_at,
                                limits.decomposition_depth);
      standings.push_back(d.standing);
      developed.emplace(c.id, std::move(d));
    }
    out.trace.candidates_examined += static_cast<int>(candidates.size());
    RankStandings(standings);

    const std::size_t keep =
        limits.beam_width == 0
            ? standings.size()
            : std::min<std::size_t>(standings.size(), limits.beam_width);
    InvestigationStep step;
    step.index = depth;
    step.observations = frontier;
    out.survivors.clear();
    for (std::size_t i = 0; i < standings.size(); ++i) {
      auto& d = developed.at(standings[i].id);
      CandidateSummary s = Summarize(d);
      s.survived = i < keep;
      step.candidates.push_back(std::move(s));
      if (i < keep) {
        step.selected.push_back(d.candidate.id);
        step.verified = step.verified || d.standing.coverage.answered > 0;
        out.survivors.emplace(d.candidate.id, std::move(d));
      }
    }
    out.trace.steps.push_back(std::move(step));

    bool confident = false;
    for (const auto& [id, d] : out.survivors) {
      confident = confident || d.standing.probability >= Prob::kAlmostCertain;
    }
    if (confident) {
      out.trace.stop_reason = kStopConfident;
      return out;
    }
    if (depth == limits.max_depth) break;

    frontier.clear();
    for (const auto& id : out.trace.steps.back().selected) {
      const auto& c = out.survivors.at(id).candidate;
      frontier.push_back({c.id, c.statement, observation.received_at});
    }
  }
  out.trace.stop_reason = kStopMaxDepth;
  return out;
}

std::vector<std::vector<std::string>> EnumerateChains(
    const Observation& observation, std::span<const ExplanationRule> rules,
    int depth) {
  std::vector<std::vector<std::string>> out;
  struct Partial {
    Observation at;
    std::vector<std::string> chain;
  };
  std::vector<Partial> level{{observation, {}}};
  for (int step = 1; step <= depth; ++step) {
    std::vector<Partial> next;
    for (const auto& p : level) {
      const std::string prefix = step == 1 ? "" : p.at.id + ".";
      for (const auto& c : Abduce(p.at, rules, step, prefix)) {
        Partial q{{c.id, c.statement, {}}, p.chain};
        q.chain.push_back(Canonical(c.statement));
        next.push_back(std::move(q));
      }
    }
    level = std::move(next);
  }
  for (auto& p : level) out.push_back(std::move(p.chain));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace ebr
