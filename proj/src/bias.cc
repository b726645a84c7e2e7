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

#include "ebr/bias.h"

#include <algorithm>
#include <set>

#include "ebr/errors.h"

namespace ebr {
namespace {

std::string Join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : ", ") + s;
  return out;
}

}  // namespace

std::string_view BiasKindName(BiasKind kind) {
  switch (kind) {
    case BiasKind::kConfirmation: return "confirmation";
    case BiasKind::kSatisficing: return "satisficing";
    case BiasKind::kAbsenceOfEvidence: return "absence-of-evidence";
  }
  return "confirmation";
}

BiasKind ParseBiasKind(std::string_view text) {
  if (text == "confirmation") return BiasKind::kConfirmation;
  if (text == "satisficing") return BiasKind::kSatisficing;
  if (text == "absence-of-evidence") return BiasKind::kAbsenceOfEvidence;
  throw ParseError("unknown bias kind '" + std::string(text) + "'");
}

std::vector<BiasFinding> DetectConfirmation(
    const ArgumentationNetwork& network,
    std::span<const CollectionRequest> requests) {
  std::map<std::string, std::vector<std::string>> firing;  // node -> favoring links
  for (const auto& [id, node] : network.nodes()) {
    const auto subtree = network.Subtree(id);
    std::vector<std::string> favoring;
    bool contrary = false;
    for (const auto& n : subtree) {
      for (const auto& a : network.ArgumentsOf(n)) {
        contrary = contrary || network.argument(a).side == Side::kDisfavoring;
      }
      for (const auto& l : network.LinksOf(n)) {
        const auto& link = network.link(l);
        if (link.side == Side::kDisfavoring) contrary = true;
        else if (!link.missing) favoring.push_back(l);
      }
    }
    for (const auto& r : requests) {
      contrary = contrary ||
                 (r.side == Side::kDisfavoring && subtree.count(r.leaf) != 0);
    }
    if (!contrary && !favoring.empty()) firing.emplace(id, std::move(favoring));
  }

  std::vector<BiasFinding> out;
  for (const auto& [id, links] : firing) {
    const auto above = network.Ancestors(id);
    const bool covered = std::any_of(above.begin(), above.end(), [&](auto& a) {
      return firing.count(a) != 0;
    });
    if (covered) continue;
    BiasFinding f;
    f.kind = BiasKind::kConfirmation;
    f.location = id;
    f.severity = "warning";
    f.rule = "favoring-only subtree with no search for contrary evidence";
    f.cited = links;
    f.explanation = "'" + id + "' rests on favoring evidence (" + Join(links) +
                    ") and nothing below it argues against it; no request for "
                    "disfavoring evidence was ever issued for this subtree";
    out.push_back(std::move(f));
  }
  return out;
}

std::vector<BiasFinding> DetectSatisficing(const ArgumentationNetwork& network,
                                           const AbductionTrace& trace) {
  std::vector<BiasFinding> out;
  for (const auto& step : trace.steps) {
    std::vector<std::string> developed, undeveloped;
    for (const auto& c : step.candidates) {
      (c.developed ? developed : undeveloped).push_back(c.id);
    }
    if (undeveloped.empty()) continue;
    const bool single_root = network.competing_roots().size() == 1;
    const bool only_one = step.candidates.size() > 1 && developed.size() == 1;
    if (!single_root && !only_one) continue;

    BiasFinding f;
    f.kind = BiasKind::kSatisficing;
    f.location = developed.empty() ? step.candidates.front().id : developed[0];
    f.severity = "warning";
    f.rule = single_root ? "single competing hypothesis while alternatives exist"
                         : "only one of several generated candidates developed";
    f.cited = undeveloped;
    f.explanation = "step " + std::to_string(step.index) + " generated " +
                    std::to_string(step.candidates.size()) +
                    " candidates but only " + std::to_string(developed.size()) +
                    " was tested; never developed: " + Join(undeveloped);
    out.push_back(std::move(f));
  }
  return out;
}

std::vector<BiasFinding> DetectAbsenceOfEvidence(
    const ArgumentationNetwork& network, const EvaluationResult& evaluation,
    double threshold) {
  if (!(threshold > 0.0 && threshold <= 1.0)) {
    throw Rejected("coverage threshold must lie in (0, 1]");
  }
  std::vector<BiasFinding> out;
  for (const auto& root : network.Roots()) {
    auto it = evaluation.nodes.find(root);
    if (it == evaluation.nodes.end()) continue;
    const NodeEvaluation& e = it->second;
    if (e.probability < Prob::kLikely) continue;
    if (e.coverage.total == 0 ||
        e.coverage.answered >= threshold * e.coverage.total) {
      continue;
    }
    std::vector<std::string> unanswered;
    for (const auto& leaf : network.LeavesBelow(root)) {
      auto l = evaluation.nodes.find(leaf);
      if (l == evaluation.nodes.end() || l->second.coverage.answered == 0) {
        unanswered.push_back(leaf);
      }
    }
    BiasFinding f;
    f.kind = BiasKind::kAbsenceOfEvidence;
    f.location = root;
    f.severity = "advisory";
    f.rule = "confident root with low evidence coverage";
    f.cited = unanswered;
    f.explanation = "'" + root + "' is " + std::string(Label(e.probability)) +
                    " yet only " + std::to_string(e.coverage.answered) + " of " +
                    std::to_string(e.coverage.total) +
                    " leaf questions are answered; unanswered: " +
                    Join(unanswered);
    out.push_back(std::move(f));
  }
  return out;
}

std::vector<BiasFinding> DetectBiases(const ArgumentationNetwork& network,
                                      std::span<const CollectionRequest> requests,
                                      const AbductionTrace& trace,
                                      const EvaluationResult& evaluation,
                                      double threshold) {
  auto out = DetectConfirmation(network, requests);
  for (auto& f : DetectSatisficing(network, trace)) out.push_back(std::move(f));
  for (auto& f : DetectAbsenceOfEvidence(network, evaluation, threshold)) {
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace ebr
