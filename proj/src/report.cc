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

#include <algorithm>
#include <set>
#include <sstream>

#include "ebr/errors.h"
#include "ebr/service.h"

namespace ebr {
namespace {

std::string LabelText(Prob p) {
  return std::string(Label(p)) + " (" + std::string(Abbreviation(p)) + ")";
}

std::string CoverageText(const Coverage& c) {
  return std::to_string(c.answered) + "/" + std::to_string(c.total);
}

void Outline(const ArgumentationNetwork& net, const EvaluationResult& eval,
             const std::string& node, int depth, std::set<std::string>& seen,
             std::vector<std::string>& out) {
  const std::string pad(2 * depth, ' ');
  const auto& e = eval.at(node);
  std::string line = pad + node + " [" + std::string(Abbreviation(e.probability)) +
                     "] " + net.node(node).statement;
  if (net.node(node).assumption) line += " (assumed)";
  out.push_back(line);
  if (!seen.insert(node).second) return;
  for (const auto& a : net.ArgumentsOf(node)) {
    const auto& arg = net.argument(a);
    out.push_back(pad + "  " + (arg.side == Side::kFavoring ? "+ " : "- ") + a +
                  " relevance " + std::string(Abbreviation(arg.relevance)));
    for (const auto& c : arg.children) Outline(net, eval, c, depth + 2, seen, out);
  }
  for (const auto& l : net.LinksOf(node)) {
    const auto& link = net.link(l);
    out.push_back(pad + "  " + (link.side == Side::kFavoring ? "+ " : "- ") +
                  "evidence " + link.evidence + " credibility " +
                  std::string(Abbreviation(link.credibility)) + " relevance " +
                  std::string(Abbreviation(link.relevance)));
  }
}

}  // namespace

StructuredReport BuildReport(const AnalysisBundle& b) {
  if (!b.evaluation) {
    throw Rejected("analysis " + b.id + " has not been evaluated yet");
  }
  const auto& eval = *b.evaluation;
  StructuredReport r;
  r.analysis = b.id;
  r.alert = Canonical(b.alert.observation.statement);
  r.kb_version = b.kb_version;
  r.biases = b.biases;
  r.generated_at = b.alert.observation.received_at;

  std::map<std::string, const HypothesisCandidate*> by_id;
  for (const auto& c : b.candidates) by_id[c.candidate.id] = &c.candidate;
  for (const auto& s : b.ranking) {
    ReportConclusion c;
    c.id = s.id;
    c.statement = b.network.node(s.id).statement;
    if (auto it = by_id.find(s.id); it != by_id.end()) {
      c.description = it->second->description;
      c.species = it->second->species.Name();
    }
    c.probability = eval.probability(s.id);
    c.coverage = eval.coverage(s.id);
    c.assumption_dependent = eval.at(s.id).assumption_dependent;
    r.conclusions.push_back(std::move(c));
  }

  std::set<std::string> seen;
  for (const auto& s : b.ranking) Outline(b.network, eval, s.id, 0, seen, r.outline);

  std::map<std::string, std::vector<std::string>> links_by_item;
  for (const auto& [id, link] : b.network.links()) {
    links_by_item[link.evidence].push_back(id);
  }
  for (const auto& e : b.evidence) {
    auto it = links_by_item.find(e.item.id);
    if (it == links_by_item.end()) continue;
    r.citations.push_back({e.item.id, std::string(TypeTag(e.item.type)),
                           e.item.source, Canonical(e.item.statement),
                           e.item.credibility, it->second});
    r.generated_at = std::max(r.generated_at, e.item.recorded_at);
  }
  for (const auto& [id, node] : b.network.nodes()) {
    if (node.assumption) r.assumptions[id] = *node.assumption;
  }
  return r;
}

std::string RenderReport(const StructuredReport& r) {
  std::ostringstream out;
  out << "EVIDENCE-BASED REASONING REPORT\n"
      << "analysis: " << r.analysis << "\n"
      << "alert: " << r.alert << "\n"
      << "knowledge base: " << r.kb_version << "\n"
      << "generated: " << r.generated_at.str() << "\n";

  out << "\nCONCLUSIONS\n";
  if (r.conclusions.empty()) out << "(no hypothesis explains the alert)\n";
  int rank = 0;
  for (const auto& c : r.conclusions) {
    out << ++rank << ". " << c.id << "  " << LabelText(c.probability)
        << "  coverage " << CoverageText(c.coverage) << "\n";
    if (!c.description.empty()) out << "   " << c.description << "\n";
    out << "   " << c.statement << "\n";
    if (!c.species.empty()) out << "   species: " << c.species << "\n";
    if (c.assumption_dependent) out << "   rests on assumptions\n";
  }

  out << "\nARGUMENT OUTLINE\n";
  for (const auto& line : r.outline) out << line << "\n";

  out << "\nEVIDENCE\n";
  if (r.citations.empty()) out << "(none)\n";
  for (const auto& c : r.citations) {
    out << c.id << "  " << c.type << "  credibility " << LabelText(c.credibility);
    if (!c.source.empty()) out << "  source " << c.source;
    out << "\n   " << c.statement << "\n";
    for (const auto& l : c.links) out << "   linked at " << l << "\n";
  }

  out << "\nASSUMPTIONS\n";
  if (r.assumptions.empty()) out << "(none)\n";
  for (const auto& [node, p] : r.assumptions) {
    out << node << " := " << LabelText(p) << "\n";
  }

  out << "\nBIAS FINDINGS\n";
  if (r.biases.empty()) out << "(none)\n";
  for (const auto& f : r.biases) {
    out << BiasKindName(f.kind) << " [" << f.severity << "] at " << f.location
        << "\n   " << f.explanation << "\n";
  }
  return out.str();
}

Json ToJson(const StructuredReport& r) {
  Json conclusions = Json::array();
  for (const auto& c : r.conclusions) {
    conclusions.push_back(
        {{"id", c.id},
         {"statement", c.statement},
         {"description", c.description},
         {"species", c.species},
         {"probability", ToJson(c.probability)},
         {"label", std::string(Label(c.probability))},
         {"coverage", {{"answered", c.coverage.answered}, {"total", c.coverage.total}}},
         {"assumption_dependent", c.assumption_dependent}});
  }
  Json citations = Json::array();
  for (const auto& c : r.citations) {
    citations.push_back({{"id", c.id},
                         {"type", c.type},
                         {"source", c.source},
                         {"statement", c.statement},
                         {"credibility", ToJson(c.credibility)},
                         {"links", c.links}});
  }
  Json assumptions = Json::object();
  for (const auto& [node, p] : r.assumptions) assumptions[node] = ToJson(p);
  Json biases = Json::array();
  for (const auto& f : r.biases) biases.push_back(ToJson(f));
  return {{"analysis", r.analysis},
          {"alert", r.alert},
          {"kb_version", r.kb_version},
          {"conclusions", conclusions},
          {"outline", r.outline},
          {"citations", citations},
          {"assumptions", assumptions},
          {"biases", biases},
          {"generated_at", r.generated_at.str()},
          {"text", RenderReport(r)}};
}

}  // namespace ebr
