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

#include "ebr/io.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "ebr/errors.h"

namespace ebr {
namespace {

template <typename F>
auto Guard(std::string_view what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

template <typename T>
std::vector<T> SortedById(std::vector<T> v) {
  std::stable_sort(v.begin(), v.end(),
                   [](const T& a, const T& b) { return a.id < b.id; });
  return v;
}

template <typename T>
Json Array(const std::vector<T>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(ToJson(x));
  return out;
}

template <typename T>
std::vector<T> ArrayOf(const Json& j, const char* key) {
  std::vector<T> out;
  if (!j.contains(key)) return out;
  for (const auto& x : j.at(key)) out.push_back(FromJson<T>(x));
  return out;
}

std::vector<std::string> Strings(const Json& j, const char* key) {
  if (!j.contains(key)) return {};
  return j.at(key).get<std::vector<std::string>>();
}

std::string Str(const Json& j, const char* key, std::string fallback = {}) {
  return j.contains(key) && !j.at(key).is_null() ? j.at(key).get<std::string>()
                                                 : fallback;
}

Prob ProbAt(const Json& j, const char* key, Prob fallback) {
  return j.contains(key) ? FromJson<Prob>(j.at(key)) : fallback;
}

Timestamp TimeAt(const Json& j, const char* key) {
  return j.contains(key) ? Timestamp::Parse(j.at(key).get<std::string>())
                         : Timestamp();
}

Json CoverageJson(const Coverage& c) {
  return {{"answered", c.answered}, {"total", c.total}};
}

Coverage CoverageFrom(const Json& j) {
  return {j.at("answered").get<int>(), j.at("total").get<int>()};
}

Species ParseSpecies(const std::string& text) {
  const auto space = text.find(' ');
  if (space == std::string::npos) {
    throw ParseError("species '" + text + "' is not '<form> <coding>'");
  }
  return {ParseForm(text.substr(0, space)), ParseCoding(text.substr(space + 1))};
}

Json SummaryJson(const CandidateSummary& s) {
  return {{"id", s.id},
          {"statement", s.statement},
          {"description", s.description},
          {"species", s.species},
          {"probability", ToJson(s.probability)},
          {"coverage", CoverageJson(s.coverage)},
          {"evidence", s.evidence},
          {"developed", s.developed},
          {"survived", s.survived}};
}

CandidateSummary SummaryFrom(const Json& j) {
  CandidateSummary s;
  s.id = j.at("id").get<std::string>();
  s.statement = Str(j, "statement");
  s.description = Str(j, "description");
  s.species = Str(j, "species");
  s.probability = ProbAt(j, "probability", Prob::kNoSupport);
  s.coverage = CoverageFrom(j.at("coverage"));
  s.evidence = Strings(j, "evidence");
  s.developed = j.value("developed", true);
  s.survived = j.value("survived", false);
  return s;
}

}  // namespace

Json ToJson(const Statement& s) { return Canonical(s); }
Json ToJson(Prob p) { return std::string(Abbreviation(p)); }

Json ToJson(const Bindings& b) {
  Json out = Json::object();
  for (const auto& [var, term] : b) out[var] = Canonical(term);
  return out;
}

template <>
Statement FromJson<Statement>(const Json& j) {
  return Guard("statement", [&] { return ParseStatement(j.get<std::string>()); });
}

template <>
Prob FromJson<Prob>(const Json& j) {
  return Guard("probability",
               [&] { return ParseProbabilityOrThrow(j.get<std::string>()); });
}

template <>
Bindings FromJson<Bindings>(const Json& j) {
  return Guard("bindings", [&] {
    Bindings b;
    for (const auto& [var, term] : j.items()) {
      b[var] = ParseTerm(term.get<std::string>());
    }
    return b;
  });
}

Json ToJson(const ArgumentationNetwork& n) {
  Json nodes = Json::array();
  for (const auto& [id, node] : n.nodes()) {
    Json x = {{"id", id},
              {"statement", node.statement},
              {"role", std::string(RoleName(n.Role(id)))}};
    if (node.assumption) x["assumption"] = ToJson(*node.assumption);
    nodes.push_back(std::move(x));
  }
  Json arguments = Json::array();
  for (const auto& [id, a] : n.arguments()) {
    arguments.push_back({{"id", id},
                         {"parent", a.parent},
                         {"side", std::string(SideName(a.side))},
                         {"relevance", ToJson(a.relevance)},
                         {"children", a.children}});
  }
  Json links = Json::array();
  for (const auto& [id, l] : n.links()) {
    links.push_back({{"id", id},
                     {"parent", l.parent},
                     {"evidence", l.evidence},
                     {"side", std::string(SideName(l.side))},
                     {"relevance", ToJson(l.relevance)},
                     {"credibility", ToJson(l.credibility)},
                     {"missing", l.missing}});
  }
  return {{"nodes", nodes},
          {"arguments", arguments},
          {"evidence_links", links},
          {"competing_roots",
           std::vector<std::string>(n.competing_roots().begin(),
                                    n.competing_roots().end())}};
}

template <>
ArgumentationNetwork FromJson<ArgumentationNetwork>(const Json& j) {
  return Guard("network", [&] {
    ArgumentationNetwork n;
    for (const auto& x : j.at("nodes")) {
      HypothesisNode node{x.at("id").get<std::string>(), Str(x, "statement"),
                          std::nullopt};
      if (x.contains("assumption") && !x.at("assumption").is_null()) {
        node.assumption = FromJson<Prob>(x.at("assumption"));
      }
      n.AddNode(std::move(node));
    }
    if (j.contains("arguments")) {
      for (const auto& x : j.at("arguments")) {
        n.AddArgument({x.at("id").get<std::string>(),
                       x.at("parent").get<std::string>(),
                       ParseSide(Str(x, "side", "favoring")),
                       ProbAt(x, "relevance", Prob::kCertain),
                       Strings(x, "children")});
      }
    }
    if (j.contains("evidence_links")) {
      for (const auto& x : j.at("evidence_links")) {
        n.AddEvidenceLink({x.at("id").get<std::string>(),
                           x.at("parent").get<std::string>(),
                           Str(x, "evidence"),
                           ParseSide(Str(x, "side", "favoring")),
                           ProbAt(x, "relevance", Prob::kCertain),
                           ProbAt(x, "credibility", Prob::kNoSupport),
                           x.value("missing", false)});
      }
    }
    for (const auto& r : Strings(j, "competing_roots")) n.AddCompetingRoot(r);
    return n;
  });
}

Json ToJson(const EvaluationResult& r) {
  Json nodes = Json::array();
  for (const auto& [id, e] : r.nodes) {
    Json trace = Json::array();
    for (const auto& s : e.trace) {
      trace.push_back({{"node", s.node},
                       {"op", s.op},
                       {"inputs", s.inputs},
                       {"output", ToJson(s.output)}});
    }
    nodes.push_back({{"id", id},
                     {"probability", ToJson(e.probability)},
                     {"favoring", ToJson(e.favoring)},
                     {"disfavoring", ToJson(e.disfavoring)},
                     {"coverage", CoverageJson(e.coverage)},
                     {"assumption_dependent", e.assumption_dependent},
                     {"trace", trace}});
  }
  return {{"order", r.order}, {"nodes", nodes}};
}

template <>
EvaluationResult FromJson<EvaluationResult>(const Json& j) {
  return Guard("evaluation", [&] {
    EvaluationResult r;
    r.order = Strings(j, "order");
    for (const auto& x : j.at("nodes")) {
      NodeEvaluation e;
      e.probability = ProbAt(x, "probability", Prob::kNoSupport);
      e.favoring = ProbAt(x, "favoring", Prob::kNoSupport);
      e.disfavoring = ProbAt(x, "disfavoring", Prob::kNoSupport);
      e.coverage = CoverageFrom(x.at("coverage"));
      e.assumption_dependent = x.value("assumption_dependent", false);
      for (const auto& s : x.at("trace")) {
        e.trace.push_back({s.at("node").get<std::string>(),
                           s.at("op").get<std::string>(), Strings(s, "inputs"),
                           FromJson<Prob>(s.at("output"))});
      }
      r.nodes.emplace(x.at("id").get<std::string>(), std::move(e));
    }
    return r;
  });
}

Json ToJson(const ExplanationRule& r) {
  std::vector<std::string> hints;
  for (auto h : r.species_hints) hints.emplace_back(FormName(h));
  return {{"id", r.id},
          {"hypothesis", ToJson(r.hypothesis)},
          {"observable", Canonical(r.observable)},
          {"description", r.description},
          {"species_hints", hints},
          {"prior_relevance", ToJson(r.prior_relevance)}};
}

template <>
ExplanationRule FromJson<ExplanationRule>(const Json& j) {
  return Guard("explanation rule", [&] {
    ExplanationRule r;
    r.id = j.at("id").get<std::string>();
    r.hypothesis = FromJson<Statement>(j.at("hypothesis"));
    r.observable = ParseAtom(j.at("observable").get<std::string>());
    r.description = Str(j, "description");
    for (const auto& h : Strings(j, "species_hints")) {
      r.species_hints.insert(ParseForm(h));
    }
    r.prior_relevance = ProbAt(j, "prior_relevance", Prob::kLikely);
    return r;
  });
}

Json ToJson(const DecompositionRule& r) {
  Json children = Json::array();
  for (const auto& c : r.children) children.push_back(ToJson(c));
  return {{"id", r.id},
          {"parent", ToJson(r.parent)},
          {"side", std::string(SideName(r.side))},
          {"relevance", ToJson(r.relevance)},
          {"children", children},
          {"fresh", std::vector<std::string>(r.fresh.begin(), r.fresh.end())}};
}

template <>
DecompositionRule FromJson<DecompositionRule>(const Json& j) {
  return Guard("decomposition rule", [&] {
    DecompositionRule r;
    r.id = j.at("id").get<std::string>();
    r.parent = FromJson<Statement>(j.at("parent"));
    r.side = ParseSide(Str(j, "side", "favoring"));
    r.relevance = ProbAt(j, "relevance", Prob::kLikely);
    for (const auto& c : j.at("children")) r.children.push_back(FromJson<Statement>(c));
    for (const auto& f : Strings(j, "fresh")) r.fresh.insert(f);
    return r;
  });
}

Json ToJson(const CaseRecord& c) {
  return {{"id", c.id},
          {"hypothesis", ToJson(c.hypothesis)},
          {"cooccurring", ToJson(c.cooccurring)},
          {"note", c.note}};
}

template <>
CaseRecord FromJson<CaseRecord>(const Json& j) {
  return Guard("case record", [&] {
    return CaseRecord{j.at("id").get<std::string>(),
                      FromJson<Statement>(j.at("hypothesis")),
                      FromJson<Statement>(j.at("cooccurring")), Str(j, "note")};
  });
}

Json ToJson(const CredibilityPattern& p) {
  Json indicators = Json::array();
  for (const auto& [id, spec] : p.indicators) {
    Json combos = Json::array();
    for (const auto& c : spec.combinations) {
      combos.push_back({{"indicators", std::vector<std::string>(
                                           c.indicators.begin(), c.indicators.end())},
                        {"relevance", ToJson(c.relevance)}});
    }
    indicators.push_back({{"id", id},
                          {"question", spec.question},
                          {"children", spec.children},
                          {"combinations", combos}});
  }
  Json out = {{"id", p.id},
              {"applicable_type", std::string(TypeTag(p.applicable_type))},
              {"root", p.root},
              {"indicators", indicators}};
  if (p.default_value) out["default"] = ToJson(*p.default_value);
  return out;
}

template <>
CredibilityPattern FromJson<CredibilityPattern>(const Json& j) {
  return Guard("credibility pattern", [&] {
    CredibilityPattern p;
    p.id = j.at("id").get<std::string>();
    p.applicable_type = ParseEvidenceType(j.at("applicable_type").get<std::string>());
    p.root = Str(j, "root", "credibility");
    if (j.contains("indicators")) {
      for (const auto& x : j.at("indicators")) {
        IndicatorSpec spec;
        spec.id = x.at("id").get<std::string>();
        spec.question = Str(x, "question");
        spec.children = Strings(x, "children");
        if (x.contains("combinations")) {
          for (const auto& c : x.at("combinations")) {
            IndicatorCombination combo;
            for (const auto& i : Strings(c, "indicators")) combo.indicators.insert(i);
            combo.relevance = FromJson<Prob>(c.at("relevance"));
            spec.combinations.push_back(std::move(combo));
          }
        } else {
          spec.combinations = DefaultCombinationTable(spec.children);
        }
        p.indicators.emplace(spec.id, std::move(spec));
      }
    }
    if (j.contains("default")) p.default_value = FromJson<Prob>(j.at("default"));
    return p;
  });
}

Json ToJson(const SourceProfile& p) {
  Json assessments = Json::object();
  for (const auto& [id, a] : p.assessments) {
    assessments[id] = {{"value", ToJson(a.value)}, {"note", a.note}};
  }
  return {{"id", p.id}, {"name", p.name}, {"assessments", assessments}};
}

template <>
SourceProfile FromJson<SourceProfile>(const Json& j) {
  return Guard("source profile", [&] {
    SourceProfile p;
    p.id = j.at("id").get<std::string>();
    p.name = Str(j, "name");
    if (j.contains("assessments")) {
      for (const auto& [id, a] : j.at("assessments").items()) {
        p.assessments[id] = {FromJson<Prob>(a.at("value")), Str(a, "note")};
      }
    }
    return p;
  });
}

Json ToJson(const KnowledgeBase& kb) {
  return {{"version", kb.version},
          {"explanation_rules", Array(SortedById(kb.explanation_rules))},
          {"decomposition_rules", Array(SortedById(kb.decomposition_rules))},
          {"cases", Array(SortedById(kb.cases))},
          {"patterns", Array(SortedById(kb.patterns))},
          {"profiles", Array(SortedById(kb.profiles))}};
}

template <>
KnowledgeBase FromJson<KnowledgeBase>(const Json& j) {
  return Guard("knowledge base", [&] {
    KnowledgeBase kb;
    kb.version = Str(j, "version");
    kb.explanation_rules = ArrayOf<ExplanationRule>(j, "explanation_rules");
    kb.decomposition_rules = ArrayOf<DecompositionRule>(j, "decomposition_rules");
    kb.cases = ArrayOf<CaseRecord>(j, "cases");
    kb.patterns = ArrayOf<CredibilityPattern>(j, "patterns");
    kb.profiles = ArrayOf<SourceProfile>(j, "profiles");
    return kb;
  });
}

Json ToJson(const EvidenceItem& item) {
  return {{"id", item.id},
          {"type", std::string(TypeTag(item.type))},
          {"statement", ToJson(item.statement)},
          {"source", item.source},
          {"observed_at", item.observed_at.str()},
          {"recorded_at", item.recorded_at.str()},
          {"credibility", ToJson(item.credibility)},
          {"provenance", item.provenance}};
}

template <>
EvidenceItem FromJson<EvidenceItem>(const Json& j) {
  return Guard("evidence item", [&] {
    EvidenceItem item;
    item.id = j.at("id").get<std::string>();
    item.type = ParseEvidenceType(Str(j, "type", "tangible-real"));
    item.statement = FromJson<Statement>(j.at("statement"));
    item.source = Str(j, "source");
    item.observed_at = TimeAt(j, "observed_at");
    item.recorded_at =
        j.contains("recorded_at") ? TimeAt(j, "recorded_at") : item.observed_at;
    item.credibility = ProbAt(j, "credibility", Prob::kNoSupport);
    item.provenance = Str(j, "provenance");
    return item;
  });
}

Json ToJson(const EvidenceEntry& e) {
  Json out = ToJson(e.item);
  out["side"] = std::string(SideName(e.side));
  if (e.relevance) out["relevance"] = ToJson(*e.relevance);
  return out;
}

template <>
EvidenceEntry FromJson<EvidenceEntry>(const Json& j) {
  return Guard("evidence entry", [&] {
    EvidenceEntry e;
    e.item = FromJson<EvidenceItem>(j);
    e.side = ParseSide(Str(j, "side", "favoring"));
    if (j.contains("relevance") && !j.at("relevance").is_null()) {
      e.relevance = FromJson<Prob>(j.at("relevance"));
    }
    return e;
  });
}

Json ToJson(const Observation& o) {
  return {{"id", o.id},
          {"statement", ToJson(o.statement)},
          {"received_at", o.received_at.str()}};
}

template <>
Observation FromJson<Observation>(const Json& j) {
  return Guard("observation", [&] {
    return ParseObservation(Str(j, "id"), j.at("statement").get<std::string>(),
                            TimeAt(j, "received_at"));
  });
}

Json ToJson(const HypothesisCandidate& c) {
  Json fresh = Json::array();
  for (const auto& f : c.fresh_entities) {
    fresh.push_back({{"id", f.id},
                     {"variable", f.variable},
                     {"type", f.type},
                     {"rule", f.rule}});
  }
  return {{"id", c.id},
          {"statement", ToJson(c.statement)},
          {"description", c.description},
          {"rule", c.rule},
          {"species", c.species.Name()},
          {"bindings", ToJson(c.bindings)},
          {"fresh_entities", fresh},
          {"prior_relevance", ToJson(c.prior_relevance)},
          {"parent", c.parent},
          {"case", c.case_id}};
}

template <>
HypothesisCandidate FromJson<HypothesisCandidate>(const Json& j) {
  return Guard("candidate", [&] {
    HypothesisCandidate c;
    c.id = j.at("id").get<std::string>();
    c.statement = FromJson<Statement>(j.at("statement"));
    c.description = Str(j, "description");
    c.rule = Str(j, "rule");
    c.species = ParseSpecies(Str(j, "species", "simple overcoded"));
    if (j.contains("bindings")) c.bindings = FromJson<Bindings>(j.at("bindings"));
    if (j.contains("fresh_entities")) {
      for (const auto& f : j.at("fresh_entities")) {
        c.fresh_entities.push_back({f.at("id").get<std::string>(),
                                    Str(f, "variable"), Str(f, "type"),
                                    Str(f, "rule")});
      }
    }
    c.prior_relevance = ProbAt(j, "prior_relevance", Prob::kLikely);
    c.parent = Str(j, "parent");
    c.case_id = Str(j, "case");
    return c;
  });
}

Json ToJson(const Decomposition& d) {
  Json steps = Json::array();
  for (const auto& s : d.steps) {
    steps.push_back({{"argument", s.argument},
                     {"node", s.node},
                     {"rule", s.rule},
                     {"bindings", ToJson(s.bindings)}});
  }
  return {{"network", ToJson(d.network)},
          {"steps", steps},
          {"unobserved",
           std::vector<std::string>(d.unobserved.begin(), d.unobserved.end())}};
}

template <>
Decomposition FromJson<Decomposition>(const Json& j) {
  return Guard("decomposition", [&] {
    Decomposition d;
    d.network = FromJson<ArgumentationNetwork>(j.at("network"));
    for (const auto& s : j.at("steps")) {
      d.steps.push_back({s.at("argument").get<std::string>(),
                         s.at("node").get<std::string>(),
                         s.at("rule").get<std::string>(),
                         FromJson<Bindings>(s.at("bindings"))});
    }
    for (const auto& u : Strings(j, "unobserved")) d.unobserved.insert(u);
    return d;
  });
}

Json ToJson(const CollectionRequest& r) {
  return {{"id", r.id},
          {"leaf", r.leaf},
          {"source", r.source},
          {"query", ToJson(r.query)},
          {"side", std::string(SideName(r.side))},
          {"status", std::string(StatusName(r.status))},
          {"issued_at", r.issued_at.str()},
          {"failure", r.failure}};
}

template <>
CollectionRequest FromJson<CollectionRequest>(const Json& j) {
  return Guard("collection request", [&] {
    CollectionRequest r;
    r.id = j.at("id").get<std::string>();
    r.leaf = j.at("leaf").get<std::string>();
    r.source = j.at("source").get<std::string>();
    r.query = FromJson<Statement>(j.at("query"));
    r.side = ParseSide(Str(j, "side", "favoring"));
    r.status = ParseRequestStatus(Str(j, "status", "open"));
    r.issued_at = TimeAt(j, "issued_at");
    r.failure = Str(j, "failure");
    return r;
  });
}

Json ToJson(const AbductionTrace& t) {
  Json steps = Json::array();
  for (const auto& s : t.steps) {
    Json candidates = Json::array();
    for (const auto& c : s.candidates) candidates.push_back(SummaryJson(c));
    steps.push_back({{"index", s.index},
                     {"observations", Array(s.observations)},
                     {"candidates", candidates},
                     {"selected", s.selected},
                     {"verified", s.verified}});
  }
  return {{"steps", steps},
          {"stop_reason", t.stop_reason},
          {"candidates_examined", t.candidates_examined}};
}

template <>
AbductionTrace FromJson<AbductionTrace>(const Json& j) {
  return Guard("abduction trace", [&] {
    AbductionTrace t;
    t.stop_reason = Str(j, "stop_reason");
    t.candidates_examined = j.value("candidates_examined", 0);
    for (const auto& s : j.at("steps")) {
      InvestigationStep step;
      step.index = s.at("index").get<int>();
      step.observations = ArrayOf<Observation>(s, "observations");
      for (const auto& c : s.at("candidates")) {
        step.candidates.push_back(SummaryFrom(c));
      }
      step.selected = Strings(s, "selected");
      step.verified = s.value("verified", false);
      t.steps.push_back(std::move(step));
    }
    return t;
  });
}

Json ToJson(const BiasFinding& f) {
  return {{"kind", std::string(BiasKindName(f.kind))},
          {"location", f.location},
          {"severity", f.severity},
          {"explanation", f.explanation},
          {"rule", f.rule},
          {"cited", f.cited}};
}

template <>
BiasFinding FromJson<BiasFinding>(const Json& j) {
  return Guard("bias finding", [&] {
    return BiasFinding{ParseBiasKind(j.at("kind").get<std::string>()),
                       Str(j, "location"), Str(j, "severity"),
                       Str(j, "explanation"), Str(j, "rule"),
                       Strings(j, "cited")};
  });
}

Json ToJson(const ChangeEvent& e) {
  return {{"analysis", e.analysis},
          {"sequence", e.sequence},
          {"kind", e.kind},
          {"item", ToJson(e.entry)}};
}

template <>
ChangeEvent FromJson<ChangeEvent>(const Json& j) {
  return Guard("change event", [&] {
    return ChangeEvent{j.at("analysis").get<std::string>(),
                       j.at("sequence").get<std::uint64_t>(),
                       j.at("kind").get<std::string>(),
                       FromJson<EvidenceEntry>(j.at("item"))};
  });
}

Json ToJson(const CredibilityAssessment& a) {
  Json trace = Json::array();
  for (const auto& s : a.trace) {
    Json x = {{"indicator", s.indicator}, {"method", s.method}, {"applied", s.applied}};
    x["value"] = s.value ? ToJson(*s.value) : Json();
    trace.push_back(std::move(x));
  }
  return {{"credibility", ToJson(a.credibility)}, {"trace", trace}};
}

Json ParseJson(std::string_view text, std::string_view what) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string(what) + " is not valid JSON: " + e.what());
  }
}

Json ReadJsonFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NotFound("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return ParseJson(buf.str(), path.string());
}

std::string Dump(const Json& j) { return j.dump(2) + "\n"; }

std::uint64_t Fnv1a64(std::string_view data) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string Hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string KbVersion(const KnowledgeBase& kb) {
  if (!kb.version.empty()) return kb.version;
  return "kb-" + Hex64(Fnv1a64(ToJson(kb).dump()));
}

EvidenceEntry ResolveEntry(const Json& j, const KnowledgeBase& kb,
                           std::span<const SourceProfile> profiles) {
  EvidenceEntry e = FromJson<EvidenceEntry>(j);
  if (auto problems = ValidateItem(e.item);
      !problems.empty() && !(j.contains("credibility") == false &&
                             problems.size() == 1 &&
                             e.item.type == EvidenceType::kMissing)) {
    throw Rejected(problems.front());
  }
  if (!j.contains("credibility") || j.at("credibility").is_null()) {
    e.item = AssessItem(e.item, kb, profiles).item;
  } else if (IsTestimonial(e.item.type)) {
    bool known = std::any_of(profiles.begin(), profiles.end(),
                             [&](auto& p) { return p.id == e.item.source; }) ||
                 std::any_of(kb.profiles.begin(), kb.profiles.end(),
                             [&](auto& p) { return p.id == e.item.source; });
    if (!known) {
      throw Rejected("testimonial item '" + e.item.id +
                     "' cites unknown source '" + e.item.source + "'");
    }
  }
  return e;
}

void LoadRepository(const Json& j, const KnowledgeBase& kb,
                    EvidenceRepository& repo) {
  const auto profiles = Guard("evidence document", [&] {
    return ArrayOf<SourceProfile>(j, "profiles");
  });
  for (const auto& p : profiles) repo.UpsertProfile(p);
  if (!j.contains("items")) return;
  for (const auto& x : j.at("items")) repo.Upsert(ResolveEntry(x, kb, profiles));
}

Json RepositoryToJson(const EvidenceRepository& repo) {
  return {{"profiles", Array(repo.Profiles())}, {"items", Array(repo.Entries())}};
}

}  // namespace ebr
