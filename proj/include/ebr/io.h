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

/// @file io.h
/// JSON documents for every persisted or exchanged type.
///
/// Statements are written as their canonical text, probabilities as their
/// abbreviation (labels are accepted on input), and every id-keyed collection
/// as an array sorted by id. Output is therefore stable byte for byte.
#ifndef EBR_IO_H_
#define EBR_IO_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include <json.hpp>

#include "ebr/abduction.h"
#include "ebr/bias.h"
#include "ebr/collection.h"
#include "ebr/evidence.h"
#include "ebr/investigate.h"
#include "ebr/kb.h"
#include "ebr/network.h"

namespace ebr {

using Json = nlohmann::json;

Json ToJson(const Statement& s);
Json ToJson(Prob p);
Json ToJson(const Bindings& b);
Json ToJson(const ArgumentationNetwork& n);
Json ToJson(const EvaluationResult& r);
Json ToJson(const ExplanationRule& r);
Json ToJson(const DecompositionRule& r);
Json ToJson(const CaseRecord& c);
Json ToJson(const CredibilityPattern& p);
Json ToJson(const SourceProfile& p);
Json ToJson(const KnowledgeBase& kb);
Json ToJson(const EvidenceItem& item);
Json ToJson(const EvidenceEntry& e);
Json ToJson(const Observation& o);
Json ToJson(const HypothesisCandidate& c);
Json ToJson(const Decomposition& d);
Json ToJson(const CollectionRequest& r);
Json ToJson(const AbductionTrace& t);
Json ToJson(const BiasFinding& f);
Json ToJson(const ChangeEvent& e);
Json ToJson(const CredibilityAssessment& a);

/// Throws ParseError naming the offending field.
template <typename T>
T FromJson(const Json& j);

template <> Statement FromJson<Statement>(const Json& j);
template <> Prob FromJson<Prob>(const Json& j);
template <> Bindings FromJson<Bindings>(const Json& j);
template <> ArgumentationNetwork FromJson<ArgumentationNetwork>(const Json& j);
template <> EvaluationResult FromJson<EvaluationResult>(const Json& j);
template <> ExplanationRule FromJson<ExplanationRule>(const Json& j);
template <> DecompositionRule FromJson<DecompositionRule>(const Json& j);
template <> CaseRecord FromJson<CaseRecord>(const Json& j);
template <> CredibilityPattern FromJson<CredibilityPattern>(const Json& j);
template <> SourceProfile FromJson<SourceProfile>(const Json& j);
template <> KnowledgeBase FromJson<KnowledgeBase>(const Json& j);
template <> EvidenceItem FromJson<EvidenceItem>(const Json& j);
template <> EvidenceEntry FromJson<EvidenceEntry>(const Json& j);
template <> Observation FromJson<Observation>(const Json& j);
template <> HypothesisCandidate FromJson<HypothesisCandidate>(const Json& j);
template <> Decomposition FromJson<Decomposition>(const Json& j);
template <> CollectionRequest FromJson<CollectionRequest>(const Json& j);
template <> AbductionTrace FromJson<AbductionTrace>(const Json& j);
template <> BiasFinding FromJson<BiasFinding>(const Json& j);
template <> ChangeEvent FromJson<ChangeEvent>(const Json& j);

/// Parses text; throws ParseError with the parser's position.
Json ParseJson(std::string_view text, std::string_view what = "document");
Json ReadJsonFile(const std::filesystem::path& path);
/// Two-space indent plus a trailing newline.
std::string Dump(const Json& j);

std::uint64_t Fnv1a64(std::string_view data);
std::string Hex64(std::uint64_t v);

/// The KB's explicit version, else "kb-" + hash of its canonical document.
std::string KbVersion(const KnowledgeBase& kb);

/// An evidence document entry. When "credibility" is absent it is assessed
/// from the source profile (KB profiles plus `profiles`) and the pattern for
/// the item's type. Throws Rejected when that is impossible.
EvidenceEntry ResolveEntry(const Json& j, const KnowledgeBase& kb,
                           std::span<const SourceProfile> profiles = {});

/// Loads {"profiles": [...], "items": [...]} into `repo`.
void LoadRepository(const Json& j, const KnowledgeBase& kb,
                    EvidenceRepository& repo);
Json RepositoryToJson(const EvidenceRepository& repo);

}  // namespace ebr

#endif  // EBR_IO_H_
