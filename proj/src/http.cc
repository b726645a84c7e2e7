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

#include "ebr/http.h"

#include <httplib.h>

#include <vector>

#include "ebr/errors.h"

namespace ebr {
namespace {

ApiResponse Ok(const Json& j, int status = 200) { return {status, Dump(j)}; }

ApiResponse Fail(int status, const std::string& message,
                 const std::vector<std::string>& defects = {}) {
  Json j = {{"error", message}};
  if (!defects.empty()) j["defects"] = defects;
  return {status, Dump(j)};
}

std::vector<std::string> Segments(std::string_view path) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < path.size()) {
    while (i < path.size() && path[i] == '/') ++i;
    const std::size_t j = path.find('/', i);
    const std::size_t end = j == std::string_view::npos ? path.size() : j;
    if (end > i) out.emplace_back(path.substr(i, end - i));
    i = end;
  }
  return out;
}

Json BundleSummary(const AnalysisBundle& b) {
  return {{"id", b.id},
          {"version", b.version},
          {"status", b.status},
          {"gate", b.gate},
          {"parked", b.parked}};
}

ApiResponse Route(ReasonerService& service, std::string_view method,
                  const std::vector<std::string>& seg, std::string_view body,
                  const std::map<std::string, std::string>& query) {
  const bool get = method == "GET";
  const bool post = method == "POST";

  if (seg.size() == 1 && seg[0] == "alerts" && post) {
    const auto r = service.SubmitAlert(ParseJson(body, "alert"));
    Json j = BundleSummary(service.Get(r.id));
    j["created"] = r.created;
    return Ok(j, r.created ? 201 : 200);
  }
  if (seg.size() == 1 && seg[0] == "evidence" && post) {
    return Ok({{"affected", service.IngestEvidence(ParseJson(body, "evidence item"))}});
  }
  if (seg.size() == 1 && seg[0] == "kb") {
    if (get) return Ok(ToJson(service.CurrentKb()));
    if (method == "PUT") {
      const auto kb = FromJson<KnowledgeBase>(ParseJson(body, "knowledge base"));
      return Ok({{"version", service.PutKb(kb)}}, 201);
    }
  }
  if (seg.size() >= 2 && seg[0] == "analyses") {
    const std::string& id = seg[1];
    if (seg.size() == 2 && get) return Ok(ToJson(service.Get(id)));
    const std::string& what = seg.size() == 3 ? seg[2] : std::string();
    if (what == "report" && get) {
      const auto report = service.Report(id);
      auto f = query.find("format");
      if (f != query.end() && f->second == "text") {
        return {200, RenderReport(report), "text/plain; charset=utf-8"};
      }
      return Ok(ToJson(report));
    }
    if (what == "biases" && get) {
      Json findings = Json::array();
      for (const auto& f : service.Biases(id)) findings.push_back(ToJson(f));
      return Ok({{"findings", findings}});
    }
    if (what == "history" && get) {
      Json versions = Json::array();
      for (const auto& b : service.History(id)) versions.push_back(BundleSummary(b));
      return Ok({{"versions", versions}});
    }
    if (what == "assumptions" && post) {
      const Json j = ParseJson(body, "assumption");
      if (!j.is_object() || !j.contains("node") || !j.at("node").is_string()) {
        throw ParseError("assumption needs a \"node\"");
      }
      std::optional<Prob> value;
      if (j.contains("value") && !j.at("value").is_null()) {
        value = FromJson<Prob>(j.at("value"));
      }
      const auto r = service.PostAssumption(id, j.at("node").get<std::string>(), value);
      Json ranking = Json::array();
      for (const auto& s : r.ranking) {
        ranking.push_back({{"id", s.id},
                           {"probability", ToJson(s.probability)},
                           {"coverage",
                            {{"answered", s.coverage.answered},
                             {"total", s.coverage.total}}}});
      }
      return Ok({{"version", r.version},
                 {"evaluation", ToJson(r.evaluation)},
                 {"ranking", ranking}});
    }
    if (what == "resume" && post) {
      const Json j = body.empty() ? Json::object() : ParseJson(body, "resume");
      const auto b = service.Resume(id, j.value("action", std::string("approve")),
                                    j.value("reason", std::string()));
      return Ok(BundleSummary(b));
    }
  }
  return Fail(404, "no route for " + std::string(method) + " /" +
                       [&] {
                         std::string p;
                         for (const auto& s : seg) p += (p.empty() ? "" : "/") + s;
                         return p;
                       }());
}

}  // namespace

ApiResponse HandleApi(ReasonerService& service, std::string_view method,
                      std::string_view path, std::string_view body,
                      const std::map<std::string, std::string>& query) {
  try {
    return Route(service, method, Segments(path), body, query);
  } catch (const ParseError& e) {
    return Fail(400, e.what());
  } catch (const NotFound& e) {
    return Fail(404, e.what());
  } catch (const ValidationError& e) {
    return Fail(422, e.what(), e.defects());
  } catch (const Rejected& e) {
    return Fail(422, e.what());
  } catch (const ContractViolation& e) {
    return Fail(409, e.what());
  } catch (const std::exception& e) {
    return Fail(500, e.what());
  }
}

void Serve(ReasonerService& service, const std::string& host, int port) {
  httplib::Server server;
  auto handler = [&service](const httplib::Request& req, httplib::Response& res) {
    std::map<std::string, std::string> query;
    for (const auto& [k, v] : req.params) query.emplace(k, v);
    const auto r = HandleApi(service, req.method, req.path, req.body, query);
    res.status = r.status;
    res.set_content(r.body, r.content_type);
  };
  const std::string any = R"(/.*)";
  server.Get(any, handler);
  server.Post(any, handler);
  server.Put(any, handler);
  if (!server.listen(host, port)) {
    throw Error("cannot listen on " + host + ":" + std::to_string(port));
  }
}

}  // namespace ebr
