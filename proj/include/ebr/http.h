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

/// @file http.h
/// JSON-over-HTTP front end of the reasoner service.
#ifndef EBR_HTTP_H_
#define EBR_HTTP_H_

#include <map>
#include <string>
#include <string_view>

#include "ebr/service.h"

namespace ebr {

struct ApiResponse {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

/// Routes one request. Errors map to 400 (parse), 404 (unknown id),
/// 409 (contract), 422 (rejected or invalid) and 500, with an "error" body.
ApiResponse HandleApi(ReasonerService& service, std::string_view method,
                      std::string_view path, std::string_view body,
                      const std::map<std::string, std::string>& query = {});

/// Blocks serving on host:port until the process is stopped.
void Serve(ReasonerService& service, const std::string& host, int port);

}  // namespace ebr

#endif  // EBR_HTTP_H_
