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

/// @file errors.h
/// Exception types thrown by the engine.
#ifndef EBR_ERRORS_H_
#define EBR_ERRORS_H_

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ebr {

/// Base of every engine error.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A precondition of an operation was not met by the caller.
class ContractViolation : public Error {
 public:
  explicit ContractViolation(const std::string& msg) : Error(msg) {}
};

/// Malformed input text or document.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& msg) : Error(msg) {}
};

/// A referenced id does not exist.
class NotFound : public Error {
 public:
  explicit NotFound(const std::string& msg) : Error(msg) {}
};

/// A request was understood but refused.
class Rejected : public Error {
 public:
  explicit Rejected(const std::string& msg) : Error(msg) {}
};

/// Structural problems found by a validator, carried as data.
class ValidationError : public Error {
 public:
  ValidationError(const std::string& msg, std::vector<std::string> defects)
      : Error(msg + Join(defects)), defects_(std::move(defects)) {}

  const std::vector<std::string>& defects() const { return defects_; }

 private:
  static std::string Join(const std::vector<std::string>& defects) {
    std::string out;
    for (const auto& d : defects) out += "\n  " + d;
    return out;
  }

  std::vector<std::string> defects_;
};

}  // namespace ebr

#endif  // EBR_ERRORS_H_
