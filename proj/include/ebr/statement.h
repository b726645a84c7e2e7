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

/// @file statement.h
/// Flat predicate statements with typed arguments and one-way matching.
///
/// Text syntax:
///
///     statement := atom ( "&" atom )*
///     atom      := predicate "(" [ term ( "," term )* ] ")"
///     term      := [ "?" ] name [ ":" type ]
///
/// A leading "?" marks a variable. A term without a type matches any type.
#ifndef EBR_STATEMENT_H_
#define EBR_STATEMENT_H_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace ebr {

struct Term {
  std::string name;
  std::string type;  // empty = untyped
  bool variable = false;

  static Term Constant(std::string name, std::string type = {}) {
    return {std::move(name), std::move(type), false};
  }
  static Term Variable(std::string name, std::string type = {}) {
    return {std::move(name), std::move(type), true};
  }

  bool operator==(const Term&) const = default;
  auto operator<=>(const Term&) const = default;
};

struct Atom {
  std::string predicate;
  std::vector<Term> args;

  bool ground() const;

  bool operator==(const Atom&) const = default;
  auto operator<=>(const Atom&) const = default;
};

/// A conjunction of atoms. Most statements have exactly one.
struct Statement {
  std::vector<Atom> atoms;

  bool ground() const;
  bool empty() const { return atoms.empty(); }

  bool operator==(const Statement&) const = default;
  auto operator<=>(const Statement&) const = default;
};

using Bindings = std::map<std::string, Term>;

Term ParseTerm(std::string_view text);
Atom ParseAtom(std::string_view text);
Statement ParseStatement(std::string_view text);

/// Full form with types, parseable back: "p(Ship1:ship, ?b:buyer)".
std::string Canonical(const Term& term);
std::string Canonical(const Atom& atom);
std::string Canonical(const Statement& statement);

/// Display form without types: "p(Ship1, ?b)".
std::string Display(const Atom& atom);
std::string Display(const Statement& statement);

/// Variable names appearing in the atom or statement.
std::set<std::string> Variables(const Atom& atom);
std::set<std::string> Variables(const Statement& statement);

/// One-way match: binds the pattern's variables to the target's terms so
/// that the instantiated pattern equals the target. Target variables are
/// treated as opaque symbols. `bindings` is extended only on success.
bool Match(const Atom& pattern, const Atom& target, Bindings& bindings);

/// Matches atom lists pairwise (same length, same order).
bool Match(const Statement& pattern, const Statement& target,
           Bindings& bindings);

/// Matches every pattern atom against some atom of the target (in any
/// order, atoms may be reused), with one consistent set of bindings.
bool MatchWithin(const Statement& pattern, const Statement& target,
                 Bindings& bindings);

/// Replaces bound variables; unbound ones stay variables.
Atom Substitute(const Atom& pattern, const Bindings& bindings);
Statement Substitute(const Statement& pattern, const Bindings& bindings);

/// Replaces "?name" tokens in free text by the bound term names.
std::string Describe(std::string_view text_template, const Bindings& bindings);

/// Conjunction of two statements ("H & K").
Statement ConjoinStatements(const Statement& a, const Statement& b);

}  // namespace ebr

#endif  // EBR_STATEMENT_H_
