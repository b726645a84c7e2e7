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

#include "ebr/statement.h"

#include <algorithm>
#include <cctype>

#include "ebr/errors.h"

namespace ebr {
namespace {

bool IsNameChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' ||
         c == '.' || c == '/';
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Statement ParseStatement() {
    Statement s;
    s.atoms.push_back(ParseAtom());
    SkipSpace();
    while (Peek() == '&') {
      ++pos_;
      s.atoms.push_back(ParseAtom());
      SkipSpace();
    }
    ExpectEnd();
    return s;
  }

  Term ParseSingleTerm() {
    Term t = ParseTerm();
    SkipSpace();
    ExpectEnd();
    return t;
  }

  Atom ParseSingleAtom() {
    Atom a = ParseAtom();
    SkipSpace();
    ExpectEnd();
    return a;
  }

 private:
  Atom ParseAtom() {
    Atom atom;
    atom.predicate = ParseName("predicate");
    SkipSpace();
    Expect('(');
    SkipSpace();
    if (Peek() != ')') {
      atom.args.push_back(ParseTerm());
      SkipSpace();
      while (Peek() == ',') {
        ++pos_;
        atom.args.push_back(ParseTerm());
        SkipSpace();
      }
    }
    Expect(')');
    return atom;
  }

  Term ParseTerm() {
    SkipSpace();
    Term t;
    if (Peek() == '?') {
      t.variable = true;
      ++pos_;
    }
    t.name = ParseName("term");
    SkipSpace();
    if (Peek() == ':') {
      ++pos_;
      SkipSpace();
      t.type = ParseName("type");
    }
    return t;
  }

  std::string ParseName(const char* what) {
    SkipSpace();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && IsNameChar(text_[pos_])) ++pos_;
    if (pos_ == start) Fail(std::string("expected ") + what);
    return std::string(text_.substr(start, pos_ - start));
  }

  void SkipSpace() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  char Peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void Expect(char c) {
    SkipSpace();
    if (Peek() != c) Fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  void ExpectEnd() {
    SkipSpace();
    if (pos_ != text_.size()) Fail("unexpected trailing text");
  }

  [[noreturn]] void Fail(const std::string& what) const {
    throw ParseError("statement '" + std::string(text_) + "' at column " +
                     std::to_string(pos_ + 1) + ": " + what);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

bool TypesCompatible(const std::string& a, const std::string& b) {
  return a.empty() || b.empty() || a == b;
}

std::string TermText(const Term& t, bool typed) {
  std::string out = t.variable ? "?" + t.name : t.name;
  if (typed && !t.type.empty()) out += ":" + t.type;
  return out;
}

std::string AtomText(const Atom& atom, bool typed) {
  std::string out = atom.predicate + "(";
  for (std::size_t i = 0; i < atom.args.size(); ++i) {
    if (i) out += ", ";
    out += TermText(atom.args[i], typed);
  }
  return out + ")";
}

std::string StatementText(const Statement& s, bool typed) {
  std::string out;
  for (std::size_t i = 0; i < s.atoms.size(); ++i) {
    if (i) out += " & ";
    out += AtomText(s.atoms[i], typed);
  }
  return out;
}

}  // namespace

bool Atom::ground() const {
  return std::none_of(args.begin(), args.end(),
                      [](const Term& t) { return t.variable; });
}

bool Statement::ground() const {
  return std::all_of(atoms.begin(), atoms.end(),
                     [](const Atom& a) { return a.ground(); });
}

Atom ParseAtom(std::string_view text) { return Parser(text).ParseSingleAtom(); }

Statement ParseStatement(std::string_view text) {
  return Parser(text).ParseStatement();
}

Term ParseTerm(std::string_view text) { return Parser(text).ParseSingleTerm(); }

std::string Canonical(const Term& term) { return TermText(term, true); }
std::string Canonical(const Atom& atom) { return AtomText(atom, true); }
std::string Canonical(const Statement& s) { return StatementText(s, true); }
std::string Display(const Atom& atom) { return AtomText(atom, false); }
std::string Display(const Statement& s) { return StatementText(s, false); }

std::set<std::string> Variables(const Atom& atom) {
  std::set<std::string> out;
  for (const auto& t : atom.args) {
    if (t.variable) out.insert(t.name);
  }
  return out;
}

std::set<std::string> Variables(const Statement& statement) {
  std::set<std::string> out;
  for (const auto& a : statement.atoms) out.merge(Variables(a));
  return out;
}

bool Match(const Atom& pattern, const Atom& target, Bindings& bindings) {
  if (pattern.predicate != target.predicate ||
      pattern.args.size() != target.args.size()) {
    return false;
  }
  Bindings local = bindings;
  for (std::size_t i = 0; i < pattern.args.size(); ++i) {
    const Term& p = pattern.args[i];
    const Term& t = target.args[i];
    if (!TypesCompatible(p.type, t.type)) return false;
    if (p.variable) {
      auto [it, inserted] = local.emplace(p.name, t);
      if (!inserted && !(it->second.name == t.name &&
                         it->second.variable == t.variable)) {
        return false;
      }
    } else if (t.variable || p.name != t.name) {
      return false;
    }
  }
  bindings = std::move(local);
  return true;
}

bool Match(const Statement& pattern, const Statement& target,
           Bindings& bindings) {
  if (pattern.atoms.size() != target.atoms.size()) return false;
  Bindings local = bindings;
  for (std::size_t i = 0; i < pattern.atoms.size(); ++i) {
    if (!Match(pattern.atoms[i], target.atoms[i], local)) return false;
  }
  bindings = std::move(local);
  return true;
}

namespace {

bool MatchFrom(const std::vector<Atom>& pattern, std::size_t i,
               const Statement& target, Bindings& bindings) {
  if (i == pattern.size()) return true;
  for (const auto& atom : target.atoms) {
    Bindings attempt = bindings;
    if (Match(pattern[i], atom, attempt) &&
        MatchFrom(pattern, i + 1, target, attempt)) {
      bindings = std::move(attempt);
      return true;
    }
  }
  return false;
}

}  // namespace

bool MatchWithin(const Statement& pattern, const Statement& target,
                 Bindings& bindings) {
  if (pattern.atoms.empty()) return false;
  return MatchFrom(pattern.atoms, 0, target, bindings);
}

Atom Substitute(const Atom& pattern, const Bindings& bindings) {
  Atom out = pattern;
  for (auto& t : out.args) {
    if (!t.variable) continue;
    auto it = bindings.find(t.name);
    if (it == bindings.end()) continue;
    std::string type = it->second.type.empty() ? t.type : it->second.type;
    t = it->second;
    t.type = std::move(type);
  }
  return out;
}

Statement Substitute(const Statement& pattern, const Bindings& bindings) {
  Statement out;
  for (const auto& a : pattern.atoms) out.atoms.push_back(Substitute(a, bindings));
  return out;
}

std::string Describe(std::string_view text_template, const Bindings& bindings) {
  std::string out;
  for (std::size_t i = 0; i < text_template.size();) {
    if (text_template[i] == '?') {
      std::size_t j = i + 1;
      while (j < text_template.size() && IsNameChar(text_template[j]) &&
             text_template[j] != '.' && text_template[j] != '/') {
        ++j;
      }
      const std::string name(text_template.substr(i + 1, j - i - 1));
      auto it = bindings.find(name);
      if (!name.empty() && it != bindings.end()) {
        out += it->second.name;
        i = j;
        continue;
      }
    }
    out += text_template[i++];
  }
  return out;
}

Statement ConjoinStatements(const Statement& a, const Statement& b) {
  Statement out = a;
  out.atoms.insert(out.atoms.end(), b.atoms.begin(), b.atoms.end());
  return out;
}

}  // namespace ebr
