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

#include <gtest/gtest.h>

#include "ebr/errors.h"

namespace ebr {
namespace {

TEST(StatementTest, ParseAndPrint) {
  Statement s = ParseStatement(
      "covert-transfer(Ship1:ship, ?b:buyer) & loiters-at-night( Ship1 )");
  ASSERT_EQ(s.atoms.size(), 2u);
  EXPECT_EQ(s.atoms[0].predicate, "covert-transfer");
  EXPECT_TRUE(s.atoms[0].args[1].variable);
  EXPECT_EQ(s.atoms[0].args[1].type, "buyer");
  EXPECT_FALSE(s.ground());
  EXPECT_EQ(Canonical(s),
            "covert-transfer(Ship1:ship, ?b:buyer) & loiters-at-night(Ship1)");
  EXPECT_EQ(Display(s), "covert-transfer(Ship1, ?b) & loiters-at-night(Ship1)");
  EXPECT_EQ(ParseStatement(Canonical(s)), s);
  EXPECT_TRUE(ParseStatement("p()").ground());
}

TEST(StatementTest, ParseErrors) {
  EXPECT_THROW(ParseStatement(""), ParseError);
  EXPECT_THROW(ParseStatement("p(a"), ParseError);
  EXPECT_THROW(ParseStatement("p(a) q(b)"), ParseError);
  EXPECT_THROW(ParseStatement("p(a,)"), ParseError);
  EXPECT_THROW(ParseAtom("p(a) & q(b)"), ParseError);
}

TEST(MatchTest, BindsVariablesConsistently) {
  Bindings b;
  EXPECT_TRUE(Match(ParseAtom("p(?x:ship, ?x:ship)"), ParseAtom("p(A:ship, A:ship)"), b));
  EXPECT_EQ(b.at("x").name, "A");

  Bindings c;
  EXPECT_FALSE(Match(ParseAtom("p(?x, ?x)"), ParseAtom("p(A, B)"), c));
  EXPECT_TRUE(c.empty());
}

TEST(MatchTest, TypesMustAgreeWhenBothGiven) {
  Bindings b;
  EXPECT_FALSE(Match(ParseAtom("p(?x:ship)"), ParseAtom("p(A:port)"), b));
  EXPECT_TRUE(Match(ParseAtom("p(?x:ship)"), ParseAtom("p(A)"), b));
  Bindings c;
  EXPECT_TRUE(Match(ParseAtom("p(?x)"), ParseAtom("p(A:port)"), c));
}

TEST(MatchTest, ConstantsAndArity) {
  Bindings b;
  EXPECT_FALSE(Match(ParseAtom("p(A)"), ParseAtom("p(B)"), b));
  EXPECT_FALSE(Match(ParseAtom("p(A)"), ParseAtom("p(A, B)"), b));
  EXPECT_FALSE(Match(ParseAtom("p(A)"), ParseAtom("q(A)"), b));
  // Target variables are opaque: a constant never matches them.
  EXPECT_FALSE(Match(ParseAtom("p(A)"), ParseAtom("p(?y)"), b));
  EXPECT_TRUE(Match(ParseAtom("p(?x)"), ParseAtom("p(?y)"), b));
  EXPECT_TRUE(b.at("x").variable);
}

TEST(SubstituteTest, KeepsUnboundVariables) {
  Bindings b;
  b["s"] = Term::Constant("Ship1", "ship");
  Atom a = Substitute(ParseAtom("meets(?s:ship, ?v:vessel)"), b);
  EXPECT_EQ(Canonical(a), "meets(Ship1:ship, ?v:vessel)");
}

TEST(DescribeTest, ReplacesBoundTokens) {
  Bindings b;
  b["ship"] = Term::Constant("Ship1", "ship");
  EXPECT_EQ(Describe("?ship performs covert goods transfer?", b),
            "Ship1 performs covert goods transfer?");
  EXPECT_EQ(Describe("?other stays", b), "?other stays");
}

}  // namespace
}  // namespace ebr
