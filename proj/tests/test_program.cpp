#include <gtest/gtest.h>

#include "support.hpp"

using namespace strucres;
using namespace strucres::testing;

TEST(ParseProgram, NatInSourceOrder) {
  auto parsed = parse_program("nat(0). nat(s(X)) :- nat(X).");
  const Program& p = parsed.program;
  ASSERT_EQ(p.size(), 2u);
  EXPECT_EQ(p[0], Clause::fact(term("nat(0)")));
  EXPECT_EQ(p[1], Clause::rule(term("nat(s(X))"), {term("nat(X)")}));
  EXPECT_EQ(parsed.signature.arity("nat"), 1u);
  EXPECT_EQ(parsed.signature.arity("s"), 1u);
  EXPECT_EQ(parsed.signature.arity("0"), 0u);
}

TEST(ParseProgram, EmptyIsAnError) {
  EXPECT_THROW(parse_program(""), ParseError);
  EXPECT_THROW(parse_program("% only a comment\n"), ParseError);
}

TEST(ParseProgram, ArityConflictNamesFunctor) {
  try {
    parse_program("p(a). p(a,b).");
    FAIL() << "expected an arity error";
  } catch (const ArityError& e) {
    EXPECT_EQ(e.functor(), "p");
  }
}

TEST(ParseProgram, SyntaxErrorCarriesPosition) {
  try {
    parse_program("nat(0).\nnat(s(X) :- nat(X).");
    FAIL() << "expected a syntax error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_GT(e.column(), 1u);
  }
}

TEST(ParseProgram, ConnClauseNumbering) {
  const Program p = program(kConn);
  ASSERT_EQ(p.size(), 4u);
  EXPECT_EQ(p[0].head->str(), "conn(X, X)");
  EXPECT_EQ(p[1].head->str(), "conn(X, Y)");
  EXPECT_EQ(p[2].head->str(), "edge(a, b)");
  EXPECT_EQ(p[3].head->str(), "conn(b, c)");
}

TEST(ParseProgram, BracketPairIsStreamCons) {
  EXPECT_EQ(program("from(X, [X, Y]) :- from(s(X), Y).")[0], program(kFrom)[0]);
  EXPECT_THROW(parse_term("[a, b, c]"), ParseError);
  EXPECT_THROW(parse_term("[a]"), ParseError);
  EXPECT_THROW(parse_term("[]"), ParseError);
}

TEST(ParseProgram, RejectsQueriesAndVariableAtoms) {
  EXPECT_THROW(parse_program("?- nat(X)."), ParseError);
  EXPECT_THROW(parse_program("X :- nat(X)."), ParseError);
}

TEST(ParseQuery, Forms) {
  Clause q = parse_query("?- nat(s(X)).");
  EXPECT_TRUE(q.is_goal());
  ASSERT_EQ(q.body.size(), 1u);
  EXPECT_EQ(q.body[0], term("nat(s(X))"));

  EXPECT_TRUE(parse_query("?-.").is_empty_goal());
  EXPECT_EQ(parse_query("?- from(0, X).").body[0], term("from(0, X)"));
  EXPECT_EQ(parse_query("?- p(X), q(X)").body.size(), 2u);
  EXPECT_THROW(parse_query("nat(X)."), ParseError);
}

TEST(ExistentialVars, Examples) {
  auto z = existential_vars(program(kConn)[1]);
  ASSERT_EQ(z.size(), 1u);
  EXPECT_EQ(z[0], Variable::named("Z"));
  EXPECT_TRUE(existential_vars(program(kNat)[1]).empty());
  auto yz = existential_vars(program("p(X) :- q(Y, Z), r(Z).")[0]);
  EXPECT_EQ(yz, (std::vector<Variable>{Variable::named("Y"), Variable::named("Z")}));
}

TEST(ExistentialVars, MatchesSetDifference) {
  TermGen gen(17);
  for (int i = 0; i < 100; ++i) {
    Program p = gen.program(1, 3);
    const Clause& c = p[0];
    std::set<Variable> head, body;
    for (const auto& v : c.head->variables()) head.insert(v);
    for (const auto& b : c.body)
      for (const auto& v : b.variables()) body.insert(v);
    std::set<Variable> expected;
    for (const auto& v : body)
      if (!head.count(v)) expected.insert(v);
    auto got = existential_vars(c);
    EXPECT_EQ(std::set<Variable>(got.begin(), got.end()), expected);
  }
}

TEST(Pretty, Examples) {
  EXPECT_EQ(pretty(parse_term("nat(s(0))")), "nat(s(0))");
  EXPECT_EQ(pretty(program(kFrom)[0]), "from(X, scons(X, Y)) :- from(s(X), Y).");
  EXPECT_EQ(pretty(parse_query("?-.")), "?-.");
  EXPECT_EQ(pretty(parse_query("?- nat(s(X)).")), "?- nat(s(X)).");
}

TEST(Pretty, RoundTripsRandomPrograms) {
  TermGen gen(23);
  for (int i = 0; i < 100; ++i) {
    Program p = gen.program(4, 3);
    Program q = parse_program(pretty(p)).program;
    ASSERT_EQ(p.size(), q.size());
    for (std::size_t k = 0; k < p.size(); ++k) EXPECT_TRUE(alpha_equal(p[k], q[k]));
  }
}

TEST(Pretty, RoundTripsGeneratedVariables) {
  Clause c = Clause::rule(Term::app("p", {Term::var(Variable::existential({0, 1}, 2))}),
                          {Term::app("q", {Term::var(Variable::fresh(3))})});
  Clause back = parse_program(pretty(c)).program[0];
  EXPECT_TRUE(alpha_equal(c, back));
}

TEST(Program, RejectsGoalClauses) { EXPECT_THROW(Program({Clause::goal({term("p")})}), Error); }

TEST(Program, SignatureIsFunctional) {
  Signature sig;
  EXPECT_TRUE(sig.add("f", 2));
  EXPECT_TRUE(sig.add("f", 2));
  EXPECT_FALSE(sig.add("f", 1));
  EXPECT_TRUE(respects_signature(term("f(a, b)"), parse_program("x(f(a, b)).").signature));
}
