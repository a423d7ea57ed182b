#include <gtest/gtest.h>

#include <regex>

#include "support.hpp"

using namespace strucres;
using namespace strucres::testing;

namespace {

std::size_t count(const std::string& s, const std::regex& re) {
  return static_cast<std::size_t>(std::distance(std::sregex_iterator(s.begin(), s.end(), re), std::sregex_iterator()));
}

const std::regex kNodeLine(R"(^  n\d+ \[label=)", std::regex::multiline);
const std::regex kEdgeLine(R"(^  n\d+ -> n\d+)", std::regex::multiline);

}  // namespace

TEST(Dot, NatTreeCounts) {
  auto t = rew(program(kNat), query("?- nat(s(X))."), {}, 32);
  std::string dot = to_dot(t);
  EXPECT_EQ(count(dot, kNodeLine), t.size());
  EXPECT_EQ(count(dot, kNodeLine), 7u);
  EXPECT_EQ(count(dot, kEdgeLine), 6u);
  EXPECT_EQ(count(dot, std::regex("shape=box")), 2u);
  EXPECT_EQ(count(dot, std::regex("shape=ellipse")), 2u);
  EXPECT_EQ(count(dot, std::regex("shape=diamond")), 3u);
  EXPECT_EQ(dot.rfind("digraph", 0), 0u);
  EXPECT_EQ(dot.back(), '\n');
}

TEST(Dot, EmptyTree) {
  std::string dot = empty_tree_dot();
  EXPECT_EQ(count(dot, kNodeLine), 1u);
  EXPECT_NE(dot.find("\xE2\x8A\xA5"), std::string::npos);
}

TEST(Dot, ConnProofMarksWitness) {
  auto t = rew(program(kConn), query("?- conn(a, c)."), Substitution({{Variable::existential({0, 1}, 1), term("b")}}), 10);
  std::string dot = to_dot(t);
  EXPECT_EQ(count(dot, std::regex("witness=true")), 7u);
  EXPECT_NE(dot.find("style=dashed"), std::string::npos);  // truncated recursion
  std::regex witness_line(R"(witness=true"\]; // (\S+))");
  std::set<std::string> marked;
  for (auto it = std::sregex_iterator(dot.begin(), dot.end(), witness_line); it != std::sregex_iterator(); ++it)
    marked.insert((*it)[1]);
  EXPECT_EQ(marked, (std::set<std::string>{"\xCE\xB5", "0", "0.1", "0.1.0", "0.1.0.2", "0.1.1", "0.1.1.3"}));
}

TEST(Dot, QuotesAreEscaped) {
  auto t = rew(program(kNat), query("?- nat(s(X))."), {}, 8);
  std::string dot = to_dot(t);
  // every label is a closed string literal
  EXPECT_EQ(count(dot, std::regex(R"(label="[^"\\]*")")), 7u);
}

TEST(Dot, StableAndInjectiveOnCorpus) {
  std::vector<RewritingTree> trees{
      rew(program(kNat), query("?- nat(s(X))."), {}, 8),
      rew(program(kNat), query("?- nat(s(0))."), {}, 8),
      rew(program(kFrom), query("?- from(0, X)."), {}, 8),
      rew(program(kBad), query("?- bad(X)."), {}, 8),
      rew(program(kConn), query("?- conn(a, c)."), {}, 8),
      rew(program(kConn), query("?- conn(a, c)."), Substitution({{Variable::existential({0, 1}, 1), term("b")}}), 8),
  };
  std::set<std::string> texts;
  for (const auto& t : trees) {
    EXPECT_EQ(to_dot(t), to_dot(t));
    texts.insert(to_dot(t));
  }
  EXPECT_EQ(texts.size(), trees.size());
}

TEST(Ascii, MarksWitness) {
  auto t = rew(program(kNat), query("?- nat(s(0))."), {}, 8);
  std::string out = to_ascii(t);
  EXPECT_EQ(std::count(out.begin(), out.end(), '\n'), 7);
  EXPECT_EQ(count(out, std::regex(R"(\* )")), 5u);
}

TEST(DerivationDot, NatRoot) {
  auto d = der_expand(program(kNat), query("?- nat(s(X))."), Limits{8, 1, 100});
  std::string dot = to_dot(d);
  EXPECT_EQ(count(dot, kNodeLine), 4u);
  EXPECT_EQ(count(dot, kEdgeLine), 3u);
  EXPECT_NE(dot.find("X2"), std::string::npos);
}
