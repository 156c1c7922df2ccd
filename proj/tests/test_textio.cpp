#include <gtest/gtest.h>

#include <functional>
#include <sstream>

#include "palab/cfl.hpp"
#include "palab/crosscheck.hpp"
#include "palab/textio.hpp"

#include "helpers.hpp"

using namespace palab;

namespace {

ErrorKind kind_of(const std::function<void()> &f) {
  try {
    f();
  } catch (const Error &e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error";
  return ErrorKind::InvalidParams;
}

void expect_parse_error_on_line(const std::function<void()> &f, int line) {
  try {
    f();
    ADD_FAILURE() << "no error";
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::Parse);
    EXPECT_EQ(std::string(e.what()).rfind("line " + std::to_string(line) + ":", 0), 0u) << e.what();
  }
}

} // namespace

TEST(ParseProgram, IntroProgram) {
  const Program p = parse_program("a = &b\nb = &d\nc = *a");
  EXPECT_EQ(p.names(), (std::vector<std::string>{"a", "b", "d", "c"}));
  ASSERT_EQ(p.statements().size(), 3u);
  EXPECT_EQ(p.statements()[2].kind, StatementKind::AssignStar);
  EXPECT_EQ(serialize_program(p), "a = &b\nb = &d\nc = *a\n");
}

TEST(ParseProgram, EmptyCommentsAndSemicolons) {
  EXPECT_EQ(parse_program("").statements().size(), 0u);
  const Program p = parse_program("# header\n\n  *p=q ;  r = p; # trailing\nx=&y;\n");
  EXPECT_EQ(serialize_program(p), "*p = q\nr = p\nx = &y\n");
}

TEST(ParseProgram, Malformed) {
  expect_parse_error_on_line([] { parse_program("*a = &b"); }, 1);
  expect_parse_error_on_line([] { parse_program("a = b\n**a = b"); }, 2);
  expect_parse_error_on_line([] { parse_program("a = b\n\n*a = *b"); }, 3);
  expect_parse_error_on_line([] { parse_program("a == b"); }, 1);
  expect_parse_error_on_line([] { parse_program("a = &&b"); }, 1);
  expect_parse_error_on_line([] { parse_program("a b"); }, 1);
  expect_parse_error_on_line([] { parse_program("a = "); }, 1);
}

TEST(ParseProgram, RoundTripRandom) {
  for (std::uint64_t s = 0; s < 100; ++s) {
    Rng rng(s);
    const Program p = rand_program(12, 25, rng);
    const std::string text = serialize_program(p);
    const Program q = parse_program(text);
    EXPECT_EQ(q.names(), p.names());
    EXPECT_EQ(q.statements(), p.statements());
    EXPECT_EQ(serialize_program(q), text);
  }
}

TEST(ParseGraph, RunningGraph) {
  const LabeledDigraph g = parse_graph(read_data("running.lg"));
  EXPECT_EQ(g.node_count(), 12u);
  EXPECT_EQ(g.edge_count(), 3u);
  EXPECT_TRUE(g.has_edge(0, "[1", 5));
  EXPECT_TRUE(g.has_edge(5, "]1", 10));
  EXPECT_TRUE(g.has_edge(5, "]1", 11));
  EXPECT_EQ(serialize_graph(g), read_data("running.lg"));
}

TEST(ParseGraph, NumericAndNamedTokens) {
  const LabeledDigraph num = parse_graph("nodes 12\n0 [1 5\n5 ]1 10\n5 ]1 11\n5 ]1 11\n");
  EXPECT_EQ(num.edge_count(), 3u);
  EXPECT_FALSE(num.has_names());
  EXPECT_EQ(serialize_graph(num), "nodes 12\nalphabet [1 ]1\n0 [1 5\n5 ]1 10\n5 ]1 11\n");

  const LabeledDigraph named = parse_graph(read_data("triangle.lg"));
  EXPECT_EQ(named.node_count(), 4u);
  EXPECT_EQ(named.names(), (std::vector<std::string>{"w", "x", "y", "z"}));
  EXPECT_EQ(named.edge_count(), 4u);

  const LabeledDigraph filled = parse_graph("nodes 3\na l b\n");
  EXPECT_EQ(filled.names(), (std::vector<std::string>{"a", "b", "n2"}));
}

TEST(ParseGraph, Empty) {
  const LabeledDigraph g = parse_graph("nodes 0\n");
  EXPECT_EQ(g.node_count(), 0u);
  EXPECT_EQ(g.edge_count(), 0u);
  EXPECT_EQ(serialize_graph(g), "nodes 0\n");
}

TEST(ParseGraph, Errors) {
  expect_parse_error_on_line([] { parse_graph("nodes 2\n0 [1 2\n"); }, 2);
  expect_parse_error_on_line([] { parse_graph("nodes 2\n0 [1 a\n"); }, 2);
  expect_parse_error_on_line([] { parse_graph("nodes 1\na x b\n"); }, 2);
  expect_parse_error_on_line([] { parse_graph("0 [1 1\n"); }, 1);
  expect_parse_error_on_line([] { parse_graph("nodes 2\n0 [1\n"); }, 2);
  expect_parse_error_on_line([] { parse_graph("nodes 2\nnames a b\na x c\n"); }, 3);
  EXPECT_EQ(kind_of([] { parse_graph(""); }), ErrorKind::Parse);
  EXPECT_EQ(kind_of([] { parse_graph("nodes 2\nnames a\n"); }), ErrorKind::Parse);
}

TEST(ParseGraph, RoundTripRandom) {
  for (std::uint64_t s = 0; s < 60; ++s) {
    Rng rng(s);
    const LabeledDigraph g = small_dyck_graph(rng, 9, 15);
    const std::string text = serialize_graph(g);
    EXPECT_EQ(parse_graph(text), g);
    EXPECT_EQ(serialize_graph(parse_graph(text)), text);
  }
}

TEST(ParseMatrix, Examples) {
  const BooleanMatrix a = parse_matrix("4\n0100\n0000\n0000\n0000");
  EXPECT_EQ(a, running_matrices().first);
  EXPECT_EQ(parse_matrix("1\n0"), BooleanMatrix(1));
  expect_parse_error_on_line([] { parse_matrix("2\n01\n0"); }, 3);
  expect_parse_error_on_line([] { parse_matrix("2\n01\n0x"); }, 3);
  EXPECT_EQ(kind_of([] { parse_matrix("2\n01\n"); }), ErrorKind::Parse);
  EXPECT_EQ(kind_of([] { parse_matrix("0\n"); }), ErrorKind::Parse);
  EXPECT_EQ(serialize_matrix(a), read_data("running_A.bm"));
}

TEST(ParseMatrix, RoundTripRandom) {
  for (std::uint64_t s = 0; s < 40; ++s) {
    Rng rng(s);
    const BooleanMatrix m = rand_matrix(1 + rng.below(9), 0.4, rng);
    EXPECT_EQ(parse_matrix(serialize_matrix(m)), m);
  }
}

TEST(ParseGrammar, BuiltinsRoundTrip) {
  for (const Grammar &g : {d1_grammar(), pt_grammar(), pt_prime_grammar(), dyck_grammar(3)}) {
    const std::string text = serialize_grammar(g);
    EXPECT_EQ(parse_grammar(text), g) << text;
    EXPECT_EQ(serialize_grammar(parse_grammar(text)), text);
  }
}

TEST(ParseGrammar, AlternativesAndEps) {
  const Grammar g = parse_grammar("# d1\nstart D1\nterminals [1 ]1\nD1 -> S\nS -> [1 S ]1 | S S | eps\n");
  EXPECT_EQ(g, d1_grammar());
  EXPECT_EQ(serialize_grammar(d1_grammar()),
            "start D1\nterminals [1 ]1\nD1 -> S\nS -> [1 S ]1\nS -> S S\nS -> eps\n");
}

TEST(ParseGrammar, Errors) {
  expect_parse_error_on_line([] { parse_grammar("start S\nterminals a\nS -> a b\n"); }, 3);
  EXPECT_EQ(kind_of([] { parse_grammar("terminals a\nS -> a\n"); }), ErrorKind::Parse);
  expect_parse_error_on_line([] { parse_grammar("start S\nS -> eps a\n"); }, 2);
  expect_parse_error_on_line([] { parse_grammar("start S\nS a\n"); }, 2);
  EXPECT_EQ(kind_of([] { parse_grammar("start S\nterminals S\nS -> S\n"); }), ErrorKind::Parse);
}

TEST(SerializeSolution, IntroProgram) {
  const PointsToSolution s = solve(parse_program(read_data("intro.pa")));
  EXPECT_EQ(serialize_solution(s), "pt(a) = { b }\npt(b) = { d }\npt(c) = { d }\npt(d) = { }\n");
  EXPECT_EQ(serialize_solution(s), read_data("intro.sol"));
  EXPECT_EQ(serialize_solution(solve(Program{})), "");
}

TEST(SerializeSolution, RunningExample) {
  const std::string text = serialize_solution(solve(parse_program(read_data("running_alt.pa"))));
  std::istringstream in(text);
  std::string line;
  bool found = false;
  while (std::getline(in, line))
    if (line.rfind("pt(u0) = {", 0) == 0)
      found = line.find("w2', w3'") != std::string::npos;
  EXPECT_TRUE(found) << text;
}

TEST(SerializeSolution, SortedMembers) {
  const PointsToSolution s = solve(parse_program("z = &b\nz = &a\nz = &c\nb = &z"));
  EXPECT_EQ(serialize_solution(s), "pt(a) = { }\npt(b) = { z }\npt(c) = { }\npt(z) = { a, b, c }\n");
}

TEST(MapFormat, RoundTrip) {
  ReductionMap m;
  m.add("x0", "query_var", "x0");
  m.add("x0 [1 y1", "temp", "t13");
  m.add_meta("s", "s");
  const std::string text = serialize_map(m);
  EXPECT_EQ(text, "x0\tquery_var\tx0\nx0 [1 y1\ttemp\tt13\n*\ts\ts\n");
  EXPECT_EQ(parse_map(text), m);
  expect_parse_error_on_line([] { parse_map("a\tb\n"); }, 1);
}
