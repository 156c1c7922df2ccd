#include <gtest/gtest.h>

#include "palab/andersen.hpp"
#include "palab/crosscheck.hpp"
#include "palab/reductions.hpp"
#include "palab/textio.hpp"

#include "helpers.hpp"

using namespace palab;

namespace {

Program intro() { return parse_program("a = &b\nb = &d\nc = *a"); }

std::set<std::string> pt_of(const PointsToSolution &s, const std::string &v) {
  auto m = s.members(*s.find(v));
  return {m.begin(), m.end()};
}

// Solutions over different interning orders compared by name.
std::map<std::string, std::set<std::string>> by_name(const PointsToSolution &s) {
  std::map<std::string, std::set<std::string>> out;
  for (std::uint32_t i = 0; i < s.variable_count(); ++i) {
    auto m = s.members(VarId{i});
    out[s.names()[i]] = {m.begin(), m.end()};
  }
  return out;
}

Program with_statements(const Program &source, std::vector<Statement> stmts) {
  Program p;
  for (const auto &n : source.names())
    p.intern(n);
  for (const auto &s : stmts)
    p.add(s.kind, s.lhs, s.rhs);
  return p;
}

} // namespace

TEST(ExtractConstraints, IntroProgramBuckets) {
  const Program p = intro();
  const ConstraintSet cs = extract_constraints(p);
  const VarId a = p.require("a"), b = p.require("b"), c = p.require("c"), d = p.require("d");
  EXPECT_EQ(cs.address_of, (std::set<std::pair<VarId, VarId>>{{a, b}, {b, d}}));
  EXPECT_EQ(cs.assign_star, (std::set<std::pair<VarId, VarId>>{{c, a}}));
  EXPECT_TRUE(cs.assign.empty());
  EXPECT_TRUE(cs.star_assign.empty());
}

TEST(ExtractConstraints, EmptyAndDuplicates) {
  EXPECT_EQ(extract_constraints(Program{}), ConstraintSet{});
  const Program p = parse_program("a = b\na = b");
  EXPECT_EQ(extract_constraints(p).assign.size(), 1u);
}

TEST(Solve, IntroProgram) {
  const PointsToSolution s = solve(intro());
  EXPECT_EQ(pt_of(s, "a"), (std::set<std::string>{"b"}));
  EXPECT_EQ(pt_of(s, "b"), (std::set<std::string>{"d"}));
  EXPECT_EQ(pt_of(s, "c"), (std::set<std::string>{"d"}));
  EXPECT_TRUE(pt_of(s, "d").empty());
}

TEST(Solve, NoAddressOfMeansEmptySets) {
  const PointsToSolution s = solve(parse_program("a = b\nb = *c\n*c = a\nd = a"));
  for (std::uint32_t i = 0; i < s.variable_count(); ++i)
    EXPECT_TRUE(s.points_to(VarId{i}).none());
}

TEST(Solve, RunningExampleProgram) {
  const PointsToSolution s = solve(parse_program(read_data("running_alt.pa")));
  EXPECT_TRUE(query(s, "u0", "w2'"));
  EXPECT_TRUE(query(s, "u0", "w3'"));
  EXPECT_TRUE(query(s, "w3", "w3'"));
  // pt(w3) <= pt(u0) but w3 and w2 are unrelated
  const auto u0 = pt_of(s, "u0"), w3 = pt_of(s, "w3"), w2 = pt_of(s, "w2");
  EXPECT_TRUE(std::includes(u0.begin(), u0.end(), w3.begin(), w3.end()));
  EXPECT_FALSE(query(s, "w3", "w2'"));
  EXPECT_FALSE(query(s, "w2", "w3'"));
  EXPECT_FALSE(query(s, "w3", "w2"));
  EXPECT_FALSE(query(s, "w2", "w3"));
  EXPECT_FALSE(std::includes(w3.begin(), w3.end(), w2.begin(), w2.end()));
  EXPECT_FALSE(std::includes(w2.begin(), w2.end(), w3.begin(), w3.end()));
}

TEST(Query, IntroProgram) {
  const PointsToSolution s = solve(intro());
  EXPECT_TRUE(query(s, "c", "d"));
  EXPECT_FALSE(query(s, "d", "d"));
  EXPECT_FALSE(query(s, "a", "d"));
  try {
    query(s, "a", "q");
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnknownVariable);
  }
}

TEST(Solve, StarAssignAndAssign) {
  const PointsToSolution s = solve(parse_program("p = &x\nq = &y\n*p = q\nr = x\nr2 = *p"));
  EXPECT_EQ(pt_of(s, "x"), (std::set<std::string>{"y"}));
  EXPECT_EQ(pt_of(s, "r"), (std::set<std::string>{"y"}));
  EXPECT_EQ(pt_of(s, "r2"), (std::set<std::string>{"y"}));
  EXPECT_TRUE(pt_of(s, "y").empty());
}

TEST(Solve, SelfReferenceThroughCycle) {
  const PointsToSolution s = solve(parse_program("p = &p\nq = *p\n*q = q"));
  EXPECT_EQ(pt_of(s, "p"), (std::set<std::string>{"p"}));
  EXPECT_EQ(pt_of(s, "q"), (std::set<std::string>{"p"}));
}

TEST(SolverProperties, FixpointIdempotence) {
  for (std::uint64_t t = 0; t < 120; ++t) {
    Rng rng(trial_seed(101, t));
    const Program p = rand_program(15, 30, rng);
    AndersenSolver solver(p);
    solver.run();
    const PointsToSolution before = solver.solution();
    const std::size_t edges = solver.copy_edge_count();
    EXPECT_FALSE(solver.settle_pass()) << serialize_program(p);
    EXPECT_EQ(solver.copy_edge_count(), edges);
    EXPECT_EQ(solver.solution(), before);
  }
}

TEST(SolverProperties, StatementOrderIndependence) {
  for (std::uint64_t t = 0; t < 120; ++t) {
    Rng rng(trial_seed(202, t));
    const Program p = rand_program(15, 30, rng);
    auto stmts = p.statements();
    for (int k = 0; k < 3; ++k) {
      rng.shuffle(stmts);
      EXPECT_EQ(solve(with_statements(p, stmts)), solve(p)) << serialize_program(p);
    }
  }
}

TEST(SolverProperties, FifoLifoAndWholeSetAgree) {
  for (std::uint64_t t = 0; t < 120; ++t) {
    Rng rng(trial_seed(303, t));
    const Program p = rand_program(15, 30, rng);
    const PointsToSolution fifo = solve(p);
    EXPECT_EQ(solve(p, {WorklistPolicy::Lifo, Propagation::Difference}), fifo);
    EXPECT_EQ(solve(p, {WorklistPolicy::Fifo, Propagation::WholeSet}), fifo);
    EXPECT_EQ(solve(p, {WorklistPolicy::Lifo, Propagation::WholeSet}), fifo);
  }
}

TEST(SolverProperties, MonotoneUnderStatementAddition) {
  for (std::uint64_t t = 0; t < 120; ++t) {
    Rng rng(trial_seed(404, t));
    const Program small = rand_program(12, 20, rng);
    Program big = small;
    const std::size_t extra = 1 + rng.below(6);
    for (std::size_t i = 0; i < extra; ++i)
      big.add(kAllStatementKinds[rng.below(4)], "v" + std::to_string(rng.below(14)),
              "v" + std::to_string(rng.below(14)));
    const auto a = by_name(solve(small)), b = by_name(solve(big));
    for (const auto &[v, set] : a)
      EXPECT_TRUE(std::includes(b.at(v).begin(), b.at(v).end(), set.begin(), set.end()))
          << v << " in " << serialize_program(big);
  }
}

TEST(SolverProperties, DuplicatesDoNotMatter) {
  for (std::uint64_t t = 0; t < 100; ++t) {
    Rng rng(trial_seed(505, t));
    const Program p = rand_program(12, 20, rng);
    auto stmts = p.statements();
    const auto dup = stmts;
    stmts.insert(stmts.end(), dup.begin(), dup.end());
    EXPECT_EQ(solve(with_statements(p, stmts)), solve(p));
  }
}

TEST(SolverProperties, AgreesWithPtReachabilityOnLargerPrograms) {
  const CheckReport r = check_peg_equivalence(100, 606, 15, 30);
  EXPECT_TRUE(r.passed()) << r.summary();
}
