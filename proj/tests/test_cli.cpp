#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <string>
#include <sys/wait.h>

#include "helpers.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int status;
  std::string out;
};

Result run(const std::string &args, const std::string &env = "") {
  const std::string cmd = env + " " + std::string(PALAB_CLI) + " " + args + " 2>/dev/null";
  FILE *pipe = popen(cmd.c_str(), "r");
  Result r{-1, {}};
  if (!pipe)
    return r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0)
    r.out.append(buf.data(), n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string d(const std::string &name) { return data_path(name); }

class Cli : public ::testing::Test {
protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("palab_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string tmp(const std::string &name) const { return (dir_ / name).string(); }
  static std::string slurp(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  fs::path dir_;
};

} // namespace

TEST_F(Cli, AnalyzeIntroProgram) {
  const Result r = run("analyze " + d("intro.pa"));
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, read_data("intro.sol"));
}

TEST_F(Cli, AnalyzeQuery) {
  Result r = run("analyze " + d("intro.pa") + " --query c d");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "yes\n");
  r = run("analyze " + d("intro.pa") + " --query a d");
  EXPECT_EQ(r.status, 1);
  EXPECT_EQ(r.out, "no\n");
  EXPECT_EQ(run("analyze " + d("intro.pa") + " --query a nope").status, 2);
}

TEST_F(Cli, AnalyzeEmptyAndBad) {
  const Result r = run("analyze " + d("empty.pa"));
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "");
  std::ofstream(tmp("bad.pa")) << "a = b\n**a = b\n";
  EXPECT_EQ(run("analyze " + tmp("bad.pa")).status, 2);
  EXPECT_EQ(run("analyze " + tmp("missing.pa")).status, 2);
}

TEST_F(Cli, ReachAllPairs) {
  Result r = run("reach " + d("running.lg") + " --grammar d1");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "x0 -> z2\nx0 -> z3\n");
  r = run("reach " + d("empty.lg") + " --grammar d1");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "");
  r = run("reach " + d("running.lg") + " --grammar dyck:1 --include-self");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("y3 -> y3\n"), std::string::npos);
  EXPECT_NE(r.out.find("x0 -> z3\n"), std::string::npos);
}

TEST_F(Cli, ReachWithGrammarFile) {
  std::ofstream(tmp("d1.cfg")) << "start D1\nterminals [1 ]1\nD1 -> S\nS -> [1 S ]1 | S S | eps\n";
  const Result r = run("reach " + d("running.lg") + " --grammar " + tmp("d1.cfg"));
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "x0 -> z2\nx0 -> z3\n");
}

TEST_F(Cli, ReachAlphabetMismatch) {
  EXPECT_EQ(run("reach " + d("running.lg") + " --grammar pt").status, 2);
  EXPECT_EQ(run("reach " + d("running.lg") + " --grammar nosuch.cfg").status, 2);
}

TEST_F(Cli, ReduceAndReachTriangle) {
  ASSERT_EQ(run("reduce triangle-to-d1 " + d("triangle.lg") + " -o " + tmp("g.lg") + " --map " + tmp("g.map")).status, 0);
  const std::string text = slurp(tmp("g.lg"));
  EXPECT_EQ(text.rfind("nodes 42\n", 0), 0u);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 3 + 56);
  EXPECT_NE(slurp(tmp("g.map")).find("*\ts\ts\n"), std::string::npos);
  Result r = run("reach " + tmp("g.lg") + " --grammar d1 --source s --target t");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "reachable\n");

  std::ofstream(tmp("path.lg")) << "nodes 4\n0 e 1\n1 e 2\n2 e 3\n";
  ASSERT_EQ(run("reduce triangle-to-d1 " + tmp("path.lg") + " -o " + tmp("p.lg")).status, 0);
  r = run("reach " + tmp("p.lg") + " --grammar d1 --source s --target t");
  EXPECT_EQ(r.status, 1);
  EXPECT_EQ(r.out, "unreachable\n");

  std::ofstream(tmp("loop.lg")) << "nodes 2\n1 e 1\n";
  EXPECT_EQ(run("reduce triangle-to-d1 " + tmp("loop.lg") + " -o " + tmp("l.lg")).status, 2);
}

TEST_F(Cli, ReduceBmmToD1) {
  ASSERT_EQ(run("reduce bmm-to-d1 " + d("running_A.bm") + " " + d("running_B.bm") + " -o " + tmp("g.lg")).status, 0);
  EXPECT_EQ(slurp(tmp("g.lg")), read_data("running.lg"));
  std::ofstream(tmp("ragged.bm")) << "2\n01\n0\n";
  EXPECT_EQ(run("reduce bmm-to-d1 " + tmp("ragged.bm") + " " + d("running_B.bm")).status, 2);
  EXPECT_EQ(run("reduce bmm-to-d1 " + d("running_A.bm")).status, 2);
}

TEST_F(Cli, ReduceD1ToProgram) {
  ASSERT_EQ(run("reduce d1-to-pa " + d("running.lg") + " --profile case1 --prune-isolated -o " +
                tmp("p.pa") + " --map " + tmp("p.map"))
                .status,
            0);
  EXPECT_EQ(slurp(tmp("p.pa")), read_data("running.pa"));
  EXPECT_NE(slurp(tmp("p.map")).find("x0\taddr_var\tx0'\n"), std::string::npos);
  const Result r = run("analyze " + tmp("p.pa") + " --query x0 \"z3'\"");
  EXPECT_EQ(r.out, "yes\n");
  EXPECT_EQ(run("reduce d1-to-pa " + d("running.lg") + " --profile case9").status, 2);
}

TEST_F(Cli, ReduceIsDeterministic) {
  const std::string args = "reduce d1-to-pa " + d("running.lg") + " --profile case3";
  EXPECT_EQ(run(args).out, run(args).out);
}

TEST_F(Cli, Crosscheck) {
  Result r = run("crosscheck --suite bmm --trials 100 --max-n 8 --seed 42 --profile case1");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "100 trials, 0 mismatches\n");
  r = run("crosscheck --suite triangle --trials 1 --max-n 3 --seed 0");
  EXPECT_EQ(r.status, 0);
  r = run("crosscheck --suite peg --trials 200 --seed 7");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "200 trials, 0 mismatches\n");
  r = run("crosscheck --suite pt-prime --trials 5 --seed 1 --kv");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "suite=pt-prime\ntrials=5\nmismatches=0\npassed=true\n");
  EXPECT_EQ(run("crosscheck --suite nope").status, 2);
  EXPECT_EQ(run("crosscheck --suite bmm --trials x").status, 2);
}

TEST_F(Cli, GenDeterminism) {
  Result r = run("gen matrix -n 4 --density 0 --seed 1");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "4\n0000\n0000\n0000\n0000\n");
  ASSERT_EQ(run("gen dyck-graph -n 6 -m 8 --seed 2 -o " + tmp("a.lg")).status, 0);
  ASSERT_EQ(run("gen dyck-graph -n 6 -m 8 --seed 2 -o " + tmp("b.lg")).status, 0);
  EXPECT_EQ(slurp(tmp("a.lg")), slurp(tmp("b.lg")));
  const std::string gen = slurp(tmp("a.lg"));
  EXPECT_EQ(std::count(gen.begin(), gen.end(), '\n'), 2 + 8);
  EXPECT_EQ(run("gen program --seed 3").out, run("gen program", "PA_LAB_SEED=3").out);
  EXPECT_NE(run("gen simple-graph -n 5 --density 1").out.find("0 e 4\n"), std::string::npos);
  EXPECT_EQ(run("gen nothing").status, 2);
}

TEST_F(Cli, Bench) {
  const Result r = run("bench --sizes 50,100,200 --suite reach-d1");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 4);
  EXPECT_EQ(run("bench --sizes 10 --suite andersen").status, 0);
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run("").status, 2);
  EXPECT_EQ(run("frobnicate").status, 2);
  EXPECT_EQ(run("analyze").status, 2);
  EXPECT_EQ(run("--help").status, 0);
  EXPECT_EQ(run("analyze " + d("intro.pa"), "PA_LAB_SEED=notanumber").status, 2);
}
