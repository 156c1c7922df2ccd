// palab: points-to analysis, CFL-reachability and reduction driver.
// Exit status: 0 success, 1 negative answer or mismatch, 2 usage or input error.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "palab/andersen.hpp"
#include "palab/cfl.hpp"
#include "palab/crosscheck.hpp"
#include "palab/peg.hpp"
#include "palab/reductions.hpp"
#include "palab/textio.hpp"

namespace {

using namespace palab;

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error(ErrorKind::Parse, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string &path, const std::string &text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw Error(ErrorKind::Parse, "cannot write '" + path + "'");
  out << text;
}

Grammar resolve_grammar(const std::string &source) {
  if (auto g = builtin_grammar(source))
    return *g;
  return parse_grammar(read_file(source));
}

NodeId resolve_node(const LabeledDigraph &g, const std::string &token) {
  if (auto id = g.find_node(token))
    return *id;
  throw Error(ErrorKind::InvalidNode, "unknown node '" + token + "'");
}

SimpleGraph simple_graph_of(const LabeledDigraph &g) {
  SimpleGraph s;
  s.node_count = g.node_count();
  if (g.has_names())
    s.names = g.names();
  for (const auto &e : g.edges())
    s.edges.emplace_back(e.src, e.dst);
  return s;
}

LabeledDigraph labeled_of(const SimpleGraph &s) {
  LabeledDigraph g(s.node_count);
  g.declare_label("e");
  for (auto [u, v] : s.edges)
    g.add_edge(u, "e", v);
  return g;
}

std::uint64_t default_seed() {
  if (const char *env = std::getenv("PA_LAB_SEED"))
    return std::stoull(env);
  return 0;
}

struct Options {
  // analyze
  std::string program_path;
  std::vector<std::string> query;
  // reach
  std::string graph_path;
  std::string grammar = "d1";
  std::string source, target;
  bool include_self = false;
  // reduce
  std::string variant;
  std::vector<std::string> inputs;
  std::string output;
  std::string map_path;
  std::string profile = "case1";
  bool prune_isolated = false;
  bool directed = false;
  // crosscheck
  std::string suite;
  std::size_t trials = 100;
  std::size_t max_n = 0;
  std::uint64_t seed = 0;
  bool timing = false;
  bool kv = false;
  // gen
  std::string kind;
  std::size_t n = 4;
  std::size_t m = 0;
  double density = 0.3;
  // bench
  std::vector<std::size_t> sizes{50, 100, 200};
  std::string bench_suite = "reach-d1";
};

int cmd_analyze(const Options &o) {
  const Program p = parse_program(read_file(o.program_path));
  const PointsToSolution sol = solve(p);
  if (o.query.empty()) {
    std::cout << serialize_solution(sol);
    return 0;
  }
  const bool yes = palab::query(sol, o.query[0], o.query[1]);
  std::cout << (yes ? "yes" : "no") << "\n";
  return yes ? 0 : 1;
}

int cmd_reach(const Options &o) {
  const LabeledDigraph g = parse_graph(read_file(o.graph_path));
  const Grammar grammar = resolve_grammar(o.grammar);
  if (!o.source.empty() || !o.target.empty()) {
    if (o.source.empty() || o.target.empty())
      throw Error(ErrorKind::InvalidParams, "--source and --target go together");
    const bool yes = st_query(g, grammar, resolve_node(g, o.source), resolve_node(g, o.target));
    std::cout << (yes ? "reachable" : "unreachable") << "\n";
    return yes ? 0 : 1;
  }
  const SummarySet sums = all_pairs(g, grammar);
  for (auto [u, v] : sums.pairs(grammar.start))
    if (u != v || o.include_self)
      std::cout << g.display_name(u) << " -> " << g.display_name(v) << "\n";
  return 0;
}

int cmd_reduce(const Options &o) {
  auto need = [&](std::size_t k) {
    if (o.inputs.size() != k)
      throw Error(ErrorKind::InvalidParams,
                  o.variant + " takes " + std::to_string(k) + " input file(s)");
  };
  std::string text;
  ReductionMap map;
  if (o.variant == "bmm-to-d1") {
    need(2);
    const D1Instance inst =
        bmm_to_d1(parse_matrix(read_file(o.inputs[0])), parse_matrix(read_file(o.inputs[1])));
    text = serialize_graph(inst.graph);
    map = inst.map;
  } else if (o.variant == "d1-to-pa") {
    need(1);
    const ProgramReduction red = d1_to_program(parse_graph(read_file(o.inputs[0])),
                                               parse_profile(o.profile), o.prune_isolated);
    text = serialize_program(red.program);
    map = red.map;
  } else if (o.variant == "triangle-to-d1") {
    need(1);
    const StInstance inst =
        triangle_to_st_d1(simple_graph_of(parse_graph(read_file(o.inputs[0]))), o.directed);
    text = serialize_graph(inst.graph);
    map = inst.map;
  } else {
    throw Error(ErrorKind::InvalidParams, "unknown reduction '" + o.variant + "'");
  }
  write_output(o.output, text);
  if (!o.map_path.empty())
    write_output(o.map_path, serialize_map(map));
  return 0;
}

int cmd_crosscheck(const Options &o) {
  CheckReport report;
  auto max_n = [&](std::size_t fallback) { return o.max_n ? o.max_n : fallback; };
  if (o.suite == "bmm")
    report = check_bmm_chain(max_n(8), o.trials, o.seed, parse_profile(o.profile));
  else if (o.suite == "peg")
    report = check_peg_equivalence(o.trials, o.seed, max_n(12));
  else if (o.suite == "pt-prime")
    report = check_pt_prime(o.trials, o.seed, max_n(10));
  else if (o.suite == "triangle")
    report = check_triangle_chain(max_n(10), o.trials, o.seed, o.directed);
  else
    throw Error(ErrorKind::InvalidParams, "unknown suite '" + o.suite + "'");
  std::cout << (o.kv ? report.key_values(o.timing) : report.summary(o.timing));
  return report.passed() ? 0 : 1;
}

int cmd_gen(const Options &o) {
  RandParams params;
  params.n = o.n;
  params.m = o.m;
  params.density = o.density;
  params.directed = o.directed;
  std::string text;
  if (o.kind == "matrix") {
    text = serialize_matrix(std::get<BooleanMatrix>(rand_instance(InstanceKind::Matrix, params, o.seed)));
  } else if (o.kind == "program") {
    if (params.m == 0)
      params.m = 25;
    text = serialize_program(std::get<Program>(rand_instance(InstanceKind::Program, params, o.seed)));
  } else if (o.kind == "dyck-graph") {
    text = serialize_graph(std::get<LabeledDigraph>(rand_instance(InstanceKind::DyckGraph, params, o.seed)));
  } else if (o.kind == "simple-graph") {
    text = serialize_graph(
        labeled_of(std::get<SimpleGraph>(rand_instance(InstanceKind::SimpleGraph, params, o.seed))));
  } else {
    throw Error(ErrorKind::InvalidParams, "unknown instance kind '" + o.kind + "'");
  }
  write_output(o.output, text);
  return 0;
}

int cmd_bench(const Options &o) {
  using clock = std::chrono::steady_clock;
  std::cout << "suite\tsize\tnodes\tedges\tms\n";
  for (std::size_t size : o.sizes) {
    if (size == 0)
      throw Error(ErrorKind::InvalidParams, "bench sizes must be positive");
    Rng rng(trial_seed(o.seed, size));
    std::size_t nodes = 0, edges = 0;
    clock::duration took{};
    if (o.bench_suite == "reach-d1") {
      const LabeledDigraph g = rand_dyck_graph(size, 2 * size, rng);
      nodes = g.node_count();
      edges = g.edge_count();
      const auto t0 = clock::now();
      const SummarySet sums = all_pairs(g, d1_grammar());
      took = clock::now() - t0;
    } else if (o.bench_suite == "andersen") {
      Program p;
      for (std::size_t i = 0; i < 2 * size; ++i) {
        const auto kind = i == 0 ? StatementKind::AddressOf : kAllStatementKinds[rng.below(4)];
        p.add(kind, "v" + std::to_string(rng.below(size)), "v" + std::to_string(rng.below(size)));
      }
      nodes = p.variable_count();
      edges = p.statements().size();
      const auto t0 = clock::now();
      const PointsToSolution sol = solve(p);
      took = clock::now() - t0;
    } else {
      throw Error(ErrorKind::InvalidParams, "unknown bench suite '" + o.bench_suite + "'");
    }
    std::cout << o.bench_suite << "\t" << size << "\t" << nodes << "\t" << edges << "\t"
              << std::chrono::duration<double, std::milli>(took).count() << "\n";
  }
  return 0;
}

} // namespace

int main(int argc, char **argv) {
  Options o;
  try {
    o.seed = default_seed();
  } catch (const std::exception &) {
    std::cerr << "error: PA_LAB_SEED is not an unsigned integer\n";
    return 2;
  }
  CLI::App app{"Points-to analysis and CFL-reachability laboratory"};
  app.require_subcommand(1);

  auto *analyze = app.add_subcommand("analyze", "Solve a .pa program");
  analyze->add_option("program", o.program_path, "Program file")->required();
  analyze->add_option("--query", o.query, "Ask whether loc(q) is in pt(p)")->expected(2);

  auto *reach = app.add_subcommand("reach", "CFL-reachability on a .lg graph");
  reach->add_option("graph", o.graph_path, "Graph file")->required();
  reach->add_option("--grammar", o.grammar, "d1, dyck:k, pt, pt-prime or a .cfg file");
  reach->add_option("--source", o.source, "Source node");
  reach->add_option("--target", o.target, "Target node");
  reach->add_flag("--include-self", o.include_self, "Also print reflexive pairs");

  auto *reduce = app.add_subcommand("reduce", "Run a reduction");
  reduce->add_option("variant", o.variant, "bmm-to-d1, d1-to-pa or triangle-to-d1")->required();
  reduce->add_option("inputs", o.inputs, "Input files")->required();
  reduce->add_option("-o,--output", o.output, "Output file (default stdout)");
  reduce->add_option("--map", o.map_path, "Provenance map output");
  reduce->add_option("--profile", o.profile, "Statement profile case1..case6");
  reduce->add_flag("--prune-isolated", o.prune_isolated, "Skip gadgets of isolated nodes");
  reduce->add_flag("--directed", o.directed, "Treat the triangle input as directed");

  auto *cross = app.add_subcommand("crosscheck", "Randomized equivalence suites");
  cross->add_option("--suite", o.suite, "bmm, peg, pt-prime or triangle")->required();
  cross->add_option("--trials", o.trials, "Trial count");
  cross->add_option("--max-n", o.max_n, "Instance size cap");
  cross->add_option("--seed", o.seed, "Base seed (default $PA_LAB_SEED or 0)");
  cross->add_option("--profile", o.profile, "Statement profile for the bmm suite");
  cross->add_flag("--directed", o.directed, "Directed triangle mode");
  cross->add_flag("--timing", o.timing, "Report elapsed time");
  cross->add_flag("--kv", o.kv, "Key=value output");

  auto *gen = app.add_subcommand("gen", "Write a seeded random instance");
  gen->add_option("kind", o.kind, "matrix, program, dyck-graph or simple-graph")->required();
  gen->add_option("-n", o.n, "Size, node count or variable cap");
  gen->add_option("-m", o.m, "Edge count or statement cap");
  gen->add_option("--density", o.density, "Edge or entry probability");
  gen->add_option("--seed", o.seed, "Seed (default $PA_LAB_SEED or 0)");
  gen->add_flag("--directed", o.directed, "Directed simple graph");
  gen->add_option("-o,--output", o.output, "Output file (default stdout)");

  auto *bench = app.add_subcommand("bench", "Time solvers across sizes");
  bench->add_option("--sizes", o.sizes, "Comma-separated sizes")->delimiter(',');
  bench->add_option("--suite", o.bench_suite, "reach-d1 or andersen");
  bench->add_option("--seed", o.seed, "Seed (default $PA_LAB_SEED or 0)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*analyze)
      return cmd_analyze(o);
    if (*reach)
      return cmd_reach(o);
    if (*reduce)
      return cmd_reduce(o);
    if (*cross)
      return cmd_crosscheck(o);
    if (*gen)
      return cmd_gen(o);
    if (*bench)
      return cmd_bench(o);
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
