#pragma once

// Brute-force oracles, seeded instance generators and the randomized
// equivalence suites that compare them against the solvers and reductions.

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

#include "palab/andersen.hpp"
#include "palab/cfl.hpp"
#include "palab/core.hpp"
#include "palab/peg.hpp"
#include "palab/reductions.hpp"

namespace palab {

// Oracles --------------------------------------------------------------------

inline BooleanMatrix bmm_oracle(const BooleanMatrix &a, const BooleanMatrix &b) {
  if (a.size() != b.size())
    throw Error(ErrorKind::DimensionMismatch, "matrix dimensions differ");
  const std::size_t n = a.size();
  BooleanMatrix c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      bool v = false;
      for (std::size_t k = 0; k < n && !v; ++k)
        v = a.get(i, k) && b.get(k, j);
      c.set(i, j, v);
    }
  return c;
}

inline bool triangle_oracle(const SimpleGraph &g, bool directed) {
  const std::size_t n = g.node_count;
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (auto [u, v] : g.edges) {
    if (u >= n || v >= n)
      throw Error(ErrorKind::InvalidNode, "edge endpoint out of range");
    if (u == v)
      throw Error(ErrorKind::SelfLoop, "self-loop on node " + g.name(u));
    adj[u][v] = true;
    if (!directed)
      adj[v][u] = true;
  }
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      for (std::size_t w = 0; w < n; ++w)
        if (u != v && v != w && w != u && adj[u][v] && adj[v][w] && adj[w][u])
          return true;
  return false;
}

/// Earley recognizer over the original (unnormalized) grammar. Returns every
/// symbol X such that `word` is in L(X); a terminal derives only itself.
inline std::set<std::string> derivable_symbols(const Grammar &g, const std::vector<std::string> &word) {
  std::set<std::string> nullable;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto &p : g.productions)
      if (!nullable.count(p.lhs) &&
          std::all_of(p.rhs.begin(), p.rhs.end(), [&](const auto &s) { return nullable.count(s) > 0; })) {
        nullable.insert(p.lhs);
        changed = true;
      }
  }
  using Item = std::tuple<std::size_t, std::size_t, std::size_t>; // production, dot, origin
  const std::size_t n = word.size();
  std::vector<std::set<Item>> chart(n + 1);
  std::vector<std::vector<Item>> queue(n + 1);
  auto add = [&](std::size_t k, Item it) {
    if (chart[k].insert(it).second)
      queue[k].push_back(it);
  };
  for (std::size_t p = 0; p < g.productions.size(); ++p)
    add(0, {p, 0, 0});
  for (std::size_t k = 0; k <= n; ++k) {
    for (std::size_t qi = 0; qi < queue[k].size(); ++qi) {
      const auto [p, dot, origin] = queue[k][qi];
      const auto &prod = g.productions[p];
      if (dot < prod.rhs.size()) {
        const std::string &next = prod.rhs[dot];
        if (g.is_nonterminal(next)) {
          for (std::size_t q = 0; q < g.productions.size(); ++q)
            if (g.productions[q].lhs == next)
              add(k, {q, 0, k});
          if (nullable.count(next))
            add(k, {p, dot + 1, origin});
        } else if (k < n && word[k] == next) {
          add(k + 1, {p, dot + 1, origin});
        }
      } else {
        for (std::size_t ri = 0; ri < queue[origin].size(); ++ri) {
          const auto [rp, rdot, rorigin] = queue[origin][ri];
          const auto &rprod = g.productions[rp];
          if (rdot < rprod.rhs.size() && rprod.rhs[rdot] == prod.lhs)
            add(k, {rp, rdot + 1, rorigin});
        }
      }
    }
  }
  std::set<std::string> out;
  for (const auto &[p, dot, origin] : chart[n])
    if (origin == 0 && dot == g.productions[p].rhs.size())
      out.insert(g.productions[p].lhs);
  if (n == 1 && g.is_terminal(word[0]))
    out.insert(word[0]);
  return out;
}

/// Summaries from enumerating every path of an acyclic graph and parsing its
/// label string. Throws InvalidParams when the graph has a cycle.
inline std::set<std::tuple<NodeId, std::string, NodeId>>
path_enumeration_summaries(const LabeledDigraph &graph, const Grammar &grammar) {
  const std::size_t n = graph.node_count();
  std::vector<std::vector<std::pair<std::string, NodeId>>> out(n);
  for (const auto &e : graph.edges())
    out[e.src].emplace_back(graph.label(e.label), e.dst);

  std::vector<int> state(n, 0);
  std::function<void(NodeId)> visit = [&](NodeId v) {
    state[v] = 1;
    for (const auto &[l, w] : out[v]) {
      if (state[w] == 1)
        throw Error(ErrorKind::InvalidParams, "path enumeration needs an acyclic graph");
      if (state[w] == 0)
        visit(w);
    }
    state[v] = 2;
  };
  for (NodeId v = 0; v < n; ++v)
    if (state[v] == 0)
      visit(v);

  std::set<std::tuple<NodeId, std::string, NodeId>> result;
  std::vector<std::string> word;
  std::function<void(NodeId, NodeId)> walk = [&](NodeId src, NodeId v) {
    for (const auto &s : derivable_symbols(grammar, word))
      result.emplace(src, s, v);
    for (const auto &[l, w] : out[v]) {
      word.push_back(l);
      walk(src, w);
      word.pop_back();
    }
  };
  for (NodeId v = 0; v < n; ++v)
    walk(v, v);
  return result;
}

// Randomness -----------------------------------------------------------------

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// std::mt19937_64 with portable bounded and Bernoulli draws (the standard
/// distributions are implementation-defined).
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, bound), bound > 0, by rejection.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do
      x = next();
    while (x >= limit);
    return x % bound;
  }

  /// Uniform in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  bool chance(double p) {
    return static_cast<double>(next() >> 11) * 0x1.0p-53 < p;
  }

  template <class T> void shuffle(std::vector<T> &v) {
    for (std::size_t i = v.size(); i > 1; --i)
      std::swap(v[i - 1], v[below(i)]);
  }

private:
  std::mt19937_64 engine_;
};

inline BooleanMatrix rand_matrix(std::size_t n, double density, Rng &rng) {
  BooleanMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m.set(i, j, rng.chance(density));
  return m;
}

/// Between 1 and max_vars variables named v0.., between 1 and
/// max_statements statements of uniformly drawn kind; at least one AddressOf.
inline Program rand_program(std::size_t max_vars, std::size_t max_statements, Rng &rng) {
  const auto vars = static_cast<std::size_t>(rng.between(1, static_cast<std::int64_t>(max_vars)));
  const auto count = static_cast<std::size_t>(rng.between(1, static_cast<std::int64_t>(max_statements)));
  std::vector<std::tuple<StatementKind, std::size_t, std::size_t>> stmts;
  bool has_address = false;
  for (std::size_t i = 0; i < count; ++i) {
    const auto kind = kAllStatementKinds[rng.below(4)];
    has_address |= kind == StatementKind::AddressOf;
    stmts.emplace_back(kind, rng.below(vars), rng.below(vars));
  }
  if (!has_address)
    std::get<0>(stmts[rng.below(count)]) = StatementKind::AddressOf;
  Program p;
  for (const auto &[k, l, r] : stmts)
    p.add(k, "v" + std::to_string(l), "v" + std::to_string(r));
  return p;
}

/// n nodes and exactly m distinct Dyck-1 edges.
inline LabeledDigraph rand_dyck_graph(std::size_t n, std::size_t m, Rng &rng) {
  if (m > 2 * n * n)
    throw Error(ErrorKind::InvalidParams, "too many edges for " + std::to_string(n) + " nodes");
  LabeledDigraph g = empty_d1_graph(n);
  while (g.edge_count() < m) {
    const auto u = static_cast<NodeId>(rng.below(n));
    const auto label = rng.below(2) == 0 ? kOpen1 : kClose1;
    const auto v = static_cast<NodeId>(rng.below(n));
    g.add_edge(u, label, v);
  }
  return g;
}

/// Each potential edge (u < v undirected, u != v directed) present with
/// probability density.
inline SimpleGraph rand_simple_graph(std::size_t n, double density, bool directed, Rng &rng) {
  SimpleGraph g;
  g.node_count = n;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = directed ? 0 : u + 1; v < n; ++v)
      if (u != v && rng.chance(density))
        g.edges.emplace_back(u, v);
  return g;
}

/// Acyclic graph with up to max_edges edges: edges only run forward in a
/// random topological order.
inline LabeledDigraph rand_acyclic_graph(std::size_t max_nodes, std::size_t max_edges,
                                         const std::vector<std::string> &alphabet, Rng &rng) {
  const auto n = static_cast<std::size_t>(rng.between(1, static_cast<std::int64_t>(max_nodes)));
  LabeledDigraph g(n);
  for (const auto &l : alphabet)
    g.declare_label(l);
  std::vector<NodeId> order(n);
  for (NodeId i = 0; i < n; ++i)
    order[i] = i;
  rng.shuffle(order);
  if (n < 2)
    return g;
  const auto m = static_cast<std::size_t>(rng.between(0, static_cast<std::int64_t>(max_edges)));
  for (std::size_t i = 0; i < m; ++i) {
    auto a = rng.below(n), b = rng.below(n - 1);
    if (b >= a)
      ++b;
    if (a > b)
      std::swap(a, b);
    g.add_edge(order[a], static_cast<LabelId>(rng.below(alphabet.size())), order[b]);
  }
  return g;
}

enum class InstanceKind { Matrix, Program, DyckGraph, SimpleGraph };

struct RandParams {
  std::size_t n = 4;          // matrix size, node count, or variable cap
  std::size_t m = 0;          // edge count or statement cap
  double density = 0.3;
  bool directed = false;
};

using Instance = std::variant<BooleanMatrix, Program, LabeledDigraph, SimpleGraph>;

inline Instance rand_instance(InstanceKind kind, const RandParams &params, std::uint64_t seed) {
  if (params.density < 0.0 || params.density > 1.0)
    throw Error(ErrorKind::InvalidParams, "density must lie in [0, 1]");
  Rng rng(seed);
  switch (kind) {
  case InstanceKind::Matrix:
    if (params.n == 0)
      throw Error(ErrorKind::InvalidParams, "matrix size must be positive");
    return rand_matrix(params.n, params.density, rng);
  case InstanceKind::Program:
    if (params.n == 0 || params.m == 0)
      throw Error(ErrorKind::InvalidParams, "program needs positive variable and statement caps");
    return rand_program(params.n, params.m, rng);
  case InstanceKind::DyckGraph:
    return rand_dyck_graph(params.n, params.m, rng);
  case InstanceKind::SimpleGraph:
    return rand_simple_graph(params.n, params.density, params.directed, rng);
  }
  throw Error(ErrorKind::InvalidParams, "unknown instance kind");
}

// Reports --------------------------------------------------------------------

struct Mismatch {
  std::size_t trial;
  std::uint64_t seed;
  std::string instance;
  std::string expected;
  std::string got;

  friend bool operator==(const Mismatch &, const Mismatch &) = default;
};

struct CheckReport {
  std::string suite;
  std::size_t trials = 0;
  std::vector<Mismatch> mismatches; // ascending trial
  std::chrono::nanoseconds elapsed{0};

  bool passed() const noexcept { return mismatches.empty(); }

  /// "<N> trials, <K> mismatches" and one line per mismatch; elapsed time
  /// only when asked for, so the default text is reproducible.
  std::string summary(bool timing = false) const {
    std::ostringstream out;
    out << trials << " trials, " << mismatches.size() << " mismatches";
    if (timing)
      out << " (" << std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count() << " ms)";
    out << "\n";
    for (const auto &m : mismatches)
      out << "mismatch trial=" << m.trial << " seed=" << m.seed << " instance=" << m.instance
          << " expected=" << m.expected << " got=" << m.got << "\n";
    return out.str();
  }

  std::string key_values(bool timing = false) const {
    std::ostringstream out;
    out << "suite=" << suite << "\ntrials=" << trials << "\nmismatches=" << mismatches.size()
        << "\npassed=" << (passed() ? "true" : "false") << "\n";
    if (timing)
      out << "elapsed_ms=" << std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count()
          << "\n";
    for (std::size_t i = 0; i < mismatches.size(); ++i) {
      const auto &m = mismatches[i];
      const std::string p = "mismatch." + std::to_string(i) + ".";
      out << p << "trial=" << m.trial << "\n"
          << p << "seed=" << m.seed << "\n"
          << p << "instance=" << m.instance << "\n"
          << p << "expected=" << m.expected << "\n"
          << p << "got=" << m.got << "\n";
    }
    return out.str();
  }
};

inline std::uint64_t trial_seed(std::uint64_t seed, std::size_t trial) {
  return splitmix64(seed + trial);
}

// Worked instances -------------------------------------------------------------

inline std::pair<BooleanMatrix, BooleanMatrix> running_matrices() {
  BooleanMatrix a(4), b(4);
  a.set(0, 1, true);
  b.set(1, 2, true);
  b.set(1, 3, true);
  return {a, b};
}

inline Program intro_program() {
  Program p;
  p.add(StatementKind::AddressOf, "a", "b");
  p.add(StatementKind::AddressOf, "b", "d");
  p.add(StatementKind::AssignStar, "c", "a");
  return p;
}

/// Nodes w, x, y, z with edges w-x, x-y, y-z, x-z.
inline SimpleGraph triangle_graph() {
  SimpleGraph g;
  g.node_count = 4;
  g.names = {"w", "x", "y", "z"};
  g.edges = {{0, 1}, {1, 2}, {2, 3}, {1, 3}};
  return g;
}

// Suites -----------------------------------------------------------------------

namespace detail {

inline std::string matrix_text(const BooleanMatrix &m) {
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i)
      s += '/';
    for (std::size_t j = 0; j < m.size(); ++j)
      s += m.get(i, j) ? '1' : '0';
  }
  return s;
}

inline std::string graph_text(const LabeledDigraph &g) {
  std::string s = "n=" + std::to_string(g.node_count()) + " {";
  bool first = true;
  for (const auto &e : g.edges()) {
    s += (first ? "" : ",") + std::to_string(e.src) + g.label(e.label) + std::to_string(e.dst);
    first = false;
  }
  return s + "}";
}

inline std::string program_text(const Program &p) {
  std::string s;
  for (const auto &st : p.statements())
    s += (s.empty() ? "" : "; ") + to_string(p, st);
  return s;
}

inline std::string pairs_text(const std::set<std::pair<NodeId, NodeId>> &pairs) {
  std::string s = "{";
  bool first = true;
  for (auto [u, v] : pairs) {
    s += (first ? "" : ",") + std::to_string(u) + "->" + std::to_string(v);
    first = false;
  }
  return s + "}";
}

template <class Trial>
CheckReport run_suite(std::string suite, std::size_t trials, std::uint64_t seed, Trial &&trial) {
  if (trials == 0)
    throw Error(ErrorKind::InvalidParams, "trials must be at least 1");
  const auto t0 = std::chrono::steady_clock::now();
  CheckReport report;
  report.suite = std::move(suite);
  report.trials = trials;
  for (std::size_t i = 0; i < trials; ++i) {
    const std::uint64_t s = trial_seed(seed, i);
    if (auto m = trial(i, s)) {
      m->trial = i;
      m->seed = s;
      report.mismatches.push_back(std::move(*m));
    }
  }
  report.elapsed = std::chrono::steady_clock::now() - t0;
  return report;
}

} // namespace detail

/// Pairs (u, v) of graph nodes with v D1-reachable from u.
inline std::set<std::pair<NodeId, NodeId>> d1_pairs(const LabeledDigraph &g) {
  const auto sums = all_pairs(g, d1_grammar());
  const auto &pairs = sums.pairs("D1");
  return {pairs.begin(), pairs.end()};
}

/// Pairs (u, v) with loc(v') in pt(u) after solving the program reduced from
/// g under the given profile.
inline std::set<std::pair<NodeId, NodeId>> program_pairs(const LabeledDigraph &g,
                                                         StatementProfile profile) {
  const ProgramReduction red = d1_to_program(g, profile, false);
  const PointsToSolution sol = solve(red.program);
  std::vector<VarId> black(g.node_count()), gray(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const std::string key = g.display_name(v);
    black[v] = red.program.require(*red.map.find(key, "query_var"));
    gray[v] = red.program.require(*red.map.find(key, "addr_var"));
  }
  std::set<std::pair<NodeId, NodeId>> out;
  for (NodeId u = 0; u < g.node_count(); ++u)
    for (NodeId v = 0; v < g.node_count(); ++v)
      if (sol.contains(black[u], gray[v]))
        out.emplace(u, v);
  return out;
}

/// For graph nodes u, v: (u, v) in the first set iff gray &v' is Pt-reachable
/// from black u, and in the second iff black v is Pt'-reachable from black u,
/// both in the PEG of the Case1 reduction of g.
inline std::pair<std::set<std::pair<NodeId, NodeId>>, std::set<std::pair<NodeId, NodeId>>>
pt_prime_pairs(const LabeledDigraph &g, const NormalizedGrammar &pt, const NormalizedGrammar &pt_prime) {
  const ProgramReduction red = d1_to_program(g, StatementProfile::Case1, false);
  const Peg peg = build_peg(red.program);
  std::vector<NodeId> black(g.node_count()), gray(g.node_count());
  std::map<NodeId, NodeId> of_black_var, of_gray_addr;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const std::string key = g.display_name(v);
    black[v] = peg.node(*red.map.find(key, "query_var"), ExprForm::Var);
    gray[v] = peg.node(*red.map.find(key, "addr_var"), ExprForm::Addr);
    of_black_var[black[v]] = v;
    of_gray_addr[gray[v]] = v;
  }
  std::set<std::pair<NodeId, NodeId>> pt_side, prime_side;
  const SummarySet a = all_pairs(peg.graph, pt);
  for (auto [x, y] : a.pairs(pt.original.start)) {
    auto u = of_black_var.find(x);
    auto v = of_gray_addr.find(y);
    if (u != of_black_var.end() && v != of_gray_addr.end())
      pt_side.emplace(u->second, v->second);
  }
  const SummarySet b = all_pairs(peg.graph, pt_prime);
  for (auto [x, y] : b.pairs(pt_prime.original.start)) {
    auto u = of_black_var.find(x);
    auto v = of_black_var.find(y);
    if (u != of_black_var.end() && v != of_black_var.end())
      prime_side.emplace(u->second, v->second);
  }
  return {pt_side, prime_side};
}

inline CheckReport check_bmm_chain(std::size_t n_max, std::size_t trials, std::uint64_t seed,
                                   StatementProfile profile, double density = 0.3) {
  if (n_max == 0)
    throw Error(ErrorKind::InvalidParams, "n_max must be at least 1");
  return detail::run_suite(
      "bmm", trials, seed, [&](std::size_t i, std::uint64_t s) -> std::optional<Mismatch> {
        Rng rng(s);
        auto [a, b] = running_matrices();
        if (i != 0 || n_max < 4) {
          const auto n = static_cast<std::size_t>(rng.between(1, static_cast<std::int64_t>(n_max)));
          a = rand_matrix(n, density, rng);
          b = rand_matrix(n, density, rng);
        }
        const std::size_t n = a.size();
        const BooleanMatrix expected = bmm_oracle(a, b);
        const BooleanMatrix via_d1 = multiply_via_d1(a, b);
        const D1Instance inst = bmm_to_d1(a, b);
        const auto pts = program_pairs(inst.graph, profile);
        BooleanMatrix readback(n);
        for (auto [u, v] : pts)
          if (u < n && v >= 2 * n)
            readback.set(u, v - 2 * n, true);
        if (expected == via_d1 && expected == readback)
          return std::nullopt;
        return Mismatch{0, 0,
                        "A=" + detail::matrix_text(a) + " B=" + detail::matrix_text(b) + " " +
                            to_string(profile),
                        detail::matrix_text(expected),
                        "d1:" + detail::matrix_text(via_d1) + " pt:" + detail::matrix_text(readback)};
      });
}

inline CheckReport check_peg_equivalence(std::size_t trials, std::uint64_t seed,
                                         std::size_t max_vars = 12, std::size_t max_statements = 25) {
  const Grammar pt = pt_grammar();
  const NormalizedGrammar npt = normalize(pt);
  return detail::run_suite(
      "peg", trials, seed, [&](std::size_t i, std::uint64_t s) -> std::optional<Mismatch> {
        Rng rng(s);
        const Program p = i == 0 ? intro_program() : rand_program(max_vars, max_statements, rng);
        const PointsToSolution sol = solve(p);
        const Peg peg = build_peg(p);
        const SummarySet sums = all_pairs(peg.graph, npt);
        std::set<std::pair<NodeId, NodeId>> from_solver, from_peg;
        for (std::uint32_t a = 0; a < p.variable_count(); ++a)
          for (std::uint32_t b = 0; b < p.variable_count(); ++b)
            if (sol.contains(VarId{a}, VarId{b}))
              from_solver.emplace(a, b);
        for (auto [u, v] : sums.pairs("Pt")) {
          const Expr eu = Peg::expr_of(u), ev = Peg::expr_of(v);
          if (eu.form == ExprForm::Var && ev.form == ExprForm::Addr)
            from_peg.emplace(eu.variable.value, ev.variable.value);
        }
        if (from_solver == from_peg)
          return std::nullopt;
        return Mismatch{0, 0, detail::program_text(p), detail::pairs_text(from_solver),
                        detail::pairs_text(from_peg)};
      });
}

/// Black/gray pt pairs versus black/black pt-prime pairs on the PEG of the
/// Case1 reduction of a random Dyck-1 graph.
inline CheckReport check_pt_prime(std::size_t trials, std::uint64_t seed, std::size_t max_nodes = 10,
                                  std::size_t max_edges = 15) {
  const NormalizedGrammar npt = normalize(pt_grammar());
  const NormalizedGrammar nptp = normalize(pt_prime_grammar());
  return detail::run_suite(
      "pt-prime", trials, seed, [&](std::size_t i, std::uint64_t s) -> std::optional<Mismatch> {
        Rng rng(s);
        LabeledDigraph g;
        if (i == 0) {
          auto [a, b] = running_matrices();
          g = bmm_to_d1(a, b).graph;
        } else {
          const auto n = static_cast<std::size_t>(rng.between(1, static_cast<std::int64_t>(max_nodes)));
          const auto cap = std::min(max_edges, 2 * n * n);
          const auto m = static_cast<std::size_t>(rng.between(0, static_cast<std::int64_t>(cap)));
          g = rand_dyck_graph(n, m, rng);
        }
        const auto [pt_side, prime_side] = pt_prime_pairs(g, npt, nptp);
        if (pt_side == prime_side)
          return std::nullopt;
        return Mismatch{0, 0, detail::graph_text(g), detail::pairs_text(pt_side),
                        detail::pairs_text(prime_side)};
      });
}

inline CheckReport check_triangle_chain(std::size_t n_max, std::size_t trials, std::uint64_t seed,
                                        bool directed, double density = 0.3) {
  if (n_max < 3)
    throw Error(ErrorKind::InvalidParams, "n_max must be at least 3");
  const Grammar d1 = d1_grammar();
  return detail::run_suite(
      directed ? "triangle-directed" : "triangle", trials, seed,
      [&](std::size_t i, std::uint64_t s) -> std::optional<Mismatch> {
        Rng rng(s);
        SimpleGraph g = triangle_graph();
        if (i != 0) {
          const auto n = static_cast<std::size_t>(rng.between(1, static_cast<std::int64_t>(n_max)));
          g = rand_simple_graph(n, density, directed, rng);
        }
        const bool expected = triangle_oracle(g, directed);
        const StInstance inst = triangle_to_st_d1(g, directed);
        const bool got = st_query(inst.graph, d1, inst.s, inst.t);
        if (expected == got)
          return std::nullopt;
        std::string text = "n=" + std::to_string(g.node_count) + " {";
        for (std::size_t k = 0; k < g.edges.size(); ++k)
          text += (k ? "," : "") + std::to_string(g.edges[k].first) + (directed ? ">" : "-") +
                  std::to_string(g.edges[k].second);
        return Mismatch{0, 0, text + "}", expected ? "true" : "false", got ? "true" : "false"};
      });
}

} // namespace palab
