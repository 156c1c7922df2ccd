#pragma once

// Constructive reductions: Boolean matrix multiplication to D1-reachability,
// D1-reachability to inclusion-based points-to programs, and triangle
// detection to s-t D1-reachability.

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "palab/cfl.hpp"
#include "palab/core.hpp"

namespace palab {

struct D1Instance {
  LabeledDigraph graph;
  ReductionMap map;
};

struct StInstance {
  LabeledDigraph graph;
  NodeId s = 0;
  NodeId t = 0;
  ReductionMap map;
};

/// Plain graph given as an edge list over nodes 0..n-1.
struct SimpleGraph {
  std::size_t node_count = 0;
  std::vector<std::pair<NodeId, NodeId>> edges;
  std::vector<std::string> names; // empty or one per node

  std::string name(NodeId v) const {
    return v < names.size() ? names[v] : "n" + std::to_string(v);
  }
};

inline LabeledDigraph empty_d1_graph(std::size_t n) {
  LabeledDigraph g(n);
  g.declare_label(kOpen1);
  g.declare_label(kClose1);
  return g;
}

inline D1Instance bmm_to_d1(const BooleanMatrix &a, const BooleanMatrix &b) {
  if (a.size() != b.size())
    throw Error(ErrorKind::DimensionMismatch, "matrix dimensions differ");
  const std::size_t n = a.size();
  D1Instance inst;
  inst.graph = empty_d1_graph(3 * n);
  std::vector<std::string> names;
  for (const char *layer : {"x", "y", "z"})
    for (std::size_t i = 0; i < n; ++i)
      names.push_back(layer + std::to_string(i));
  inst.graph.set_names(std::move(names));
  auto x = [](std::size_t i) { return static_cast<NodeId>(i); };
  auto y = [n](std::size_t i) { return static_cast<NodeId>(n + i); };
  auto z = [n](std::size_t i) { return static_cast<NodeId>(2 * n + i); };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (a.get(i, j))
        inst.graph.add_edge(x(i), kOpen1, y(j));
      if (b.get(i, j))
        inst.graph.add_edge(y(i), kClose1, z(j));
    }
  auto range = [](NodeId lo, NodeId hi) { return std::to_string(lo) + "-" + std::to_string(hi); };
  inst.map.add_meta("x_layer", range(x(0), x(n - 1)));
  inst.map.add_meta("y_layer", range(y(0), y(n - 1)));
  inst.map.add_meta("z_layer", range(z(0), z(n - 1)));
  for (std::size_t i = 0; i < n; ++i) {
    const std::string key = std::to_string(i);
    inst.map.add(key, "x", inst.graph.display_name(x(i)));
    inst.map.add(key, "y", inst.graph.display_name(y(i)));
    inst.map.add(key, "z", inst.graph.display_name(z(i)));
  }
  return inst;
}

/// C with c_ij = 1 iff z_j is D1-reachable from x_i.
inline BooleanMatrix multiply_via_d1(const BooleanMatrix &a, const BooleanMatrix &b) {
  const D1Instance inst = bmm_to_d1(a, b);
  const SummarySet sums = all_pairs(inst.graph, d1_grammar());
  const std::size_t n = a.size();
  BooleanMatrix c(n);
  for (auto [u, v] : sums.pairs("D1"))
    if (u < n && v >= 2 * n)
      c.set(u, v - 2 * n, true);
  return c;
}

struct ProgramReduction {
  Program program;
  ReductionMap map;
};

namespace detail {

inline void require_dyck1_edges(const LabeledDigraph &g) {
  for (const auto &e : g.edges()) {
    const auto &l = g.label(e.label);
    if (l != kOpen1 && l != kClose1)
      throw Error(ErrorKind::BadLabel, "label '" + l + "' is not a Dyck-1 bracket");
  }
}

inline bool is_temp_like(const std::string &name, const std::string &prefix) {
  if (name.size() <= prefix.size() || name.compare(0, prefix.size(), prefix) != 0)
    return false;
  return std::all_of(name.begin() + static_cast<std::ptrdiff_t>(prefix.size()), name.end(),
                     [](char c) { return c >= '0' && c <= '9'; });
}

} // namespace detail

/// Emits each node's gadget (ids ascending) and then each edge's gadget
/// (edge set order). Temporaries are t1, t2, ... in emission order; the
/// prefix gains underscores until no node-derived name collides with it.
inline ProgramReduction d1_to_program(const LabeledDigraph &graph, StatementProfile profile,
                                      bool prune_isolated = false) {
  detail::require_dyck1_edges(graph);
  const std::size_t n = graph.node_count();

  std::vector<bool> keep(n, !prune_isolated);
  for (const auto &e : graph.edges())
    keep[e.src] = keep[e.dst] = true;

  std::vector<std::string> black(n), gray(n);
  std::set<std::string> taken;
  for (NodeId v = 0; v < n; ++v) {
    if (!keep[v])
      continue;
    black[v] = graph.has_names() && !graph.names()[v].empty() ? graph.names()[v]
                                                              : "n" + std::to_string(v);
    gray[v] = black[v] + "'";
    if (!is_identifier(black[v]))
      throw Error(ErrorKind::InvalidName, "node name '" + black[v] + "' is not an identifier");
    if (!taken.insert(black[v]).second || !taken.insert(gray[v]).second)
      throw Error(ErrorKind::InvalidName, "node names collide after priming: '" + black[v] + "'");
  }
  std::string prefix = "t";
  while (std::any_of(taken.begin(), taken.end(),
                     [&](const std::string &s) { return detail::is_temp_like(s, prefix); }))
    prefix += "_";

  ProgramReduction out;
  Program &p = out.program;
  std::size_t temp_counter = 0;
  auto temp = [&] { return prefix + std::to_string(++temp_counter); };
  using K = StatementKind;

  for (NodeId v = 0; v < n; ++v) {
    if (!keep[v])
      continue;
    const std::string &b = black[v];
    const std::string &g = gray[v];
    const std::string key = graph.display_name(v);
    std::vector<std::string> temps;
    switch (profile) {
    case StatementProfile::Case1: {
      std::string t0 = temp(), t1 = temp(), t2 = temp();
      p.add(K::AssignStar, b, t0);
      p.add(K::Assign, t0, t1);
      p.add(K::AddressOf, t1, t2);
      p.add(K::AddressOf, t2, g);
      temps = {t0, t1, t2};
      break;
    }
    case StatementProfile::Case2:
    case StatementProfile::Case4: {
      std::string t0 = temp();
      p.add(K::Assign, b, t0);
      p.add(K::AddressOf, t0, g);
      temps = {t0};
      break;
    }
    case StatementProfile::Case3: {
      std::string t0 = temp(), t1 = temp();
      p.add(K::AssignStar, b, t0);
      p.add(K::AddressOf, t0, t1);
      p.add(K::AddressOf, t1, g);
      temps = {t0, t1};
      break;
    }
    case StatementProfile::Case5:
    case StatementProfile::Case6:
      p.add(K::AddressOf, b, g);
      break;
    }
    out.map.add(key, "query_var", b);
    out.map.add(key, "addr_var", g);
    for (const auto &t : temps)
      out.map.add(key, "temp", t);
  }

  const bool via_star_assign = profile != StatementProfile::Case4 && profile != StatementProfile::Case6;
  for (const auto &e : graph.edges()) {
    const std::string &u = black[e.src];
    const std::string &v = black[e.dst];
    const bool open = graph.label(e.label) == kOpen1;
    const std::string key =
        graph.display_name(e.src) + " " + graph.label(e.label) + " " + graph.display_name(e.dst);
    if (via_star_assign) {
      const std::string t = temp();
      if (open) {
        p.add(K::AddressOf, t, u);
        p.add(K::StarAssign, v, t);
      } else {
        p.add(K::AddressOf, u, t);
        p.add(K::StarAssign, t, v);
      }
      out.map.add(key, "temp", t);
    } else if (open) {
      p.add(K::AssignStar, u, v);
    } else {
      p.add(K::AddressOf, u, v);
    }
  }
  out.map.add_meta("profile", to_string(profile));
  return out;
}

inline ProgramReduction d1_to_program(const D1Instance &instance, StatementProfile profile,
                                      bool prune_isolated = false) {
  return d1_to_program(instance.graph, profile, prune_isolated);
}

/// Four layer copies per node (id 4u+j, named "<name>_<j>"), then s = 4n and
/// t = 4n+1, then one auxiliary node per (edge, layer) and direction.
inline StInstance triangle_to_st_d1(const SimpleGraph &input, bool directed) {
  const std::size_t n = input.node_count;
  std::set<std::pair<NodeId, NodeId>> edges;
  for (auto [u, v] : input.edges) {
    if (u >= n || v >= n)
      throw Error(ErrorKind::InvalidNode, "edge endpoint out of range");
    if (u == v)
      throw Error(ErrorKind::SelfLoop, "self-loop on node " + input.name(u));
    edges.insert(directed || u < v ? std::make_pair(u, v) : std::make_pair(v, u));
  }

  StInstance inst;
  LabeledDigraph &g = inst.graph;
  g = empty_d1_graph(0);
  for (NodeId u = 0; u < n; ++u)
    for (int j = 0; j < 4; ++j)
      g.add_node(input.name(u) + "_" + std::to_string(j));
  inst.s = g.add_node("s");
  inst.t = g.add_node("t");
  auto layer = [](NodeId u, NodeId j) { return 4 * u + j; };

  for (NodeId u = 0; u < n; ++u) {
    g.add_edge(u == 0 ? inst.s : layer(u - 1, 0), kOpen1, layer(u, 0));
    g.add_edge(layer(u, 3), kClose1, u == 0 ? inst.t : layer(u - 1, 3));
  }

  std::size_t aux = 0;
  for (auto [u, v] : edges) {
    for (NodeId j = 0; j < 3; ++j) {
      const std::string name = "t" + std::to_string(++aux);
      const NodeId fwd = g.add_node(name);
      g.add_edge(layer(u, j), kOpen1, fwd);
      g.add_edge(fwd, kClose1, layer(v, j + 1));
      if (!directed) {
        const NodeId back = g.add_node(name + "'");
        g.add_edge(layer(v, j), kOpen1, back);
        g.add_edge(back, kClose1, layer(u, j + 1));
      }
    }
  }

  inst.map.add_meta("s", "s");
  inst.map.add_meta("t", "t");
  inst.map.add_meta("mode", directed ? "directed" : "undirected");
  for (NodeId u = 0; u < n; ++u)
    for (int j = 0; j < 4; ++j)
      inst.map.add(input.name(u), "layer" + std::to_string(j), g.display_name(layer(u, j)));
  return inst;
}

} // namespace palab
