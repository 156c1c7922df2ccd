#pragma once

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>

#include "palab/crosscheck.hpp"

inline std::string data_path(const std::string &name) {
  return std::string(PALAB_TEST_DATA) + "/" + name;
}

inline std::string read_data(const std::string &name) {
  std::ifstream in(data_path(name), std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Random Dyck-1 graph with 1..max_nodes nodes and an edge count capped at the
// number of distinct edges the node count admits.
inline palab::LabeledDigraph small_dyck_graph(palab::Rng &rng, std::size_t max_nodes, std::size_t max_edges) {
  const std::size_t n = 1 + rng.below(max_nodes);
  return palab::rand_dyck_graph(n, std::min<std::size_t>(rng.below(max_edges), 2 * n * n), rng);
}
