#pragma once

// Shared domain types: programs, labeled digraphs, Boolean matrices,
// grammars, statement profiles and reduction provenance maps.

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace palab {

enum class ErrorKind {
  Parse,
  UnknownVariable,
  InvalidName,
  InvalidNode,
  AlphabetMismatch,
  DimensionMismatch,
  BadLabel,
  SelfLoop,
  MalformedPeg,
  InvalidGrammar,
  InvalidParams,
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string &what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

/// Letters, digits and underscores, followed by optional apostrophes.
inline bool is_identifier(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size() &&
         (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_'))
    ++i;
  if (i == 0)
    return false;
  while (i < text.size() && text[i] == '\'')
    ++i;
  return i == text.size();
}

struct VarId {
  std::uint32_t value = 0;

  friend auto operator<=>(const VarId &, const VarId &) = default;
};

enum class StatementKind : std::uint8_t {
  AddressOf,  // a = &b
  Assign,     // a = b
  AssignStar, // a = *b
  StarAssign, // *a = b
};

inline constexpr StatementKind kAllStatementKinds[] = {
    StatementKind::AddressOf, StatementKind::Assign, StatementKind::AssignStar,
    StatementKind::StarAssign};

struct Statement {
  StatementKind kind;
  VarId lhs;
  VarId rhs;

  friend auto operator<=>(const Statement &, const Statement &) = default;
};

/// Interned variable universe plus an ordered statement list. Variable ids
/// are dense and assigned in first-appearance order.
class Program {
public:
  VarId intern(std::string_view name) {
    if (auto it = index_.find(std::string(name)); it != index_.end())
      return it->second;
    if (!is_identifier(name))
      throw Error(ErrorKind::InvalidName,
                  "invalid identifier '" + std::string(name) + "'");
    VarId id{static_cast<std::uint32_t>(names_.size())};
    names_.emplace_back(name);
    index_.emplace(names_.back(), id);
    return id;
  }

  std::optional<VarId> find(std::string_view name) const {
    if (auto it = index_.find(std::string(name)); it != index_.end())
      return it->second;
    return std::nullopt;
  }

  VarId require(std::string_view name) const {
    if (auto id = find(name))
      return *id;
    throw Error(ErrorKind::UnknownVariable,
                "unknown variable '" + std::string(name) + "'");
  }

  void add(StatementKind kind, VarId lhs, VarId rhs) {
    if (lhs.value >= names_.size() || rhs.value >= names_.size())
      throw Error(ErrorKind::UnknownVariable, "statement references unknown id");
    statements_.push_back({kind, lhs, rhs});
  }

  void add(StatementKind kind, std::string_view lhs, std::string_view rhs) {
    VarId l = intern(lhs);
    VarId r = intern(rhs);
    statements_.push_back({kind, l, r});
  }

  std::size_t variable_count() const noexcept { return names_.size(); }
  const std::string &name(VarId id) const { return names_.at(id.value); }
  const std::vector<std::string> &names() const noexcept { return names_; }
  const std::vector<Statement> &statements() const noexcept { return statements_; }

  /// Statements with duplicates removed, in sorted order.
  std::vector<Statement> unique_statements() const {
    std::vector<Statement> out = statements_;
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, VarId> index_;
  std::vector<Statement> statements_;
};

/// Statement rendered with variable names, e.g. "*a = b".
inline std::string to_string(const Program &program, const Statement &stmt) {
  const auto &l = program.name(stmt.lhs);
  const auto &r = program.name(stmt.rhs);
  switch (stmt.kind) {
  case StatementKind::AddressOf:
    return l + " = &" + r;
  case StatementKind::Assign:
    return l + " = " + r;
  case StatementKind::AssignStar:
    return l + " = *" + r;
  case StatementKind::StarAssign:
    return "*" + l + " = " + r;
  }
  return {};
}

/// Statement set keyed by names so programs with different interning orders
/// can be compared.
using NamedStatement = std::tuple<StatementKind, std::string, std::string>;

inline std::set<NamedStatement> statement_set(const Program &program) {
  std::set<NamedStatement> out;
  for (const auto &s : program.statements())
    out.emplace(s.kind, program.name(s.lhs), program.name(s.rhs));
  return out;
}

using Bitset = boost::dynamic_bitset<std::uint64_t>;

template <class F> void for_each_bit(const Bitset &bits, F &&f) {
  for (auto i = bits.find_first(); i != Bitset::npos; i = bits.find_next(i))
    f(i);
}

/// pt(v) for every variable of a solved program; pt(v) holds w iff loc(w) is
/// in the points-to set of v.
class PointsToSolution {
public:
  PointsToSolution() = default;
  PointsToSolution(std::vector<std::string> names, std::vector<Bitset> pt)
      : names_(std::move(names)), pt_(std::move(pt)) {}

  std::size_t variable_count() const noexcept { return names_.size(); }
  const std::vector<std::string> &names() const noexcept { return names_; }
  const Bitset &points_to(VarId v) const { return pt_.at(v.value); }

  bool contains(VarId p, VarId q) const { return pt_.at(p.value).test(q.value); }

  std::optional<VarId> find(std::string_view name) const {
    for (std::uint32_t i = 0; i < names_.size(); ++i)
      if (names_[i] == name)
        return VarId{i};
    return std::nullopt;
  }

  /// Names in pt(v), sorted.
  std::vector<std::string> members(VarId v) const {
    std::vector<std::string> out;
    for_each_bit(pt_.at(v.value), [&](std::size_t w) { out.push_back(names_[w]); });
    std::sort(out.begin(), out.end());
    return out;
  }

  friend bool operator==(const PointsToSolution &, const PointsToSolution &) = default;

private:
  std::vector<std::string> names_;
  std::vector<Bitset> pt_;
};

using NodeId = std::uint32_t;
using LabelId = std::uint32_t;

struct Edge {
  NodeId src;
  LabelId label;
  NodeId dst;

  friend auto operator<=>(const Edge &, const Edge &) = default;
};

/// Edge-labeled digraph over dense node ids. Edges form a set; node names are
/// optional and, when present, cover every node.
class LabeledDigraph {
public:
  LabeledDigraph() = default;
  explicit LabeledDigraph(std::size_t node_count) : node_count_(node_count) {}

  NodeId add_node(std::string name = {}) {
    NodeId id = static_cast<NodeId>(node_count_++);
    if (!name.empty() || !names_.empty()) {
      names_.resize(node_count_);
      names_.back() = std::move(name);
    }
    name_index_.clear();
    return id;
  }

  void set_names(std::vector<std::string> names) {
    if (!names.empty() && names.size() != node_count_)
      throw Error(ErrorKind::InvalidNode, "node name count does not match node count");
    names_ = std::move(names);
    name_index_.clear();
  }

  LabelId declare_label(std::string_view label) {
    for (LabelId i = 0; i < alphabet_.size(); ++i)
      if (alphabet_[i] == label)
        return i;
    alphabet_.emplace_back(label);
    return static_cast<LabelId>(alphabet_.size() - 1);
  }

  std::optional<LabelId> find_label(std::string_view label) const {
    for (LabelId i = 0; i < alphabet_.size(); ++i)
      if (alphabet_[i] == label)
        return i;
    return std::nullopt;
  }

  /// Returns true if the edge was not already present.
  bool add_edge(NodeId src, std::string_view label, NodeId dst) {
    return add_edge(src, declare_label(label), dst);
  }

  bool add_edge(NodeId src, LabelId label, NodeId dst) {
    if (src >= node_count_ || dst >= node_count_)
      throw Error(ErrorKind::InvalidNode,
                  "edge endpoint out of range (nodes " + std::to_string(node_count_) + ")");
    if (label >= alphabet_.size())
      throw Error(ErrorKind::BadLabel, "edge label not in alphabet");
    return edges_.insert({src, label, dst}).second;
  }

  bool has_edge(NodeId src, std::string_view label, NodeId dst) const {
    auto l = find_label(label);
    return l && edges_.count({src, *l, dst}) > 0;
  }

  std::size_t node_count() const noexcept { return node_count_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::set<Edge> &edges() const noexcept { return edges_; }
  const std::vector<std::string> &alphabet() const noexcept { return alphabet_; }
  const std::string &label(LabelId id) const { return alphabet_.at(id); }
  bool has_names() const noexcept { return !names_.empty(); }
  const std::vector<std::string> &names() const noexcept { return names_; }

  /// Node name if present, else the decimal id.
  std::string display_name(NodeId id) const {
    if (id < names_.size() && !names_[id].empty())
      return names_[id];
    return std::to_string(id);
  }

  /// Resolves a node by name, or by decimal id when the graph is unnamed or
  /// the token is numeric and not itself a name.
  std::optional<NodeId> find_node(std::string_view token) const {
    if (!names_.empty()) {
      if (name_index_.empty())
        for (NodeId i = 0; i < names_.size(); ++i)
          name_index_.emplace(names_[i], i);
      if (auto it = name_index_.find(std::string(token)); it != name_index_.end())
        return it->second;
    }
    if (!token.empty() &&
        std::all_of(token.begin(), token.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      unsigned long long v = std::stoull(std::string(token));
      if (v < node_count_)
        return static_cast<NodeId>(v);
    }
    return std::nullopt;
  }

  friend bool operator==(const LabeledDigraph &a, const LabeledDigraph &b) {
    return a.node_count_ == b.node_count_ && a.names_ == b.names_ &&
           a.alphabet_ == b.alphabet_ && a.edges_ == b.edges_;
  }

private:
  std::size_t node_count_ = 0;
  std::vector<std::string> names_;
  std::vector<std::string> alphabet_;
  std::set<Edge> edges_;
  mutable std::unordered_map<std::string, NodeId> name_index_;
};

inline constexpr std::string_view kOpen1 = "[1";
inline constexpr std::string_view kClose1 = "]1";

/// Square n x n Boolean matrix, row-major.
class BooleanMatrix {
public:
  explicit BooleanMatrix(std::size_t n) : n_(n), bits_(n * n, 0) {
    if (n == 0)
      throw Error(ErrorKind::InvalidParams, "matrix dimension must be positive");
  }

  static BooleanMatrix identity(std::size_t n) {
    BooleanMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
      m.set(i, i, true);
    return m;
  }

  std::size_t size() const noexcept { return n_; }
  bool get(std::size_t i, std::size_t j) const { return bits_.at(i * n_ + j) != 0; }
  void set(std::size_t i, std::size_t j, bool v) { bits_.at(i * n_ + j) = v ? 1 : 0; }

  std::size_t nnz() const {
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1));
  }

  friend bool operator==(const BooleanMatrix &, const BooleanMatrix &) = default;

private:
  std::size_t n_;
  std::vector<std::uint8_t> bits_;
};

struct Production {
  std::string lhs;
  std::vector<std::string> rhs; // empty = epsilon

  friend bool operator==(const Production &, const Production &) = default;
};

/// Context-free grammar over string symbols. Nonterminals are ordered start
/// first, then by first appearance as a production left-hand side.
struct Grammar {
  std::vector<std::string> terminals;
  std::vector<std::string> nonterminals;
  std::vector<Production> productions;
  std::string start;

  bool is_terminal(std::string_view s) const {
    return std::find(terminals.begin(), terminals.end(), s) != terminals.end();
  }
  bool is_nonterminal(std::string_view s) const {
    return std::find(nonterminals.begin(), nonterminals.end(), s) != nonterminals.end();
  }

  void validate() const {
    if (start.empty())
      throw Error(ErrorKind::InvalidGrammar, "grammar has no start symbol");
    if (!is_nonterminal(start))
      throw Error(ErrorKind::InvalidGrammar, "start symbol '" + start + "' is not a nonterminal");
    for (const auto &t : terminals)
      if (is_nonterminal(t))
        throw Error(ErrorKind::InvalidGrammar, "symbol '" + t + "' is both terminal and nonterminal");
    for (const auto &p : productions) {
      if (!is_nonterminal(p.lhs))
        throw Error(ErrorKind::InvalidGrammar, "undeclared nonterminal '" + p.lhs + "'");
      for (const auto &s : p.rhs)
        if (!is_terminal(s) && !is_nonterminal(s))
          throw Error(ErrorKind::InvalidGrammar, "undeclared symbol '" + s + "'");
    }
  }

  friend bool operator==(const Grammar &, const Grammar &) = default;
};

/// Builds a grammar from terminals, start and productions, deriving the
/// nonterminal order and validating the result.
inline Grammar make_grammar(std::vector<std::string> terminals, std::string start,
                            std::vector<Production> productions) {
  Grammar g;
  g.terminals = std::move(terminals);
  g.start = std::move(start);
  g.nonterminals.push_back(g.start);
  for (const auto &p : productions)
    if (!g.is_nonterminal(p.lhs))
      g.nonterminals.push_back(p.lhs);
  g.productions = std::move(productions);
  g.validate();
  return g;
}

/// Which statement kinds (besides the always-permitted address-of) a reduced
/// program may use.
enum class StatementProfile : std::uint8_t {
  Case1, // star-assign, assign-star, assign
  Case2, // star-assign, assign
  Case3, // star-assign, assign-star
  Case4, // assign-star, assign
  Case5, // star-assign
  Case6, // assign-star
};

inline constexpr StatementProfile kAllProfiles[] = {
    StatementProfile::Case1, StatementProfile::Case2, StatementProfile::Case3,
    StatementProfile::Case4, StatementProfile::Case5, StatementProfile::Case6};

inline std::string to_string(StatementProfile p) {
  return "case" + std::to_string(static_cast<int>(p) + 1);
}

inline StatementProfile parse_profile(std::string_view text) {
  for (auto p : kAllProfiles)
    if (to_string(p) == text)
      return p;
  throw Error(ErrorKind::InvalidParams, "unknown profile '" + std::string(text) + "'");
}

inline bool permits(StatementProfile p, StatementKind k) {
  switch (k) {
  case StatementKind::AddressOf:
    return true;
  case StatementKind::Assign:
    return p == StatementProfile::Case1 || p == StatementProfile::Case2 ||
           p == StatementProfile::Case4;
  case StatementKind::AssignStar:
    return p == StatementProfile::Case1 || p == StatementProfile::Case3 ||
           p == StatementProfile::Case4 || p == StatementProfile::Case6;
  case StatementKind::StarAssign:
    return p == StatementProfile::Case1 || p == StatementProfile::Case2 ||
           p == StatementProfile::Case3 || p == StatementProfile::Case5;
  }
  return false;
}

struct MapEntry {
  std::string source;
  std::string role;
  std::string target;

  friend bool operator==(const MapEntry &, const MapEntry &) = default;
};

/// Provenance from input-instance entities to output-instance entities.
/// Distinguished entities (s, t, ...) use the source "*".
class ReductionMap {
public:
  static constexpr std::string_view kMeta = "*";

  void add(std::string source, std::string role, std::string target) {
    entries_.push_back({std::move(source), std::move(role), std::move(target)});
  }

  void add_meta(std::string role, std::string target) {
    add(std::string(kMeta), std::move(role), std::move(target));
  }

  std::optional<std::string> find(std::string_view source, std::string_view role) const {
    for (const auto &e : entries_)
      if (e.source == source && e.role == role)
        return e.target;
    return std::nullopt;
  }

  std::optional<std::string> meta(std::string_view role) const { return find(kMeta, role); }

  std::vector<std::string> targets(std::string_view source) const {
    std::vector<std::string> out;
    for (const auto &e : entries_)
      if (e.source == source)
        out.push_back(e.target);
    return out;
  }

  const std::vector<MapEntry> &entries() const noexcept { return entries_; }

  friend bool operator==(const ReductionMap &, const ReductionMap &) = default;

private:
  std::vector<MapEntry> entries_;
};

} // namespace palab
