#pragma once

// CFL-reachability on labeled digraphs: grammar normalization, worklist
// saturation over binary rules, built-in Dyck and points-to grammars, and
// terminal follow sets.

#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "palab/core.hpp"

namespace palab {

using SymbolId = std::uint32_t;

enum class SymbolKind : std::uint8_t { Terminal, Nonterminal, Helper };

enum class BinarizeOrder { Right, Left };

/// A rule with a right-hand side of one or two symbols.
struct NormalRule {
  SymbolId lhs;
  std::vector<SymbolId> rhs;
  std::size_t production; // index into the original grammar
  bool compensation;      // added because a nullable symbol was dropped

  friend bool operator==(const NormalRule &, const NormalRule &) = default;
};

struct NormalizedGrammar {
  Grammar original;
  std::vector<std::string> symbols;
  std::vector<SymbolKind> kinds;
  std::vector<NormalRule> binary_productions;
  std::vector<bool> nullable;
  std::map<SymbolId, std::size_t> helper_map; // helper -> originating production
  SymbolId start = 0;

  std::optional<SymbolId> find(std::string_view name) const {
    for (SymbolId i = 0; i < symbols.size(); ++i)
      if (symbols[i] == name)
        return i;
    return std::nullopt;
  }

  SymbolId require(std::string_view name) const {
    if (auto id = find(name))
      return *id;
    throw Error(ErrorKind::InvalidGrammar, "unknown grammar symbol '" + std::string(name) + "'");
  }

  /// Original nonterminals that derive the empty string.
  std::set<std::string> nullable_nonterminals() const {
    std::set<std::string> out;
    for (SymbolId i = 0; i < symbols.size(); ++i)
      if (nullable[i] && kinds[i] == SymbolKind::Nonterminal)
        out.insert(symbols[i]);
    return out;
  }
};

/// Splits productions of length k >= 3 with k - 2 fresh helpers, computes the
/// nullable set, drops epsilon bodies, and adds the unary rules that stand in
/// for nullable symbols inside binary rules.
inline NormalizedGrammar normalize(const Grammar &grammar,
                                   BinarizeOrder order = BinarizeOrder::Right) {
  grammar.validate();
  NormalizedGrammar ng;
  ng.original = grammar;
  std::unordered_map<std::string, SymbolId> ids;
  auto add_symbol = [&](const std::string &name, SymbolKind kind) {
    SymbolId id = static_cast<SymbolId>(ng.symbols.size());
    ng.symbols.push_back(name);
    ng.kinds.push_back(kind);
    ids.emplace(name, id);
    return id;
  };
  for (const auto &t : grammar.terminals)
    add_symbol(t, SymbolKind::Terminal);
  for (const auto &n : grammar.nonterminals)
    add_symbol(n, SymbolKind::Nonterminal);
  ng.start = ids.at(grammar.start);

  std::vector<SymbolId> epsilon_lhs;
  for (std::size_t pi = 0; pi < grammar.productions.size(); ++pi) {
    const auto &p = grammar.productions[pi];
    const SymbolId lhs = ids.at(p.lhs);
    std::vector<SymbolId> rhs;
    for (const auto &s : p.rhs)
      rhs.push_back(ids.at(s));
    if (rhs.empty()) {
      epsilon_lhs.push_back(lhs);
      continue;
    }
    if (rhs.size() <= 2) {
      ng.binary_productions.push_back({lhs, rhs, pi, false});
      continue;
    }
    const std::size_t k = rhs.size();
    std::vector<SymbolId> helpers;
    for (std::size_t h = 1; h + 2 <= k; ++h) {
      std::string name = p.lhs + "%" + std::to_string(pi) + "." + std::to_string(h);
      while (ids.count(name))
        name += "%";
      SymbolId id = add_symbol(name, SymbolKind::Helper);
      ng.helper_map.emplace(id, pi);
      helpers.push_back(id);
    }
    if (order == BinarizeOrder::Right) {
      // A -> X1 H1, H1 -> X2 H2, ..., H(k-2) -> X(k-1) Xk
      ng.binary_productions.push_back({lhs, {rhs[0], helpers[0]}, pi, false});
      for (std::size_t h = 0; h + 1 < helpers.size(); ++h)
        ng.binary_productions.push_back({helpers[h], {rhs[h + 1], helpers[h + 1]}, pi, false});
      ng.binary_productions.push_back({helpers.back(), {rhs[k - 2], rhs[k - 1]}, pi, false});
    } else {
      // H1 -> X1 X2, H2 -> H1 X3, ..., A -> H(k-2) Xk
      ng.binary_productions.push_back({helpers[0], {rhs[0], rhs[1]}, pi, false});
      for (std::size_t h = 1; h < helpers.size(); ++h)
        ng.binary_productions.push_back({helpers[h], {helpers[h - 1], rhs[h + 1]}, pi, false});
      ng.binary_productions.push_back({lhs, {helpers.back(), rhs[k - 1]}, pi, false});
    }
  }

  ng.nullable.assign(ng.symbols.size(), false);
  for (SymbolId s : epsilon_lhs)
    ng.nullable[s] = true;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto &r : ng.binary_productions) {
      if (ng.nullable[r.lhs])
        continue;
      bool all = true;
      for (SymbolId s : r.rhs)
        all = all && ng.nullable[s];
      if (all) {
        ng.nullable[r.lhs] = true;
        changed = true;
      }
    }
  }

  std::vector<NormalRule> extra;
  auto have = [&](SymbolId lhs, SymbolId rhs) {
    for (const auto *list : {&ng.binary_productions, &extra})
      for (const auto &r : *list)
        if (r.lhs == lhs && r.rhs.size() == 1 && r.rhs[0] == rhs)
          return true;
    return false;
  };
  for (const auto &r : ng.binary_productions) {
    if (r.rhs.size() != 2)
      continue;
    for (int drop = 0; drop < 2; ++drop) {
      const SymbolId kept = r.rhs[1 - drop];
      if (ng.nullable[r.rhs[drop]] && kept != r.lhs && !have(r.lhs, kept))
        extra.push_back({r.lhs, {kept}, r.production, true});
    }
  }
  ng.binary_productions.insert(ng.binary_productions.end(), extra.begin(), extra.end());
  return ng;
}

/// Saturated summary edges (src, symbol, dst) of a graph under a grammar.
class SummarySet {
public:
  SummarySet() = default;
  SummarySet(std::vector<std::string> symbols, std::vector<SymbolKind> kinds,
             std::size_t node_count,
             std::vector<std::vector<std::pair<NodeId, NodeId>>> by_symbol)
      : symbols_(std::move(symbols)), kinds_(std::move(kinds)), node_count_(node_count),
        by_symbol_(std::move(by_symbol)) {
    for (auto &list : by_symbol_)
      std::sort(list.begin(), list.end());
  }

  std::size_t node_count() const noexcept { return node_count_; }

  bool contains(NodeId u, std::string_view symbol, NodeId v) const {
    auto id = find(symbol);
    if (!id)
      return false;
    const auto &list = by_symbol_[*id];
    return std::binary_search(list.begin(), list.end(), std::make_pair(u, v));
  }

  /// Sorted (src, dst) pairs for one symbol; empty for unknown symbols.
  const std::vector<std::pair<NodeId, NodeId>> &pairs(std::string_view symbol) const {
    static const std::vector<std::pair<NodeId, NodeId>> empty;
    auto id = find(symbol);
    return id ? by_symbol_[*id] : empty;
  }

  /// All summaries over original symbols; helper nonterminals are projected
  /// out.
  std::set<std::tuple<NodeId, std::string, NodeId>> triples() const {
    std::set<std::tuple<NodeId, std::string, NodeId>> out;
    for (SymbolId s = 0; s < symbols_.size(); ++s) {
      if (kinds_[s] == SymbolKind::Helper)
        continue;
      for (auto [u, v] : by_symbol_[s])
        out.emplace(u, symbols_[s], v);
    }
    return out;
  }

  /// Raw pairs by symbol id, helpers included.
  const std::vector<std::pair<NodeId, NodeId>> &pairs(SymbolId symbol) const {
    return by_symbol_.at(symbol);
  }

  std::size_t symbol_count() const noexcept { return symbols_.size(); }

  friend bool operator==(const SummarySet &, const SummarySet &) = default;

  std::size_t size() const {
    std::size_t n = 0;
    for (SymbolId s = 0; s < symbols_.size(); ++s)
      if (kinds_[s] != SymbolKind::Helper)
        n += by_symbol_[s].size();
    return n;
  }

private:
  std::optional<SymbolId> find(std::string_view name) const {
    for (SymbolId i = 0; i < symbols_.size(); ++i)
      if (symbols_[i] == name)
        return i;
    return std::nullopt;
  }

  std::vector<std::string> symbols_;
  std::vector<SymbolKind> kinds_;
  std::size_t node_count_ = 0;
  std::vector<std::vector<std::pair<NodeId, NodeId>>> by_symbol_;
};

namespace detail {

/// Worklist closure: every new summary (u, B, v) is combined with the
/// adjacent summaries its rules can extend.
class Saturator {
public:
  Saturator(const LabeledDigraph &graph, const NormalizedGrammar &grammar)
      : graph_(graph), grammar_(grammar), n_(graph.node_count()),
        sym_count_(grammar.symbols.size()) {
    std::vector<std::string> offending;
    for (const auto &label : graph.alphabet()) {
      auto id = grammar.find(label);
      if (!id || grammar.kinds[*id] != SymbolKind::Terminal)
        offending.push_back(label);
      else
        label_symbol_.push_back(*id);
    }
    if (!offending.empty()) {
      std::string msg = "graph labels not in grammar terminals:";
      for (const auto &l : offending)
        msg += " " + l;
      throw Error(ErrorKind::AlphabetMismatch, msg);
    }
    unary_by_rhs_.resize(sym_count_);
    by_left_.resize(sym_count_);
    by_right_.resize(sym_count_);
    for (const auto &r : grammar.binary_productions) {
      if (r.rhs.size() == 1)
        unary_by_rhs_[r.rhs[0]].push_back(r.lhs);
      else {
        by_left_[r.rhs[0]].push_back({r.lhs, r.rhs[1]});
        by_right_[r.rhs[1]].push_back({r.lhs, r.rhs[0]});
      }
    }
    member_.resize(sym_count_ * n_);
    out_.assign(sym_count_ * n_, {});
    in_.assign(sym_count_ * n_, {});
    by_symbol_.resize(sym_count_);
  }

  /// Adds every summary of a prior saturation over the same normalized
  /// grammar before running.
  void seed(const SummarySet &prior) {
    for (SymbolId s = 0; s < prior.symbol_count() && s < sym_count_; ++s)
      for (auto [u, v] : prior.pairs(s))
        add(u, s, v);
  }

  /// Saturates; stops early once `target` is derived, if given.
  bool run(std::optional<std::tuple<NodeId, SymbolId, NodeId>> target = std::nullopt) {
    target_ = target;
    for (const auto &e : graph_.edges())
      if (add(e.src, label_symbol_[e.label], e.dst))
        return true;
    for (SymbolId s = 0; s < sym_count_; ++s)
      if (grammar_.nullable[s])
        for (NodeId v = 0; v < n_; ++v)
          if (add(v, s, v))
            return true;
    while (!worklist_.empty()) {
      auto [u, b, v] = worklist_.front();
      worklist_.pop_front();
      for (SymbolId a : unary_by_rhs_[b])
        if (add(u, a, v))
          return true;
      for (auto [a, c] : by_left_[b]) {
        const auto &next = out_[c * n_ + v];
        for (std::size_t i = 0; i < next.size(); ++i)
          if (add(u, a, next[i]))
            return true;
      }
      for (auto [a, c] : by_right_[b]) {
        const auto &prev = in_[c * n_ + u];
        for (std::size_t i = 0; i < prev.size(); ++i)
          if (add(prev[i], a, v))
            return true;
      }
    }
    return false;
  }

  SummarySet result() && {
    return SummarySet(grammar_.symbols, grammar_.kinds, n_, std::move(by_symbol_));
  }

private:
  // Returns true when the early-exit target was just added.
  bool add(NodeId u, SymbolId s, NodeId v) {
    Bitset &row = member_[s * n_ + u];
    if (row.empty())
      row.resize(n_);
    if (row.test(v))
      return false;
    row.set(v);
    out_[s * n_ + u].push_back(v);
    in_[s * n_ + v].push_back(u);
    by_symbol_[s].emplace_back(u, v);
    worklist_.emplace_back(u, s, v);
    return target_ && *target_ == std::make_tuple(u, s, v);
  }

  const LabeledDigraph &graph_;
  const NormalizedGrammar &grammar_;
  std::size_t n_;
  std::size_t sym_count_;
  std::vector<SymbolId> label_symbol_;
  std::vector<std::vector<SymbolId>> unary_by_rhs_;
  std::vector<std::vector<std::pair<SymbolId, SymbolId>>> by_left_;
  std::vector<std::vector<std::pair<SymbolId, SymbolId>>> by_right_;
  std::vector<Bitset> member_;
  std::vector<std::vector<NodeId>> out_;
  std::vector<std::vector<NodeId>> in_;
  std::vector<std::vector<std::pair<NodeId, NodeId>>> by_symbol_;
  std::deque<std::tuple<NodeId, SymbolId, NodeId>> worklist_;
  std::optional<std::tuple<NodeId, SymbolId, NodeId>> target_;
};

} // namespace detail

inline SummarySet all_pairs(const LabeledDigraph &graph, const NormalizedGrammar &grammar) {
  detail::Saturator sat(graph, grammar);
  sat.run();
  return std::move(sat).result();
}

/// Saturation restarted from a previous result; a closed input comes back
/// unchanged.
inline SummarySet all_pairs_from(const LabeledDigraph &graph, const NormalizedGrammar &grammar,
                                 const SummarySet &prior) {
  detail::Saturator sat(graph, grammar);
  sat.seed(prior);
  sat.run();
  return std::move(sat).result();
}

inline SummarySet all_pairs(const LabeledDigraph &graph, const Grammar &grammar) {
  return all_pairs(graph, normalize(grammar));
}

inline bool st_query(const LabeledDigraph &graph, const Grammar &grammar, NodeId s, NodeId t) {
  if (s >= graph.node_count() || t >= graph.node_count())
    throw Error(ErrorKind::InvalidNode, "query node out of range");
  const NormalizedGrammar ng = normalize(grammar);
  detail::Saturator sat(graph, ng);
  if (sat.run(std::make_tuple(s, ng.start, t)))
    return true;
  return std::move(sat).result().contains(s, grammar.start, t);
}

// Built-in grammars ----------------------------------------------------------

/// D1: D1 -> S, S -> [1 S ]1 | S S | eps.
inline Grammar d1_grammar() {
  return make_grammar({"[1", "]1"}, "D1",
                      {{"D1", {"S"}}, {"S", {"[1", "S", "]1"}}, {"S", {"S", "S"}}, {"S", {}}});
}

/// Dyck language with k bracket kinds "[i" / "]i"; dyck(1) is d1.
inline Grammar dyck_grammar(int k) {
  if (k < 1)
    throw Error(ErrorKind::InvalidParams, "dyck(k) needs k >= 1");
  if (k == 1)
    return d1_grammar();
  std::vector<std::string> terminals;
  std::vector<Production> prods{{"D" + std::to_string(k), {"S"}}};
  for (int i = 1; i <= k; ++i) {
    const std::string open = "[" + std::to_string(i);
    const std::string close = "]" + std::to_string(i);
    terminals.push_back(open);
    terminals.push_back(close);
    prods.push_back({"S", {open, "S", close}});
  }
  prods.push_back({"S", {"S", "S"}});
  prods.push_back({"S", {}});
  return make_grammar(std::move(terminals), "D" + std::to_string(k), std::move(prods));
}

inline std::vector<std::string> peg_terminals() {
  return {"d", "-d", "r", "-r", "s", "-s", "as", "-as", "sa", "-sa"};
}

/// Points-to grammar over PEG labels with every inverse nonterminal expanded.
inline Grammar pt_grammar() {
  return make_grammar(peg_terminals(), "Pt",
                      {
                          {"Pt", {"S", "r"}},
                          {"S", {"as", "-d", "S", "r", "d"}},
                          {"S", {"-d", "-r", "-S", "d", "sa"}},
                          {"-S", {"-d", "-r", "-S", "d", "-as"}},
                          {"-S", {"-sa", "-d", "S", "r", "d"}},
                          {"S", {"S", "S"}},
                          {"-S", {"-S", "-S"}},
                          {"S", {"s"}},
                          {"S", {}},
                          {"-S", {"-s"}},
                          {"-S", {}},
                      });
}

/// The star-assign core of the points-to grammar that survives on
/// reduction-built PEGs. All ten PEG labels stay declared so the grammar
/// applies to any PEG.
inline Grammar pt_prime_grammar() {
  return make_grammar(peg_terminals(), "Pt'",
                      {
                          {"Pt'", {"S"}},
                          {"S", {"-d", "-r", "-S", "d", "sa"}},
                          {"-S", {"-sa", "-d", "S", "r", "d"}},
                          {"S", {"S", "S"}},
                          {"-S", {"-S", "-S"}},
                          {"S", {}},
                          {"-S", {}},
                      });
}

/// Resolves "d1", "dyck:k", "pt" or "pt-prime" (also "pt_prime").
inline std::optional<Grammar> builtin_grammar(std::string_view name) {
  if (name == "d1")
    return d1_grammar();
  if (name == "pt")
    return pt_grammar();
  if (name == "pt-prime" || name == "pt_prime")
    return pt_prime_grammar();
  if (name.rfind("dyck:", 0) == 0 || name.rfind("dyck(", 0) == 0) {
    std::string digits(name.substr(5));
    if (!digits.empty() && digits.back() == ')')
      digits.pop_back();
    if (digits.empty() ||
        !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }))
      throw Error(ErrorKind::InvalidParams, "invalid dyck arity '" + digits + "'");
    return dyck_grammar(std::stoi(digits));
  }
  return std::nullopt;
}

// Follow sets ----------------------------------------------------------------

/// For each terminal t, the terminals that can appear immediately right of t
/// in some sentential form derived from a nonterminal.
inline std::map<std::string, std::set<std::string>> follow_sets(const Grammar &grammar) {
  grammar.validate();
  std::set<std::string> nullable;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto &p : grammar.productions) {
      if (nullable.count(p.lhs))
        continue;
      if (std::all_of(p.rhs.begin(), p.rhs.end(), [&](const auto &s) { return nullable.count(s) > 0; })) {
        nullable.insert(p.lhs);
        changed = true;
      }
    }
  }
  std::map<std::string, std::set<std::string>> first, last;
  for (const auto &t : grammar.terminals) {
    first[t] = {t};
    last[t] = {t};
  }
  for (bool changed = true; changed;) {
    changed = false;
    auto merge = [&](std::set<std::string> &into, const std::set<std::string> &from) {
      for (const auto &x : from)
        changed |= into.insert(x).second;
    };
    for (const auto &p : grammar.productions) {
      for (const auto &s : p.rhs) {
        merge(first[p.lhs], first[s]);
        if (!nullable.count(s))
          break;
      }
      for (auto it = p.rhs.rbegin(); it != p.rhs.rend(); ++it) {
        merge(last[p.lhs], last[*it]);
        if (!nullable.count(*it))
          break;
      }
    }
  }
  std::map<std::string, std::set<std::string>> follow;
  for (const auto &t : grammar.terminals)
    follow[t];
  for (const auto &p : grammar.productions) {
    for (std::size_t i = 0; i < p.rhs.size(); ++i) {
      for (std::size_t j = i + 1; j < p.rhs.size(); ++j) {
        for (const auto &t : last[p.rhs[i]])
          follow[t].insert(first[p.rhs[j]].begin(), first[p.rhs[j]].end());
        if (!nullable.count(p.rhs[j]))
          break;
      }
    }
  }
  return follow;
}

} // namespace palab
