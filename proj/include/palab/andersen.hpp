#pragma once

// Inclusion-based (Andersen-style) points-to analysis by dynamic transitive
// closure over the copy-edge constraint graph.

#include <deque>
#include <set>
#include <utility>
#include <vector>

#include "palab/core.hpp"

namespace palab {

/// The four input-constraint buckets. Each pair is (lhs, rhs) of the source
/// statement: {b} <= a, b <= a, *b <= a, b <= *a.
struct ConstraintSet {
  std::set<std::pair<VarId, VarId>> address_of;
  std::set<std::pair<VarId, VarId>> assign;
  std::set<std::pair<VarId, VarId>> assign_star;
  std::set<std::pair<VarId, VarId>> star_assign;

  friend bool operator==(const ConstraintSet &, const ConstraintSet &) = default;
};

inline ConstraintSet extract_constraints(const Program &program) {
  ConstraintSet cs;
  for (const auto &s : program.statements()) {
    auto pair = std::make_pair(s.lhs, s.rhs);
    switch (s.kind) {
    case StatementKind::AddressOf:
      cs.address_of.insert(pair);
      break;
    case StatementKind::Assign:
      cs.assign.insert(pair);
      break;
    case StatementKind::AssignStar:
      cs.assign_star.insert(pair);
      break;
    case StatementKind::StarAssign:
      cs.star_assign.insert(pair);
      break;
    }
  }
  return cs;
}

enum class WorklistPolicy { Fifo, Lifo };

enum class Propagation {
  Difference, // only locations not yet pushed along a node's edges
  WholeSet,   // the full pt set on every visit
};

struct SolverOptions {
  WorklistPolicy policy = WorklistPolicy::Fifo;
  Propagation propagation = Propagation::Difference;
};

/// Worklist solver. pt sets are dense bitsets indexed by variable id; copy
/// edges b -> a mean pt(b) <= pt(a).
class AndersenSolver {
public:
  explicit AndersenSolver(const Program &program, SolverOptions options = {})
      : names_(program.names()), options_(options) {
    const std::size_t n = program.variable_count();
    pt_.assign(n, Bitset(n));
    propagated_.assign(n, Bitset(n));
    succ_.assign(n, Bitset(n));
    loads_.resize(n);
    stores_.resize(n);
    queued_.resize(n);

    const ConstraintSet cs = extract_constraints(program);
    for (auto [a, b] : cs.address_of)
      pt_[a.value].set(b.value);
    for (auto [a, b] : cs.assign)
      succ_[b.value].set(a.value);
    for (auto [a, b] : cs.assign_star)
      loads_[b.value].push_back(a.value); // *b <= a
    for (auto [a, b] : cs.star_assign)
      stores_[a.value].push_back(b.value); // b <= *a
    edge_count_ = cs.assign.size();
  }

  /// Runs the worklist to its fixed point.
  void run() {
    for (std::size_t v = 0; v < pt_.size(); ++v)
      push(v);
    while (!worklist_.empty()) {
      std::size_t n;
      if (options_.policy == WorklistPolicy::Fifo) {
        n = worklist_.front();
        worklist_.pop_front();
      } else {
        n = worklist_.back();
        worklist_.pop_back();
      }
      queued_[n] = false;
      process(n);
    }
  }

  /// Visits every node once with its full pt set, without the worklist.
  /// Returns true if any copy edge or pt member was added.
  bool settle_pass() {
    bool changed = false;
    for (std::size_t n = 0; n < pt_.size(); ++n) {
      const Bitset current = pt_[n];
      for_each_bit(current, [&](std::size_t v) {
        for (std::size_t a : loads_[n])
          changed |= add_copy_edge(v, a);
        for (std::size_t b : stores_[n])
          changed |= add_copy_edge(b, v);
      });
      for_each_bit(succ_[n], [&](std::size_t z) { changed |= union_into(z, pt_[n]); });
    }
    worklist_.clear();
    std::fill(queued_.begin(), queued_.end(), false);
    return changed;
  }

  std::size_t copy_edge_count() const noexcept { return edge_count_; }

  PointsToSolution solution() const { return PointsToSolution(names_, pt_); }

private:
  void push(std::size_t v) {
    if (queued_[v])
      return;
    queued_[v] = true;
    worklist_.push_back(v);
  }

  bool union_into(std::size_t dst, const Bitset &src) {
    if (src.is_subset_of(pt_[dst]))
      return false;
    pt_[dst] |= src;
    push(dst);
    return true;
  }

  bool add_copy_edge(std::size_t from, std::size_t to) {
    if (succ_[from].test(to))
      return false;
    succ_[from].set(to);
    ++edge_count_;
    if (options_.propagation == Propagation::Difference)
      union_into(to, pt_[from]); // a fresh edge needs the whole source set once
    else
      push(from);
    return true;
  }

  void process(std::size_t n) {
    Bitset delta;
    if (options_.propagation == Propagation::Difference) {
      delta = pt_[n] - propagated_[n];
      propagated_[n] |= delta;
    } else {
      delta = pt_[n];
    }
    if (delta.none())
      return;
    for_each_bit(delta, [&](std::size_t v) {
      for (std::size_t a : loads_[n])
        add_copy_edge(v, a);
      for (std::size_t b : stores_[n])
        add_copy_edge(b, v);
    });
    for_each_bit(succ_[n], [&](std::size_t z) { union_into(z, delta); });
  }

  std::vector<std::string> names_;
  SolverOptions options_;
  std::vector<Bitset> pt_;
  std::vector<Bitset> propagated_;
  std::vector<Bitset> succ_;
  std::vector<std::vector<std::size_t>> loads_;
  std::vector<std::vector<std::size_t>> stores_;
  std::vector<bool> queued_;
  std::deque<std::size_t> worklist_;
  std::size_t edge_count_ = 0;
};

inline PointsToSolution solve(const Program &program, SolverOptions options = {}) {
  AndersenSolver solver(program, options);
  solver.run();
  return solver.solution();
}

/// True iff loc(q) is in pt(p).
inline bool query(const PointsToSolution &solution, std::string_view p, std::string_view q) {
  auto pv = solution.find(p);
  if (!pv)
    throw Error(ErrorKind::UnknownVariable, "unknown variable '" + std::string(p) + "'");
  auto qv = solution.find(q);
  if (!qv)
    throw Error(ErrorKind::UnknownVariable, "unknown variable '" + std::string(q) + "'");
  return solution.contains(*pv, *qv);
}

} // namespace palab
