#pragma once

// Pointer expression graph: three nodes (&v, v, *v) per variable, one program
// edge per statement, dereference edges &v -d-> v -d-> *v, and a reverse
// edge with the barred label for every edge.

#include <array>
#include <string>
#include <string_view>

#include "palab/core.hpp"

namespace palab {

enum class ExprForm : std::uint8_t { Addr, Var, Deref };

struct Expr {
  VarId variable;
  ExprForm form;

  friend auto operator<=>(const Expr &, const Expr &) = default;
};

/// PEG labels; barred labels are spelled with a leading '-'.
inline constexpr std::array<std::string_view, 10> kPegAlphabet = {
    "r", "-r", "s", "-s", "as", "-as", "sa", "-sa", "d", "-d"};

inline std::string bar(std::string_view label) {
  if (!label.empty() && label.front() == '-')
    return std::string(label.substr(1));
  return "-" + std::string(label);
}

struct Peg {
  LabeledDigraph graph;
  std::vector<std::string> variables; // variable universe, in id order

  static NodeId node(VarId v, ExprForm form) {
    return 3 * v.value + static_cast<NodeId>(form);
  }
  NodeId node(std::string_view var, ExprForm form) const {
    for (std::uint32_t i = 0; i < variables.size(); ++i)
      if (variables[i] == var)
        return node(VarId{i}, form);
    throw Error(ErrorKind::UnknownVariable, "unknown variable '" + std::string(var) + "'");
  }
  static Expr expr_of(NodeId id) {
    return {VarId{id / 3}, static_cast<ExprForm>(id % 3)};
  }
};

inline std::string expr_name(const std::string &var, ExprForm form) {
  switch (form) {
  case ExprForm::Addr:
    return "&" + var;
  case ExprForm::Var:
    return var;
  case ExprForm::Deref:
    return "*" + var;
  }
  return var;
}

inline Peg build_peg(const Program &program) {
  Peg peg;
  peg.variables = program.names();
  std::vector<std::string> names;
  names.reserve(3 * program.variable_count());
  for (const auto &v : program.names())
    for (auto form : {ExprForm::Addr, ExprForm::Var, ExprForm::Deref})
      names.push_back(expr_name(v, form));
  peg.graph = LabeledDigraph(names.size());
  peg.graph.set_names(std::move(names));
  for (auto label : kPegAlphabet)
    peg.graph.declare_label(label);

  auto both = [&](NodeId u, std::string_view label, NodeId v) {
    peg.graph.add_edge(u, label, v);
    peg.graph.add_edge(v, bar(label), u);
  };

  for (const auto &s : program.statements()) {
    switch (s.kind) {
    case StatementKind::AddressOf:
      both(Peg::node(s.lhs, ExprForm::Var), "r", Peg::node(s.rhs, ExprForm::Addr));
      break;
    case StatementKind::Assign:
      both(Peg::node(s.lhs, ExprForm::Var), "s", Peg::node(s.rhs, ExprForm::Var));
      break;
    case StatementKind::AssignStar:
      both(Peg::node(s.lhs, ExprForm::Var), "as", Peg::node(s.rhs, ExprForm::Deref));
      break;
    case StatementKind::StarAssign:
      both(Peg::node(s.lhs, ExprForm::Deref), "sa", Peg::node(s.rhs, ExprForm::Var));
      break;
    }
  }
  for (std::uint32_t i = 0; i < program.variable_count(); ++i) {
    VarId v{i};
    both(Peg::node(v, ExprForm::Addr), "d", Peg::node(v, ExprForm::Var));
    both(Peg::node(v, ExprForm::Var), "d", Peg::node(v, ExprForm::Deref));
  }
  return peg;
}

/// Reads the statement set back out of a PEG's program edges. Throws
/// MalformedPeg when an edge matches no statement or dereference pattern.
inline Program peg_statements(const Peg &peg) {
  const auto &g = peg.graph;
  if (g.node_count() != 3 * peg.variables.size())
    throw Error(ErrorKind::MalformedPeg, "PEG node count is not 3 per variable");
  Program program;
  for (const auto &v : peg.variables)
    program.intern(v);

  auto malformed = [&](const Edge &e) {
    return Error(ErrorKind::MalformedPeg, "edge " + g.display_name(e.src) + " -" +
                                              g.label(e.label) + "-> " +
                                              g.display_name(e.dst) +
                                              " has no statement reading");
  };

  for (const auto &e : g.edges()) {
    const std::string &label = g.label(e.label);
    if (!g.has_edge(e.dst, bar(label), e.src))
      throw Error(ErrorKind::MalformedPeg, "edge without reverse: " + g.display_name(e.src) +
                                               " -" + label + "-> " + g.display_name(e.dst));
    if (label.front() == '-')
      continue;
    const Expr src = Peg::expr_of(e.src);
    const Expr dst = Peg::expr_of(e.dst);
    auto expect = [&](ExprForm sf, ExprForm df) {
      if (src.form != sf || dst.form != df)
        throw malformed(e);
    };
    if (label == "r") {
      expect(ExprForm::Var, ExprForm::Addr);
      program.add(StatementKind::AddressOf, src.variable, dst.variable);
    } else if (label == "s") {
      expect(ExprForm::Var, ExprForm::Var);
      program.add(StatementKind::Assign, src.variable, dst.variable);
    } else if (label == "as") {
      expect(ExprForm::Var, ExprForm::Deref);
      program.add(StatementKind::AssignStar, src.variable, dst.variable);
    } else if (label == "sa") {
      expect(ExprForm::Deref, ExprForm::Var);
      program.add(StatementKind::StarAssign, src.variable, dst.variable);
    } else if (label == "d") {
      const bool ok = src.variable == dst.variable &&
                      ((src.form == ExprForm::Addr && dst.form == ExprForm::Var) ||
                       (src.form == ExprForm::Var && dst.form == ExprForm::Deref));
      if (!ok)
        throw malformed(e);
    } else {
      throw malformed(e);
    }
  }
  return program;
}

} // namespace palab
