#pragma once

// Line-oriented text formats: .pa programs, .lg labeled graphs, .bm
// matrices, .cfg grammars, .sol solutions and .map provenance tables. '#'
// starts a comment in every format except .map, where it is only honoured at
// the start of a line.

#include <algorithm>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "palab/core.hpp"

namespace palab {

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos)
    return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

inline std::string_view strip_comment(std::string_view line) {
  const auto hash = line.find('#');
  return trim(hash == std::string_view::npos ? line : line.substr(0, hash));
}

inline std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto nl = text.find('\n', start);
    if (nl == std::string_view::npos) {
      if (start < text.size())
        lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  return lines;
}

inline std::vector<std::string> tokens(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  for (std::string tok; in >> tok;)
    out.push_back(tok);
  return out;
}

inline Error parse_error(std::size_t line, const std::string &msg) {
  return Error(ErrorKind::Parse, "line " + std::to_string(line) + ": " + msg);
}

inline bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

} // namespace detail

// Programs -------------------------------------------------------------------

/// Accepts `a = &b`, `a = b`, `a = *b` and `*a = b`; several statements may
/// share a line when separated by ';'.
inline Program parse_program(std::string_view text) {
  Program program;
  const auto lines = detail::split_lines(text);
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    std::string_view rest = detail::strip_comment(lines[ln]);
    while (!rest.empty()) {
      const auto semi = rest.find(';');
      std::string_view stmt = detail::trim(rest.substr(0, semi));
      rest = semi == std::string_view::npos ? std::string_view{} : rest.substr(semi + 1);
      if (stmt.empty())
        continue;
      const auto err = [&](const std::string &why) {
        return detail::parse_error(ln + 1, why + " in '" + std::string(stmt) + "'");
      };
      const auto eq = stmt.find('=');
      if (eq == std::string_view::npos || stmt.find('=', eq + 1) != std::string_view::npos)
        throw err("expected exactly one '='");
      std::string_view lhs = detail::trim(stmt.substr(0, eq));
      std::string_view rhs = detail::trim(stmt.substr(eq + 1));
      const bool lhs_star = !lhs.empty() && lhs.front() == '*';
      if (lhs_star)
        lhs = detail::trim(lhs.substr(1));
      char op = 0;
      if (!rhs.empty() && (rhs.front() == '&' || rhs.front() == '*')) {
        op = rhs.front();
        rhs = detail::trim(rhs.substr(1));
      }
      if (!is_identifier(lhs) || !is_identifier(rhs))
        throw err("not a normalized statement");
      StatementKind kind;
      if (lhs_star) {
        if (op != 0)
          throw err("not a normalized statement");
        kind = StatementKind::StarAssign;
      } else if (op == '&') {
        kind = StatementKind::AddressOf;
      } else if (op == '*') {
        kind = StatementKind::AssignStar;
      } else {
        kind = StatementKind::Assign;
      }
      program.add(kind, lhs, rhs);
    }
  }
  return program;
}

inline std::string serialize_program(const Program &program) {
  std::string out;
  for (const auto &s : program.statements())
    out += to_string(program, s) + "\n";
  return out;
}

// Labeled graphs ---------------------------------------------------------------

/// Header `nodes <n>`, optional `names <name...>` and `alphabet <label...>`
/// lines, then `<src> <label> <dst>` edges. Without a names line, node tokens
/// are either all decimal ids or all names; names get dense ids in order of
/// first appearance and unmentioned nodes are named n<id>.
inline LabeledDigraph parse_graph(std::string_view text) {
  const auto lines = detail::split_lines(text);
  std::optional<std::size_t> n;
  std::vector<std::string> names;
  bool have_names_line = false;
  std::vector<std::string> alphabet;
  struct RawEdge {
    std::string src, label, dst;
    std::size_t line;
  };
  std::vector<RawEdge> raw;

  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    const auto toks = detail::tokens(detail::strip_comment(lines[ln]));
    if (toks.empty())
      continue;
    if (!n) {
      if (toks.size() != 2 || toks[0] != "nodes" || !detail::all_digits(toks[1]))
        throw detail::parse_error(ln + 1, "expected 'nodes <n>' header");
      n = std::stoull(toks[1]);
      continue;
    }
    if (toks[0] == "names" && raw.empty() && !have_names_line) {
      have_names_line = true;
      names.assign(toks.begin() + 1, toks.end());
      if (names.size() != *n)
        throw detail::parse_error(ln + 1, "names line lists " + std::to_string(names.size()) +
                                              " names for " + std::to_string(*n) + " nodes");
      continue;
    }
    if (toks[0] == "alphabet" && raw.empty() && alphabet.empty()) {
      alphabet.assign(toks.begin() + 1, toks.end());
      continue;
    }
    if (toks.size() != 3)
      throw detail::parse_error(ln + 1, "expected '<src> <label> <dst>'");
    raw.push_back({toks[0], toks[1], toks[2], ln + 1});
  }
  if (!n)
    throw Error(ErrorKind::Parse, "missing 'nodes <n>' header");

  LabeledDigraph g(*n);
  for (const auto &l : alphabet)
    g.declare_label(l);

  if (have_names_line) {
    g.set_names(names);
    if (std::set<std::string>(names.begin(), names.end()).size() != names.size())
      throw Error(ErrorKind::Parse, "duplicate node name");
    for (const auto &e : raw) {
      auto s = g.find_node(e.src), d = g.find_node(e.dst);
      if (!s || !d)
        throw detail::parse_error(e.line, "unknown node '" + (s ? e.dst : e.src) + "'");
      g.add_edge(*s, e.label, *d);
    }
    return g;
  }

  std::optional<bool> numeric;
  for (const auto &e : raw)
    for (const auto *tok : {&e.src, &e.dst}) {
      const bool digits = detail::all_digits(*tok);
      if (numeric && *numeric != digits)
        throw detail::parse_error(e.line, "node tokens mix ids and names");
      numeric = digits;
    }

  if (numeric.value_or(true)) {
    for (const auto &e : raw) {
      const auto s = std::stoull(e.src), d = std::stoull(e.dst);
      if (s >= *n || d >= *n)
        throw detail::parse_error(e.line, "node id out of range (nodes " + std::to_string(*n) + ")");
      g.add_edge(static_cast<NodeId>(s), e.label, static_cast<NodeId>(d));
    }
    return g;
  }

  std::unordered_map<std::string, NodeId> ids;
  std::vector<std::string> assigned;
  auto resolve = [&](const std::string &tok, std::size_t line) {
    if (auto it = ids.find(tok); it != ids.end())
      return it->second;
    if (!is_identifier(tok))
      throw detail::parse_error(line, "invalid node name '" + tok + "'");
    if (assigned.size() >= *n)
      throw detail::parse_error(line, "more than " + std::to_string(*n) + " distinct nodes");
    const NodeId id = static_cast<NodeId>(assigned.size());
    ids.emplace(tok, id);
    assigned.push_back(tok);
    return id;
  };
  std::vector<std::tuple<NodeId, std::string, NodeId>> resolved;
  for (const auto &e : raw) {
    const NodeId s = resolve(e.src, e.line);
    const NodeId d = resolve(e.dst, e.line);
    resolved.emplace_back(s, e.label, d);
  }
  for (std::size_t i = assigned.size(); i < *n; ++i) {
    std::string fill = "n" + std::to_string(i);
    if (ids.count(fill))
      throw Error(ErrorKind::Parse, "filler name '" + fill + "' collides with a node name");
    assigned.push_back(fill);
  }
  g.set_names(std::move(assigned));
  for (const auto &[s, label, d] : resolved)
    g.add_edge(s, label, d);
  return g;
}

/// Canonical form: header, names and alphabet lines when non-empty, then
/// edges in (src, label id, dst) order.
inline std::string serialize_graph(const LabeledDigraph &g) {
  std::string out = "nodes " + std::to_string(g.node_count()) + "\n";
  if (g.has_names() && g.node_count() > 0) {
    out += "names";
    for (NodeId v = 0; v < g.node_count(); ++v)
      out += " " + (g.names()[v].empty() ? "n" + std::to_string(v) : g.names()[v]);
    out += "\n";
  }
  if (!g.alphabet().empty()) {
    out += "alphabet";
    for (const auto &l : g.alphabet())
      out += " " + l;
    out += "\n";
  }
  for (const auto &e : g.edges())
    out += g.display_name(e.src) + " " + g.label(e.label) + " " + g.display_name(e.dst) + "\n";
  return out;
}

// Matrices -------------------------------------------------------------------

inline BooleanMatrix parse_matrix(std::string_view text) {
  const auto lines = detail::split_lines(text);
  std::optional<std::size_t> n;
  std::vector<std::string_view> rows;
  std::vector<std::size_t> row_lines;
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    const auto line = detail::strip_comment(lines[ln]);
    if (line.empty())
      continue;
    if (!n) {
      if (!detail::all_digits(line) || std::stoull(std::string(line)) == 0)
        throw detail::parse_error(ln + 1, "expected a positive dimension");
      n = std::stoull(std::string(line));
      continue;
    }
    rows.push_back(line);
    row_lines.push_back(ln + 1);
  }
  if (!n)
    throw Error(ErrorKind::Parse, "missing matrix dimension");
  if (rows.size() != *n)
    throw Error(ErrorKind::Parse, "expected " + std::to_string(*n) + " rows, found " +
                                      std::to_string(rows.size()));
  BooleanMatrix m(*n);
  for (std::size_t i = 0; i < *n; ++i) {
    if (rows[i].size() != *n)
      throw detail::parse_error(row_lines[i], "ragged row: expected " + std::to_string(*n) +
                                                  " entries, found " + std::to_string(rows[i].size()));
    for (std::size_t j = 0; j < *n; ++j) {
      const char c = rows[i][j];
      if (c != '0' && c != '1')
        throw detail::parse_error(row_lines[i], std::string("bad matrix character '") + c + "'");
      m.set(i, j, c == '1');
    }
  }
  return m;
}

inline std::string serialize_matrix(const BooleanMatrix &m) {
  std::string out = std::to_string(m.size()) + "\n";
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j)
      out += m.get(i, j) ? '1' : '0';
    out += "\n";
  }
  return out;
}

// Grammars -------------------------------------------------------------------

inline Grammar parse_grammar(std::string_view text) {
  const auto lines = detail::split_lines(text);
  std::optional<std::string> start;
  std::optional<std::vector<std::string>> terminals;
  std::vector<Production> productions;
  std::vector<std::size_t> production_lines;
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    const auto toks = detail::tokens(detail::strip_comment(lines[ln]));
    if (toks.empty())
      continue;
    if (toks[0] == "start") {
      if (toks.size() != 2 || start)
        throw detail::parse_error(ln + 1, "expected a single 'start <S>' line");
      start = toks[1];
    } else if (toks[0] == "terminals") {
      if (terminals)
        throw detail::parse_error(ln + 1, "duplicate terminals line");
      terminals.emplace(toks.begin() + 1, toks.end());
    } else if (toks.size() >= 2 && toks[1] == "->") {
      std::vector<std::string> body;
      auto flush = [&] {
        if (body.size() == 1 && body[0] == "eps")
          body.clear();
        else if (std::find(body.begin(), body.end(), "eps") != body.end() || body.empty())
          throw detail::parse_error(ln + 1, "'eps' must stand alone in an alternative");
        productions.push_back({toks[0], body});
        production_lines.push_back(ln + 1);
        body.clear();
      };
      for (std::size_t i = 2; i < toks.size(); ++i) {
        if (toks[i] == "|")
          flush();
        else
          body.push_back(toks[i]);
      }
      flush();
    } else {
      throw detail::parse_error(ln + 1, "unrecognized grammar line");
    }
  }
  if (!start)
    throw Error(ErrorKind::Parse, "grammar is missing a 'start' line");
  std::set<std::string> lhs{*start};
  for (const auto &p : productions)
    lhs.insert(p.lhs);
  const std::vector<std::string> terms = terminals.value_or(std::vector<std::string>{});
  for (std::size_t i = 0; i < productions.size(); ++i)
    for (const auto &s : productions[i].rhs)
      if (!lhs.count(s) && std::find(terms.begin(), terms.end(), s) == terms.end())
        throw detail::parse_error(production_lines[i], "undeclared symbol '" + s + "'");
  try {
    return make_grammar(terms, *start, std::move(productions));
  } catch (const Error &e) {
    throw Error(ErrorKind::Parse, e.what());
  }
}

inline std::string serialize_grammar(const Grammar &g) {
  std::string out = "start " + g.start + "\nterminals";
  for (const auto &t : g.terminals)
    out += " " + t;
  out += "\n";
  for (const auto &p : g.productions) {
    out += p.lhs + " ->";
    if (p.rhs.empty())
      out += " eps";
    for (const auto &s : p.rhs)
      out += " " + s;
    out += "\n";
  }
  return out;
}

// Solutions and maps -----------------------------------------------------------

/// `pt(v) = { a, b }` per variable, variables and members in lexicographic
/// order.
inline std::string serialize_solution(const PointsToSolution &sol) {
  std::vector<std::pair<std::string, VarId>> vars;
  for (std::uint32_t i = 0; i < sol.variable_count(); ++i)
    vars.emplace_back(sol.names()[i], VarId{i});
  std::sort(vars.begin(), vars.end());
  std::string out;
  for (const auto &[name, id] : vars) {
    out += "pt(" + name + ") = {";
    const auto members = sol.members(id);
    for (std::size_t i = 0; i < members.size(); ++i)
      out += (i ? ", " : " ") + members[i];
    out += members.empty() ? " }\n" : " }\n";
  }
  return out;
}

inline std::string serialize_map(const ReductionMap &map) {
  std::string out;
  for (const auto &e : map.entries())
    out += e.source + "\t" + e.role + "\t" + e.target + "\n";
  return out;
}

inline ReductionMap parse_map(std::string_view text) {
  ReductionMap map;
  const auto lines = detail::split_lines(text);
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    std::string_view line = lines[ln];
    if (!line.empty() && line.back() == '\r')
      line.remove_suffix(1);
    if (detail::trim(line).empty() || line.front() == '#')
      continue;
    const auto a = line.find('\t');
    const auto b = a == std::string_view::npos ? a : line.find('\t', a + 1);
    if (b == std::string_view::npos || line.find('\t', b + 1) != std::string_view::npos)
      throw detail::parse_error(ln + 1, "expected three tab-separated fields");
    map.add(std::string(line.substr(0, a)), std::string(line.substr(a + 1, b - a - 1)),
            std::string(line.substr(b + 1)));
  }
  return map;
}

} // namespace palab
