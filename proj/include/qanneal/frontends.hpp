// Copyright 2026 The qanneal Authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

/// @file frontends.hpp
/// @brief Problem encoders: max-3-SAT from DIMACS CNF and minimum multicut
/// on trees, each mapped to a pseudo-Boolean objective and decoded back.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qanneal/error.hpp"
#include "qanneal/pbf.hpp"

namespace qanneal {

// ---------------------------------------------------------------------------
// Max-SAT

/// A literal is a signed 1-based variable index; -3 means "not x3".
using Literal = int;

struct CnfFormula {
  std::size_t num_vars = 0;
  std::vector<std::vector<Literal>> clauses;

  std::size_t num_clauses() const noexcept { return clauses.size(); }
};

inline constexpr std::size_t kMaxClauseWidth = 3;

/// Parses DIMACS CNF. Clauses may span lines and must end with 0; a line
/// holding a lone `%` ends the input (SATLIB convention).
inline CnfFormula parse_dimacs(std::string_view text) {
  CnfFormula f;
  bool have_header = false, done = false;
  std::size_t declared = 0, open_line = 0;
  std::vector<Literal> current;
  detail::for_each_line(text, '\0', [&](std::size_t line_no, std::string_view line) {
    if (done) return;
    auto tok = detail::split_ws(line);
    if (tok.empty() || tok[0] == "c" || tok[0].front() == 'c') return;
    if (tok[0] == "%") {
      done = true;
      return;
    }
    if (tok[0] == "p") {
      if (have_header) throw ParseError(line_no, "duplicate problem line");
      if (tok.size() != 4 || tok[1] != "cnf" || !detail::parse_int(tok[2], f.num_vars) ||
          !detail::parse_int(tok[3], declared))
        throw ParseError(line_no, "expected 'p cnf <variables> <clauses>'");
      have_header = true;
      return;
    }
    if (!have_header) throw ParseError(line_no, "clause before problem line");
    for (auto t : tok) {
      long lit = 0;
      if (!detail::parse_int(t, lit)) throw ParseError(line_no, "bad literal '" + std::string(t) + "'");
      if (lit == 0) {
        if (current.empty()) throw ParseError(line_no, "empty clause");
        f.clauses.push_back(std::move(current));
        current.clear();
        continue;
      }
      if (static_cast<std::size_t>(std::labs(lit)) > f.num_vars)
        throw ParseError(line_no, "literal " + std::to_string(lit) + " exceeds variable count");
      if (current.empty()) open_line = line_no;
      current.push_back(static_cast<Literal>(lit));
      if (current.size() > kMaxClauseWidth)
        throw ParseError(line_no, "clause wider than " + std::to_string(kMaxClauseWidth) + " literals");
    }
  });
  if (!have_header) throw ParseError(0, "missing problem line");
  if (!current.empty()) throw ParseError(open_line, "clause not terminated by 0");
  if (f.clauses.size() != declared)
    throw ParseError(0, "header declares " + std::to_string(declared) + " clauses, found " +
                            std::to_string(f.clauses.size()));
  return f;
}

inline std::string render_dimacs(const CnfFormula& f) {
  std::string out = "p cnf " + std::to_string(f.num_vars) + " " + std::to_string(f.clauses.size()) + "\n";
  for (const auto& c : f.clauses) {
    for (Literal l : c) out += std::to_string(l) + " ";
    out += "0\n";
  }
  return out;
}

/// h(x) = sum over clauses of prod over literals of (1 - literal value),
/// i.e. the number of clauses x falsifies.
inline PseudoBooleanFunction encode_maxsat(const CnfFormula& f) {
  PseudoBooleanFunction h;
  h.declare_vars(f.num_vars);
  for (const auto& clause : f.clauses) {
    PseudoBooleanFunction falsified(1.0);
    for (Literal l : clause) {
      auto x = PseudoBooleanFunction::variable(static_cast<Var>(std::abs(l)));
      falsified *= l > 0 ? PseudoBooleanFunction(1.0) - x : x;
    }
    h += falsified;
  }
  return h;
}

inline bool literal_true(Literal l, std::span<const Binary> x) {
  const bool v = x[static_cast<std::size_t>(std::abs(l)) - 1] != 0;
  return l > 0 ? v : !v;
}

inline std::size_t count_satisfied(const CnfFormula& f, std::span<const Binary> x) {
  if (x.size() < f.num_vars)
    throw DimensionError("assignment has " + std::to_string(x.size()) + " values, formula has " +
                         std::to_string(f.num_vars) + " variables");
  return static_cast<std::size_t>(std::count_if(f.clauses.begin(), f.clauses.end(), [&](const auto& c) {
    return std::any_of(c.begin(), c.end(), [&](Literal l) { return literal_true(l, x); });
  }));
}

// ---------------------------------------------------------------------------
// Minimum multicut on trees

struct TreeEdge {
  std::size_t u = 0, v = 0;  ///< 1-based vertices
};

struct TreeMulticutInstance {
  std::size_t num_vertices = 0;
  std::vector<TreeEdge> edges;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
};

namespace detail {

struct TreeAdjacency {
  // adj[v] holds (neighbor, edge index)
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj;

  TreeAdjacency(const TreeMulticutInstance& t) : adj(t.num_vertices + 1) {
    for (std::size_t i = 0; i < t.edges.size(); ++i) {
      adj[t.edges[i].u].push_back({t.edges[i].v, i});
      adj[t.edges[i].v].push_back({t.edges[i].u, i});
    }
  }

  /// Edge index reaching each vertex in a BFS from s, skipping removed edges.
  std::vector<std::size_t> bfs(std::size_t s, const std::vector<bool>& removed = {}) const {
    constexpr std::size_t none = static_cast<std::size_t>(-1);
    std::vector<std::size_t> via(adj.size(), none);
    std::vector<bool> seen(adj.size(), false);
    std::queue<std::size_t> q;
    seen[s] = true;
    q.push(s);
    while (!q.empty()) {
      auto v = q.front();
      q.pop();
      for (auto [w, e] : adj[v]) {
        if (seen[w] || (!removed.empty() && removed[e])) continue;
        seen[w] = true;
        via[w] = e;
        q.push(w);
      }
    }
    via[s] = none - 1;  // marks the root as reached
    return via;
  }
};

}  // namespace detail

/// Checks vertex ranges, edge count n-1, connectivity and pair endpoints.
inline void validate_tree(const TreeMulticutInstance& t) {
  const std::size_t n = t.num_vertices;
  if (n == 0) throw InstanceError("tree has no vertices");
  auto in_range = [&](std::size_t v) { return v >= 1 && v <= n; };
  for (const auto& e : t.edges) {
    if (!in_range(e.u) || !in_range(e.v)) throw InstanceError("edge endpoint out of range");
    if (e.u == e.v) throw InstanceError("self-loop on vertex " + std::to_string(e.u));
  }
  if (t.edges.size() != n - 1)
    throw InstanceError("a tree on " + std::to_string(n) + " vertices needs " + std::to_string(n - 1) +
                        " edges, got " + std::to_string(t.edges.size()));
  auto via = detail::TreeAdjacency(t).bfs(1);
  for (std::size_t v = 1; v <= n; ++v)
    if (via[v] == static_cast<std::size_t>(-1))
      throw InstanceError("graph is disconnected or contains a cycle (vertex " + std::to_string(v) +
                          " unreachable)");
  for (auto [s, tt] : t.pairs) {
    if (!in_range(s) || !in_range(tt)) throw InstanceError("pair endpoint out of range");
    if (s == tt) throw InstanceError("pair endpoints coincide at vertex " + std::to_string(s));
  }
}

/// Format: `tree <n>`, then `e <u> <v>` and `pair <s> <t>` lines; `#`
/// starts a comment.
inline TreeMulticutInstance parse_tree(std::string_view text) {
  TreeMulticutInstance t;
  bool have_header = false;
  detail::for_each_line(text, '#', [&](std::size_t line_no, std::string_view line) {
    auto tok = detail::split_ws(line);
    if (tok.empty()) return;
    auto two = [&](std::size_t& a, std::size_t& b) {
      if (tok.size() != 3 || !detail::parse_int(tok[1], a) || !detail::parse_int(tok[2], b))
        throw ParseError(line_no, "expected '" + std::string(tok[0]) + " <u> <v>'");
    };
    if (tok[0] == "tree") {
      if (have_header) throw ParseError(line_no, "duplicate tree header");
      if (tok.size() != 2 || !detail::parse_int(tok[1], t.num_vertices))
        throw ParseError(line_no, "expected 'tree <vertices>'");
      have_header = true;
      return;
    }
    if (!have_header) throw ParseError(line_no, "missing 'tree <vertices>' header");
    if (tok[0] == "e") {
      TreeEdge e;
      two(e.u, e.v);
      t.edges.push_back(e);
    } else if (tok[0] == "pair") {
      std::size_t s = 0, u = 0;
      two(s, u);
      t.pairs.push_back({s, u});
    } else {
      throw ParseError(line_no, "unknown record '" + std::string(tok[0]) + "'");
    }
  });
  if (!have_header) throw ParseError(0, "missing 'tree <vertices>' header");
  return t;
}

inline std::string render_tree(const TreeMulticutInstance& t) {
  std::string out = "tree " + std::to_string(t.num_vertices) + "\n";
  for (const auto& e : t.edges) out += "e " + std::to_string(e.u) + " " + std::to_string(e.v) + "\n";
  for (auto [s, u] : t.pairs) out += "pair " + std::to_string(s) + " " + std::to_string(u) + "\n";
  return out;
}

/// Edge indices (0-based, ascending) of the unique s-t path.
inline std::vector<std::size_t> tree_path(const TreeMulticutInstance& t, std::size_t s, std::size_t target) {
  detail::TreeAdjacency adj(t);
  auto via = adj.bfs(s);
  std::vector<std::size_t> path;
  for (std::size_t v = target; v != s;) {
    const auto e = via[v];
    path.push_back(e);
    v = t.edges[e].u == v ? t.edges[e].v : t.edges[e].u;
  }
  std::sort(path.begin(), path.end());
  return path;
}

struct MmcEncoding {
  PseudoBooleanFunction objective;  ///< weight + penalty
  PseudoBooleanFunction weight;
  PseudoBooleanFunction penalty;
  double lambda = 0.0;
  /// edge_of_var[j - 1] is the instance edge index carried by x_j.
  std::vector<std::size_t> edge_of_var;
  /// Per pair, the variables on its path.
  std::vector<VarSet> pair_vars;

  std::size_t num_vars() const noexcept { return edge_of_var.size(); }
};

/// x_e = 1 keeps edge e, x_e = 0 cuts it. Only edges on some terminal path
/// get a variable, numbered in input edge order. lambda defaults to the
/// number of pairs.
inline MmcEncoding encode_mmc_tree(const TreeMulticutInstance& t, std::optional<double> lambda = {}) {
  validate_tree(t);
  MmcEncoding enc;
  enc.lambda = lambda.value_or(static_cast<double>(t.pairs.size()));
  if (!(enc.lambda > 0.0) && !t.pairs.empty()) throw DomainError("penalty weight must be positive");

  std::vector<std::vector<std::size_t>> paths;
  std::vector<bool> on_path(t.edges.size(), false);
  for (auto [s, u] : t.pairs) {
    paths.push_back(tree_path(t, s, u));
    for (auto e : paths.back()) on_path[e] = true;
  }
  std::vector<Var> var_of_edge(t.edges.size(), 0);
  for (std::size_t e = 0; e < t.edges.size(); ++e) {
    if (!on_path[e]) continue;
    enc.edge_of_var.push_back(e);
    var_of_edge[e] = static_cast<Var>(enc.edge_of_var.size());
  }

  for (Var j = 1; j <= enc.num_vars(); ++j)
    enc.weight += PseudoBooleanFunction(1.0) - PseudoBooleanFunction::variable(j);
  for (const auto& p : paths) {
    VarSet vars;
    for (auto e : p) vars.push_back(var_of_edge[e]);
    enc.penalty.add_term(vars, enc.lambda);
    enc.pair_vars.push_back(std::move(vars));
  }
  enc.weight.declare_vars(enc.num_vars());
  enc.penalty.declare_vars(enc.num_vars());
  enc.objective = enc.weight + enc.penalty;
  return enc;
}

struct MmcDecoding {
  std::vector<std::size_t> cut;  ///< instance edge indices, ascending
  bool valid = false;            ///< every pair separated
  std::size_t size() const noexcept { return cut.size(); }
};

inline MmcDecoding decode_mmc(const TreeMulticutInstance& t, const MmcEncoding& enc, std::span<const Binary> x) {
  if (x.size() < enc.num_vars())
    throw DimensionError("assignment has " + std::to_string(x.size()) + " values, encoding has " +
                         std::to_string(enc.num_vars()) + " edge variables");
  MmcDecoding out;
  std::vector<bool> removed(t.edges.size(), false);
  for (std::size_t j = 0; j < enc.num_vars(); ++j) {
    if (x[j]) continue;
    removed[enc.edge_of_var[j]] = true;
    out.cut.push_back(enc.edge_of_var[j]);
  }
  std::sort(out.cut.begin(), out.cut.end());
  detail::TreeAdjacency adj(t);
  out.valid = std::all_of(t.pairs.begin(), t.pairs.end(), [&](auto p) {
    return adj.bfs(p.first, removed)[p.second] == static_cast<std::size_t>(-1);
  });
  return out;
}

}  // namespace qanneal
