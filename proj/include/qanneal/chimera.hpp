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

/// @file chimera.hpp
/// @brief Chimera topology, minor embedding and chain handling.
///
/// Chimera(M, N, L) is an M x N grid of cells. Each cell holds two shores
/// of L qubits forming a complete bipartite K_{L,L}. Shore-0 qubits couple
/// vertically to the same index in the cell below, shore-1 qubits couple
/// horizontally to the same index in the cell to the right. Qubit ids are
///   ((row * N + col) * 2 + shore) * L + k
/// so in a (1,1,4) cell ids 0-3 form one shore and 4-7 the other.
///
/// Inoperable qubits are removed from the adjacency before anything else
/// looks at the graph; all queries here see only the working graph.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <random>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qanneal/error.hpp"
#include "qanneal/qubo_ising.hpp"
#include "qanneal/random.hpp"

namespace qanneal {

using Qubit = std::uint32_t;

class ChimeraGraph {
 public:
  struct Coord {
    std::size_t row, col, shore, k;
    bool operator==(const Coord&) const = default;
  };

  ChimeraGraph(std::size_t M, std::size_t N, std::size_t L, std::set<Qubit> inoperable = {})
      : M_(M), N_(N), L_(L), inoperable_(std::move(inoperable)) {
    if (M == 0 || N == 0 || L == 0) throw DomainError("Chimera dimensions must be positive");
    const std::size_t total = num_qubits();
    for (Qubit q : inoperable_)
      if (q >= total)
        throw DomainError("inoperable qubit " + std::to_string(q) + " out of range [0, " +
                          std::to_string(total) + ")");
    adjacency_.resize(total);
    for (std::size_t r = 0; r < M; ++r)
      for (std::size_t c = 0; c < N; ++c)
        for (std::size_t k = 0; k < L; ++k) {
          for (std::size_t j = 0; j < L; ++j) connect(qubit(r, c, 0, k), qubit(r, c, 1, j));
          if (r + 1 < M) connect(qubit(r, c, 0, k), qubit(r + 1, c, 0, k));
          if (c + 1 < N) connect(qubit(r, c, 1, k), qubit(r, c + 1, 1, k));
        }
    for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());
  }

  std::size_t rows() const noexcept { return M_; }
  std::size_t cols() const noexcept { return N_; }
  std::size_t shore_size() const noexcept { return L_; }
  std::size_t num_qubits() const noexcept { return 2 * M_ * N_ * L_; }
  const std::set<Qubit>& inoperable() const noexcept { return inoperable_; }

  Qubit qubit(std::size_t row, std::size_t col, std::size_t shore, std::size_t k) const noexcept {
    return static_cast<Qubit>(((row * N_ + col) * 2 + shore) * L_ + k);
  }
  Coord coordinates(Qubit q) const noexcept {
    Coord c{};
    c.k = q % L_;
    std::size_t rest = q / L_;
    c.shore = rest % 2;
    rest /= 2;
    c.col = rest % N_;
    c.row = rest / N_;
    return c;
  }

  bool operable(Qubit q) const noexcept { return q < num_qubits() && !inoperable_.count(q); }
  std::size_t num_operable() const noexcept { return num_qubits() - inoperable_.size(); }

  /// Working-graph neighbors, ascending.
  const std::vector<Qubit>& neighbors(Qubit q) const { return adjacency_.at(q); }

  bool adjacent(Qubit a, Qubit b) const {
    if (a >= num_qubits() || b >= num_qubits()) return false;
    const auto& n = adjacency_[a];
    return std::binary_search(n.begin(), n.end(), b);
  }

  /// Working-graph couplers as (a, b) with a < b.
  std::vector<std::pair<Qubit, Qubit>> couplers() const {
    std::vector<std::pair<Qubit, Qubit>> out;
    for (Qubit a = 0; a < num_qubits(); ++a)
      for (Qubit b : adjacency_[a])
        if (a < b) out.emplace_back(a, b);
    return out;
  }
  std::size_t num_couplers() const {
    std::size_t twice = 0;
    for (const auto& n : adjacency_) twice += n.size();
    return twice / 2;
  }

 private:
  void connect(Qubit a, Qubit b) {
    if (inoperable_.count(a) || inoperable_.count(b)) return;
    adjacency_[a].push_back(b);
    adjacency_[b].push_back(a);
  }

  std::size_t M_, N_, L_;
  std::set<Qubit> inoperable_;
  std::vector<std::vector<Qubit>> adjacency_;
};

inline ChimeraGraph build_chimera(std::size_t M, std::size_t N, std::size_t L,
                                  std::set<Qubit> inoperable = {}) {
  return ChimeraGraph(M, N, L, std::move(inoperable));
}

/// Whitespace-separated qubit ids, `#` comments.
inline std::set<Qubit> parse_qubit_list(std::string_view text) {
  std::set<Qubit> out;
  detail::for_each_line(text, '#', [&](std::size_t line_no, std::string_view line) {
    for (auto tok : detail::split_ws(line)) {
      Qubit q = 0;
      if (!detail::parse_int(tok, q)) throw ParseError(line_no, "bad qubit id '" + std::string(tok) + "'");
      out.insert(q);
    }
  });
  return out;
}

/// Structure of a logical problem: vertices 1..n, an edge wherever J != 0.
struct LogicalGraph {
  std::size_t num_vertices = 0;
  std::vector<VarPair> edges;              ///< canonical, ascending
  std::vector<std::vector<Var>> adjacent;  ///< index v-1

  LogicalGraph() = default;
  LogicalGraph(std::size_t n, std::vector<VarPair> edge_list) : num_vertices(n), adjacent(n) {
    for (auto [a, b] : edge_list) edges.push_back(ordered_pair(a, b));
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    for (auto [a, b] : edges) {
      if (b > n) throw DomainError("edge endpoint " + std::to_string(b) + " exceeds vertex count");
      adjacent[a - 1].push_back(b);
      adjacent[b - 1].push_back(a);
    }
  }

  static LogicalGraph from_ising(const IsingModel& m) {
    std::vector<VarPair> e;
    for (const auto& [p, J] : m.couplers())
      if (J != 0.0) e.push_back(p);
    return LogicalGraph(m.num_vars(), std::move(e));
  }

  std::size_t degree(Var v) const { return adjacent.at(v - 1).size(); }
};

/// Logical vertex -> chain of qubits, logical edge -> one physical coupler.
struct Embedding {
  std::map<Var, std::vector<Qubit>> chains;  ///< qubits ascending
  /// For edge (i, j), i < j: first qubit in chain(i), second in chain(j).
  std::map<VarPair, std::pair<Qubit, Qubit>> edges;

  std::size_t num_qubits() const {
    std::size_t n = 0;
    for (const auto& [v, c] : chains) n += c.size();
    return n;
  }
  std::size_t max_chain_length() const {
    std::size_t m = 0;
    for (const auto& [v, c] : chains) m = std::max(m, c.size());
    return m;
  }
  bool operator==(const Embedding&) const = default;
};

struct EmbeddingViolation {
  enum class Kind {
    missing_chain,
    empty_chain,
    bad_qubit,
    overlap,
    disconnected_chain,
    missing_edge,
    bad_coupler,
    extra_edge,
  };
  Kind kind;
  std::string message;
};

/// Reports every violated embedding condition; an empty result means valid.
inline std::vector<EmbeddingViolation> validate_embedding(const LogicalGraph& g,
                                                          const ChimeraGraph& c,
                                                          const Embedding& e) {
  using K = EmbeddingViolation::Kind;
  std::vector<EmbeddingViolation> out;
  std::map<Qubit, Var> owner;
  for (Var v = 1; v <= g.num_vertices; ++v) {
    auto it = e.chains.find(v);
    if (it == e.chains.end()) {
      out.push_back({K::missing_chain, "vertex " + std::to_string(v) + " has no chain"});
      continue;
    }
    if (it->second.empty()) out.push_back({K::empty_chain, "vertex " + std::to_string(v) + " has an empty chain"});
  }
  for (const auto& [v, chain] : e.chains) {
    for (Qubit q : chain) {
      if (!c.operable(q)) {
        out.push_back({K::bad_qubit, "vertex " + std::to_string(v) + " uses qubit " + std::to_string(q) +
                                         " which is out of range or inoperable"});
        continue;
      }
      auto [it, fresh] = owner.emplace(q, v);
      if (!fresh && it->second != v)
        out.push_back({K::overlap, "qubit " + std::to_string(q) + " shared by vertices " +
                                       std::to_string(it->second) + " and " + std::to_string(v)});
    }
    if (chain.empty()) continue;
    // connectivity inside the chain
    std::set<Qubit> members(chain.begin(), chain.end());
    std::set<Qubit> seen{chain.front()};
    std::vector<Qubit> stack{chain.front()};
    while (!stack.empty()) {
      Qubit q = stack.back();
      stack.pop_back();
      if (!c.operable(q)) continue;
      for (Qubit n : c.neighbors(q))
        if (members.count(n) && seen.insert(n).second) stack.push_back(n);
    }
    if (seen.size() != members.size())
      out.push_back({K::disconnected_chain, "chain of vertex " + std::to_string(v) + " is not connected"});
  }
  auto in_chain = [&](Var v, Qubit q) {
    auto it = e.chains.find(v);
    return it != e.chains.end() && std::binary_search(it->second.begin(), it->second.end(), q);
  };
  for (auto edge : g.edges) {
    auto it = e.edges.find(edge);
    if (it == e.edges.end()) {
      out.push_back({K::missing_edge, "edge {" + std::to_string(edge.first) + "," + std::to_string(edge.second) +
                                          "} has no coupler assigned"});
      continue;
    }
    auto [qa, qb] = it->second;
    if (!in_chain(edge.first, qa) || !in_chain(edge.second, qb) || !c.adjacent(qa, qb))
      out.push_back({K::bad_coupler, "edge {" + std::to_string(edge.first) + "," + std::to_string(edge.second) +
                                         "} assigned to a coupler that does not join its chains"});
  }
  for (const auto& [edge, coupler] : e.edges)
    if (!std::binary_search(g.edges.begin(), g.edges.end(), edge))
      out.push_back({K::extra_edge, "coupler assigned to non-edge {" + std::to_string(edge.first) + "," +
                                        std::to_string(edge.second) + "}"});
  return out;
}

/// Lowest-id coupler joining two chains, if any.
inline std::optional<std::pair<Qubit, Qubit>> lowest_coupler(const ChimeraGraph& c,
                                                             const std::vector<Qubit>& a,
                                                             const std::vector<Qubit>& b) {
  std::optional<std::pair<Qubit, Qubit>> best;
  std::pair<Qubit, Qubit> best_key{};
  for (Qubit qa : a)
    for (Qubit qb : c.neighbors(qa))
      if (std::binary_search(b.begin(), b.end(), qb)) {
        std::pair<Qubit, Qubit> key{std::min(qa, qb), std::max(qa, qb)};
        if (!best || key < best_key) {
          best = std::pair{qa, qb};
          best_key = key;
        }
      }
  return best;
}

/// Fills e.edges with the lowest coupler between each pair of adjacent chains.
inline void assign_edges(const LogicalGraph& g, const ChimeraGraph& c, Embedding& e) {
  e.edges.clear();
  for (auto edge : g.edges) {
    auto ia = e.chains.find(edge.first), ib = e.chains.find(edge.second);
    if (ia == e.chains.end() || ib == e.chains.end()) continue;
    if (auto cp = lowest_coupler(c, ia->second, ib->second)) e.edges[edge] = *cp;
  }
}

struct EmbedOptions {
  std::uint64_t seed = 0;
  std::size_t max_tries = 8;
  std::size_t max_rounds = 64;    ///< reroute passes per try
  std::size_t refine_rounds = 8;  ///< extra passes once chains are disjoint
};

namespace detail {

// Rip-up and reroute. Chains may share qubits while the search runs; a
// qubit already used by k other chains costs base^k, so overlaps are taken
// only when no free route exists and are squeezed out by later passes. A
// vertex is (re)placed by rooting it at the qubit with least summed
// node-weighted distance to its neighbors' chains and taking the union of
// the shortest paths. Returns the overlap-free state with the fewest
// qubits seen, or false if none appeared within max_rounds passes.
inline bool reroute_embed(const LogicalGraph& g, const ChimeraGraph& c, const EmbedOptions& opt, Rng& rng,
                          Embedding& out) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  const std::size_t nq = c.num_qubits();
  const std::size_t n = g.num_vertices;
  constexpr std::size_t kStallRounds = 3;
  const double cap = static_cast<double>(std::max<std::size_t>(nq, 2));
  double base = 2.0;  // grows each pass so early overlaps are cheap, late ones prohibitive
  constexpr double kGrowth = 1.5;

  std::vector<std::vector<Qubit>> chains(n + 1);
  std::vector<std::uint32_t> usage(nq, 0);
  auto weight = [&](Qubit q) { return std::pow(base, static_cast<double>(std::min<std::uint32_t>(usage[q], 40))); };

  std::vector<std::vector<double>> dist;
  std::vector<std::vector<Qubit>> parent;
  using Item = std::pair<double, Qubit>;

  // dist[q]: summed weight of the qubits strictly between the source chain
  // and q; parent[s] == s marks source qubits.
  auto route_from = [&](const std::vector<Qubit>& source, std::vector<double>& d, std::vector<Qubit>& par) {
    d.assign(nq, kInf);
    par.assign(nq, 0);
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
    for (Qubit s : source) {
      d[s] = 0.0;
      par[s] = s;
      heap.push({0.0, s});
    }
    while (!heap.empty()) {
      auto [dq, q] = heap.top();
      heap.pop();
      if (dq > d[q]) continue;
      const double through = dq + (par[q] == q ? 0.0 : weight(q));
      for (Qubit x : c.neighbors(q))
        if (through < d[x]) {
          d[x] = through;
          par[x] = q;
          heap.push({through, x});
        }
    }
  };

  auto place = [&](Var v) {
    for (Qubit q : chains[v]) --usage[q];
    chains[v].clear();
    std::vector<Var> placed;
    for (Var u : g.adjacent[v - 1])
      if (!chains[u].empty()) placed.push_back(u);
    dist.resize(std::max(dist.size(), placed.size()));
    parent.resize(std::max(parent.size(), placed.size()));
    for (std::size_t i = 0; i < placed.size(); ++i) route_from(chains[placed[i]], dist[i], parent[i]);

    std::optional<Qubit> root;
    double best = kInf;
    std::size_t ties = 0;
    for (Qubit q = 0; q < nq; ++q) {
      if (!c.operable(q)) continue;
      double cost = weight(q);
      for (std::size_t i = 0; i < placed.size(); ++i) cost += dist[i][q];
      if (cost > best) continue;
      if (cost < best) {
        best = cost;
        ties = 0;
      }
      if (std::uniform_int_distribution<std::size_t>(0, ties++)(rng) == 0) root = q;
    }
    if (!root || best == kInf) return false;

    std::set<Qubit> chain{*root};
    for (std::size_t i = 0; i < placed.size(); ++i) {
      const auto& par = parent[i];
      for (Qubit x = *root; par[x] != x;) {
        x = par[x];
        if (par[x] == x) break;
        chain.insert(x);
      }
    }
    chains[v].assign(chain.begin(), chain.end());
    for (Qubit q : chain) ++usage[q];
    return true;
  };

  std::vector<Var> order(n);
  std::iota(order.begin(), order.end(), Var{1});
  std::shuffle(order.begin(), order.end(), rng);
  for (Var v : order)
    if (!place(v)) return false;

  std::optional<std::vector<std::vector<Qubit>>> best;
  std::size_t best_size = 0, clean_rounds = 0, stalled = 0;
  std::size_t fewest_overlaps = std::numeric_limits<std::size_t>::max();
  for (std::size_t round = 0; round <= opt.max_rounds; ++round) {
    const auto overlaps = static_cast<std::size_t>(
        std::count_if(usage.begin(), usage.end(), [](std::uint32_t u) { return u > 1; }));
    if (overlaps == 0) {
      const std::size_t size = static_cast<std::size_t>(std::count(usage.begin(), usage.end(), 1u));
      if (!best || size < best_size) {
        best = chains;
        best_size = size;
      }
      if (++clean_rounds > opt.refine_rounds) break;
    }
    if (round == opt.max_rounds) break;
    stalled = overlaps < fewest_overlaps ? 0 : stalled + 1;
    fewest_overlaps = std::min(fewest_overlaps, overlaps);
    base = std::min(cap, base * kGrowth);

    if (overlaps > 0 && stalled >= kStallRounds) {
      // Overloaded qubits can wall each other in so that no single reroute
      // helps; clear every chain touching one and place those vertices anew.
      std::vector<Var> stuck;
      for (Var v = 1; v <= n; ++v)
        if (std::any_of(chains[v].begin(), chains[v].end(), [&](Qubit q) { return usage[q] > 1; }))
          stuck.push_back(v);
      for (Var v : stuck) {
        for (Qubit q : chains[v]) --usage[q];
        chains[v].clear();
      }
      std::shuffle(stuck.begin(), stuck.end(), rng);
      for (Var v : stuck)
        if (!place(v)) return false;
      stalled = 0;
      fewest_overlaps = std::numeric_limits<std::size_t>::max();
      continue;
    }
    std::shuffle(order.begin(), order.end(), rng);
    for (Var v : order)
      if (!place(v)) return false;
  }
  if (!best) return false;

  out = Embedding{};
  for (Var v = 1; v <= n; ++v) out.chains[v] = (*best)[v];
  assign_edges(g, c, out);
  return true;
}

/// Native clique layout on the top-left min(M,N) square: chain (i, k) is
/// the shore-0 qubits k of column i in rows 0..i plus the shore-1 qubits k
/// of row i in columns i..S-1. Any two such chains meet in cell (min, max)
/// of their block indices. Slots touching an inoperable qubit are skipped;
/// returns false when fewer than n slots remain.
inline bool clique_embed(const LogicalGraph& g, const ChimeraGraph& c, Embedding& out) {
  const std::size_t S = std::min(c.rows(), c.cols());
  std::vector<std::vector<Qubit>> slots;
  for (std::size_t i = 0; i < S && slots.size() < g.num_vertices; ++i)
    for (std::size_t k = 0; k < c.shore_size() && slots.size() < g.num_vertices; ++k) {
      std::vector<Qubit> chain;
      for (std::size_t r = 0; r <= i; ++r) chain.push_back(c.qubit(r, i, 0, k));
      for (std::size_t col = i; col < S; ++col) chain.push_back(c.qubit(i, col, 1, k));
      if (!std::all_of(chain.begin(), chain.end(), [&](Qubit q) { return c.operable(q); })) continue;
      std::sort(chain.begin(), chain.end());
      slots.push_back(std::move(chain));
    }
  if (slots.size() < g.num_vertices) return false;
  out = Embedding{};
  for (Var v = 1; v <= g.num_vertices; ++v) out.chains[v] = slots[v - 1];
  assign_edges(g, c, out);
  return true;
}

}  // namespace detail

/// Randomized minor-embedding search. Try t uses the stream (seed, t); the
/// first try that passes validate_embedding is returned. If every try fails
/// the native clique layout is used when the graph fits in it. The result
/// is a pure function of (graph, topology, options).
inline Embedding find_embedding(const LogicalGraph& g, const ChimeraGraph& c, const EmbedOptions& opt = {}) {
  if (g.num_vertices == 0) throw ContractViolation("find_embedding needs a nonempty logical graph");
  for (std::size_t t = 0; t < opt.max_tries; ++t) {
    Rng rng = make_rng(opt.seed, t);
    Embedding e;
    if (detail::reroute_embed(g, c, opt, rng, e) && validate_embedding(g, c, e).empty()) return e;
  }
  if (Embedding e; detail::clique_embed(g, c, e) && validate_embedding(g, c, e).empty()) return e;
  throw EmbeddingNotFound("no embedding of " + std::to_string(g.num_vertices) + " vertices into Chimera(" +
                          std::to_string(c.rows()) + "," + std::to_string(c.cols()) + "," +
                          std::to_string(c.shore_size()) + ") after " + std::to_string(opt.max_tries) +
                          " tries");
}

/// Physical problem obtained by placing a logical model on an embedding.
/// Physical variable k (1-based) is qubit qubits[k-1]; only qubits that
/// belong to some chain are present.
struct EmbeddedIsing {
  IsingModel logical;
  IsingModel physical;
  std::vector<Qubit> qubits;
  double chain_strength = 0.0;
  std::size_t chain_couplers = 0;
  Embedding embedding;

  Var physical_var(Qubit q) const {
    auto it = std::lower_bound(qubits.begin(), qubits.end(), q);
    if (it == qubits.end() || *it != q) throw DomainError("qubit " + std::to_string(q) + " not in embedding");
    return static_cast<Var>(it - qubits.begin() + 1);
  }

  /// Expands a compact physical sample to a vector indexed by qubit id.
  std::vector<Spin> by_qubit(std::span<const Spin> compact, std::size_t num_qubits) const {
    std::vector<Spin> out(num_qubits, 1);
    for (std::size_t k = 0; k < qubits.size(); ++k) out[qubits[k]] = compact[k];
    return out;
  }
};

/// Weight assignment on an embedding: every coupler inside a chain gets -M,
/// a logical field h_i is split evenly over the qubits of chain i, and J_ij
/// sits on the single coupler assigned to edge {i,j}. The physical offset
/// is raised by M per chain coupler so that for unbroken samples
/// physical energy + physical offset == logical energy + logical offset.
inline EmbeddedIsing embed_weights(const IsingModel& m, const Embedding& e, const ChimeraGraph& c,
                                   double chain_strength) {
  if (!(chain_strength > 0.0)) throw DomainError("chain strength must be positive");
  const LogicalGraph g = LogicalGraph::from_ising(m);
  if (auto v = validate_embedding(g, c, e); !v.empty())
    throw ContractViolation("invalid embedding: " + v.front().message);

  EmbeddedIsing out;
  out.logical = m;
  out.embedding = e;
  out.chain_strength = chain_strength;
  for (const auto& [v, chain] : e.chains) out.qubits.insert(out.qubits.end(), chain.begin(), chain.end());
  std::sort(out.qubits.begin(), out.qubits.end());
  out.physical = IsingModel(out.qubits.size());

  for (const auto& [v, chain] : e.chains) {
    const double share = m.field(v) / static_cast<double>(chain.size());
    for (Qubit q : chain) {
      if (share != 0.0) out.physical.add_field(out.physical_var(q), share);
      for (Qubit n : c.neighbors(q))
        if (n > q && std::binary_search(chain.begin(), chain.end(), n)) {
          out.physical.add_coupler(out.physical_var(q), out.physical_var(n), -chain_strength);
          ++out.chain_couplers;
        }
    }
  }
  for (const auto& [p, J] : m.couplers()) {
    auto [qa, qb] = e.edges.at(p);
    out.physical.add_coupler(out.physical_var(qa), out.physical_var(qb), J);
  }
  out.physical.add_offset(m.offset() + chain_strength * static_cast<double>(out.chain_couplers));
  return out;
}

/// max(1, max_i (|h_i| + sum_j |J_ij|)) + 1. Exceeds the total external
/// weight any chain can see, so flipping the disagreeing part of a broken
/// chain always lowers the energy.
inline double default_chain_strength(const IsingModel& m) {
  if (m.num_vars() == 0) throw ContractViolation("default_chain_strength needs a nonempty model");
  std::vector<double> load(m.num_vars() + 1, 0.0);
  for (const auto& [i, h] : m.fields()) load[i] += std::abs(h);
  for (const auto& [p, J] : m.couplers()) {
    load[p.first] += std::abs(J);
    load[p.second] += std::abs(J);
  }
  return std::max(1.0, *std::max_element(load.begin(), load.end())) + 1.0;
}

struct UnembedResult {
  std::vector<Spin> spins;   ///< index v-1
  std::vector<bool> broken;  ///< index v-1
  std::size_t num_broken = 0;
};

/// Chain readout by majority vote, ties resolved to +1. Chains whose
/// qubits disagree are flagged broken.
inline UnembedResult unembed(std::span<const Spin> by_qubit, const Embedding& e) {
  UnembedResult r;
  const std::size_t n = e.chains.empty() ? 0 : e.chains.rbegin()->first;
  r.spins.assign(n, 1);
  r.broken.assign(n, false);
  for (const auto& [v, chain] : e.chains) {
    int sum = 0;
    for (Qubit q : chain) {
      if (q >= by_qubit.size()) throw DimensionError("sample does not cover qubit " + std::to_string(q));
      sum += by_qubit[q];
    }
    const bool broken = static_cast<std::size_t>(std::abs(sum)) != chain.size();
    r.spins[v - 1] = sum >= 0 ? 1 : -1;
    r.broken[v - 1] = broken;
    r.num_broken += broken;
  }
  return r;
}

// Embedding file: `chain <v> <qubits...>` and `edge <i> <j> <qa> <qb>`.

inline std::string render_embedding(const Embedding& e) {
  std::ostringstream out;
  for (const auto& [v, chain] : e.chains) {
    out << "chain " << v;
    for (Qubit q : chain) out << ' ' << q;
    out << '\n';
  }
  for (const auto& [p, cp] : e.edges)
    out << "edge " << p.first << ' ' << p.second << ' ' << cp.first << ' ' << cp.second << '\n';
  return out.str();
}

inline Embedding parse_embedding(std::string_view text) {
  Embedding e;
  detail::for_each_line(text, '#', [&](std::size_t line_no, std::string_view line) {
    auto tok = detail::split_ws(line);
    if (tok.empty()) return;
    auto num = [&](std::string_view t) {
      std::uint32_t v = 0;
      if (!detail::parse_int(t, v)) throw ParseError(line_no, "bad integer '" + std::string(t) + "'");
      return v;
    };
    if (tok[0] == "chain") {
      if (tok.size() < 3) throw ParseError(line_no, "chain needs a vertex and at least one qubit");
      Var v = num(tok[1]);
      if (v == 0) throw ParseError(line_no, "vertex labels are 1-based");
      std::vector<Qubit> chain;
      for (std::size_t i = 2; i < tok.size(); ++i) chain.push_back(num(tok[i]));
      std::sort(chain.begin(), chain.end());
      e.chains[v] = std::move(chain);
    } else if (tok[0] == "edge") {
      if (tok.size() != 5) throw ParseError(line_no, "edge needs <i> <j> <qa> <qb>");
      Var i = num(tok[1]), j = num(tok[2]);
      Qubit qa = num(tok[3]), qb = num(tok[4]);
      if (i == j || i == 0 || j == 0) throw ParseError(line_no, "bad edge endpoints");
      if (i > j) {
        std::swap(i, j);
        std::swap(qa, qb);
      }
      e.edges[{i, j}] = {qa, qb};
    } else {
      throw ParseError(line_no, "unknown record '" + std::string(tok[0]) + "'");
    }
  });
  return e;
}

}  // namespace qanneal
