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

// Reference computations used as expected values by the tests. Each one is
// written independently of the library routine it checks: plain loops
// instead of Gray codes, dense matrices instead of sparse maps, recursive
// DFS instead of BFS.

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qanneal/qanneal.hpp"

namespace oracle {

inline std::string read_data(const std::string& name) {
  std::ifstream in(std::string(QANNEAL_DATA_DIR) + "/" + name);
  if (!in) throw std::runtime_error("missing data file " + name);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

/// Calls fn(x) for every x in {0,1}^n, x[0] the least significant bit.
inline void for_each_assignment(std::size_t n, const std::function<void(const std::vector<std::uint8_t>&)>& fn) {
  std::vector<std::uint8_t> x(n, 0);
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << n); ++code) {
    for (std::size_t i = 0; i < n; ++i) x[i] = (code >> i) & 1u;
    fn(x);
  }
}

inline std::vector<std::int8_t> spins_of(const std::vector<std::uint8_t>& x) {
  std::vector<std::int8_t> s(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) s[i] = x[i] ? 1 : -1;
  return s;
}

/// Sum over monomials, each evaluated as a product of x values.
inline double poly_value(const qanneal::PseudoBooleanFunction& f, const std::vector<std::uint8_t>& x) {
  double total = 0.0;
  for (const auto& m : f.monomials()) {
    double term = m.coefficient;
    for (auto v : m.vars) term *= x.at(v - 1);
    total += term;
  }
  return total;
}

struct PolyMin {
  double value = std::numeric_limits<double>::infinity();
  std::size_t count = 0;
  std::vector<std::vector<std::uint8_t>> argmins;
};

inline PolyMin poly_minimum(const qanneal::PseudoBooleanFunction& f, std::size_t n, double tol = 1e-9) {
  PolyMin r;
  for_each_assignment(n, [&](const auto& x) {
    const double v = poly_value(f, x);
    if (v < r.value - tol) {
      r = {v, 0, {}};
    }
    if (std::abs(v - r.value) <= tol) {
      ++r.count;
      r.argmins.push_back(x);
    }
  });
  return r;
}

/// min over auxiliary variables n+1..total of f(x, w) for a fixed x, for a
/// quadratic f without aux-aux products: probe each aux's slope
/// f(x, e_a) - f(x, 0) and take the negative ones.
inline double min_over_aux(const qanneal::PseudoBooleanFunction& f, const std::vector<std::uint8_t>& x,
                           std::size_t total) {
  std::vector<std::uint8_t> full(x);
  full.resize(total, 0);
  const double base = poly_value(f, full);
  double best = base;
  for (std::size_t a = x.size(); a < total; ++a) {
    full[a] = 1;
    best += std::min(0.0, poly_value(f, full) - base);
    full[a] = 0;
  }
  return best;
}

inline bool has_aux_aux_term(const qanneal::PseudoBooleanFunction& f, std::size_t n) {
  for (const auto& m : f.monomials()) {
    std::size_t aux = 0;
    for (auto v : m.vars) aux += v > n;
    if (aux > 1) return true;
  }
  return false;
}

struct DenseIsing {
  std::size_t n = 0;
  std::vector<double> h;
  std::vector<std::vector<double>> J;  // upper triangle used
  double offset = 0.0;

  explicit DenseIsing(const qanneal::IsingModel& m)
      : n(m.num_vars()), h(n, 0.0), J(n, std::vector<double>(n, 0.0)), offset(m.offset()) {
    for (const auto& [i, v] : m.fields()) h[i - 1] = v;
    for (const auto& [p, v] : m.couplers()) J[p.first - 1][p.second - 1] = v;
  }

  double energy(const std::vector<std::int8_t>& s) const {
    double e = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      e += h[i] * s[i];
      for (std::size_t j = i + 1; j < n; ++j) e += J[i][j] * s[i] * s[j];
    }
    return e;
  }
};

struct DenseQubo {
  std::size_t n = 0;
  std::vector<std::vector<double>> Q;  // diagonal = linear
  double constant = 0.0;

  explicit DenseQubo(const qanneal::Qubo& q)
      : n(q.num_vars()), Q(n, std::vector<double>(n, 0.0)), constant(q.constant()) {
    for (const auto& [i, v] : q.linear()) Q[i - 1][i - 1] = v;
    for (const auto& [p, v] : q.quadratic()) Q[p.first - 1][p.second - 1] = v;
  }

  double value(const std::vector<std::uint8_t>& x) const {
    double e = constant;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) e += Q[i][j] * x[i] * x[j];
    return e;
  }
};

struct IsingGround {
  double energy = std::numeric_limits<double>::infinity();
  std::vector<std::vector<std::int8_t>> states;
};

inline IsingGround ising_ground(const qanneal::IsingModel& m, double tol = 1e-9) {
  const DenseIsing d(m);
  IsingGround g;
  for_each_assignment(d.n, [&](const auto& x) {
    auto s = spins_of(x);
    const double e = d.energy(s);
    if (e < g.energy - tol) {
      g.energy = e;
      g.states.clear();
    }
    if (std::abs(e - g.energy) <= tol) g.states.push_back(s);
  });
  return g;
}

/// Same as ising_ground but walks a Gray code, updating the energy by one
/// spin flip per step; usable up to ~24 spins.
inline IsingGround ising_ground_gray(const qanneal::IsingModel& m, double tol = 1e-9) {
  const DenseIsing d(m);
  std::vector<std::int8_t> s(d.n, -1);
  double e = d.energy(s);
  IsingGround g;
  const std::uint64_t states = std::uint64_t{1} << d.n;
  for (std::uint64_t k = 0; k < states; ++k) {
    if (k > 0) {
      const auto i = static_cast<std::size_t>(std::countr_zero(k));
      double field = d.h[i];
      for (std::size_t j = 0; j < d.n; ++j)
        if (j != i) field += (i < j ? d.J[i][j] : d.J[j][i]) * s[j];
      e -= 2.0 * s[i] * field;
      s[i] = static_cast<std::int8_t>(-s[i]);
    }
    if (e < g.energy - tol) {
      g.energy = e;
      g.states.clear();
    }
    if (std::abs(e - g.energy) <= tol) g.states.push_back(s);
  }
  return g;
}

inline std::size_t unsatisfied(const std::vector<std::vector<int>>& clauses, const std::vector<std::uint8_t>& x) {
  std::size_t bad = 0;
  for (const auto& c : clauses) {
    bool sat = false;
    for (int l : c) sat = sat || (l > 0 ? x[l - 1] == 1 : x[-l - 1] == 0);
    bad += !sat;
  }
  return bad;
}

/// Edge indices on the s-t path, by recursive DFS.
inline std::vector<std::size_t> dfs_path(const qanneal::TreeMulticutInstance& t, std::size_t s, std::size_t target) {
  std::vector<std::size_t> stack;
  std::function<bool(std::size_t, std::size_t)> go = [&](std::size_t v, std::size_t from) {
    if (v == target) return true;
    for (std::size_t i = 0; i < t.edges.size(); ++i) {
      const auto& e = t.edges[i];
      if (i == from || (e.u != v && e.v != v)) continue;
      stack.push_back(i);
      if (go(e.u == v ? e.v : e.u, i)) return true;
      stack.pop_back();
    }
    return false;
  };
  go(s, static_cast<std::size_t>(-1));
  std::sort(stack.begin(), stack.end());
  return stack;
}

/// Random Ising model with integer-valued weights in [-range, range].
inline qanneal::IsingModel random_ising(std::size_t n, double density, int range, qanneal::Rng& rng) {
  qanneal::IsingModel m(n);
  std::uniform_int_distribution<int> w(-range, range);
  for (qanneal::Var i = 1; i <= n; ++i) {
    m.add_field(i, w(rng));
    for (qanneal::Var j = i + 1; j <= n; ++j)
      if (qanneal::uniform01(rng) < density) m.add_coupler(i, j, w(rng));
  }
  return m;
}

}  // namespace oracle
