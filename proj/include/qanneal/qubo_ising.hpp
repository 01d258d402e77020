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

/// @file qubo_ising.hpp
/// @brief QUBO and Ising containers, conversion between them, energies and
/// gauge transformations.
///
/// A Qubo is  sum_i u_i x_i + sum_{i<j} e_ij x_i x_j + constant  over
/// x in {0,1}^n. An IsingModel is  sum_i h_i s_i + sum_{i<j} J_ij s_i s_j
/// over s in {-1,+1}^n plus a separately tracked offset. The two are linked
/// by x_i = (1 + s_i) / 2 and
///   qubo_value(x) == ising_energy(2x - 1) + offset.
/// ising_energy never includes the offset.

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "qanneal/error.hpp"
#include "qanneal/pbf.hpp"

namespace qanneal {

using Spin = std::int8_t;
using VarPair = std::pair<Var, Var>;

/// Canonical unordered pair with first < second.
inline VarPair ordered_pair(Var i, Var j) {
  if (i == j) throw DomainError("quadratic term on a single variable " + std::to_string(i));
  if (i == 0 || j == 0) throw DomainError("variable labels are 1-based; got 0");
  return i < j ? VarPair{i, j} : VarPair{j, i};
}

namespace detail {

template <typename Map, typename Key>
void accumulate(Map& m, const Key& key, double value) {
  if (value == 0.0) return;
  auto [it, inserted] = m.try_emplace(key, value);
  if (!inserted) {
    it->second += value;
    if (it->second == 0.0) m.erase(it);
  }
}

inline void check_spins(std::span<const Spin> s, std::size_t n) {
  if (s.size() < n)
    throw DimensionError("spin vector has " + std::to_string(s.size()) + " entries, model has " +
                         std::to_string(n));
  for (std::size_t i = 0; i < n; ++i)
    if (s[i] != 1 && s[i] != -1)
      throw DomainError("spin " + std::to_string(i + 1) + " is not +1 or -1");
}

}  // namespace detail

class Qubo {
 public:
  Qubo() = default;
  explicit Qubo(std::size_t num_vars) : num_vars_(num_vars) {}

  std::size_t num_vars() const noexcept { return num_vars_; }
  void declare_vars(std::size_t n) noexcept { num_vars_ = std::max(num_vars_, n); }

  void add_linear(Var i, double u) {
    if (i == 0) throw DomainError("variable labels are 1-based; got 0");
    declare_vars(i);
    detail::accumulate(linear_, i, u);
  }
  void add_quadratic(Var i, Var j, double e) {
    auto key = ordered_pair(i, j);
    declare_vars(key.second);
    detail::accumulate(quadratic_, key, e);
  }
  void add_constant(double c) noexcept { constant_ += c; }

  const std::map<Var, double>& linear() const noexcept { return linear_; }
  const std::map<VarPair, double>& quadratic() const noexcept { return quadratic_; }
  double constant() const noexcept { return constant_; }

  double linear(Var i) const {
    auto it = linear_.find(i);
    return it == linear_.end() ? 0.0 : it->second;
  }
  double quadratic(Var i, Var j) const {
    auto it = quadratic_.find(ordered_pair(i, j));
    return it == quadratic_.end() ? 0.0 : it->second;
  }

  double value(std::span<const Binary> x) const {
    if (x.size() < num_vars_) throw DimensionError("assignment shorter than variable count");
    double v = constant_;
    for (const auto& [i, u] : linear_)
      if (x[i - 1]) v += u;
    for (const auto& [p, e] : quadratic_)
      if (x[p.first - 1] && x[p.second - 1]) v += e;
    return v;
  }

  bool operator==(const Qubo&) const = default;

 private:
  std::size_t num_vars_ = 0;
  std::map<Var, double> linear_;
  std::map<VarPair, double> quadratic_;
  double constant_ = 0.0;
};

class IsingModel {
 public:
  IsingModel() = default;
  explicit IsingModel(std::size_t num_vars) : num_vars_(num_vars) {}

  std::size_t num_vars() const noexcept { return num_vars_; }
  void declare_vars(std::size_t n) noexcept { num_vars_ = std::max(num_vars_, n); }

  void add_field(Var i, double h) {
    if (i == 0) throw DomainError("variable labels are 1-based; got 0");
    declare_vars(i);
    detail::accumulate(fields_, i, h);
  }
  void add_coupler(Var i, Var j, double J) {
    auto key = ordered_pair(i, j);
    declare_vars(key.second);
    detail::accumulate(couplers_, key, J);
  }
  void add_offset(double c) noexcept { offset_ += c; }

  const std::map<Var, double>& fields() const noexcept { return fields_; }
  const std::map<VarPair, double>& couplers() const noexcept { return couplers_; }
  double offset() const noexcept { return offset_; }

  double field(Var i) const {
    auto it = fields_.find(i);
    return it == fields_.end() ? 0.0 : it->second;
  }
  double coupler(Var i, Var j) const {
    auto it = couplers_.find(ordered_pair(i, j));
    return it == couplers_.end() ? 0.0 : it->second;
  }

  /// sum h_i s_i + sum J_ij s_i s_j, offset excluded.
  double energy(std::span<const Spin> s) const {
    detail::check_spins(s, num_vars_);
    double e = 0.0;
    for (const auto& [i, h] : fields_) e += h * s[i - 1];
    for (const auto& [p, J] : couplers_) e += J * s[p.first - 1] * s[p.second - 1];
    return e;
  }

  bool operator==(const IsingModel&) const = default;

 private:
  std::size_t num_vars_ = 0;
  std::map<Var, double> fields_;
  std::map<VarPair, double> couplers_;
  double offset_ = 0.0;
};

inline double ising_energy(const IsingModel& m, std::span<const Spin> s) { return m.energy(s); }
inline double qubo_value(const Qubo& q, std::span<const Binary> x) { return q.value(x); }

inline std::vector<Spin> to_spins(std::span<const Binary> x) {
  std::vector<Spin> s(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) s[i] = x[i] ? 1 : -1;
  return s;
}
inline std::vector<Binary> to_binary(std::span<const Spin> s) {
  std::vector<Binary> x(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) x[i] = s[i] > 0 ? 1 : 0;
  return x;
}

/// Splits a degree <= 2 polynomial into linear, quadratic and constant parts.
inline Qubo qubo_from_pbf(const PseudoBooleanFunction& f) {
  if (f.degree() > 2)
    throw ContractViolation("function has degree " + std::to_string(f.degree()) +
                            "; run reduce_to_quadratic first");
  Qubo q(f.num_vars());
  for (const auto& [vars, c] : f.terms()) {
    if (vars.empty())
      q.add_constant(c);
    else if (vars.size() == 1)
      q.add_linear(vars[0], c);
    else
      q.add_quadratic(vars[0], vars[1], c);
  }
  return q;
}

inline PseudoBooleanFunction pbf_from_qubo(const Qubo& q) {
  PseudoBooleanFunction f(q.constant());
  for (const auto& [i, u] : q.linear()) f.add_term({i}, u);
  for (const auto& [p, e] : q.quadratic()) f.add_term({p.first, p.second}, e);
  f.declare_vars(q.num_vars());
  return f;
}

/// Substitutes x_i = (1 + s_i)/2; all constants land in the offset.
inline IsingModel qubo_to_ising(const Qubo& q) {
  IsingModel m(q.num_vars());
  double offset = q.constant();
  for (const auto& [i, u] : q.linear()) {
    m.add_field(i, u / 2.0);
    offset += u / 2.0;
  }
  for (const auto& [p, e] : q.quadratic()) {
    m.add_coupler(p.first, p.second, e / 4.0);
    m.add_field(p.first, e / 4.0);
    m.add_field(p.second, e / 4.0);
    offset += e / 4.0;
  }
  m.add_offset(offset);
  return m;
}

/// Substitutes s_i = 2 x_i - 1; inverse of qubo_to_ising.
inline Qubo ising_to_qubo(const IsingModel& m) {
  Qubo q(m.num_vars());
  double constant = m.offset();
  for (const auto& [i, h] : m.fields()) {
    q.add_linear(i, 2.0 * h);
    constant -= h;
  }
  for (const auto& [p, J] : m.couplers()) {
    q.add_quadratic(p.first, p.second, 4.0 * J);
    q.add_linear(p.first, -2.0 * J);
    q.add_linear(p.second, -2.0 * J);
    constant += J;
  }
  q.add_constant(constant);
  return q;
}

/// Per-variable sign flips a_i; entry i-1 belongs to variable i.
struct GaugeVector {
  std::vector<Spin> a;

  static GaugeVector identity(std::size_t n) { return {std::vector<Spin>(n, 1)}; }

  /// a o s, elementwise.
  std::vector<Spin> apply(std::span<const Spin> s) const {
    if (s.size() > a.size()) throw DomainError("gauge shorter than spin vector");
    std::vector<Spin> out(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) out[i] = static_cast<Spin>(a[i] * s[i]);
    return out;
  }
};

/// h_i -> a_i h_i, J_ij -> a_i a_j J_ij; the offset is unchanged.
inline IsingModel gauge_transform(const IsingModel& m, const GaugeVector& g) {
  if (g.a.size() < m.num_vars())
    throw DomainError("gauge covers " + std::to_string(g.a.size()) + " of " +
                      std::to_string(m.num_vars()) + " variables");
  for (std::size_t i = 0; i < m.num_vars(); ++i)
    if (g.a[i] != 1 && g.a[i] != -1) throw DomainError("gauge entries must be +1 or -1");
  IsingModel out(m.num_vars());
  for (const auto& [i, h] : m.fields()) out.add_field(i, g.a[i - 1] * h);
  for (const auto& [p, J] : m.couplers())
    out.add_coupler(p.first, p.second, g.a[p.first - 1] * g.a[p.second - 1] * J);
  out.add_offset(m.offset());
  return out;
}

/// Compressed adjacency used by the samplers: fields and a symmetric
/// neighbor list, 0-based.
struct IsingAdjacency {
  std::size_t n = 0;
  std::vector<double> h;
  std::vector<std::size_t> start;  ///< size n + 1
  std::vector<std::uint32_t> neighbor;
  std::vector<double> weight;

  explicit IsingAdjacency(const IsingModel& m) : n(m.num_vars()), h(n, 0.0), start(n + 1, 0) {
    for (const auto& [i, hi] : m.fields()) h[i - 1] = hi;
    for (const auto& [p, J] : m.couplers()) {
      ++start[p.first];
      ++start[p.second];
    }
    for (std::size_t i = 0; i < n; ++i) start[i + 1] += start[i];
    neighbor.resize(start[n]);
    weight.resize(start[n]);
    std::vector<std::size_t> fill(start.begin(), start.end() - 1);
    for (const auto& [p, J] : m.couplers()) {
      const std::size_t a = p.first - 1, b = p.second - 1;
      neighbor[fill[a]] = static_cast<std::uint32_t>(b);
      weight[fill[a]++] = J;
      neighbor[fill[b]] = static_cast<std::uint32_t>(a);
      weight[fill[b]++] = J;
    }
  }

  /// h_i + sum_j J_ij s_j
  double local_field(std::size_t i, std::span<const Spin> s) const {
    double f = h[i];
    for (std::size_t k = start[i]; k < start[i + 1]; ++k) f += weight[k] * s[neighbor[k]];
    return f;
  }

  double energy(std::span<const Spin> s) const {
    double e = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double pair = 0.0;
      for (std::size_t k = start[i]; k < start[i + 1]; ++k)
        if (neighbor[k] > i) pair += weight[k] * s[neighbor[k]];
      e += s[i] * (h[i] + pair);
    }
    return e;
  }
};

// Model file format:
//   ising <n> | qubo <n>
//   offset <r>
//   lin <i> <r>
//   quad <i> <j> <r>
// For a QUBO the offset line carries the constant term.

inline std::string render_model(const IsingModel& m) {
  std::ostringstream out;
  out << "ising " << m.num_vars() << '\n' << "offset " << detail::format_real(m.offset()) << '\n';
  for (const auto& [i, h] : m.fields()) out << "lin " << i << ' ' << detail::format_real(h) << '\n';
  for (const auto& [p, J] : m.couplers())
    out << "quad " << p.first << ' ' << p.second << ' ' << detail::format_real(J) << '\n';
  return out.str();
}

inline std::string render_model(const Qubo& q) {
  std::ostringstream out;
  out << "qubo " << q.num_vars() << '\n' << "offset " << detail::format_real(q.constant()) << '\n';
  for (const auto& [i, u] : q.linear()) out << "lin " << i << ' ' << detail::format_real(u) << '\n';
  for (const auto& [p, e] : q.quadratic())
    out << "quad " << p.first << ' ' << p.second << ' ' << detail::format_real(e) << '\n';
  return out.str();
}

inline std::variant<Qubo, IsingModel> parse_model(std::string_view text) {
  enum class Kind { none, qubo, ising } kind = Kind::none;
  Qubo q;
  IsingModel m;
  std::size_t declared = 0;
  detail::for_each_line(text, '#', [&](std::size_t line_no, std::string_view line) {
    auto tok = detail::split_ws(line);
    if (tok.empty()) return;
    auto want = [&](std::size_t n) {
      if (tok.size() != n) throw ParseError(line_no, "expected " + std::to_string(n - 1) + " fields after '" + std::string(tok[0]) + "'");
    };
    auto var = [&](std::string_view t) {
      Var v = 0;
      if (!detail::parse_int(t, v) || v == 0) throw ParseError(line_no, "bad variable index '" + std::string(t) + "'");
      if (v > declared) throw ParseError(line_no, "variable " + std::to_string(v) + " exceeds declared count");
      return v;
    };
    auto real = [&](std::string_view t) {
      double r = 0.0;
      if (!detail::parse_real(t, r)) throw ParseError(line_no, "bad number '" + std::string(t) + "'");
      return r;
    };
    if (kind == Kind::none) {
      if ((tok[0] != "ising" && tok[0] != "qubo") || tok.size() != 2)
        throw ParseError(line_no, "expected header 'ising <n>' or 'qubo <n>'");
      if (!detail::parse_int(tok[1], declared)) throw ParseError(line_no, "bad variable count");
      kind = tok[0] == "ising" ? Kind::ising : Kind::qubo;
      q = Qubo(declared);
      m = IsingModel(declared);
      return;
    }
    try {
      if (tok[0] == "offset") {
        want(2);
        kind == Kind::ising ? m.add_offset(real(tok[1])) : q.add_constant(real(tok[1]));
      } else if (tok[0] == "lin") {
        want(3);
        kind == Kind::ising ? m.add_field(var(tok[1]), real(tok[2])) : q.add_linear(var(tok[1]), real(tok[2]));
      } else if (tok[0] == "quad") {
        want(4);
        Var i = var(tok[1]), j = var(tok[2]);
        kind == Kind::ising ? m.add_coupler(i, j, real(tok[3])) : q.add_quadratic(i, j, real(tok[3]));
      } else {
        throw ParseError(line_no, "unknown record '" + std::string(tok[0]) + "'");
      }
    } catch (const DomainError& e) {
      throw ParseError(line_no, e.what());
    }
  });
  if (kind == Kind::none) throw ParseError(0, "empty model file");
  if (kind == Kind::ising) return m;
  return q;
}

}  // namespace qanneal
