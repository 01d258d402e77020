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

/// @file pbf.hpp
/// @brief Multilinear pseudo-Boolean polynomials over binary variables.
///
/// A PseudoBooleanFunction is the sum over subsets S of alpha_S * prod x_j,
/// j in S. Variables carry 1-based labels; products are normalized with
/// x * x = x so every stored monomial is multilinear. Terms are kept in
/// canonical order (degree, then lexicographic variable set) which makes
/// rendering deterministic.

#pragma once

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "qanneal/error.hpp"

namespace qanneal {

/// 1-based variable label.
using Var = std::uint32_t;
/// Sorted, duplicate-free set of variable labels.
using VarSet = std::vector<Var>;
/// One coordinate of a 0/1 assignment; any nonzero value reads as 1.
using Binary = std::uint8_t;

struct Monomial {
  double coefficient = 0.0;
  VarSet vars;

  std::size_t degree() const noexcept { return vars.size(); }
  bool operator==(const Monomial&) const = default;
};

/// Canonical term order: lower degree first, ties broken lexicographically.
struct VarSetLess {
  bool operator()(const VarSet& a, const VarSet& b) const noexcept {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

namespace detail {

inline VarSet canonical_vars(VarSet vars) {
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  if (!vars.empty() && vars.front() == 0)
    throw DomainError("variable labels are 1-based; got 0");
  return vars;
}

inline VarSet merge_vars(const VarSet& a, const VarSet& b) {
  VarSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                 std::back_inserter(out));
  return out;
}

/// Shortest decimal string that parses back to the same double.
inline std::string format_real(double value) {
  if (value == 0.0) value = 0.0;  // drop negative zero
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, end);
}

inline bool parse_real(std::string_view token, double& out) {
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
  return ec == std::errc() && ptr == token.data() + token.size();
}

template <typename Int>
bool parse_int(std::string_view token, Int& out) {
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
  return ec == std::errc() && ptr == token.data() + token.size();
}

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

/// Calls fn(line_number, content) for each line with comments stripped.
template <typename Fn>
void for_each_line(std::string_view text, char comment, Fn&& fn) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (auto c = line.find(comment); c != std::string_view::npos) line = line.substr(0, c);
    fn(line_no, line);
  }
}

}  // namespace detail

class PseudoBooleanFunction {
 public:
  using TermMap = std::map<VarSet, double, VarSetLess>;

  PseudoBooleanFunction() = default;
  explicit PseudoBooleanFunction(double constant) { add_term({}, constant); }

  /// The single-variable function x_v.
  static PseudoBooleanFunction variable(Var v) {
    PseudoBooleanFunction f;
    f.add_term({v}, 1.0);
    return f;
  }

  /// Sums the given monomials, merging equal variable sets and dropping
  /// zero coefficients. num_vars is raised to at least the largest label.
  static PseudoBooleanFunction from_terms(std::span<const Monomial> terms,
                                          std::size_t num_vars = 0) {
    PseudoBooleanFunction f;
    for (const auto& t : terms) f.add_term(t.vars, t.coefficient);
    f.declare_vars(num_vars);
    return f;
  }

  std::size_t num_vars() const noexcept { return num_vars_; }
  void declare_vars(std::size_t n) noexcept { num_vars_ = std::max(num_vars_, n); }

  const TermMap& terms() const noexcept { return terms_; }
  std::size_t num_terms() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  std::vector<Monomial> monomials() const {
    std::vector<Monomial> out;
    out.reserve(terms_.size());
    for (const auto& [vars, c] : terms_) out.push_back({c, vars});
    return out;
  }

  double coefficient(const VarSet& vars) const {
    auto it = terms_.find(detail::canonical_vars(vars));
    return it == terms_.end() ? 0.0 : it->second;
  }
  double constant() const { return coefficient({}); }

  /// Largest |S| over nonzero terms; 0 for constants and the zero function.
  std::size_t degree() const noexcept {
    return terms_.empty() ? 0 : terms_.rbegin()->first.size();
  }

  /// Total number of variable occurrences over all terms.
  std::size_t size() const noexcept {
    std::size_t s = 0;
    for (const auto& [vars, c] : terms_) s += vars.size();
    return s;
  }

  double evaluate(std::span<const Binary> x) const {
    if (x.size() < num_vars_)
      throw DimensionError("assignment has " + std::to_string(x.size()) +
                           " entries, function has " + std::to_string(num_vars_) +
                           " variables");
    double value = 0.0;
    for (const auto& [vars, c] : terms_) {
      bool on = true;
      for (Var v : vars) {
        if (!x[v - 1]) {
          on = false;
          break;
        }
      }
      if (on) value += c;
    }
    return value;
  }

  PseudoBooleanFunction& operator+=(const PseudoBooleanFunction& other) {
    for (const auto& [vars, c] : other.terms_) add_canonical(vars, c);
    declare_vars(other.num_vars_);
    return *this;
  }
  PseudoBooleanFunction& operator-=(const PseudoBooleanFunction& other) {
    return *this += other * -1.0;
  }
  PseudoBooleanFunction& operator*=(double scale) {
    if (scale == 0.0) {
      terms_.clear();
      return *this;
    }
    for (auto& [vars, c] : terms_) c *= scale;
    return *this;
  }
  PseudoBooleanFunction& operator*=(const PseudoBooleanFunction& other) {
    PseudoBooleanFunction out;
    for (const auto& [a, ca] : terms_)
      for (const auto& [b, cb] : other.terms_) out.add_canonical(detail::merge_vars(a, b), ca * cb);
    out.num_vars_ = std::max(num_vars_, other.num_vars_);
    return *this = std::move(out);
  }

  friend PseudoBooleanFunction operator+(PseudoBooleanFunction a, const PseudoBooleanFunction& b) {
    return a += b;
  }
  friend PseudoBooleanFunction operator-(PseudoBooleanFunction a, const PseudoBooleanFunction& b) {
    return a -= b;
  }
  friend PseudoBooleanFunction operator*(PseudoBooleanFunction a, const PseudoBooleanFunction& b) {
    return a *= b;
  }
  friend PseudoBooleanFunction operator*(PseudoBooleanFunction a, double s) { return a *= s; }
  friend PseudoBooleanFunction operator*(double s, PseudoBooleanFunction a) { return a *= s; }

  bool operator==(const PseudoBooleanFunction&) const = default;

  /// Adds c * prod(vars). Repeated labels collapse (x * x = x).
  void add_term(VarSet vars, double c) { add_canonical(detail::canonical_vars(std::move(vars)), c); }

 private:
  void add_canonical(const VarSet& vars, double c) {
    if (!vars.empty()) declare_vars(vars.back());
    if (c == 0.0) return;
    auto [it, inserted] = terms_.try_emplace(vars, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0.0) terms_.erase(it);
    }
  }

  TermMap terms_;
  std::size_t num_vars_ = 0;
};

/// Free-function spellings of the member queries.
inline double evaluate(const PseudoBooleanFunction& f, std::span<const Binary> x) {
  return f.evaluate(x);
}
inline std::size_t degree(const PseudoBooleanFunction& f) { return f.degree(); }
inline std::size_t size(const PseudoBooleanFunction& f) { return f.size(); }

/// Polynomial text format: one term per line, `<coeff> <idx> <idx> ...`,
/// `#` starts a comment, a line with only a coefficient is a constant.
inline PseudoBooleanFunction parse_pbf(std::string_view text) {
  PseudoBooleanFunction f;
  detail::for_each_line(text, '#', [&](std::size_t line_no, std::string_view line) {
    auto tokens = detail::split_ws(line);
    if (tokens.empty()) return;
    double coeff = 0.0;
    if (!detail::parse_real(tokens[0], coeff))
      throw ParseError(line_no, "bad coefficient '" + std::string(tokens[0]) + "'");
    VarSet vars;
    for (std::size_t i = 1; i < tokens.size(); ++i) {
      long long idx = 0;
      if (!detail::parse_int(tokens[i], idx))
        throw ParseError(line_no, "bad variable index '" + std::string(tokens[i]) + "'");
      if (idx < 1) throw ParseError(line_no, "variable index must be >= 1");
      if (idx > 0xffffffffLL) throw ParseError(line_no, "variable index too large");
      vars.push_back(static_cast<Var>(idx));
    }
    f.add_term(std::move(vars), coeff);
  });
  return f;
}

/// Renders in canonical order; parse_pbf(render_pbf(f)) reproduces f.
inline std::string render_pbf(const PseudoBooleanFunction& f) {
  std::ostringstream out;
  for (const auto& [vars, c] : f.terms()) {
    out << detail::format_real(c);
    for (Var v : vars) out << ' ' << v;
    out << '\n';
  }
  return out.str();
}

/// Human-readable algebraic form, e.g. "14 - x1 + 10 x6 x7".
inline std::string to_string(const PseudoBooleanFunction& f) {
  if (f.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [vars, c] : f.terms()) {
    double mag = c < 0 ? -c : c;
    if (first) {
      if (c < 0) out << "-";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool unit = mag == 1.0 && !vars.empty();
    if (!unit) out << detail::format_real(mag);
    for (std::size_t i = 0; i < vars.size(); ++i)
      out << ((i == 0 && unit) ? "" : " ") << 'x' << vars[i];
  }
  return out.str();
}

}  // namespace qanneal
