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

/// @file reduce.hpp
/// @brief Degree reduction of pseudo-Boolean functions to quadratic form.
///
/// Negative monomials of degree d >= 3 use the one-variable substitution
///   -prod x_j = min_w w((d-1) - sum x_j),
/// positive monomials use the floor((d-1)/2)-variable gadget
///   prod x_j = S2 + min_w { W2 - 2 W1 S1 [+ w_k (S1 - d + 1) for odd d] }
/// with S1 = sum x_j, S2 = sum_{i<j} x_i x_j, W1 = sum w_j and
/// W2 = sum (4j-1) w_j. Each monomial is reduced on its own with fresh
/// auxiliary variables, so for a fixed original assignment every auxiliary
/// appears only linearly and can be minimized independently.

#pragma once

#include <cstddef>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "qanneal/error.hpp"
#include "qanneal/pbf.hpp"

namespace qanneal {

enum class GadgetKind { freedman, ishikawa };

inline std::string_view to_string(GadgetKind k) {
  return k == GadgetKind::freedman ? "freedman" : "ishikawa";
}

struct AuxVariable {
  Var index = 0;
  GadgetKind kind = GadgetKind::freedman;
  VarSet source;  ///< variables of the monomial this auxiliary replaces

  bool operator==(const AuxVariable&) const = default;
};

struct ReductionRecord {
  std::size_t original_vars = 0;
  std::vector<AuxVariable> auxiliary;
  PseudoBooleanFunction result;

  std::size_t total_vars() const noexcept { return original_vars + auxiliary.size(); }
};

/// Number of auxiliaries the positive-term gadget needs for degree d.
constexpr std::size_t ishikawa_aux_count(std::size_t d) noexcept {
  return d >= 1 ? (d - 1) / 2 : 0;
}

/// Quadratic replacement of a negative monomial using auxiliary `aux`.
inline PseudoBooleanFunction freedman_reduce(const Monomial& term, Var aux) {
  const std::size_t d = term.vars.size();
  if (term.coefficient >= 0.0)
    throw ContractViolation("freedman_reduce requires a negative coefficient");
  if (d < 3) throw ContractViolation("freedman_reduce requires degree >= 3");
  const double mag = -term.coefficient;
  PseudoBooleanFunction g;
  g.add_term({aux}, mag * static_cast<double>(d - 1));
  for (Var v : term.vars) g.add_term({v, aux}, -mag);
  return g;
}

/// Quadratic replacement of a positive monomial using auxiliaries
/// first_aux, first_aux+1, ..., first_aux+k-1 with k = floor((d-1)/2).
inline PseudoBooleanFunction ishikawa_reduce(const Monomial& term, Var first_aux) {
  const std::size_t d = term.vars.size();
  if (term.coefficient <= 0.0)
    throw ContractViolation("ishikawa_reduce requires a positive coefficient");
  if (d < 3) throw ContractViolation("ishikawa_reduce requires degree >= 3");
  const double a = term.coefficient;
  const std::size_t k = ishikawa_aux_count(d);
  const auto& xs = term.vars;

  PseudoBooleanFunction g;
  // S2
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) g.add_term({xs[i], xs[j]}, a);
  // W2 - 2 W1 S1
  for (std::size_t j = 1; j <= k; ++j) {
    const Var w = first_aux + static_cast<Var>(j - 1);
    g.add_term({w}, a * static_cast<double>(4 * j - 1));
    for (Var x : xs) g.add_term({w, x}, -2.0 * a);
  }
  // w_k (S1 - d + 1) for odd degree
  if (d % 2 == 1) {
    const Var wk = first_aux + static_cast<Var>(k - 1);
    for (Var x : xs) g.add_term({wk, x}, a);
    g.add_term({wk}, -a * static_cast<double>(d - 1));
  }
  return g;
}

/// Replaces every monomial of degree >= 3 by its gadget. Auxiliaries are
/// numbered n+1, n+2, ... in canonical term order.
inline ReductionRecord reduce_to_quadratic(const PseudoBooleanFunction& f) {
  ReductionRecord rec;
  rec.original_vars = f.num_vars();
  rec.result.declare_vars(f.num_vars());
  Var next = static_cast<Var>(f.num_vars() + 1);
  for (const auto& [vars, c] : f.terms()) {
    if (vars.size() <= 2) {
      rec.result.add_term(vars, c);
      continue;
    }
    const Monomial term{c, vars};
    if (c < 0.0) {
      rec.result += freedman_reduce(term, next);
      rec.auxiliary.push_back({next, GadgetKind::freedman, vars});
      ++next;
    } else {
      rec.result += ishikawa_reduce(term, next);
      for (std::size_t j = 0; j < ishikawa_aux_count(vars.size()); ++j)
        rec.auxiliary.push_back({next++, GadgetKind::ishikawa, vars});
    }
  }
  rec.result.declare_vars(rec.total_vars());
  return rec;
}

/// Extends an assignment of the original variables with auxiliary values
/// minimizing the reduced function. Requires that no two auxiliaries share
/// a term, which holds for every record built by reduce_to_quadratic.
inline std::vector<Binary> complete_auxiliaries(const ReductionRecord& rec,
                                                std::span<const Binary> x) {
  const std::size_t n = rec.original_vars;
  if (x.size() < n) throw DimensionError("assignment shorter than original variable count");
  std::vector<double> slope(rec.auxiliary.size(), 0.0);
  for (const auto& [vars, c] : rec.result.terms()) {
    std::size_t aux_pos = 0, aux_seen = 0;
    bool on = true;
    for (Var v : vars) {
      if (v > n) {
        ++aux_seen;
        aux_pos = v - n - 1;
      } else if (!x[v - 1]) {
        on = false;
      }
    }
    if (aux_seen > 1) throw ContractViolation("auxiliary-auxiliary coupling present");
    if (aux_seen == 1 && on) slope[aux_pos] += c;
  }
  std::vector<Binary> full(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n));
  for (double s : slope) full.push_back(s < 0.0 ? 1 : 0);
  return full;
}

/// Sidecar listing, one line per auxiliary:
/// `aux <new-idx> <freedman|ishikawa> <source variable list>`.
inline std::string render_sidecar(const ReductionRecord& rec) {
  std::ostringstream out;
  for (const auto& a : rec.auxiliary) {
    out << "aux " << a.index << ' ' << to_string(a.kind);
    for (Var v : a.source) out << ' ' << v;
    out << '\n';
  }
  return out.str();
}

inline std::vector<AuxVariable> parse_sidecar(std::string_view text) {
  std::vector<AuxVariable> out;
  detail::for_each_line(text, '#', [&](std::size_t line_no, std::string_view line) {
    auto tok = detail::split_ws(line);
    if (tok.empty()) return;
    if (tok[0] != "aux" || tok.size() < 4) throw ParseError(line_no, "expected 'aux <idx> <kind> <vars...>'");
    AuxVariable a;
    if (!detail::parse_int(tok[1], a.index) || a.index == 0) throw ParseError(line_no, "bad auxiliary index");
    if (tok[2] == "freedman")
      a.kind = GadgetKind::freedman;
    else if (tok[2] == "ishikawa")
      a.kind = GadgetKind::ishikawa;
    else
      throw ParseError(line_no, "unknown gadget kind '" + std::string(tok[2]) + "'");
    for (std::size_t i = 3; i < tok.size(); ++i) {
      Var v = 0;
      if (!detail::parse_int(tok[i], v) || v == 0) throw ParseError(line_no, "bad source variable");
      a.source.push_back(v);
    }
    out.push_back(std::move(a));
  });
  return out;
}

}  // namespace qanneal
