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

/// @file solvers.hpp
/// @brief Samplers over Ising models: exhaustive enumeration, simulated
/// annealing and path-integral simulated quantum annealing.
///
/// Every sampler returns a SampleSet of distinct spin configurations with
/// their raw Ising energies (offset excluded, carried alongside) and
/// frequencies, sorted by ascending energy. Stochastic samplers draw
/// readout r from the stream make_rng(seed, r), so results depend only on
/// (model, parameters, readouts, seed).

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qanneal/chimera.hpp"
#include "qanneal/error.hpp"
#include "qanneal/pbf.hpp"
#include "qanneal/qubo_ising.hpp"
#include "qanneal/random.hpp"

namespace qanneal {

struct Sample {
  std::vector<Spin> spins;
  double energy = 0.0;
  std::size_t frequency = 0;

  bool operator==(const Sample&) const = default;
};

class SampleSet {
 public:
  SampleSet() = default;

  /// Merges identical configurations and sorts by (energy, configuration).
  static SampleSet aggregate(std::span<const Sample> reads, double offset) {
    std::map<std::vector<Spin>, Sample> merged;
    std::size_t total = 0;
    for (const auto& r : reads) {
      auto [it, fresh] = merged.try_emplace(r.spins, r);
      if (!fresh) it->second.frequency += r.frequency;
      total += r.frequency;
    }
    SampleSet s;
    s.offset_ = offset;
    s.readouts_ = total;
    s.entries_.reserve(merged.size());
    for (auto& [k, v] : merged) s.entries_.push_back(std::move(v));
    std::stable_sort(s.entries_.begin(), s.entries_.end(),
                     [](const Sample& a, const Sample& b) { return a.energy < b.energy; });
    return s;
  }

  const std::vector<Sample>& entries() const noexcept { return entries_; }
  double offset() const noexcept { return offset_; }
  std::size_t readouts() const noexcept { return readouts_; }
  bool empty() const noexcept { return entries_.empty(); }
  std::size_t size() const noexcept { return entries_.size(); }

  const Sample& lowest() const {
    if (entries_.empty()) throw DomainError("empty sample set");
    return entries_.front();
  }
  double min_energy() const { return lowest().energy; }

  /// Number of readouts whose energy is within tol of the minimum.
  std::size_t ground_state_count(double tol = 1e-9) const {
    if (entries_.empty()) return 0;
    std::size_t n = 0;
    const double e0 = entries_.front().energy;
    for (const auto& s : entries_)
      if (s.energy <= e0 + tol * std::max(1.0, std::abs(e0))) n += s.frequency;
    return n;
  }

  bool operator==(const SampleSet&) const = default;

 private:
  std::vector<Sample> entries_;
  double offset_ = 0.0;
  std::size_t readouts_ = 0;
};

// ---------------------------------------------------------------------------
// Exhaustive enumeration

struct BruteForceOptions {
  /// Keep every configuration whose energy is among the `levels` lowest
  /// distinct energies; 0 keeps the full spectrum.
  std::size_t levels = 1;
  double tolerance = 1e-9;
};

inline constexpr std::size_t kMaxBruteForceVars = 25;

namespace detail {

class LevelKeeper {
 public:
  LevelKeeper(std::size_t levels, double tol) : levels_(levels), tol_(tol) {}

  void offer(double e, std::uint32_t code) {
    auto it = by_level_.lower_bound(e - tol_);
    if (it != by_level_.end() && it->first <= e + tol_) {
      it->second.push_back(code);
      return;
    }
    if (levels_ != 0 && by_level_.size() == levels_) {
      auto last = std::prev(by_level_.end());
      if (e > last->first) return;
      by_level_.erase(last);
    }
    by_level_[e].push_back(code);
  }

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (const auto& [e, codes] : by_level_)
      for (auto c : codes) fn(c);
  }

 private:
  std::size_t levels_;
  double tol_;
  std::map<double, std::vector<std::uint32_t>> by_level_;
};

inline std::vector<Spin> decode_spins(std::uint32_t code, std::size_t n) {
  std::vector<Spin> s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = (code >> i) & 1u ? 1 : -1;
  return s;
}

inline void check_enumerable(std::size_t n) {
  if (n > kMaxBruteForceVars)
    throw SizeError("exhaustive enumeration limited to " + std::to_string(kMaxBruteForceVars) +
                    " variables, model has " + std::to_string(n));
}

}  // namespace detail

/// Gray-code enumeration of all 2^n spin states.
inline SampleSet brute_force(const IsingModel& m, const BruteForceOptions& opt = {}) {
  const std::size_t n = m.num_vars();
  detail::check_enumerable(n);
  IsingAdjacency adj(m);
  detail::LevelKeeper keeper(opt.levels, opt.tolerance);

  std::vector<Spin> s(n, -1);
  std::vector<double> lf(n);
  for (std::size_t i = 0; i < n; ++i) lf[i] = adj.local_field(i, s);
  double e = adj.energy(s);
  std::uint32_t code = 0;
  keeper.offer(e, code);
  const std::uint64_t states = std::uint64_t{1} << n;
  for (std::uint64_t step = 1; step < states; ++step) {
    const auto i = static_cast<std::size_t>(std::countr_zero(step));
    e -= 2.0 * s[i] * lf[i];
    s[i] = static_cast<Spin>(-s[i]);
    for (std::size_t k = adj.start[i]; k < adj.start[i + 1]; ++k) lf[adj.neighbor[k]] += 2.0 * adj.weight[k] * s[i];
    code ^= 1u << i;
    keeper.offer(e, code);
  }

  std::vector<Sample> reads;
  keeper.for_each([&](std::uint32_t c) {
    auto spins = detail::decode_spins(c, n);
    const double exact = m.energy(spins);
    reads.push_back({std::move(spins), exact, 1});
  });
  return SampleSet::aggregate(reads, m.offset());
}

inline SampleSet brute_force(const Qubo& q, const BruteForceOptions& opt = {}) {
  return brute_force(qubo_to_ising(q), opt);
}

/// Enumerates a polynomial of any degree. Entries hold the spin image
/// s = 2x - 1 of each assignment and its function value; offset is 0.
inline SampleSet brute_force(const PseudoBooleanFunction& f, const BruteForceOptions& opt = {}) {
  const std::size_t n = f.num_vars();
  detail::check_enumerable(n);
  detail::LevelKeeper keeper(opt.levels, opt.tolerance);
  std::vector<Binary> x(n, 0);
  const std::uint64_t states = std::uint64_t{1} << n;
  for (std::uint64_t code = 0; code < states; ++code) {
    for (std::size_t i = 0; i < n; ++i) x[i] = (code >> i) & 1u;
    keeper.offer(f.evaluate(x), static_cast<std::uint32_t>(code));
  }
  std::vector<Sample> reads;
  keeper.for_each([&](std::uint32_t c) {
    auto spins = detail::decode_spins(c, n);
    const double v = f.evaluate(to_binary(spins));
    reads.push_back({std::move(spins), v, 1});
  });
  return SampleSet::aggregate(reads, 0.0);
}

// ---------------------------------------------------------------------------
// Simulated annealing

/// Geometric cooling t_k = t0 * cooling^k for k = 0..temperature_steps-1,
/// with sweeps_per_temperature full single-flip sweeps at each t_k.
struct SaSchedule {
  double t0 = 5.0;
  double cooling = 0.95;
  std::size_t sweeps_per_temperature = 10;
  std::size_t temperature_steps = 100;

  void validate() const {
    if (!(t0 > 0.0) || !std::isfinite(t0)) throw ScheduleError("initial temperature must be positive");
    if (!(cooling > 0.0 && cooling < 1.0)) throw ScheduleError("cooling factor must lie in (0, 1)");
    if (temperature_steps == 0) throw ScheduleError("need at least one temperature step");
  }
  double temperature(std::size_t k) const { return t0 * std::pow(cooling, static_cast<double>(k)); }
  double final_temperature() const { return temperature(temperature_steps - 1); }
};

/// Metropolis rule: downhill and flat moves always pass, an uphill move of
/// size delta passes when u < exp(-delta / t), u uniform on [0, 1).
inline bool metropolis_accept(double delta, double t, double u) noexcept {
  return delta <= 0.0 || u < std::exp(-delta / t);
}

/// Same rule drawing u from rng only for uphill moves.
inline bool metropolis_accept(double delta, double t, Rng& rng) {
  return delta <= 0.0 || uniform01(rng) < std::exp(-delta / t);
}

namespace detail {

inline void check_readouts(std::size_t readouts) {
  if (readouts == 0) throw ScheduleError("readouts must be at least 1");
}

inline void random_spins(Rng& rng, std::vector<Spin>& s) {
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i % 64 == 0) bits = rng();
    s[i] = (bits >> (i % 64)) & 1u ? 1 : -1;
  }
}

}  // namespace detail

inline SampleSet simulated_annealing(const IsingModel& m, const SaSchedule& schedule, std::size_t readouts,
                                     std::uint64_t seed) {
  schedule.validate();
  detail::check_readouts(readouts);
  const IsingAdjacency adj(m);
  const std::size_t n = adj.n;
  std::vector<double> temps(schedule.temperature_steps);
  for (std::size_t k = 0; k < temps.size(); ++k) temps[k] = schedule.temperature(k);

  std::vector<Sample> reads;
  reads.reserve(readouts);
  std::vector<Spin> s(n);
  std::vector<double> lf(n);
  for (std::size_t r = 0; r < readouts; ++r) {
    Rng rng = make_rng(seed, r);
    detail::random_spins(rng, s);
    for (std::size_t i = 0; i < n; ++i) lf[i] = adj.local_field(i, s);
    for (double t : temps) {
      for (std::size_t sweep = 0; sweep < schedule.sweeps_per_temperature; ++sweep) {
        for (std::size_t i = 0; i < n; ++i) {
          const double delta = -2.0 * s[i] * lf[i];
          if (!metropolis_accept(delta, t, rng)) continue;
          s[i] = static_cast<Spin>(-s[i]);
          const double twice = 2.0 * s[i];
          for (std::size_t k = adj.start[i]; k < adj.start[i + 1]; ++k) lf[adj.neighbor[k]] += twice * adj.weight[k];
        }
      }
    }
    reads.push_back({s, adj.energy(s), 1});
  }
  return SampleSet::aggregate(reads, m.offset());
}

// ---------------------------------------------------------------------------
// Simulated quantum annealing (path-integral Monte Carlo)

/// Transverse-field anneal discretized into P Trotter replicas with
/// periodic boundary. Along the anneal fraction tau in [0, 1] the field is
///   Gamma(tau) = gamma_final + (gamma0 - gamma_final) * A(tau),  A = 1 - tau
/// and the problem Hamiltonian is scaled by B(tau) = tau. Each of `sweeps`
/// steps does one single-spin sweep over every replica followed by one
/// sweep of whole-column flips (spin i in all replicas at once).
struct SqaSchedule {
  std::size_t trotter_slices = 20;
  double gamma0 = 3.0;
  double gamma_final = 1e-3;
  double temperature = 0.05;
  std::size_t sweeps = 100;

  double tau(std::size_t step) const {
    return sweeps <= 1 ? 1.0 : static_cast<double>(step) / static_cast<double>(sweeps - 1);
  }
  double gamma(double t) const { return gamma_final + (gamma0 - gamma_final) * (1.0 - t); }
  double problem_scale(double t) const { return t; }

  void validate() const;
};

/// Ising coupler between neighboring replicas of the same spin:
///   (P T / 2) ln tanh(Gamma / (P T)).
/// It is negative (ferromagnetic), tends to -inf as Gamma -> 0+ and to 0 as
/// Gamma grows.
inline double replica_coupling(double gamma, std::size_t slices, double temperature) {
  const double pt = static_cast<double>(slices) * temperature;
  const double c = 0.5 * pt * std::log(std::tanh(gamma / pt));
  if (!std::isfinite(c))
    throw ScheduleError("replica coupling undefined: Gamma/(P*T) = " + std::to_string(gamma / pt) +
                        " underflows tanh");
  return c;
}

inline void SqaSchedule::validate() const {
  if (trotter_slices < 2) throw ScheduleError("need at least 2 Trotter slices");
  if (!(temperature > 0.0) || !std::isfinite(temperature)) throw ScheduleError("temperature must be positive");
  if (!(gamma_final > 0.0)) throw ScheduleError("final transverse field must be positive");
  if (!(gamma0 > gamma_final) || !std::isfinite(gamma0))
    throw ScheduleError("initial transverse field must exceed the final one");
  if (sweeps == 0) throw ScheduleError("need at least one sweep");
  replica_coupling(gamma_final, trotter_slices, temperature);
  replica_coupling(gamma0, trotter_slices, temperature);
}

inline SampleSet simulated_quantum_annealing(const IsingModel& m, const SqaSchedule& schedule,
                                             std::size_t readouts, std::uint64_t seed) {
  schedule.validate();
  detail::check_readouts(readouts);
  const IsingAdjacency adj(m);
  const std::size_t n = adj.n;
  const std::size_t P = schedule.trotter_slices;
  const double pt = static_cast<double>(P) * schedule.temperature;

  // s[p * n + i] is spin i in replica p; lf likewise holds h_i + sum J s_j.
  std::vector<Spin> s(P * n);
  std::vector<double> lf(P * n);
  std::vector<Sample> reads;
  reads.reserve(readouts);
  std::vector<Spin> slice(n);

  auto flip = [&](std::size_t p, std::size_t i) {
    Spin& v = s[p * n + i];
    v = static_cast<Spin>(-v);
    const double twice = 2.0 * v;
    double* row = lf.data() + p * n;
    for (std::size_t k = adj.start[i]; k < adj.start[i + 1]; ++k) row[adj.neighbor[k]] += twice * adj.weight[k];
  };

  for (std::size_t r = 0; r < readouts; ++r) {
    Rng rng = make_rng(seed, r);
    detail::random_spins(rng, s);
    for (std::size_t p = 0; p < P; ++p)
      for (std::size_t i = 0; i < n; ++i)
        lf[p * n + i] = adj.local_field(i, std::span<const Spin>(s.data() + p * n, n));

    for (std::size_t step = 0; step < schedule.sweeps; ++step) {
      const double t = schedule.tau(step);
      const double b = schedule.problem_scale(t);
      const double jp = replica_coupling(schedule.gamma(t), P, schedule.temperature);
      for (std::size_t p = 0; p < P; ++p) {
        const std::size_t up = (p + 1) % P, down = (p + P - 1) % P;
        for (std::size_t i = 0; i < n; ++i) {
          const Spin si = s[p * n + i];
          const double local = b * lf[p * n + i] + jp * (s[up * n + i] + s[down * n + i]);
          if (metropolis_accept(-2.0 * si * local, pt, rng)) flip(p, i);
        }
      }
      for (std::size_t i = 0; i < n; ++i) {
        double delta = 0.0;
        for (std::size_t p = 0; p < P; ++p) delta -= 2.0 * s[p * n + i] * lf[p * n + i];
        if (metropolis_accept(b * delta, pt, rng))
          for (std::size_t p = 0; p < P; ++p) flip(p, i);
      }
    }

    double best = std::numeric_limits<double>::infinity();
    for (std::size_t p = 0; p < P; ++p) {
      std::span<const Spin> rep(s.data() + p * n, n);
      const double e = adj.energy(rep);
      if (e < best) {
        best = e;
        slice.assign(rep.begin(), rep.end());
      }
    }
    if (n == 0) best = 0.0;
    reads.push_back({slice, best, 1});
  }
  return SampleSet::aggregate(reads, m.offset());
}

// ---------------------------------------------------------------------------
// Dispatch and embedded solving

enum class SolverKind { brute_force, simulated_annealing, simulated_quantum_annealing };

struct SolverConfig {
  SolverKind kind = SolverKind::simulated_annealing;
  std::size_t readouts = 1000;
  SaSchedule sa{};
  SqaSchedule sqa{};
  BruteForceOptions bf{};
};

inline SampleSet solve(const IsingModel& m, const SolverConfig& cfg, std::uint64_t seed) {
  switch (cfg.kind) {
    case SolverKind::brute_force:
      return brute_force(m, cfg.bf);
    case SolverKind::simulated_annealing:
      return simulated_annealing(m, cfg.sa, cfg.readouts, seed);
    case SolverKind::simulated_quantum_annealing:
      return simulated_quantum_annealing(m, cfg.sqa, cfg.readouts, seed);
  }
  throw ContractViolation("unknown solver");
}

struct EmbeddedSolveResult {
  SampleSet logical;
  SampleSet physical;
  double chain_break_rate = 0.0;  ///< fraction of readouts with >= 1 broken chain
};

/// Samples the physical model, unembeds every readout by majority vote and
/// re-scores it on the logical model.
inline EmbeddedSolveResult solve_embedded(const EmbeddedIsing& em, const SolverConfig& cfg, std::uint64_t seed) {
  EmbeddedSolveResult out;
  out.physical = solve(em.physical, cfg, seed);
  const std::size_t nq = em.qubits.empty() ? 0 : em.qubits.back() + 1;
  std::vector<Sample> reads;
  std::size_t broken = 0;
  for (const auto& entry : out.physical.entries()) {
    const auto full = em.by_qubit(entry.spins, nq);
    auto u = unembed(full, em.embedding);
    u.spins.resize(em.logical.num_vars(), 1);
    if (u.num_broken) broken += entry.frequency;
    const double e = em.logical.energy(u.spins);
    reads.push_back({std::move(u.spins), e, entry.frequency});
  }
  out.logical = SampleSet::aggregate(reads, em.logical.offset());
  const std::size_t total = out.physical.readouts();
  out.chain_break_rate = total ? static_cast<double>(broken) / static_cast<double>(total) : 0.0;
  return out;
}

}  // namespace qanneal
