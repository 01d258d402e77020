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

/// @file analysis.hpp
/// @brief Energy histograms, time-to-solution and the machine-time model,
/// plus gauge-averaged sampling.

#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "qanneal/error.hpp"
#include "qanneal/pbf.hpp"
#include "qanneal/qubo_ising.hpp"
#include "qanneal/random.hpp"
#include "qanneal/solvers.hpp"

namespace qanneal {

// ---------------------------------------------------------------------------
// Time to solution

struct TtsReport {
  double ground_state_count = 0.0;  ///< n_gs, may be a gauge average
  double readouts = 0.0;            ///< N_r
  double success_probability = 0.0;
  double target = 0.0;              ///< confidence P
  std::uint64_t repetitions = 0;    ///< R_P
  double anneal_time = 0.0;         ///< seconds per anneal
  double total_time = 0.0;          ///< R_P * anneal_time, seconds
};

/// Smallest R with 1 - (1 - p)^R >= target. The closed form
/// ceil(ln(1 - P) / ln(1 - p)) is corrected by one step either way when
/// rounding puts it on the wrong side of an integer.
inline std::uint64_t repetitions_for(double p, double target) {
  if (!(p > 0.0 && p <= 1.0)) throw DomainError("success probability must lie in (0, 1]");
  if (!(target > 0.0 && target < 1.0)) throw DomainError("target confidence must lie in (0, 1)");
  if (p == 1.0) return 1;
  const double lq = std::log1p(-p);
  auto reached = [&](double r) { return -std::expm1(r * lq) >= target; };
  double r = std::max(1.0, std::ceil(std::log1p(-target) / lq));
  if (!std::isfinite(r) || r > 9.0e18) throw DomainError("repetition count overflows");
  while (r > 1.0 && reached(r - 1.0)) r -= 1.0;
  while (!reached(r)) r += 1.0;
  return static_cast<std::uint64_t>(r);
}

/// p_s = n_gs / N_r. Fractional n_gs is accepted so that frequencies
/// averaged over gauges can be used directly.
inline TtsReport time_to_solution(double ground_state_count, double readouts, double anneal_time,
                                  double target) {
  if (!(readouts > 0.0)) throw DomainError("readout count must be positive");
  if (ground_state_count < 0.0 || ground_state_count > readouts)
    throw DomainError("ground-state count must lie in [0, readouts]");
  if (anneal_time < 0.0) throw DomainError("anneal time must be nonnegative");
  if (ground_state_count == 0.0) throw UndefinedTts("no ground-state readouts; time to solution is infinite");
  TtsReport r;
  r.ground_state_count = ground_state_count;
  r.readouts = readouts;
  r.success_probability = ground_state_count / readouts;
  r.target = target;
  r.repetitions = repetitions_for(r.success_probability, target);
  r.anneal_time = anneal_time;
  r.total_time = static_cast<double>(r.repetitions) * anneal_time;
  return r;
}

// ---------------------------------------------------------------------------
// Machine time

struct TimeModel {
  std::chrono::nanoseconds programming{0};
  std::chrono::nanoseconds anneal{0};
  std::chrono::nanoseconds readout{0};
  std::uint64_t repetitions = 0;
};

/// T(R) = t_program + R (t_a + t_read).
inline std::chrono::nanoseconds machine_time(const TimeModel& tm) {
  if (tm.programming.count() < 0 || tm.anneal.count() < 0 || tm.readout.count() < 0)
    throw DomainError("times must be nonnegative");
  return tm.programming + static_cast<std::int64_t>(tm.repetitions) * (tm.anneal + tm.readout);
}

inline double to_seconds(std::chrono::nanoseconds t) { return std::chrono::duration<double>(t).count(); }

// ---------------------------------------------------------------------------
// Histograms

struct HistogramRow {
  double energy = 0.0;           ///< as reported by the sampler
  double adjusted_energy = 0.0;  ///< energy + offset
  std::size_t frequency = 0;
};

struct Histogram {
  std::vector<HistogramRow> rows;
  std::size_t total = 0;     ///< sum of row frequencies
  std::size_t filtered = 0;  ///< readouts dropped by the filter
  double offset = 0.0;
};

struct HistogramOptions {
  /// 0 reports exact levels. Otherwise, when there are more distinct
  /// levels than bins, equal-width bins over [min, max] labeled by center.
  std::size_t bins = 0;
  double tolerance = 1e-9;
  /// Readouts for which keep() is false are counted in `filtered`.
  std::function<bool(const Sample&)> keep{};
};

inline Histogram histogram(const SampleSet& s, const HistogramOptions& opt = {}) {
  Histogram h;
  h.offset = s.offset();
  std::vector<HistogramRow> levels;
  for (const auto& e : s.entries()) {
    if (opt.keep && !opt.keep(e)) {
      h.filtered += e.frequency;
      continue;
    }
    h.total += e.frequency;
    if (!levels.empty() && std::abs(e.energy - levels.back().energy) <=
                               opt.tolerance * std::max(1.0, std::abs(e.energy)))
      levels.back().frequency += e.frequency;
    else
      levels.push_back({e.energy, e.energy + s.offset(), e.frequency});
  }
  if (opt.bins == 0 || levels.size() <= opt.bins) {
    h.rows = std::move(levels);
    return h;
  }
  const double lo = levels.front().energy, hi = levels.back().energy;
  const double width = (hi - lo) / static_cast<double>(opt.bins);
  h.rows.resize(opt.bins);
  for (std::size_t b = 0; b < opt.bins; ++b) {
    h.rows[b].energy = lo + (static_cast<double>(b) + 0.5) * width;
    h.rows[b].adjusted_energy = h.rows[b].energy + s.offset();
  }
  for (const auto& l : levels) {
    auto b = static_cast<std::size_t>((l.energy - lo) / width);
    h.rows[std::min(b, opt.bins - 1)].frequency += l.frequency;
  }
  return h;
}

inline std::string render_table(const Histogram& h) {
  std::ostringstream out;
  if (h.rows.empty()) {
    out << "no samples to report (" << h.filtered << " filtered)\n";
    return out.str();
  }
  std::vector<std::string> e, a, f;
  std::size_t we = 6, wa = 8, wf = 9;
  for (const auto& r : h.rows) {
    e.push_back(detail::format_real(r.energy));
    a.push_back(detail::format_real(r.adjusted_energy));
    f.push_back(std::to_string(r.frequency));
    we = std::max(we, e.back().size());
    wa = std::max(wa, a.back().size());
    wf = std::max(wf, f.back().size());
  }
  out << std::right << std::setw(static_cast<int>(we)) << "energy" << "  " << std::setw(static_cast<int>(wa))
      << "adjusted" << "  " << std::setw(static_cast<int>(wf)) << "frequency" << "\n";
  for (std::size_t i = 0; i < e.size(); ++i)
    out << std::setw(static_cast<int>(we)) << e[i] << "  " << std::setw(static_cast<int>(wa)) << a[i] << "  "
        << std::setw(static_cast<int>(wf)) << f[i] << "\n";
  out << "total " << h.total;
  if (h.filtered) out << " (" << h.filtered << " filtered)";
  out << "\n";
  return out.str();
}

inline std::string render_csv(const Histogram& h) {
  std::string out = "energy,adjusted_energy,frequency\n";
  for (const auto& r : h.rows)
    out += detail::format_real(r.energy) + "," + detail::format_real(r.adjusted_energy) + "," +
           std::to_string(r.frequency) + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// Gauge averaging

struct GaugeLevel {
  double energy = 0.0;
  double mean_frequency = 0.0;
};

struct GaugeAverage {
  SampleSet combined;  ///< all un-gauged readouts, energies on the original model
  std::vector<GaugeLevel> levels;
  std::size_t num_gauges = 0;
};

inline GaugeVector random_gauge(std::size_t n, Rng& rng) {
  GaugeVector g;
  g.a.resize(n);
  for (auto& v : g.a) v = (rng() >> 63) ? 1 : -1;
  return g;
}

/// Solves gauge_transform(m, a_g) for each gauge, gauge 0 with `seed` and
/// gauge g > 0 with mix_seed(seed, g), maps samples back by s -> a_g o s and averages the
/// per-level frequencies over gauges.
inline GaugeAverage gauge_average(const IsingModel& m, const SolverConfig& cfg,
                                  std::span<const GaugeVector> gauges, std::uint64_t seed) {
  if (gauges.empty()) throw DomainError("need at least one gauge");
  std::vector<Sample> reads;
  for (std::size_t g = 0; g < gauges.size(); ++g) {
    const auto set = solve(gauge_transform(m, gauges[g]), cfg, g == 0 ? seed : mix_seed(seed, g));
    for (const auto& e : set.entries()) {
      auto s = gauges[g].apply(e.spins);
      const double energy = m.energy(s);
      reads.push_back({std::move(s), energy, e.frequency});
    }
  }
  GaugeAverage out;
  out.num_gauges = gauges.size();
  out.combined = SampleSet::aggregate(reads, m.offset());
  for (const auto& row : histogram(out.combined).rows)
    out.levels.push_back({row.energy, static_cast<double>(row.frequency) / static_cast<double>(gauges.size())});
  return out;
}

/// Random gauges come from stream make_rng(seed, 2^64 - 1), which no
/// readout uses.
inline GaugeAverage gauge_average(const IsingModel& m, const SolverConfig& cfg, std::size_t num_gauges,
                                  std::uint64_t seed) {
  if (num_gauges == 0) throw DomainError("need at least one gauge");
  Rng rng = make_rng(seed, ~std::uint64_t{0});
  std::vector<GaugeVector> gauges;
  for (std::size_t g = 0; g < num_gauges; ++g) gauges.push_back(random_gauge(m.num_vars(), rng));
  return gauge_average(m, cfg, gauges, seed);
}

}  // namespace qanneal
