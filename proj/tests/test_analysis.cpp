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

#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "qanneal/analysis.hpp"

namespace {

using namespace std::chrono_literals;
using qanneal::IsingModel;
using qanneal::Sample;
using qanneal::SampleSet;

TEST(Tts, ReferenceCases) {
  auto a = qanneal::time_to_solution(5.69, 100000, 700e-6, 0.99);
  EXPECT_NEAR(static_cast<double>(a.repetitions), 80933.0, 1.0);
  EXPECT_NEAR(a.total_time, 56.65, 0.01);
  EXPECT_DOUBLE_EQ(a.success_probability, 5.69e-5);

  auto b = qanneal::time_to_solution(91, 100000, 700e-6, 0.99);
  EXPECT_NEAR(static_cast<double>(b.repetitions), 5059.0, 1.0);
  EXPECT_NEAR(b.total_time, 3.5413, 0.01);
}

TEST(Tts, SmallCases) {
  EXPECT_EQ(qanneal::repetitions_for(0.5, 0.75), 2u);
  EXPECT_EQ(qanneal::repetitions_for(0.5, 0.74), 2u);
  EXPECT_EQ(qanneal::repetitions_for(0.5, 0.76), 3u);
  EXPECT_EQ(qanneal::repetitions_for(0.9, 0.5), 1u);
  EXPECT_EQ(qanneal::time_to_solution(100, 100, 1e-3, 0.99).repetitions, 1u);
}

TEST(Tts, Errors) {
  EXPECT_THROW(qanneal::time_to_solution(0, 100, 1e-3, 0.99), qanneal::UndefinedTts);
  EXPECT_THROW(qanneal::time_to_solution(101, 100, 1e-3, 0.99), qanneal::DomainError);
  EXPECT_THROW(qanneal::time_to_solution(1, 0, 1e-3, 0.99), qanneal::DomainError);
  EXPECT_THROW(qanneal::time_to_solution(1, 100, 1e-3, 1.0), qanneal::DomainError);
  EXPECT_THROW(qanneal::time_to_solution(1, 100, 1e-3, 0.0), qanneal::DomainError);
  EXPECT_THROW(qanneal::time_to_solution(1, 100, -1.0, 0.5), qanneal::DomainError);
}

TEST(Tts, BernoulliIdentityAndMonotonicity) {
  auto rng = qanneal::make_rng(70, 0);
  for (int i = 0; i < 2000; ++i) {
    const double p = std::pow(10.0, -6.0 * qanneal::uniform01(rng));
    const double target = 0.01 + 0.98 * qanneal::uniform01(rng);
    const auto r = qanneal::repetitions_for(p, target);
    ASSERT_GE(1.0 - std::pow(1.0 - p, static_cast<double>(r)), target - 1e-12) << p << " " << target;
    if (r > 1) {
      ASSERT_LT(1.0 - std::pow(1.0 - p, static_cast<double>(r - 1)), target + 1e-12) << p << " " << target;
    }
    ASSERT_LE(qanneal::repetitions_for(std::min(1.0, p * 1.5), target), r);
    ASSERT_GE(qanneal::repetitions_for(p, std::min(0.999, target + 0.01)), r);
  }
}

TEST(MachineTime, Model) {
  EXPECT_EQ(qanneal::machine_time({9ms, 20us, 120us, 1000}), 149ms);
  EXPECT_DOUBLE_EQ(qanneal::to_seconds(qanneal::machine_time({9ms, 20us, 120us, 1000})), 0.149);
  EXPECT_EQ(qanneal::machine_time({9ms, 20us, 120us, 0}), 9ms);
  EXPECT_EQ(qanneal::machine_time({}), 0ns);
  EXPECT_THROW(qanneal::machine_time({-1ms, 0us, 0us, 1}), qanneal::DomainError);
}

TEST(Histogram, SingleEntry) {
  std::vector<Sample> reads{{{1, -1}, -2.0, 10}};
  auto h = qanneal::histogram(SampleSet::aggregate(reads, 0.5));
  ASSERT_EQ(h.rows.size(), 1u);
  EXPECT_EQ(h.rows[0].frequency, 10u);
  EXPECT_EQ(h.rows[0].adjusted_energy, -1.5);
  EXPECT_EQ(h.total, 10u);
}

TEST(Histogram, MergesDegenerateLevels) {
  // Three known low levels plus one remainder level.
  std::vector<Sample> reads{{{1, 1, 1}, -17.25, 257},  {{1, 1, -1}, -16.25, 4000}, {{1, -1, 1}, -16.25, 2526},
                            {{-1, 1, 1}, -15.25, 2738}, {{-1, -1, 1}, -14.25, 479}};
  auto h = qanneal::histogram(SampleSet::aggregate(reads, 17.25));
  ASSERT_EQ(h.rows.size(), 4u);
  EXPECT_EQ(h.rows[0].energy, -17.25);
  EXPECT_EQ(h.rows[0].adjusted_energy, 0.0);
  EXPECT_EQ(h.rows[0].frequency, 257u);
  EXPECT_EQ(h.rows[1].frequency, 6526u);
  EXPECT_EQ(h.rows[2].frequency, 2738u);
  EXPECT_EQ(h.total, 10000u);
  EXPECT_EQ(qanneal::render_csv(h).substr(0, 46), "energy,adjusted_energy,frequency\n-17.25,0,257\n");

  auto binned = qanneal::histogram(SampleSet::aggregate(reads, 0.0), {.bins = 2});
  ASSERT_EQ(binned.rows.size(), 2u);
  EXPECT_EQ(binned.rows[0].frequency + binned.rows[1].frequency, 10000u);
  EXPECT_EQ(binned.rows[0].frequency, 257u + 6526u);
}

TEST(Histogram, FilterReportsDroppedReadouts) {
  std::vector<Sample> reads{{{1, 1}, 1.0, 3}, {{-1, 1}, 2.0, 5}, {{-1, -1}, 3.0, 2}};
  auto set = SampleSet::aggregate(reads, 0.0);
  auto h = qanneal::histogram(set, {.keep = [](const Sample& s) { return s.spins[0] == 1; }});
  EXPECT_EQ(h.total, 3u);
  EXPECT_EQ(h.filtered, 7u);
  EXPECT_EQ(h.total + h.filtered, set.readouts());
  EXPECT_NE(qanneal::render_table(h).find("7 filtered"), std::string::npos);

  auto none = qanneal::histogram(set, {.keep = [](const Sample&) { return false; }});
  EXPECT_TRUE(none.rows.empty());
  EXPECT_EQ(qanneal::render_table(none), "no samples to report (10 filtered)\n");
}

IsingModel multicut_ising() {
  return qanneal::qubo_to_ising(qanneal::qubo_from_pbf(qanneal::parse_pbf(oracle::read_data("mmc_tree20_qubo.pbf"))));
}

TEST(GaugeAverage, IdentityGaugeIsDirectSolve) {
  auto rng = qanneal::make_rng(71, 0);
  auto m = oracle::random_ising(8, 0.5, 2, rng);
  qanneal::SolverConfig cfg;
  cfg.readouts = 100;
  std::vector<qanneal::GaugeVector> id{qanneal::GaugeVector::identity(8)};
  auto g = qanneal::gauge_average(m, cfg, id, 5);
  EXPECT_EQ(g.combined, qanneal::solve(m, cfg, 5));
  EXPECT_EQ(g.num_gauges, 1u);
  EXPECT_THROW(qanneal::gauge_average(m, cfg, 0, 5), qanneal::DomainError);
}

TEST(GaugeAverage, EnergiesAreOnOriginalModel) {
  auto rng = qanneal::make_rng(72, 0);
  auto m = oracle::random_ising(10, 0.5, 3, rng);
  qanneal::SolverConfig cfg;
  cfg.readouts = 50;
  auto g = qanneal::gauge_average(m, cfg, 6, 8);
  EXPECT_EQ(g.combined.readouts(), 300u);
  const oracle::DenseIsing d(m);
  for (const auto& e : g.combined.entries()) EXPECT_NEAR(e.energy, d.energy(e.spins), 1e-9);
  double sum = 0.0;
  for (const auto& l : g.levels) sum += l.mean_frequency;
  EXPECT_NEAR(sum, 50.0, 1e-9);
}

TEST(GaugeAverage, GroundRateMatchesUngaugedRun) {
  auto m = multicut_ising();
  qanneal::SolverConfig cfg;
  cfg.readouts = 100;
  constexpr std::size_t gauges = 20;
  auto gauged = qanneal::gauge_average(m, cfg, gauges, 9);
  std::vector<qanneal::GaugeVector> ids(gauges, qanneal::GaugeVector::identity(m.num_vars()));
  auto plain = qanneal::gauge_average(m, cfg, ids, 10);
  const double ground = 5.0 - m.offset();
  auto rate = [&](const SampleSet& s) {
    std::size_t hits = 0;
    for (const auto& e : s.entries())
      if (std::abs(e.energy - ground) < 1e-9) hits += e.frequency;
    return static_cast<double>(hits) / static_cast<double>(s.readouts());
  };
  const double a = rate(gauged.combined), b = rate(plain.combined);
  ASSERT_GT(a, 0.0);
  ASSERT_GT(b, 0.0);
  // Two-proportion z test at alpha = 0.01.
  const double n = gauges * 100.0;
  const double pooled = (a + b) / 2.0;
  const double z = (a - b) / std::sqrt(pooled * (1.0 - pooled) * 2.0 / n);
  EXPECT_LT(std::abs(z), 2.576) << a << " vs " << b;
}

}  // namespace
