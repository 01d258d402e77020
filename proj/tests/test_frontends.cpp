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

#include "oracles.hpp"
#include "qanneal/frontends.hpp"
#include "qanneal/reduce.hpp"

namespace {

using qanneal::Binary;
using qanneal::CnfFormula;
using qanneal::PseudoBooleanFunction;
using qanneal::TreeMulticutInstance;

CnfFormula data_formula() { return qanneal::parse_dimacs(oracle::read_data("maxsat_39.cnf")); }
TreeMulticutInstance data_tree() { return qanneal::parse_tree(oracle::read_data("mmc_tree20.tree")); }

TEST(Dimacs, ParsesSmallFormulas) {
  auto f = qanneal::parse_dimacs("p cnf 3 1\n-3 0\n");
  EXPECT_EQ(f.num_vars, 3u);
  ASSERT_EQ(f.clauses.size(), 1u);
  EXPECT_EQ(f.clauses[0], (std::vector<qanneal::Literal>{-3}));

  auto g = qanneal::parse_dimacs("c comment\np cnf 4 2\n1 -2\n 3 0 4\n0\n%\n0\n");
  ASSERT_EQ(g.clauses.size(), 2u);
  EXPECT_EQ(g.clauses[0], (std::vector<qanneal::Literal>{1, -2, 3}));
  EXPECT_EQ(g.clauses[1], (std::vector<qanneal::Literal>{4}));
  EXPECT_EQ(qanneal::parse_dimacs(qanneal::render_dimacs(g)).clauses, g.clauses);
}

TEST(Dimacs, Errors) {
  for (const char* bad : {
           "p cnf 4 1\n1 2 3 4 0\n",      // too wide
           "1 2 0\n",                     // no header
           "p cnf 2 1\np cnf 2 1\n1 0\n",  // duplicate header
           "p cnf 2 1\n1 x 0\n",          // bad literal
           "p cnf 2 1\n0\n",              // empty clause
           "p cnf 2 1\n3 0\n",            // variable out of range
           "p cnf 2 1\n1 2\n",            // unterminated
           "p cnf 2 2\n1 2 0\n",          // count mismatch
           "p dnf 2 1\n1 0\n",
       })
    EXPECT_THROW(qanneal::parse_dimacs(bad), qanneal::ParseError) << bad;
}

TEST(Dimacs, DataFormula) {
  auto f = data_formula();
  EXPECT_EQ(f.num_vars, 9u);
  EXPECT_EQ(f.clauses.size(), 39u);
}

TEST(MaxSat, EncodingMatchesReferencePolynomial) {
  auto h = qanneal::encode_maxsat(data_formula());
  EXPECT_EQ(h, qanneal::parse_pbf(oracle::read_data("maxsat_39.pbf")));
  EXPECT_EQ(h.constant(), 5.0);
  EXPECT_EQ(h.degree(), 3u);
}

TEST(MaxSat, SingleClauseExpansion) {
  auto h = qanneal::encode_maxsat(qanneal::parse_dimacs("p cnf 3 1\n1 2 3 0\n"));
  EXPECT_EQ(h, qanneal::parse_pbf("1\n-1 1\n-1 2\n-1 3\n1 1 2\n1 1 3\n1 2 3\n-1 1 2 3\n"));
  auto neg = qanneal::encode_maxsat(qanneal::parse_dimacs("p cnf 2 1\n-1 2 0\n"));
  EXPECT_EQ(neg, qanneal::parse_pbf("1 1\n-1 1 2\n"));
}

TEST(MaxSat, CountSatisfied) {
  auto f = data_formula();
  const std::vector<Binary> best{0, 0, 1, 1, 1, 1, 1, 1, 1};
  EXPECT_EQ(qanneal::count_satisfied(f, best), 39u);
  EXPECT_EQ(qanneal::encode_maxsat(f).evaluate(best), 0.0);
  const std::vector<qanneal::Spin> s{-1, -1, 1, 1, 1, 1, 1, 1, -1};
  EXPECT_EQ(qanneal::count_satisfied(f, qanneal::to_binary(s)), 38u);

  auto all_x1 = qanneal::parse_dimacs("p cnf 3 3\n1 2 0\n1 -3 0\n1 0\n");
  EXPECT_EQ(qanneal::count_satisfied(all_x1, std::vector<Binary>{1, 0, 1}), 3u);
  EXPECT_THROW(qanneal::count_satisfied(f, std::vector<Binary>(8, 0)), qanneal::DimensionError);
}

TEST(MaxSat, CountPlusObjectiveIsClauseCount) {
  auto f = data_formula();
  auto h = qanneal::encode_maxsat(f);
  std::vector<std::vector<int>> clauses(f.clauses.begin(), f.clauses.end());
  oracle::for_each_assignment(9, [&](const auto& x) {
    EXPECT_EQ(static_cast<double>(qanneal::count_satisfied(f, x)) + h.evaluate(x), 39.0);
    EXPECT_EQ(h.evaluate(x), static_cast<double>(oracle::unsatisfied(clauses, x)));
  });
}

TEST(MaxSat, RandomFormulasAgreeWithClauseCounter) {
  auto rng = qanneal::make_rng(60, 0);
  for (int trial = 0; trial < 30; ++trial) {
    CnfFormula f;
    f.num_vars = 3 + rng() % 8;
    const std::size_t m = 1 + rng() % 30;
    for (std::size_t j = 0; j < m; ++j) {
      std::vector<qanneal::Literal> c;
      const std::size_t w = 1 + rng() % 3;
      for (std::size_t k = 0; k < w; ++k) {
        const int v = 1 + static_cast<int>(rng() % f.num_vars);
        c.push_back(rng() % 2 ? v : -v);
      }
      f.clauses.push_back(c);
    }
    auto h = qanneal::encode_maxsat(f);
    auto rec = qanneal::reduce_to_quadratic(h);
    std::vector<std::vector<int>> clauses(f.clauses.begin(), f.clauses.end());
    double best = 1e9, best_reduced = 1e9;
    oracle::for_each_assignment(f.num_vars, [&](const auto& x) {
      const double u = static_cast<double>(oracle::unsatisfied(clauses, x));
      ASSERT_EQ(h.evaluate(x), u);
      ASSERT_EQ(qanneal::count_satisfied(f, x) + u, static_cast<double>(m));
      best = std::min(best, u);
      best_reduced = std::min(best_reduced, oracle::min_over_aux(rec.result, x, rec.total_vars()));
    });
    EXPECT_EQ(best_reduced, best);
  }
}

TEST(Tree, DataInstance) {
  auto t = data_tree();
  EXPECT_EQ(t.num_vertices, 20u);
  EXPECT_EQ(t.edges.size(), 19u);
  EXPECT_EQ(t.pairs.size(), 10u);
  EXPECT_NO_THROW(qanneal::validate_tree(t));
  auto back = qanneal::parse_tree(qanneal::render_tree(t));
  EXPECT_EQ(back.num_vertices, t.num_vertices);
  EXPECT_EQ(back.pairs, t.pairs);
  ASSERT_EQ(back.edges.size(), t.edges.size());
  for (auto [s, u] : t.pairs) EXPECT_EQ(qanneal::tree_path(t, s, u), oracle::dfs_path(t, s, u));
}

TEST(Tree, InstanceErrors) {
  EXPECT_THROW(qanneal::validate_tree(qanneal::parse_tree("tree 3\ne 1 2\ne 2 1\n")), qanneal::InstanceError);
  EXPECT_THROW(qanneal::validate_tree(qanneal::parse_tree("tree 4\ne 1 2\ne 3 4\n")), qanneal::InstanceError);
  EXPECT_THROW(qanneal::validate_tree(qanneal::parse_tree("tree 3\ne 1 2\ne 2 3\ne 1 3\n")), qanneal::InstanceError);
  EXPECT_THROW(qanneal::validate_tree(qanneal::parse_tree("tree 2\ne 1 2\npair 1 1\n")), qanneal::InstanceError);
  EXPECT_THROW(qanneal::validate_tree(qanneal::parse_tree("tree 2\ne 1 2\npair 1 5\n")), qanneal::InstanceError);
  EXPECT_THROW(qanneal::encode_mmc_tree(qanneal::parse_tree("tree 3\ne 1 2\n")), qanneal::InstanceError);
  EXPECT_THROW(qanneal::parse_tree("e 1 2\n"), qanneal::ParseError);
  EXPECT_THROW(qanneal::parse_tree("tree 2\nedge 1 2\n"), qanneal::ParseError);
}

TEST(Multicut, EncodingMatchesReferencePolynomial) {
  auto enc = qanneal::encode_mmc_tree(data_tree());
  EXPECT_EQ(enc.lambda, 10.0);
  EXPECT_EQ(enc.num_vars(), 14u);
  EXPECT_EQ(enc.objective, qanneal::parse_pbf(oracle::read_data("mmc_tree20.pbf")));
  EXPECT_EQ(enc.objective.degree(), 6u);
  EXPECT_EQ(enc.objective.constant(), 14.0);
  EXPECT_EQ(enc.weight + enc.penalty, enc.objective);
}

TEST(Multicut, TrivialInstances) {
  auto t = qanneal::parse_tree("tree 2\ne 1 2\npair 1 2\n");
  auto enc = qanneal::encode_mmc_tree(t, 4.0);
  EXPECT_EQ(enc.objective, qanneal::parse_pbf("1\n3 1\n"));
  EXPECT_EQ(oracle::poly_minimum(enc.objective, 1).value, 1.0);
  EXPECT_EQ(oracle::poly_minimum(enc.objective, 1).argmins[0], (std::vector<std::uint8_t>{0}));

  auto none = qanneal::encode_mmc_tree(qanneal::parse_tree("tree 3\ne 1 2\ne 2 3\n"));
  EXPECT_TRUE(none.objective.is_zero());
  EXPECT_EQ(none.num_vars(), 0u);

  EXPECT_THROW(qanneal::encode_mmc_tree(t, 0.0), qanneal::DomainError);
}

TEST(Multicut, DecodesReferenceCut) {
  auto t = data_tree();
  auto enc = qanneal::encode_mmc_tree(t);
  const std::vector<Binary> x{1, 0, 0, 1, 0, 0, 1, 1, 1, 1, 1, 1, 1, 0};
  auto d = qanneal::decode_mmc(t, enc, x);
  EXPECT_EQ(d.cut, (std::vector<std::size_t>{1, 2, 4, 5, 13}));
  EXPECT_TRUE(d.valid);
  EXPECT_EQ(d.size(), 5u);
  EXPECT_EQ(enc.objective.evaluate(x), 5.0);

  EXPECT_FALSE(qanneal::decode_mmc(t, enc, std::vector<Binary>(14, 1)).valid);
  auto all_cut = qanneal::decode_mmc(t, enc, std::vector<Binary>(14, 0));
  EXPECT_TRUE(all_cut.valid);
  EXPECT_EQ(all_cut.size(), 14u);
  EXPECT_THROW(qanneal::decode_mmc(t, enc, std::vector<Binary>(13, 0)), qanneal::DimensionError);
}

TEST(Multicut, SoundnessAndPenaltySufficiency) {
  auto t = data_tree();
  auto enc = qanneal::encode_mmc_tree(t);
  std::size_t optimal = 0;
  oracle::for_each_assignment(14, [&](const auto& x) {
    const auto d = qanneal::decode_mmc(t, enc, x);
    const double v = enc.objective.evaluate(x);
    if (enc.penalty.evaluate(x) == 0.0) {
      ASSERT_TRUE(d.valid);
    }
    if (d.valid) {
      ASSERT_EQ(v, static_cast<double>(d.size()));
    } else {
      ASSERT_GT(v, 5.0);
    }
    optimal += v == 5.0;
  });
  EXPECT_EQ(optimal, 7u);
}

}  // namespace
