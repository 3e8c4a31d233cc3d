// Copyright 2026 The antibandit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <random>
#include <set>

#include "antibandit/error.hpp"
#include "antibandit/search_space.hpp"

namespace antibandit {
namespace {

std::vector<OperationKind> first_ops(int k) {
  std::vector<OperationKind> ops;
  for (int i = 0; i < k; ++i) ops.push_back(*op_from_index(i));
  return ops;
}

TEST(OperationKind, NineStableNamesAndIndices) {
  const auto ops = full_catalog();
  ASSERT_EQ(ops.size(), 9u);
  std::set<std::string_view> names;
  for (int i = 0; i < 9; ++i) {
    EXPECT_EQ(op_index(ops[static_cast<std::size_t>(i)]), i);
    EXPECT_EQ(op_from_name(op_name(ops[static_cast<std::size_t>(i)])), ops[static_cast<std::size_t>(i)]);
    names.insert(op_name(ops[static_cast<std::size_t>(i)]));
  }
  EXPECT_EQ(names.size(), 9u);
  EXPECT_EQ(op_name(OperationKind::kGabor3x3), "gabor_3x3");
  EXPECT_FALSE(op_from_index(9));
  EXPECT_FALSE(op_from_name("conv_7x7"));
}

TEST(SearchSpace, EdgeCountPerCell) {
  for (int m = 1; m <= 8; ++m) {
    const SearchSpace space(1, m, full_catalog());
    EXPECT_EQ(space.edge_count(), static_cast<std::size_t>(m * (m + 1) / 2));
    EXPECT_EQ(edges_per_cell(m), m * (m + 1) / 2);
  }
  EXPECT_EQ(edges_per_cell(4), 10);
}

TEST(SearchSpace, EdgesAreAcyclicAndTopologicallyOrdered) {
  const SearchSpace space(3, 5, full_catalog());
  std::set<EdgeId> seen;
  for (std::size_t i = 0; i < space.edge_count(); ++i) {
    const EdgeId& e = space.edge(i);
    EXPECT_LT(e.from, e.to);
    EXPECT_GE(e.from, 0);
    EXPECT_LE(e.to, 5);
    EXPECT_EQ(space.edge_index(e), i);
    EXPECT_TRUE(seen.insert(e).second);
    // Every edge into node `from` was listed earlier in the same cell.
    for (int k = 0; k < e.from; ++k) {
      EXPECT_LT(space.edge_index({e.cell, k, e.from}), i);
    }
  }
}

TEST(SearchSpace, FullCatalogSixCellSize) {
  const SearchSpace space = build_search_space(6, 4, full_catalog());
  EXPECT_EQ(space.edge_count(), 60u);
  for (std::size_t e = 0; e < space.edge_count(); ++e) EXPECT_EQ(space.candidates(e).size(), 9u);
  EXPECT_EQ(space_size(space), boost::multiprecision::pow(BigInt(9), 60));
}

TEST(SearchSpace, DegenerateAndSmallSizes) {
  const SearchSpace one = build_search_space(1, 1, {OperationKind::kSkipConnect});
  EXPECT_EQ(one.edge_count(), 1u);
  EXPECT_EQ(space_size(one), 1);
  const SearchSpace small = build_search_space(1, 2, first_ops(3));
  EXPECT_EQ(small.edge_count(), 3u);
  EXPECT_EQ(space_size(small), 27);
}

TEST(SearchSpace, ConfigurationErrors) {
  EXPECT_THROW(build_search_space(1, 2, {}), ConfigError);
  EXPECT_THROW(build_search_space(0, 2, full_catalog()), ConfigError);
  EXPECT_THROW(build_search_space(1, 0, full_catalog()), ConfigError);
  EXPECT_THROW(build_search_space(1, 2, {OperationKind::kDenoise, OperationKind::kDenoise}),
               ConfigError);
}

TEST(SearchSpace, CatalogIsOrderedByIndex) {
  const SearchSpace space(1, 2, {OperationKind::kDenoise, OperationKind::kMaxPool3x3,
                                 OperationKind::kGabor3x3});
  const std::vector<OperationKind> expected = {OperationKind::kMaxPool3x3,
                                               OperationKind::kGabor3x3, OperationKind::kDenoise};
  EXPECT_EQ(space.catalog(), expected);
  const auto c = space.candidates(0);
  EXPECT_TRUE(std::equal(c.begin(), c.end(), expected.begin(), expected.end()));
}

TEST(PruneOperation, RemovesFromOneEdgeOnly) {
  const SearchSpace space = build_search_space(1, 2, first_ops(3));
  const EdgeId e{0, 0, 2};
  const SearchSpace pruned = prune_operation(space, e, OperationKind::kAvgPool3x3);
  const auto c = pruned.candidates(pruned.edge_index(e));
  const std::vector<OperationKind> expected = {OperationKind::kMaxPool3x3,
                                               OperationKind::kSkipConnect};
  EXPECT_TRUE(std::equal(c.begin(), c.end(), expected.begin(), expected.end()));
  for (std::size_t i = 0; i < pruned.edge_count(); ++i) {
    if (pruned.edge(i) != e) EXPECT_EQ(pruned.candidates(i).size(), 3u);
  }
  EXPECT_EQ(space.candidates(space.edge_index(e)).size(), 3u);  // source untouched
  EXPECT_EQ(pruned.uniform_cardinality(), 0u);
}

TEST(PruneOperation, Errors) {
  const SearchSpace space = build_search_space(1, 1, first_ops(2));
  const EdgeId e{0, 0, 1};
  EXPECT_THROW(prune_operation(space, e, OperationKind::kDenoise), NotFoundError);
  EXPECT_THROW(prune_operation(space, {0, 1, 2}, OperationKind::kMaxPool3x3), NotFoundError);
  const SearchSpace single = prune_operation(space, e, OperationKind::kMaxPool3x3);
  EXPECT_THROW(prune_operation(single, e, OperationKind::kAvgPool3x3), InvariantError);
}

TEST(PruneOperation, GlobalRoundDropsNineToEightPowerSixty) {
  SearchSpace space = build_search_space(6, 4, full_catalog());
  for (std::size_t e = 0; e < space.edge_count(); ++e) {
    space = prune_operation(space, space.edge(e), OperationKind::kDenoise);
  }
  EXPECT_EQ(space_size(space), boost::multiprecision::pow(BigInt(8), 60));
  EXPECT_EQ(space.uniform_cardinality(), 8u);
}

TEST(PruneOperation, SizeIsMultiplicative) {
  std::mt19937_64 gen(5);
  SearchSpace space = build_search_space(2, 3, full_catalog());
  for (int step = 0; step < 40; ++step) {
    const std::size_t e = gen() % space.edge_count();
    const auto c = space.candidates(e);
    if (c.size() < 2) continue;
    const OperationKind op = c[gen() % c.size()];
    const BigInt before = space_size(space);
    const BigInt k = c.size();
    space = prune_operation(space, space.edge(e), op);
    EXPECT_EQ(space_size(space) * k, before * (k - 1));
  }
}

TEST(ValidateGenotype, Cases) {
  const SearchSpace space = build_search_space(1, 2, first_ops(3));
  const Genotype ok(1, 2, {OperationKind::kMaxPool3x3, OperationKind::kSkipConnect,
                           OperationKind::kAvgPool3x3});
  EXPECT_TRUE(validate_genotype(space, ok));
  const Genotype missing(1, 2, {OperationKind::kMaxPool3x3, OperationKind::kSkipConnect});
  EXPECT_FALSE(validate_genotype(space, missing));
  const Genotype foreign(1, 2, {OperationKind::kMaxPool3x3, OperationKind::kSkipConnect,
                                OperationKind::kDenoise});
  EXPECT_FALSE(validate_genotype(space, foreign));
  const SearchSpace pruned = prune_operation(space, space.edge(0), OperationKind::kMaxPool3x3);
  EXPECT_FALSE(validate_genotype(pruned, ok));
  EXPECT_FALSE(validate_genotype(space, Genotype(2, 2, ok.choices())));
}

TEST(Genotype, LexicographicOrder) {
  const Genotype a(1, 1, {OperationKind::kMaxPool3x3});
  const Genotype b(1, 1, {OperationKind::kAvgPool3x3});
  EXPECT_LT(a, b);
  EXPECT_EQ(a, Genotype(1, 1, {OperationKind::kMaxPool3x3}));
}

TEST(DiagonalGenotype, PicksSameOpEverywhere) {
  const SearchSpace space = build_search_space(2, 2, first_ops(4));
  for (std::size_t k = 0; k < 4; ++k) {
    const Genotype g = diagonal_genotype(space, k);
    EXPECT_TRUE(validate_genotype(space, g));
    for (std::size_t e = 0; e < g.size(); ++e) EXPECT_EQ(g[e], space.catalog()[k]);
  }
}

}  // namespace
}  // namespace antibandit
