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

#include <algorithm>
#include <cmath>
#include <random>

#include "antibandit/error.hpp"
#include "antibandit/synthetic.hpp"

namespace antibandit {
namespace {

std::vector<OperationKind> first_ops(int k) {
  std::vector<OperationKind> ops;
  for (int i = 0; i < k; ++i) ops.push_back(*op_from_index(i));
  return ops;
}

SyntheticSpec constant_spec(const SearchSpace& space, double value) {
  SyntheticSpec spec;
  spec.utilities.assign(space.edge_count(), {});
  for (auto& row : spec.utilities) {
    row.fill(std::nan(""));
    for (OperationKind op : space.catalog()) row[static_cast<std::size_t>(op_index(op))] = value;
  }
  return spec;
}

// Independent enumeration: odometer over candidate positions.
std::vector<Genotype> all_genotypes(const SearchSpace& space) {
  std::vector<Genotype> out;
  std::vector<std::size_t> pos(space.edge_count(), 0);
  while (true) {
    std::vector<OperationKind> ops;
    for (std::size_t e = 0; e < pos.size(); ++e) ops.push_back(space.candidates(e)[pos[e]]);
    out.emplace_back(space.cells(), space.nodes(), ops);
    std::size_t e = pos.size();
    while (e > 0) {
      --e;
      if (++pos[e] < space.candidates(e).size()) break;
      pos[e] = 0;
      if (e == 0) return out;
    }
  }
}

TEST(Synthetic, ConstantUtilitiesScoreConstant) {
  const SearchSpace space(1, 2, first_ops(3));
  const SyntheticSpec spec = constant_spec(space, 0.5);
  for (const Genotype& g : all_genotypes(space)) {
    EXPECT_EQ(synthetic_evaluate(spec, g, 12), 0.5);
  }
}

TEST(Synthetic, PlantedOptimumIsMaximal) {
  const SearchSpace space(1, 2, first_ops(4));
  for (std::uint64_t s = 0; s < 10; ++s) {
    const SyntheticSpec spec = generate_separable_spec(space, 0.2, 0.0, s);
    const Genotype opt = planted_optimum(spec, space);
    const double best = noiseless_score(spec, opt);
    for (const Genotype& g : all_genotypes(space)) {
      if (g != opt) EXPECT_LT(noiseless_score(spec, g), best);
    }
    EXPECT_EQ(synthetic_evaluate(spec, opt, 3), best);
  }
}

TEST(Synthetic, GeneratorEnforcesGap) {
  const SearchSpace space(2, 3, full_catalog());
  for (double gap : {0.05, 0.2, 0.5, 0.9}) {
    const SyntheticSpec spec = generate_separable_spec(space, gap, 0.0, 4);
    for (const auto& row : spec.utilities) {
      std::vector<double> v(row.begin(), row.end());
      std::sort(v.begin(), v.end(), std::greater<>());
      EXPECT_GE(v[0] - v[1], gap);
      for (double u : v) {
        EXPECT_GE(u, 0.0);
        EXPECT_LE(u, 1.0);
      }
    }
  }
  EXPECT_THROW(generate_separable_spec(space, 0.0, 0.0, 1), ConfigError);
  EXPECT_THROW(generate_separable_spec(space, 1.0, 0.0, 1), ConfigError);
}

TEST(Synthetic, NoisePurityAndClipping) {
  const SearchSpace space(1, 2, first_ops(3));
  SyntheticSpec spec = generate_separable_spec(space, 0.2, 0.3, 8);
  const Genotype g = planted_optimum(spec, space);
  std::vector<double> seen;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const double a = synthetic_evaluate(spec, g, seed);
    EXPECT_EQ(a, synthetic_evaluate(spec, g, seed));
    EXPECT_GE(a, 0.0);
    EXPECT_LE(a, 1.0);
    seen.push_back(a);
  }
  std::sort(seen.begin(), seen.end());
  EXPECT_LT(seen.front(), seen.back());
  spec.noise_sigma = 5.0;
  spec.clip = false;
  bool outside = false;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const double a = synthetic_evaluate(spec, g, seed);
    outside = outside || a < 0.0 || a > 1.0;
  }
  EXPECT_TRUE(outside);
}

TEST(Synthetic, OneEdgeDifferenceEqualsUtilityDifference) {
  const SearchSpace space(1, 3, full_catalog());
  const SyntheticSpec spec = generate_separable_spec(space, 0.1, 0.0, 21);
  std::mt19937_64 gen(1);
  for (int i = 0; i < 200; ++i) {
    std::vector<OperationKind> ops(space.edge_count());
    for (auto& op : ops) op = *op_from_index(static_cast<int>(gen() % 9));
    Genotype a(1, 3, ops);
    const std::size_t e = gen() % ops.size();
    Genotype b = a;
    b[e] = *op_from_index(static_cast<int>(gen() % 9));
    const double du = spec.utilities[e][static_cast<std::size_t>(op_index(a[e]))] -
                      spec.utilities[e][static_cast<std::size_t>(op_index(b[e]))];
    EXPECT_NEAR(noiseless_score(spec, a) - noiseless_score(spec, b),
                du / static_cast<double>(ops.size()), 1e-15);
  }
}

TEST(Synthetic, MissingUtilityIsConfigError) {
  const SearchSpace space(1, 2, first_ops(3));
  SyntheticSpec spec = constant_spec(space, 0.4);
  spec.utilities[1][2] = std::nan("");
  EXPECT_THROW(spec.validate_for(space), ConfigError);
  const Genotype g(1, 2, {OperationKind::kMaxPool3x3, OperationKind::kSkipConnect,
                          OperationKind::kMaxPool3x3});
  EXPECT_THROW(noiseless_score(spec, g), ConfigError);
}

TEST(BruteForce, EnumeratesWholeSpace) {
  const SearchSpace space(1, 2, first_ops(3));
  const SyntheticSpec spec = generate_separable_spec(space, 0.2, 0.0, 2);
  const BruteForceResult r = brute_force_best(spec, space);
  EXPECT_EQ(r.evaluated, 27u);
  EXPECT_EQ(all_genotypes(space).size(), 27u);
  EXPECT_EQ(r.genotype, planted_optimum(spec, space));
  EXPECT_EQ(r.score, noiseless_score(spec, r.genotype));
}

TEST(BruteForce, TiesResolveToLexicographicallySmallest) {
  const SearchSpace space(1, 2, first_ops(3));
  const SyntheticSpec spec = constant_spec(space, 0.5);
  const BruteForceResult r = brute_force_best(spec, space);
  EXPECT_EQ(r.genotype, diagonal_genotype(space, 0));
  const auto all = all_genotypes(space);
  EXPECT_EQ(r.genotype, *std::min_element(all.begin(), all.end()));
}

TEST(BruteForce, RefusesLargeSpaces) {
  const SearchSpace space(1, 4, full_catalog());  // 9^10 genotypes
  const SyntheticSpec spec = generate_separable_spec(space, 0.2, 0.0, 2);
  try {
    brute_force_best(spec, space);
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("3486784401"), std::string::npos) << e.what();
  }
}

}  // namespace
}  // namespace antibandit
