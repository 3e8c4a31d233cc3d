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

#include <cmath>

#include "antibandit/error.hpp"
#include "antibandit/tinynet.hpp"
#include "gradcheck.hpp"

namespace antibandit {
namespace {

Genotype uniform_genotype(const TinyNetSpec& spec, OperationKind op) {
  return Genotype(spec.cells, spec.nodes,
                  std::vector<OperationKind>(
                      static_cast<std::size_t>(spec.cells * edges_per_cell(spec.nodes)), op));
}

TinyNetSpec small_spec() {
  TinyNetSpec spec;
  spec.dataset_size = 96;
  return spec;
}

// Oracle: logistic regression on raw pixels by full-batch gradient descent.
double logistic_regression_accuracy(const Dataset& data) {
  const std::size_t n = 64;
  std::vector<double> w(n, 0.0);
  double b = 0.0;
  for (int it = 0; it < 300; ++it) {
    std::vector<double> gw(n, 0.0);
    double gb = 0.0;
    for (const Example& ex : data.train) {
      double z = b;
      for (std::size_t i = 0; i < n; ++i) z += w[i] * (ex.image[i] - 0.5);
      const double err = 1.0 / (1.0 + std::exp(-z)) - ex.label;
      for (std::size_t i = 0; i < n; ++i) gw[i] += err * (ex.image[i] - 0.5);
      gb += err;
    }
    const double scale = 1.0 / static_cast<double>(data.train.size());
    for (std::size_t i = 0; i < n; ++i) w[i] -= 2.0 * scale * gw[i];
    b -= 2.0 * scale * gb;
  }
  std::size_t correct = 0;
  for (const Example& ex : data.validation) {
    double z = b;
    for (std::size_t i = 0; i < n; ++i) z += w[i] * (ex.image[i] - 0.5);
    correct += (z > 0 ? 1 : 0) == ex.label ? 1 : 0;
  }
  return static_cast<double>(correct) / static_cast<double>(data.validation.size());
}

TEST(TinyNet, NetworkGradientsMatchFiniteDifferences) {
  const gradcheck::Report r = gradcheck::check_network(18, 7);
  EXPECT_EQ(r.instances, 18);
  EXPECT_LE(r.worst, gradcheck::kTolerance) << r.worst_where;
}

TEST(TinyNet, IdentityGenotypeLearnsLikeLogisticRegression) {
  TinyNetSpec spec;
  spec.attack = {0.0, 0.0, 0, true};
  const TinyNetEvaluator ev(spec);
  const double oracle_acc = logistic_regression_accuracy(ev.dataset());
  EXPECT_GT(oracle_acc, 0.5);
  const double acc = ev.evaluate(uniform_genotype(spec, OperationKind::kSkipConnect), 3);
  EXPECT_GT(acc, 0.5);
  EXPECT_LE(acc, 1.0);
}

TEST(TinyNet, ZeroBudgetTrainingMatchesPlainSgd) {
  TinyNetSpec plain = small_spec();
  plain.attack = {0.0, 0.0, 0, true};
  TinyNetSpec zero = small_spec();
  zero.attack = {0.0, 0.0, 1, true};
  const TinyNetEvaluator a(plain);
  const TinyNetEvaluator b(zero);
  for (OperationKind op : {OperationKind::kSepConv3x3, OperationKind::kGabor3x3,
                           OperationKind::kDenoise, OperationKind::kMaxPool3x3}) {
    const Genotype g = uniform_genotype(plain, op);
    const auto na = a.train(g, 5);
    const auto nb = b.train(g, 5);
    ASSERT_TRUE(na && nb);
    EXPECT_EQ(na->parameters(), nb->parameters()) << op_name(op);
    EXPECT_EQ(a.evaluate(g, 5), b.evaluate(g, 5));
  }
}

TEST(TinyNet, TrainingPerturbationsStayInBall) {
  for (int steps : {1, 3}) {
    TinyNetSpec spec = small_spec();
    spec.attack = {0.1, 0.125, steps, true};
    TinyNetEvaluator ev(spec);
    std::size_t seen = 0;
    double worst = 0.0;
    ev.set_perturbation_observer([&](const Tensor& d) {
      ++seen;
      worst = std::max(worst, d.max_abs());
    });
    ev.evaluate(uniform_genotype(spec, OperationKind::kDilConv3x3), 1);
    EXPECT_EQ(seen, ev.dataset().train.size());
    EXPECT_LE(worst, 0.1);
    EXPECT_GT(worst, 0.0);
  }
}

TEST(TinyNet, EvaluationIsPure) {
  TinyNetSpec spec = small_spec();
  spec.adversarial_validation = true;
  const TinyNetEvaluator ev(spec);
  const Genotype g(1, 2, {OperationKind::kGabor3x3, OperationKind::kDenoise,
                          OperationKind::kSepConv5x5});
  const double a = ev.evaluate(g, 9);
  EXPECT_EQ(a, ev.evaluate(g, 9));
  EXPECT_GE(a, 0.0);
  EXPECT_LE(a, 1.0);
}

TEST(TinyNet, DivergenceScoresZero) {
  TinyNetSpec spec = small_spec();
  spec.learning_rate = 1e200;
  const TinyNetEvaluator ev(spec);
  EXPECT_EQ(ev.evaluate(uniform_genotype(spec, OperationKind::kDilConv5x5), 1), 0.0);
  EXPECT_GE(ev.failures(), 1);
}

TEST(TinyNet, ReductionCellsAndLayoutChecks) {
  TinyNetSpec spec = small_spec();
  spec.cells = 3;
  spec.reduction_cells = {1, 2};
  const Genotype g = uniform_genotype(spec, OperationKind::kAvgPool3x3);
  const TinyNetwork net(g, spec, 1);
  EXPECT_EQ(net.logits(Tensor({1, 8, 8}, 0.3)).size(), 2u);
  EXPECT_THROW(TinyNetwork(Genotype(1, 2, g.choices()), spec, 1), ConfigError);
  EXPECT_THROW(net.loss(Tensor({2, 8, 8}), 0, nullptr), ShapeError);

  TinyNetSpec bad = spec;
  bad.reduction_cells = {0, 1, 2, 2};
  EXPECT_THROW(bad.validate(), ConfigError);
  bad.reduction_cells = {3};
  EXPECT_THROW(bad.validate(), ConfigError);
}

TEST(TinyNet, GaborScalesStayPositive) {
  TinyNetSpec spec = small_spec();
  TinyNetwork net(uniform_genotype(spec, OperationKind::kGabor3x3), spec, 2);
  std::vector<Tensor> grads;
  for (const Tensor& p : net.parameters()) grads.push_back(Tensor(p.shape(), 1e3));
  net.sgd_step(grads, 1.0);
  for (const Tensor& p : net.parameters()) {
    if (p.rank() == 2 && p.dim(1) == 5) {
      for (std::size_t c = 0; c < p.dim(0); ++c) {
        EXPECT_GT(p[c * 5 + 0], 0.0);
        EXPECT_GT(p[c * 5 + 2], 0.0);
      }
    }
  }
}

}  // namespace
}  // namespace antibandit
