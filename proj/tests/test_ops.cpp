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

#include "antibandit/error.hpp"
#include "antibandit/ops.hpp"
#include "gradcheck.hpp"
#include "oracles.hpp"

namespace antibandit {
namespace {

std::vector<Tensor> params_for(OperationKind kind, std::size_t channels, std::uint64_t seed) {
  Rng rng(seed);
  return init_op_params(kind, channels, rng);
}

TEST(Ops, EveryKindPreservesShape) {
  std::mt19937_64 gen(1);
  for (OperationKind kind : full_catalog()) {
    for (std::size_t c : {1u, 3u}) {
      const Tensor x = oracle::random_tensor({c, 5, 7}, gen);
      const auto params = params_for(kind, c, 2);
      const auto shapes = op_param_shapes(kind, c);
      ASSERT_EQ(params.size(), shapes.size());
      for (std::size_t p = 0; p < params.size(); ++p) EXPECT_EQ(params[p].shape(), shapes[p]);
      const Tensor y = op_forward(kind, x, params);
      EXPECT_EQ(y.shape(), x.shape()) << op_name(kind);
      EXPECT_TRUE(y.all_finite());
    }
  }
}

TEST(Ops, IdentityForwardAndBackward) {
  std::mt19937_64 gen(2);
  const Tensor x = oracle::random_tensor({2, 4, 4}, gen);
  EXPECT_EQ(op_forward(OperationKind::kSkipConnect, x, {}), x);
  const Tensor u = oracle::random_tensor({2, 4, 4}, gen);
  EXPECT_EQ(op_backward(OperationKind::kSkipConnect, x, {}, u).input, u);
}

TEST(Ops, AvgPoolConstantMap) {
  const Tensor x({1, 5, 5}, 2.0);
  const Tensor y = op_forward(OperationKind::kAvgPool3x3, x, {});
  for (std::size_t r = 1; r < 4; ++r) {
    for (std::size_t c = 1; c < 4; ++c) EXPECT_DOUBLE_EQ(y.at(0, r, c), 2.0);
  }
  EXPECT_DOUBLE_EQ(y.at(0, 0, 0), 2.0 * 4.0 / 9.0);
  EXPECT_DOUBLE_EQ(y.at(0, 0, 2), 2.0 * 6.0 / 9.0);
}

TEST(Ops, MaxPoolBackwardRoutesToArgmax) {
  std::mt19937_64 gen(3);
  const Tensor x = oracle::random_tensor({1, 4, 4}, gen);
  const Tensor u = oracle::random_tensor({1, 4, 4}, gen);
  const Tensor g = op_backward(OperationKind::kMaxPool3x3, x, {}, u).input;
  Tensor expected({1, 4, 4});
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      int br = -1;
      int bc = -1;
      for (int a = r - 1; a <= r + 1; ++a) {
        for (int b = c - 1; b <= c + 1; ++b) {
          if (a < 0 || a >= 4 || b < 0 || b >= 4) continue;
          if (br < 0 || x.at(0, a, b) > x.at(0, br, bc)) {
            br = a;
            bc = b;
          }
        }
      }
      expected.at(0, br, bc) += u.at(0, r, c);
    }
  }
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_NEAR(g[i], expected[i], 1e-15);
}

TEST(Kernels, ConvMatchesNaiveReference) {
  std::mt19937_64 gen(4);
  for (int rep = 0; rep < 30; ++rep) {
    const auto cin = static_cast<std::size_t>(1 + gen() % 3);
    const auto cout = static_cast<std::size_t>(1 + gen() % 3);
    const std::size_t k = gen() % 2 ? 3 : 5;
    const int dilation = 1 + static_cast<int>(gen() % 2);
    const Tensor x = oracle::random_tensor({cin, 3 + gen() % 6, 3 + gen() % 6}, gen);
    const Tensor w = oracle::random_tensor({cout, cin, k, k}, gen);
    const Tensor got = kernels::conv2d(x, w, dilation);
    const Tensor want = oracle::conv2d(x, w, dilation);
    ASSERT_EQ(got.shape(), want.shape());
    for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], want[i], 1e-12);
  }
}

TEST(Kernels, DilatedConvOpMatchesReluThenNaiveConv) {
  std::mt19937_64 gen(5);
  for (OperationKind kind : {OperationKind::kDilConv3x3, OperationKind::kDilConv5x5}) {
    const Tensor x = oracle::random_tensor({2, 7, 6}, gen);
    const auto params = params_for(kind, 2, 6);
    Tensor rx = x;
    for (double& v : rx.values()) v = std::max(v, 0.0);
    const Tensor want = oracle::conv2d(rx, params[0], 2);
    const Tensor got = op_forward(kind, x, params);
    for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], want[i], 1e-12);
  }
}

TEST(Kernels, SepConvMatchesDepthwiseThenPointwiseReference) {
  std::mt19937_64 gen(6);
  const Tensor x = oracle::random_tensor({3, 5, 5}, gen);
  const auto params = params_for(OperationKind::kSepConv5x5, 3, 7);
  Tensor rx = x;
  for (double& v : rx.values()) v = std::max(v, 0.0);
  // Depthwise = full conv with a block-diagonal weight.
  Tensor full({3, 3, 5, 5});
  for (std::size_t c = 0; c < 3; ++c) {
    for (std::size_t t = 0; t < 25; ++t) full[(c * 3 + c) * 25 + t] = params[0][c * 25 + t];
  }
  Tensor pw({3, 3, 1, 1});
  for (std::size_t i = 0; i < 9; ++i) pw[i] = params[1][i];
  const Tensor want = oracle::conv2d(oracle::conv2d(rx, full, 1), pw, 1);
  const Tensor got = op_forward(OperationKind::kSepConv5x5, x, params);
  for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], want[i], 1e-12);
}

TEST(Ops, ShapeErrors) {
  const Tensor x({2, 4, 4});
  EXPECT_THROW(op_forward(OperationKind::kDilConv3x3, x, {}), ShapeError);
  EXPECT_THROW(op_forward(OperationKind::kDilConv3x3, x, params_for(OperationKind::kDilConv3x3, 3, 1)),
               ShapeError);
  EXPECT_THROW(op_forward(OperationKind::kMaxPool3x3, Tensor({4, 4}), {}), ShapeError);
  EXPECT_THROW(op_backward(OperationKind::kAvgPool3x3, x, {}, Tensor({2, 4, 5})), ShapeError);
}

class OpGradient : public ::testing::TestWithParam<int> {};

TEST_P(OpGradient, FiniteDifferences) {
  const OperationKind kind = *op_from_index(GetParam());
  const gradcheck::Report r = gradcheck::check_operation(kind, 100, 1000 + static_cast<std::uint64_t>(GetParam()));
  EXPECT_EQ(r.instances, 100) << "too many kink redraws";
  EXPECT_LE(r.worst, gradcheck::kTolerance) << op_name(kind) << " worst at " << r.worst_where;
}

INSTANTIATE_TEST_SUITE_P(AllKinds, OpGradient, ::testing::Range(0, 9),
                         [](const auto& info) { return std::string(op_name(*op_from_index(info.param))); });

TEST(ActivationPattern, ChangesAcrossReluKink) {
  Tensor x({1, 3, 3}, 0.5);
  std::vector<std::uint32_t> a;
  append_activation_pattern(OperationKind::kDilConv3x3, x, a);
  x[4] = -0.5;
  std::vector<std::uint32_t> b;
  append_activation_pattern(OperationKind::kDilConv3x3, x, b);
  EXPECT_NE(a, b);
  std::vector<std::uint32_t> none;
  append_activation_pattern(OperationKind::kGabor3x3, x, none);
  EXPECT_TRUE(none.empty());
}

}  // namespace
}  // namespace antibandit
