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

// Central finite-difference checks for operations and the tiny network.
// Instances whose +/-h probes change an activation pattern (a ReLU sign or a
// max-pool argmax) straddle a kink and are redrawn.
#ifndef ANTIBANDIT_TESTS_GRADCHECK_HPP_
#define ANTIBANDIT_TESTS_GRADCHECK_HPP_

#include <algorithm>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "antibandit/ops.hpp"
#include "antibandit/rng.hpp"
#include "antibandit/tinynet.hpp"
#include "oracles.hpp"

namespace gradcheck {

using namespace antibandit;

inline constexpr double kStep = 1e-5;
inline constexpr double kTolerance = 1e-4;

struct Report {
  int instances = 0;
  int redraws = 0;
  double worst = 0.0;
  std::string worst_where;

  void note(double err, const std::string& where) {
    if (err > worst) {
      worst = err;
      worst_where = where;
    }
  }
  bool ok() const { return worst <= kTolerance; }
};

inline void randomize_params(OperationKind kind, std::vector<Tensor>& params, std::mt19937_64& gen) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  if (kind == OperationKind::kGabor3x3) {
    std::uniform_real_distribution<double> sigma(0.5, 2.0), gamma(0.3, 1.5), wl(1.5, 5.0),
        angle(-std::numbers::pi, std::numbers::pi);
    Tensor& g = params[0];
    for (std::size_t c = 0; c < g.dim(0); ++c) {
      g[c * 5 + 0] = sigma(gen);
      g[c * 5 + 1] = gamma(gen);
      g[c * 5 + 2] = wl(gen);
      g[c * 5 + 3] = angle(gen);
      g[c * 5 + 4] = angle(gen);
    }
    return;
  }
  for (Tensor& p : params) {
    for (double& v : p.values()) v = u(gen);
  }
}

inline std::vector<std::uint32_t> pattern_of(OperationKind kind, const Tensor& x) {
  std::vector<std::uint32_t> p;
  append_activation_pattern(kind, x, p);
  return p;
}

// Checks op_backward against central differences of <u, op_forward(x)>.
inline Report check_operation(OperationKind kind, int instances, std::uint64_t seed) {
  Report report;
  std::mt19937_64 gen(seed);
  Rng rng(seed);
  while (report.instances < instances) {
    if (report.redraws > 20 * instances) break;
    const auto ch = static_cast<std::size_t>(1 + gen() % 3);
    const auto h = static_cast<std::size_t>(3 + gen() % 4);
    const auto w = static_cast<std::size_t>(3 + gen() % 4);
    Tensor x = oracle::random_tensor({ch, h, w}, gen);
    std::vector<Tensor> params = init_op_params(kind, ch, rng);
    randomize_params(kind, params, gen);
    const Tensor u = oracle::random_tensor({ch, h, w}, gen);

    const auto objective = [&] { return u.dot(op_forward(kind, x, params)); };
    const auto base = pattern_of(kind, x);
    bool kink = false;
    Tensor numeric(x.shape());
    for (std::size_t i = 0; i < x.size() && !kink; ++i) {
      const double saved = x[i];
      x[i] = saved + kStep;
      const double up = objective();
      kink = pattern_of(kind, x) != base;
      x[i] = saved - kStep;
      const double down = objective();
      kink = kink || pattern_of(kind, x) != base;
      x[i] = saved;
      numeric[i] = (up - down) / (2.0 * kStep);
    }
    if (kink) {
      ++report.redraws;
      continue;
    }
    const OpGradients g = op_backward(kind, x, params, u);
    report.note(oracle::relative_error(g.input, numeric), "input");
    for (std::size_t p = 0; p < params.size(); ++p) {
      const Tensor np = oracle::numeric_gradient(params[p], objective, kStep);
      report.note(oracle::relative_error(g.params[p], np), "param " + std::to_string(p));
    }
    ++report.instances;
  }
  return report;
}

// Network with a reduction cell and a random genotype over the full catalog.
inline Report check_network(int instances, std::uint64_t seed) {
  Report report;
  std::mt19937_64 gen(seed);
  TinyNetSpec spec;
  spec.channels = 2;
  spec.cells = 2;
  spec.nodes = 2;
  spec.reduction_cells = {1};
  while (report.instances < instances) {
    if (report.redraws > 20 * instances) break;
    std::vector<OperationKind> ops(static_cast<std::size_t>(spec.cells * edges_per_cell(spec.nodes)));
    for (std::size_t e = 0; e < ops.size(); ++e) {
      // Cycle through the catalog so every kind is covered.
      ops[e] = *op_from_index(static_cast<int>((static_cast<std::size_t>(report.instances) * ops.size() + e) % 9));
    }
    const Genotype genotype(spec.cells, spec.nodes, ops);
    TinyNetwork net(genotype, spec, gen());
    for (std::size_t p = 0; p < net.parameters().size(); ++p) {
      for (double& v : net.parameters()[p].values()) {
        v += std::uniform_real_distribution<double>(-0.2, 0.2)(gen);
      }
    }
    // Keep Gabor scales away from zero after the jitter.
    for (std::size_t p = 0; p < net.parameters().size(); ++p) {
      Tensor& t = net.parameters()[p];
      if (t.rank() == 2 && t.dim(1) == 5) {
        for (std::size_t c = 0; c < t.dim(0); ++c) {
          t[c * 5 + 0] = std::max(t[c * 5 + 0], 0.5);
          t[c * 5 + 2] = std::max(t[c * 5 + 2], 1.0);
        }
      }
    }
    Tensor x = oracle::random_tensor({1, 8, 8}, gen, 0.0, 1.0);
    const int label = static_cast<int>(gen() % 2);
    const auto objective = [&] { return net.loss(x, label, nullptr); };
    const auto base = net.activation_pattern(x);

    bool kink = false;
    const auto probe = [&](double& slot, double& grad) {
      const double saved = slot;
      slot = saved + kStep;
      const double up = objective();
      kink = kink || net.activation_pattern(x) != base;
      slot = saved - kStep;
      const double down = objective();
      kink = kink || net.activation_pattern(x) != base;
      slot = saved;
      grad = (up - down) / (2.0 * kStep);
    };
    Tensor num_x(x.shape());
    for (std::size_t i = 0; i < x.size() && !kink; ++i) probe(x[i], num_x[i]);
    std::vector<Tensor> num_p;
    for (std::size_t p = 0; p < net.parameters().size() && !kink; ++p) {
      Tensor& t = net.parameters()[p];
      Tensor g(t.shape());
      for (std::size_t i = 0; i < t.size() && !kink; ++i) probe(t[i], g[i]);
      num_p.push_back(std::move(g));
    }
    if (kink) {
      ++report.redraws;
      continue;
    }
    std::vector<Tensor> grads;
    Tensor gx;
    net.loss_and_gradients(x, label, &grads, &gx);
    report.note(oracle::relative_error(gx, num_x), "input");
    for (std::size_t p = 0; p < grads.size(); ++p) {
      report.note(oracle::relative_error(grads[p], num_p[p]), "param " + std::to_string(p));
    }
    ++report.instances;
  }
  return report;
}

}  // namespace gradcheck

#endif  // ANTIBANDIT_TESTS_GRADCHECK_HPP_
