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

#ifndef ANTIBANDIT_TINYNET_HPP_
#define ANTIBANDIT_TINYNET_HPP_

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "antibandit/attack.hpp"
#include "antibandit/dataset.hpp"
#include "antibandit/evaluator.hpp"
#include "antibandit/search_space.hpp"
#include "antibandit/tensor.hpp"

namespace antibandit {

struct TinyNetSpec {
  std::size_t channels = 4;
  int cells = 1;
  int nodes = 2;
  // Cells (0-based) that halve the spatial size and double the width.
  std::vector<int> reduction_cells;
  int train_epochs = 1;
  std::size_t dataset_size = 768;
  std::uint64_t dataset_seed = 1;
  double learning_rate = 0.1;
  AttackConfig attack;
  // Reward on attacked validation inputs instead of clean ones.
  bool adversarial_validation = false;

  void validate() const;  // throws ConfigError
  bool operator==(const TinyNetSpec&) const = default;
};

// Stem 3x3 conv (1 -> C), v cells, global average pooling, linear 2-way
// head, softmax cross-entropy. Inside a cell node j sums op(i, j)(B_i) over
// i < j; the cell output concatenates B_1..B_M and a 1x1 projection maps it
// back to C channels (2C after a reduction cell, followed by 2x2 average
// pooling).
class TinyNetwork : public LossModel {
 public:
  TinyNetwork(const Genotype& genotype, const TinyNetSpec& spec, std::uint64_t seed);

  double loss(const Tensor& x, int label, Tensor* input_grad) const override;

  // Loss plus gradients; either output may be null.
  double loss_and_gradients(const Tensor& x, int label, std::vector<Tensor>* param_grads,
                            Tensor* input_grad) const;

  std::vector<double> logits(const Tensor& x) const;
  int predict(const Tensor& x) const;

  std::vector<Tensor>& parameters() { return params_; }
  const std::vector<Tensor>& parameters() const { return params_; }

  // params -= lr * grads, then projects Gabor scales back to positive values.
  void sgd_step(const std::vector<Tensor>& grads, double learning_rate);

  // ReLU signs and max-pool argmaxes of every operation on input x.
  std::vector<std::uint32_t> activation_pattern(const Tensor& x) const;

 private:
  struct EdgeSlot {
    OperationKind kind;
    int from;
    int to;
    std::size_t first_param;
    std::size_t param_count;
  };
  struct CellLayout {
    std::vector<EdgeSlot> edges;  // canonical order
    std::size_t projection;
    std::size_t in_channels;
    std::size_t out_channels;
    bool reduction;
  };
  struct Trace;

  double run(const Tensor& x, int label, std::vector<Tensor>* param_grads, Tensor* input_grad,
             std::vector<double>* logits_out, std::vector<std::uint32_t>* pattern) const;

  int nodes_;
  std::size_t stem_;
  std::vector<CellLayout> cells_;
  std::size_t head_weight_;
  std::size_t head_bias_;
  std::vector<std::size_t> gabor_params_;
  std::vector<Tensor> params_;
};

// Trains a freshly initialized TinyNetwork with FGSM-RI adversarial training
// (PGD when attack.steps > 1, plain SGD when attack.steps == 0) and returns
// validation accuracy. A non-finite loss scores the trial 0.
class TinyNetEvaluator : public Evaluator {
 public:
  explicit TinyNetEvaluator(TinyNetSpec spec);

  double evaluate(const Genotype& genotype, std::uint64_t seed) const override;

  // The training half of evaluate(); nullopt when training diverged.
  std::optional<TinyNetwork> train(const Genotype& genotype, std::uint64_t seed) const;
  // Clean (or, with adversarial_validation, attacked) validation accuracy.
  double validation_accuracy(const TinyNetwork& net, std::uint64_t seed) const;

  const TinyNetSpec& spec() const { return spec_; }
  const Dataset& dataset() const { return data_; }
  // Number of trials scored 0 because training or the attack diverged.
  int failures() const { return failures_.load(); }

  // Called with every training perturbation.
  void set_perturbation_observer(std::function<void(const Tensor&)> observer) {
    observer_ = std::move(observer);
  }

 private:
  TinyNetSpec spec_;
  Dataset data_;
  std::function<void(const Tensor&)> observer_;
  mutable std::atomic<int> failures_{0};
};

}  // namespace antibandit

#endif  // ANTIBANDIT_TINYNET_HPP_
