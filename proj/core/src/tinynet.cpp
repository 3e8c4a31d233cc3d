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

#include "antibandit/tinynet.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>

#include "antibandit/error.hpp"
#include "antibandit/ops.hpp"
#include "antibandit/rng.hpp"

namespace antibandit {
namespace {

constexpr std::uint64_t kInitStream = 0x494e4954;
constexpr std::uint64_t kShuffleStream = 0x53485546;
constexpr std::uint64_t kAttackStream = 0x4154414b;
constexpr std::uint64_t kValidationStream = 0x56414c49;
constexpr double kMinGaborScale = 1e-2;
// Pixels live in [0, 1]; the stem sees them shifted to zero mean.
constexpr double kInputCenter = 0.25;

Tensor avg_pool2x2(const Tensor& x) {
  const std::size_t h = x.dim(1) / 2;
  const std::size_t w = x.dim(2) / 2;
  Tensor out({x.dim(0), h, w});
  for (std::size_t c = 0; c < x.dim(0); ++c) {
    for (std::size_t r = 0; r < h; ++r) {
      for (std::size_t q = 0; q < w; ++q) {
        out.at(c, r, q) = 0.25 * (x.at(c, 2 * r, 2 * q) + x.at(c, 2 * r, 2 * q + 1) +
                                  x.at(c, 2 * r + 1, 2 * q) + x.at(c, 2 * r + 1, 2 * q + 1));
      }
    }
  }
  return out;
}

Tensor avg_pool2x2_backward(const Tensor& x, const Tensor& upstream) {
  Tensor grad = Tensor::zeros_like(x);
  for (std::size_t c = 0; c < upstream.dim(0); ++c) {
    for (std::size_t r = 0; r < upstream.dim(1); ++r) {
      for (std::size_t q = 0; q < upstream.dim(2); ++q) {
        const double g = 0.25 * upstream.at(c, r, q);
        grad.at(c, 2 * r, 2 * q) += g;
        grad.at(c, 2 * r, 2 * q + 1) += g;
        grad.at(c, 2 * r + 1, 2 * q) += g;
        grad.at(c, 2 * r + 1, 2 * q + 1) += g;
      }
    }
  }
  return grad;
}

void fill_normal(Tensor& t, double scale, Rng& rng) {
  for (double& v : t.values()) v = scale * rng.normal();
}

}  // namespace

void TinyNetSpec::validate() const {
  if (channels < 1) throw ConfigError("tinynet.channels must be >= 1");
  if (cells < 1) throw ConfigError("tinynet.cells must be >= 1");
  if (nodes < 1) throw ConfigError("tinynet.nodes must be >= 1");
  if (train_epochs < 0) throw ConfigError("tinynet.train_epochs must be >= 0");
  if (dataset_size < 2) throw ConfigError("tinynet.dataset_size must be >= 2");
  if (!(learning_rate > 0.0)) throw ConfigError("tinynet.learning_rate must be > 0");
  std::size_t spatial = kImageSize;
  for (int cell : reduction_cells) {
    if (cell < 0 || cell >= cells) throw ConfigError("tinynet.reduction_cells entry out of range");
    spatial /= 2;
  }
  if (spatial < 1) throw ConfigError("tinynet.reduction_cells shrink the map below 1x1");
  attack.validate();
}

TinyNetwork::TinyNetwork(const Genotype& genotype, const TinyNetSpec& spec, std::uint64_t seed)
    : nodes_(spec.nodes) {
  if (genotype.cells() != spec.cells || genotype.nodes() != spec.nodes ||
      genotype.size() != static_cast<std::size_t>(spec.cells * edges_per_cell(spec.nodes))) {
    throw ConfigError("tinynet: genotype layout does not match the network spec");
  }
  Rng rng(seed);
  const std::size_t c0 = spec.channels;

  stem_ = params_.size();
  params_.emplace_back(std::vector<std::size_t>{c0, 1, 3, 3});
  fill_normal(params_.back(), std::sqrt(2.0 / 9.0), rng);

  std::size_t width = c0;
  std::size_t flat = 0;
  for (int cell = 0; cell < spec.cells; ++cell) {
    CellLayout layout;
    layout.in_channels = width;
    layout.reduction = std::find(spec.reduction_cells.begin(), spec.reduction_cells.end(),
                                 cell) != spec.reduction_cells.end();
    layout.out_channels = layout.reduction ? 2 * width : width;
    for (int to = 1; to <= spec.nodes; ++to) {
      for (int from = 0; from < to; ++from, ++flat) {
        const OperationKind kind = genotype[flat];
        EdgeSlot slot{kind, from, to, params_.size(), 0};
        for (auto& p : init_op_params(kind, width, rng)) {
          if (kind == OperationKind::kGabor3x3) gabor_params_.push_back(params_.size());
          params_.push_back(std::move(p));
          ++slot.param_count;
        }
        layout.edges.push_back(slot);
      }
    }
    layout.projection = params_.size();
    const std::size_t fan_in = width * static_cast<std::size_t>(spec.nodes);
    params_.emplace_back(std::vector<std::size_t>{layout.out_channels, fan_in});
    fill_normal(params_.back(), std::sqrt(1.0 / static_cast<double>(fan_in)), rng);
    width = layout.out_channels;
    cells_.push_back(std::move(layout));
  }

  head_weight_ = params_.size();
  params_.emplace_back(std::vector<std::size_t>{2, width});
  fill_normal(params_.back(), std::sqrt(1.0 / static_cast<double>(width)), rng);
  head_bias_ = params_.size();
  params_.emplace_back(std::vector<std::size_t>{2});
}

double TinyNetwork::run(const Tensor& x, int label, std::vector<Tensor>* param_grads,
                        Tensor* input_grad, std::vector<double>* logits_out,
                        std::vector<std::uint32_t>* pattern) const {
  if (x.rank() != 3 || x.dim(0) != 1) {
    throw ShapeError("tinynet: expected a [1, H, W] input, got " + shape_string(x.shape()));
  }
  const bool backward = param_grads != nullptr || input_grad != nullptr;
  const auto span_of = [this](std::size_t first, std::size_t count) {
    return std::span<const Tensor>(params_.data() + first, count);
  };

  // Forward, keeping every node for the backward pass.
  struct CellTrace {
    std::vector<Tensor> nodes;
    Tensor concat;
    Tensor projected;
  };
  std::vector<CellTrace> traces(cells_.size());
  Tensor centered = x;
  for (double& v : centered.values()) v -= kInputCenter;
  Tensor current = kernels::conv2d(centered, params_[stem_], 1);
  for (std::size_t ci = 0; ci < cells_.size(); ++ci) {
    const CellLayout& cell = cells_[ci];
    CellTrace& tr = traces[ci];
    tr.nodes.assign(static_cast<std::size_t>(nodes_) + 1, Tensor());
    tr.nodes[0] = std::move(current);
    for (int j = 1; j <= nodes_; ++j) tr.nodes[j] = Tensor::zeros_like(tr.nodes[0]);
    for (const EdgeSlot& e : cell.edges) {
      const Tensor& in = tr.nodes[static_cast<std::size_t>(e.from)];
      if (pattern) append_activation_pattern(e.kind, in, *pattern);
      tr.nodes[static_cast<std::size_t>(e.to)] +=
          op_forward(e.kind, in, span_of(e.first_param, e.param_count));
    }
    const std::size_t w = cell.in_channels;
    const std::size_t plane = tr.nodes[0].dim(1) * tr.nodes[0].dim(2);
    tr.concat = Tensor({w * static_cast<std::size_t>(nodes_), tr.nodes[0].dim(1),
                        tr.nodes[0].dim(2)});
    for (int j = 1; j <= nodes_; ++j) {
      const auto src = tr.nodes[static_cast<std::size_t>(j)].data();
      std::copy(src.begin(), src.end(),
                tr.concat.values().begin() +
                    static_cast<std::ptrdiff_t>((static_cast<std::size_t>(j) - 1) * w * plane));
    }
    tr.projected = kernels::pointwise(tr.concat, params_[cell.projection]);
    current = cell.reduction ? avg_pool2x2(tr.projected) : tr.projected;
  }

  const std::size_t width = current.dim(0);
  const std::size_t plane = current.dim(1) * current.dim(2);
  std::vector<double> pooled(width, 0.0);
  for (std::size_t c = 0; c < width; ++c) {
    double s = 0.0;
    for (std::size_t p = 0; p < plane; ++p) s += current[c * plane + p];
    pooled[c] = s / static_cast<double>(plane);
  }
  const Tensor& head = params_[head_weight_];
  const Tensor& bias = params_[head_bias_];
  std::vector<double> logits(2);
  for (std::size_t k = 0; k < 2; ++k) {
    double s = bias[k];
    for (std::size_t c = 0; c < width; ++c) s += head[k * width + c] * pooled[c];
    logits[k] = s;
  }
  if (logits_out) *logits_out = logits;

  const double top = std::max(logits[0], logits[1]);
  const double lse = top + std::log(std::exp(logits[0] - top) + std::exp(logits[1] - top));
  const auto y = static_cast<std::size_t>(label);
  const double loss = lse - logits[y];
  if (!backward) return loss;

  // Backward.
  if (param_grads) {
    param_grads->clear();
    for (const Tensor& p : params_) param_grads->push_back(Tensor::zeros_like(p));
  }
  std::vector<double> dlogits(2);
  for (std::size_t k = 0; k < 2; ++k) {
    dlogits[k] = std::exp(logits[k] - lse) - (k == y ? 1.0 : 0.0);
  }
  if (param_grads) {
    Tensor& gh = (*param_grads)[head_weight_];
    Tensor& gb = (*param_grads)[head_bias_];
    for (std::size_t k = 0; k < 2; ++k) {
      gb[k] = dlogits[k];
      for (std::size_t c = 0; c < width; ++c) gh[k * width + c] = dlogits[k] * pooled[c];
    }
  }
  Tensor upstream = Tensor::zeros_like(current);
  for (std::size_t c = 0; c < width; ++c) {
    double g = 0.0;
    for (std::size_t k = 0; k < 2; ++k) g += head[k * width + c] * dlogits[k];
    g /= static_cast<double>(plane);
    for (std::size_t p = 0; p < plane; ++p) upstream[c * plane + p] = g;
  }

  for (std::size_t ci = cells_.size(); ci-- > 0;) {
    const CellLayout& cell = cells_[ci];
    CellTrace& tr = traces[ci];
    Tensor g_projected = cell.reduction ? avg_pool2x2_backward(tr.projected, upstream) : upstream;
    Tensor g_concat;
    kernels::pointwise_backward(tr.concat, params_[cell.projection], g_projected, &g_concat,
                                param_grads ? &(*param_grads)[cell.projection] : nullptr);
    const std::size_t w = cell.in_channels;
    const std::size_t cell_plane = tr.nodes[0].dim(1) * tr.nodes[0].dim(2);
    std::vector<Tensor> g_nodes(tr.nodes.size());
    g_nodes[0] = Tensor::zeros_like(tr.nodes[0]);
    for (int j = 1; j <= nodes_; ++j) {
      Tensor g = Tensor::zeros_like(tr.nodes[0]);
      const auto begin = g_concat.values().begin() +
                         static_cast<std::ptrdiff_t>((static_cast<std::size_t>(j) - 1) * w * cell_plane);
      std::copy(begin, begin + static_cast<std::ptrdiff_t>(w * cell_plane), g.values().begin());
      g_nodes[static_cast<std::size_t>(j)] = std::move(g);
    }
    // Reverse canonical order: every edge leaving node j is visited before
    // the edges entering it, so g_nodes[j] is complete when it is consumed.
    for (auto it = cell.edges.rbegin(); it != cell.edges.rend(); ++it) {
      const auto from = static_cast<std::size_t>(it->from);
      OpGradients g = op_backward(it->kind, tr.nodes[from], span_of(it->first_param, it->param_count),
                                  g_nodes[static_cast<std::size_t>(it->to)]);
      g_nodes[from] += g.input;
      if (param_grads) {
        for (std::size_t k = 0; k < it->param_count; ++k) {
          (*param_grads)[it->first_param + k] += g.params[k];
        }
      }
    }
    upstream = std::move(g_nodes[0]);
  }

  Tensor g_x;
  kernels::conv2d_backward(centered, params_[stem_], 1, upstream, input_grad ? &g_x : nullptr,
                           param_grads ? &(*param_grads)[stem_] : nullptr);
  if (input_grad) *input_grad = std::move(g_x);
  return loss;
}

double TinyNetwork::loss(const Tensor& x, int label, Tensor* input_grad) const {
  return run(x, label, nullptr, input_grad, nullptr, nullptr);
}

double TinyNetwork::loss_and_gradients(const Tensor& x, int label,
                                       std::vector<Tensor>* param_grads,
                                       Tensor* input_grad) const {
  return run(x, label, param_grads, input_grad, nullptr, nullptr);
}

std::vector<double> TinyNetwork::logits(const Tensor& x) const {
  std::vector<double> out;
  run(x, 0, nullptr, nullptr, &out, nullptr);
  return out;
}

int TinyNetwork::predict(const Tensor& x) const {
  const auto l = logits(x);
  return l[1] > l[0] ? 1 : 0;
}

void TinyNetwork::sgd_step(const std::vector<Tensor>& grads, double learning_rate) {
  for (std::size_t i = 0; i < params_.size(); ++i) params_[i].add_scaled(grads[i], -learning_rate);
  for (std::size_t index : gabor_params_) {
    Tensor& g = params_[index];
    for (std::size_t c = 0; c < g.dim(0); ++c) {
      g[c * 5 + 0] = std::max(g[c * 5 + 0], kMinGaborScale);
      g[c * 5 + 2] = std::max(g[c * 5 + 2], kMinGaborScale);
    }
  }
}

std::vector<std::uint32_t> TinyNetwork::activation_pattern(const Tensor& x) const {
  std::vector<std::uint32_t> pattern;
  run(x, 0, nullptr, nullptr, nullptr, &pattern);
  return pattern;
}

TinyNetEvaluator::TinyNetEvaluator(TinyNetSpec spec)
    : spec_(std::move(spec)), data_((spec_.validate(),
                                     make_synthetic_dataset(spec_.dataset_size, spec_.dataset_seed))) {}

std::optional<TinyNetwork> TinyNetEvaluator::train(const Genotype& genotype,
                                                   std::uint64_t seed) const {
  TinyNetwork net(genotype, spec_, derive_seed(seed, kInitStream));
  Rng order_rng(derive_seed(seed, kShuffleStream));
  Rng attack_rng(derive_seed(seed, kAttackStream));
  const AttackConfig& attack = spec_.attack;

  std::vector<std::size_t> order(data_.train.size());
  std::vector<Tensor> grads;
  for (int epoch = 0; epoch < spec_.train_epochs; ++epoch) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (std::size_t i = order.size(); i > 1; --i) {
      std::swap(order[i - 1], order[order_rng.below(i)]);
    }
    for (std::size_t idx : order) {
      const Example& ex = data_.train[idx];
      double loss = 0.0;
      try {
        if (attack.steps >= 1) {
          const Tensor delta = attack.steps == 1
                                   ? fgsm_random_init(net, ex.image, ex.label, attack, attack_rng)
                                   : pgd_attack(net, ex.image, ex.label, attack, attack_rng);
          if (observer_) observer_(delta);
          loss = net.loss_and_gradients(ex.image + delta, ex.label, &grads, nullptr);
        } else {
          loss = net.loss_and_gradients(ex.image, ex.label, &grads, nullptr);
        }
      } catch (const AttackError&) {
        ++failures_;
        return std::nullopt;
      }
      if (!std::isfinite(loss)) {
        ++failures_;
        return std::nullopt;
      }
      net.sgd_step(grads, spec_.learning_rate);
    }
  }
  return net;
}

double TinyNetEvaluator::validation_accuracy(const TinyNetwork& net, std::uint64_t seed) const {
  if (data_.validation.empty()) return 0.0;
  const AttackConfig& attack = spec_.attack;
  Rng validation_rng(derive_seed(seed, kValidationStream));
  std::size_t correct = 0;
  for (const Example& ex : data_.validation) {
    if (spec_.adversarial_validation && attack.steps >= 1) {
      Tensor delta;
      try {
        delta = attack.steps == 1
                    ? fgsm_random_init(net, ex.image, ex.label, attack, validation_rng)
                    : pgd_attack(net, ex.image, ex.label, attack, validation_rng);
      } catch (const AttackError&) {
        ++failures_;
        return 0.0;
      }
      correct += net.predict(ex.image + delta) == ex.label ? 1 : 0;
    } else {
      correct += net.predict(ex.image) == ex.label ? 1 : 0;
    }
  }
  return static_cast<double>(correct) / static_cast<double>(data_.validation.size());
}

double TinyNetEvaluator::evaluate(const Genotype& genotype, std::uint64_t seed) const {
  const std::optional<TinyNetwork> net = train(genotype, seed);
  return net ? validation_accuracy(*net, seed) : 0.0;
}

}  // namespace antibandit
