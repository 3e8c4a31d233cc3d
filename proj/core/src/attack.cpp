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

#include "antibandit/attack.hpp"

#include <algorithm>

#include "antibandit/error.hpp"

namespace antibandit {
namespace {

Tensor initial_delta(const Tensor& x, const AttackConfig& config, Rng& rng) {
  Tensor delta = Tensor::zeros_like(x);
  if (config.random_init) {
    for (double& v : delta.values()) v = rng.uniform(-config.epsilon, config.epsilon);
  }
  return delta;
}

double sign(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

// delta <- clamp(delta + alpha * sign(grad), -eps, eps)
void signed_step(Tensor& delta, const Tensor& grad, const AttackConfig& config) {
  if (!grad.all_finite()) throw AttackError("attack: non-finite input gradient");
  for (std::size_t i = 0; i < delta.size(); ++i) {
    delta[i] = std::clamp(delta[i] + config.alpha * sign(grad[i]), -config.epsilon,
                          config.epsilon);
  }
}

}  // namespace

void AttackConfig::validate() const {
  if (!(epsilon >= 0.0)) throw ConfigError("attack.epsilon must be >= 0");
  if (steps < 0) throw ConfigError("attack.steps must be >= 0");
  if (!(alpha >= 0.0)) throw ConfigError("attack.alpha must be >= 0");
  if (steps >= 1 && epsilon > 0.0 && !(alpha > 0.0)) {
    throw ConfigError("attack.alpha must be > 0 when steps >= 1");
  }
}

Tensor fgsm_random_init(const LossModel& model, const Tensor& x, int label,
                        const AttackConfig& config, Rng& rng) {
  if (config.steps != 1) throw AttackError("fgsm_random_init requires steps = 1");
  Tensor delta = initial_delta(x, config, rng);
  Tensor grad;
  model.loss(x + delta, label, &grad);
  signed_step(delta, grad, config);
  return delta;
}

Tensor pgd_attack(const LossModel& model, const Tensor& x, int label, const AttackConfig& config,
                  Rng& rng, std::vector<double>* loss_trace) {
  if (config.steps < 1) throw AttackError("pgd_attack requires steps >= 1");
  Tensor delta = initial_delta(x, config, rng);
  Tensor grad;
  for (int step = 0; step < config.steps; ++step) {
    const double l = model.loss(x + delta, label, &grad);
    if (loss_trace) loss_trace->push_back(l);
    signed_step(delta, grad, config);
  }
  if (loss_trace) loss_trace->push_back(model.loss(x + delta, label, nullptr));
  return delta;
}

}  // namespace antibandit
