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

#ifndef ANTIBANDIT_ATTACK_HPP_
#define ANTIBANDIT_ATTACK_HPP_

#include <vector>

#include "antibandit/rng.hpp"
#include "antibandit/tensor.hpp"

namespace antibandit {

// l-infinity threat model and signed-gradient step schedule.
struct AttackConfig {
  double epsilon = 0.1;
  double alpha = 0.125;  // 1.25 * epsilon
  int steps = 1;
  bool random_init = true;

  // FGSM with random start and the customary step alpha = 1.25 * epsilon.
  static AttackConfig fgsm_ri(double epsilon) { return {epsilon, 1.25 * epsilon, 1, true}; }

  // Throws ConfigError. alpha may be 0 only together with epsilon = 0.
  void validate() const;
  bool operator==(const AttackConfig&) const = default;
};

// Differentiable classifier loss as seen by an attacker.
class LossModel {
 public:
  virtual ~LossModel() = default;
  // Loss of `x` against `label`; writes dLoss/dx into `input_grad` when set.
  virtual double loss(const Tensor& x, int label, Tensor* input_grad) const = 0;
};

// delta0 ~ U(-eps, eps) (or 0 without random init), then one signed step of
// size alpha at x + delta0, clamped to [-eps, eps]. Throws AttackError on a
// non-finite gradient.
Tensor fgsm_random_init(const LossModel& model, const Tensor& x, int label,
                        const AttackConfig& config, Rng& rng);

// `config.steps` signed steps with an l-infinity clamp after each. When
// `loss_trace` is set it receives the loss at x + delta before every step and
// once more at the final delta.
Tensor pgd_attack(const LossModel& model, const Tensor& x, int label, const AttackConfig& config,
                  Rng& rng, std::vector<double>* loss_trace = nullptr);

}  // namespace antibandit

#endif  // ANTIBANDIT_ATTACK_HPP_
