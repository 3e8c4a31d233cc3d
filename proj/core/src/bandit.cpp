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

#include "antibandit/bandit.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "antibandit/error.hpp"

namespace antibandit {
namespace {

constexpr std::uint64_t kEvalStream = 0x4556414c;

double exploration_radius(const ArmStats& arm, std::int64_t total_trials) {
  if (arm.n < 1) throw UndefinedArmError("arm has no recorded trials (n = 0)");
  if (total_trials < 1) throw UndefinedArmError("trial count N must be >= 1");
  return std::sqrt(2.0 * std::log(static_cast<double>(total_trials)) /
                   static_cast<double>(arm.n));
}

void check_accuracy(double accuracy) {
  if (!(accuracy >= 0.0 && accuracy <= 1.0)) {
    throw ValidationError("accuracy " + std::to_string(accuracy) + " is outside [0, 1]");
  }
}

void check_layout(const SearchSpace& space, const BanditState& state, const Genotype& g) {
  if (g.size() != space.edge_count() || state.arms.size() != space.edge_count()) {
    throw ValidationError("genotype or bandit state does not match the search space layout");
  }
}

}  // namespace

double lcb_score(const ArmStats& arm, std::int64_t total_trials) {
  return arm.m - exploration_radius(arm, total_trials);
}

double ucb_score(const ArmStats& arm, std::int64_t total_trials) {
  return arm.m + exploration_radius(arm, total_trials);
}

std::vector<double> selection_probabilities(std::span<const ArmStats> arms,
                                            std::int64_t total_trials) {
  std::vector<double> logits(arms.size());
  for (std::size_t k = 0; k < arms.size(); ++k) logits[k] = -lcb_score(arms[k], total_trials);
  if (logits.empty()) return logits;
  const double shift = *std::max_element(logits.begin(), logits.end());
  double sum = 0.0;
  for (double& v : logits) {
    v = std::exp(v - shift);
    sum += v;
  }
  for (double& v : logits) v /= sum;
  return logits;
}

void SearchConfig::validate() const {
  if (samples_per_op < 1) throw ConfigError("search.T must be >= 1");
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw ConfigError("search.lambda must lie in [0, 1]");
  attack.validate();
}

BanditState BanditState::fresh(const SearchSpace& space) {
  BanditState state;
  state.arms.assign(space.edge_count(), std::vector<ArmStats>(space.catalog().size()));
  state.active_ops = space.uniform_cardinality();
  return state;
}

std::vector<ArmStats> BanditState::candidate_arms(const SearchSpace& space,
                                                  std::size_t edge) const {
  std::vector<ArmStats> out;
  out.reserve(space.candidates(edge).size());
  for (OperationKind op : space.candidates(edge)) out.push_back(arm(space, edge, op));
  return out;
}

std::uint64_t trial_eval_seed(std::uint64_t search_seed, std::int64_t trial) {
  return derive_seed(search_seed, kEvalStream, static_cast<std::uint64_t>(trial));
}

std::int64_t total_budget(std::int64_t num_ops, std::int64_t samples_per_op) {
  if (num_ops < 1) throw ConfigError("total_budget: K must be >= 1");
  if (samples_per_op < 1) throw ConfigError("total_budget: T must be >= 1");
  // 2 + 3 + ... + K
  return samples_per_op * (num_ops * (num_ops + 1) / 2 - 1);
}

void record_initial_trial(const SearchSpace& space, BanditState& state,
                          const Genotype& genotype, double accuracy) {
  check_accuracy(accuracy);
  check_layout(space, state, genotype);
  for (std::size_t e = 0; e < genotype.size(); ++e) {
    ArmStats& arm = state.arms[e][space.catalog_position(genotype[e])];
    arm.m = accuracy;
    arm.n = 1;
  }
  ++state.total_trials;
}

void initialization_sweep(const SearchSpace& space, BanditState& state,
                          const Evaluator& evaluator, std::uint64_t seed) {
  for (std::size_t k = 0; k < space.catalog().size(); ++k) {
    const Genotype g = diagonal_genotype(space, k);
    const double a = evaluator.evaluate(g, trial_eval_seed(seed, static_cast<std::int64_t>(k)));
    record_initial_trial(space, state, g, a);
  }
}

void update_performance(const SearchSpace& space, BanditState& state,
                        const Genotype& genotype, double accuracy, double lambda) {
  check_accuracy(accuracy);
  check_layout(space, state, genotype);
  for (std::size_t e = 0; e < genotype.size(); ++e) {
    ArmStats& arm = state.arms[e][space.catalog_position(genotype[e])];
    arm.m = (1.0 - lambda) * arm.m + lambda * accuracy;
    ++arm.n;
  }
  ++state.total_trials;
}

Genotype sample_genotype(const SearchSpace& space, const BanditState& state, Rng& rng) {
  std::vector<OperationKind> choices(space.edge_count());
  for (std::size_t e = 0; e < space.edge_count(); ++e) {
    const auto candidates = space.candidates(e);
    const auto arms = state.candidate_arms(space, e);
    const auto probs = selection_probabilities(arms, state.total_trials);
    const double u = rng.uniform();
    std::size_t pick = candidates.size() - 1;
    double cumulative = 0.0;
    for (std::size_t k = 0; k + 1 < candidates.size(); ++k) {
      cumulative += probs[k];
      if (u < cumulative) {
        pick = k;
        break;
      }
    }
    choices[e] = candidates[pick];
  }
  return Genotype(space.cells(), space.nodes(), std::move(choices));
}

std::size_t min_ucb_candidate(const SearchSpace& space, const BanditState& state,
                              std::size_t edge) {
  const auto candidates = space.candidates(edge);
  std::size_t best = 0;
  double best_score = ucb_score(state.arm(space, edge, candidates[0]), state.total_trials);
  for (std::size_t k = 1; k < candidates.size(); ++k) {
    const double s = ucb_score(state.arm(space, edge, candidates[k]), state.total_trials);
    if (s < best_score) {
      best_score = s;
      best = k;
    }
  }
  return best;
}

SearchSpace abandon_round(const SearchSpace& space, BanditState& state, int samples_per_op) {
  const auto k = static_cast<std::int64_t>(state.active_ops);
  if (k < 2) throw SchedulingError("abandon_round: fewer than two operations remain");
  if (state.round_trials != k * samples_per_op) {
    throw SchedulingError("abandon_round: round has " + std::to_string(state.round_trials) +
                          " of " + std::to_string(k * samples_per_op) + " trials");
  }
  SearchSpace next = space;
  for (std::size_t e = 0; e < space.edge_count(); ++e) {
    const std::size_t worst = min_ucb_candidate(space, state, e);
    next = next.without(e, space.candidates(e)[worst]);
  }
  state.round_trials = 0;
  --state.active_ops;
  return next;
}

}  // namespace antibandit
