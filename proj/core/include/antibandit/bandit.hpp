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

#ifndef ANTIBANDIT_BANDIT_HPP_
#define ANTIBANDIT_BANDIT_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "antibandit/attack.hpp"
#include "antibandit/evaluator.hpp"
#include "antibandit/rng.hpp"
#include "antibandit/search_space.hpp"

namespace antibandit {

// Statistics of one arm (one operation on one edge).
struct ArmStats {
  double m = 0.0;      // EMA performance estimate
  std::int64_t n = 0;  // times the operation appeared in a sampled genotype

  bool operator==(const ArmStats&) const = default;
};

// m - sqrt(2 ln N / n). Throws UndefinedArmError when n < 1 or N < 1.
double lcb_score(const ArmStats& arm, std::int64_t total_trials);
// m + sqrt(2 ln N / n).
double ucb_score(const ArmStats& arm, std::int64_t total_trials);

// Softmax of the negated LCB scores, computed with a max shift.
std::vector<double> selection_probabilities(std::span<const ArmStats> arms,
                                            std::int64_t total_trials);

struct SearchConfig {
  int samples_per_op = 3;  // T
  double lambda = 0.7;     // EMA weight
  std::uint64_t seed = 0;
  AttackConfig attack;

  void validate() const;  // throws ConfigError
  bool operator==(const SearchConfig&) const = default;
};

// Per-arm statistics plus the trial counters of the search loop. Arms are
// indexed by [edge][catalog position]; arms of pruned operations keep their
// last statistics but are never read again.
struct BanditState {
  std::vector<std::vector<ArmStats>> arms;
  std::int64_t total_trials = 0;  // N: every evaluated genotype, sweep included
  std::int64_t round_trials = 0;  // c: reset at every abandonment
  std::int64_t epoch = 0;         // t: post-initialization trials
  std::size_t active_ops = 0;     // K of the current round

  static BanditState fresh(const SearchSpace& space);

  const ArmStats& arm(const SearchSpace& space, std::size_t edge, OperationKind op) const {
    return arms[edge][space.catalog_position(op)];
  }
  // Stats of the current candidates of `edge`, in candidate order.
  std::vector<ArmStats> candidate_arms(const SearchSpace& space, std::size_t edge) const;

  bool operator==(const BanditState&) const = default;
};

// Seed handed to the evaluator for trial `trial` of a search.
std::uint64_t trial_eval_seed(std::uint64_t search_seed, std::int64_t trial);

// Post-initialization trials: T * (2 + 3 + ... + K). Zero for K = 1.
std::int64_t total_budget(std::int64_t num_ops, std::int64_t samples_per_op);

// Initial statistics from one sweep trial: m = a and n = 1 for every arm the
// genotype touches; N advances by one.
void record_initial_trial(const SearchSpace& space, BanditState& state,
                          const Genotype& genotype, double accuracy);

// K diagonal trials (trial k picks catalog op k on every edge), evaluated
// with trial_eval_seed(seed, k).
void initialization_sweep(const SearchSpace& space, BanditState& state,
                          const Evaluator& evaluator, std::uint64_t seed);

// EMA update for every arm in the genotype; N advances by one.
// Throws ValidationError when the accuracy lies outside [0, 1].
void update_performance(const SearchSpace& space, BanditState& state,
                        const Genotype& genotype, double accuracy, double lambda);

// Independent categorical draw on every edge from selection_probabilities.
Genotype sample_genotype(const SearchSpace& space, const BanditState& state, Rng& rng);

// Index of the minimal-UCB candidate of an edge (lowest catalog index on ties).
std::size_t min_ucb_candidate(const SearchSpace& space, const BanditState& state,
                              std::size_t edge);

// Removes the minimal-UCB operation from every edge, resets the round counter
// and decrements K. Throws SchedulingError unless c == K * T and K >= 2.
SearchSpace abandon_round(const SearchSpace& space, BanditState& state, int samples_per_op);

}  // namespace antibandit

#endif  // ANTIBANDIT_BANDIT_HPP_
