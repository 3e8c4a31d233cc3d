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

#include "antibandit/search.hpp"

#include <array>
#include <exception>
#include <string>

#include "antibandit/rng.hpp"

namespace antibandit {
namespace {

constexpr std::uint64_t kSampleStream = 0x53414d50;

constexpr std::array<std::string_view, 4> kStrategyNames = {"abandit", "ucbnas", "ucbnas_pruning",
                                                           "random"};

bool prunes(Strategy s) { return s == Strategy::kAntiBandit || s == Strategy::kUcbPruning; }

}  // namespace

std::string_view strategy_name(Strategy strategy) {
  return kStrategyNames[static_cast<std::size_t>(strategy)];
}

std::optional<Strategy> strategy_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kStrategyNames.size(); ++i) {
    if (kStrategyNames[i] == name) return static_cast<Strategy>(i);
  }
  return std::nullopt;
}

SearchDriver::SearchDriver(SearchSpace space, SearchConfig config, Strategy strategy)
    : progress_{strategy, std::move(config), std::move(space), {}, {}, std::nullopt} {
  progress_.config.validate();
  if (progress_.space.uniform_cardinality() != progress_.space.catalog().size()) {
    throw ConfigError("search must start from an unpruned space");
  }
  progress_.state = BanditState::fresh(progress_.space);
  initial_ops_ = progress_.space.catalog().size();
}

SearchDriver::SearchDriver(SearchProgress progress) : progress_(std::move(progress)) {
  progress_.config.validate();
  initial_ops_ = progress_.space.catalog().size();
  if (progress_.state.arms.size() != progress_.space.edge_count()) {
    throw ValidationError("search progress: bandit state does not match the search space");
  }
  for (const auto& edge_arms : progress_.state.arms) {
    if (edge_arms.size() != initial_ops_) {
      throw ValidationError("search progress: arm table does not match the operation catalog");
    }
  }
  const std::size_t k = progress_.space.uniform_cardinality();
  if (k == 0 || k != progress_.state.active_ops) {
    throw ValidationError("search progress: candidate sets disagree with the active K");
  }
  if (progress_.state.total_trials != static_cast<std::int64_t>(progress_.history.size())) {
    throw ValidationError("search progress: trial counter disagrees with the history length");
  }
}

bool SearchDriver::in_initialization() const {
  return progress_.strategy != Strategy::kUniformRandom &&
         progress_.history.size() < initial_ops_;
}

std::int64_t SearchDriver::planned_calls() const {
  return static_cast<std::int64_t>(initial_ops_) +
         total_budget(static_cast<std::int64_t>(initial_ops_), progress_.config.samples_per_op);
}

bool SearchDriver::done() const {
  if (prunes(progress_.strategy)) {
    return !in_initialization() && progress_.state.active_ops <= 1;
  }
  return static_cast<std::int64_t>(progress_.history.size()) >= planned_calls();
}

Genotype SearchDriver::choose(std::int64_t trial) const {
  const SearchSpace& space = progress_.space;
  if (in_initialization()) return diagonal_genotype(space, static_cast<std::size_t>(trial));

  Rng rng(derive_seed(progress_.config.seed, kSampleStream, static_cast<std::uint64_t>(trial)));
  switch (progress_.strategy) {
    case Strategy::kAntiBandit:
      return sample_genotype(space, progress_.state, rng);
    case Strategy::kUniformRandom: {
      std::vector<OperationKind> choices(space.edge_count());
      for (std::size_t e = 0; e < space.edge_count(); ++e) {
        const auto candidates = space.candidates(e);
        choices[e] = candidates[rng.below(candidates.size())];
      }
      return Genotype(space.cells(), space.nodes(), std::move(choices));
    }
    case Strategy::kUcb:
    case Strategy::kUcbPruning: {
      std::vector<OperationKind> choices(space.edge_count());
      for (std::size_t e = 0; e < space.edge_count(); ++e) {
        const auto candidates = space.candidates(e);
        std::size_t best = 0;
        double best_score =
            ucb_score(progress_.state.arm(space, e, candidates[0]), progress_.state.total_trials);
        for (std::size_t k = 1; k < candidates.size(); ++k) {
          const double s = ucb_score(progress_.state.arm(space, e, candidates[k]),
                                     progress_.state.total_trials);
          if (s > best_score) {
            best_score = s;
            best = k;
          }
        }
        choices[e] = candidates[best];
      }
      return Genotype(space.cells(), space.nodes(), std::move(choices));
    }
  }
  throw ConfigError("unknown search strategy");
}

const TrialRecord& SearchDriver::step(const Evaluator& evaluator) {
  if (done()) throw SchedulingError("search has already finished");
  SearchProgress& p = progress_;
  const auto trial = static_cast<std::int64_t>(p.history.size());
  const bool init = in_initialization();
  Genotype genotype = choose(trial);
  const std::size_t active = p.state.active_ops;
  const double accuracy = evaluator.evaluate(genotype, trial_eval_seed(p.config.seed, trial));

  if (init) {
    record_initial_trial(p.space, p.state, genotype, accuracy);
  } else if (p.strategy == Strategy::kUniformRandom) {
    if (!(accuracy >= 0.0 && accuracy <= 1.0)) {
      throw ValidationError("accuracy " + std::to_string(accuracy) + " is outside [0, 1]");
    }
    ++p.state.total_trials;
    ++p.state.epoch;
    if (!p.best_trial || accuracy > p.history[static_cast<std::size_t>(*p.best_trial)].accuracy) {
      p.best_trial = trial;
    }
  } else {
    update_performance(p.space, p.state, genotype, accuracy, p.config.lambda);
    ++p.state.epoch;
    if (prunes(p.strategy)) {
      ++p.state.round_trials;
      if (p.state.round_trials ==
          static_cast<std::int64_t>(p.state.active_ops) * p.config.samples_per_op) {
        p.space = abandon_round(p.space, p.state, p.config.samples_per_op);
      }
    }
  }
  p.history.push_back({trial, std::move(genotype), accuracy, active, p.state.total_trials});
  return p.history.back();
}

void SearchDriver::run(const Evaluator& evaluator) {
  while (!done()) {
    try {
      step(evaluator);
    } catch (const std::exception& e) {
      throw SearchAborted(std::string("search aborted at trial ") +
                              std::to_string(progress_.history.size()) + ": " + e.what(),
                          finish());
    }
  }
}

Genotype SearchDriver::result() const {
  const SearchProgress& p = progress_;
  if (p.strategy == Strategy::kUniformRandom) {
    if (!p.best_trial) return Genotype();
    return p.history[static_cast<std::size_t>(*p.best_trial)].genotype;
  }
  // Per-edge argmax of m over the surviving candidates; with one survivor
  // per edge this is the remaining architecture.
  std::vector<OperationKind> choices(p.space.edge_count());
  for (std::size_t e = 0; e < p.space.edge_count(); ++e) {
    const auto candidates = p.space.candidates(e);
    std::size_t best = 0;
    for (std::size_t k = 1; k < candidates.size(); ++k) {
      if (p.state.arm(p.space, e, candidates[k]).m >
          p.state.arm(p.space, e, candidates[best]).m) {
        best = k;
      }
    }
    choices[e] = candidates[best];
  }
  return Genotype(p.space.cells(), p.space.nodes(), std::move(choices));
}

SearchResult SearchDriver::finish() const {
  return {result(), progress_.history, progress_.space, progress_.state};
}

SearchResult run_strategy(Strategy strategy, const SearchSpace& space, const SearchConfig& config,
                          const Evaluator& evaluator) {
  SearchDriver driver(space, config, strategy);
  driver.run(evaluator);
  return driver.finish();
}

SearchResult run_search(const SearchSpace& space, const SearchConfig& config,
                        const Evaluator& evaluator) {
  return run_strategy(Strategy::kAntiBandit, space, config, evaluator);
}

SearchResult run_ucbnas_baseline(const SearchSpace& space, const SearchConfig& config,
                                 const Evaluator& evaluator) {
  return run_strategy(Strategy::kUcb, space, config, evaluator);
}

SearchResult run_ucbnas_pruning_baseline(const SearchSpace& space, const SearchConfig& config,
                                         const Evaluator& evaluator) {
  return run_strategy(Strategy::kUcbPruning, space, config, evaluator);
}

SearchResult run_random_baseline(const SearchSpace& space, const SearchConfig& config,
                                 const Evaluator& evaluator) {
  return run_strategy(Strategy::kUniformRandom, space, config, evaluator);
}

}  // namespace antibandit
