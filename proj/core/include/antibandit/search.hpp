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

#ifndef ANTIBANDIT_SEARCH_HPP_
#define ANTIBANDIT_SEARCH_HPP_

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "antibandit/bandit.hpp"
#include "antibandit/error.hpp"
#include "antibandit/evaluator.hpp"
#include "antibandit/search_space.hpp"

namespace antibandit {

enum class Strategy {
  kAntiBandit,     // LCB sampling, UCB abandonment
  kUcb,            // greedy max-UCB selection, no pruning
  kUcbPruning,     // greedy max-UCB selection plus the abandonment schedule
  kUniformRandom,  // uniform genotypes, best observed score wins
};

std::string_view strategy_name(Strategy strategy);
std::optional<Strategy> strategy_from_name(std::string_view name);

struct TrialRecord {
  std::int64_t trial = 0;      // 0-based, initialization sweep included
  Genotype genotype;
  double accuracy = 0.0;
  std::size_t active_ops = 0;  // K when the genotype was drawn
  std::int64_t total_trials = 0;  // N after the update

  bool operator==(const TrialRecord&) const = default;
};

// Complete resumable state of one search.
struct SearchProgress {
  Strategy strategy = Strategy::kAntiBandit;
  SearchConfig config;
  SearchSpace space;
  BanditState state;
  std::vector<TrialRecord> history;
  // Uniform-random baseline: best observed trial so far.
  std::optional<std::int64_t> best_trial;

  bool operator==(const SearchProgress&) const = default;
};

struct SearchResult {
  Genotype genotype;
  std::vector<TrialRecord> history;
  SearchSpace final_space;
  BanditState final_state;

  std::int64_t evaluator_calls() const { return static_cast<std::int64_t>(history.size()); }
};

// Thrown when the evaluator fails mid-search; carries the trials completed
// before the failure.
class SearchAborted : public Error {
 public:
  SearchAborted(const std::string& what, SearchResult partial)
      : Error(what), partial_(std::move(partial)) {}
  const SearchResult& partial() const { return partial_; }

 private:
  SearchResult partial_;
};

// Executes a search one evaluation at a time. Every random draw is derived
// from (config.seed, trial index), so a driver rebuilt from progress()
// continues bit-identically.
class SearchDriver {
 public:
  SearchDriver(SearchSpace space, SearchConfig config,
               Strategy strategy = Strategy::kAntiBandit);
  explicit SearchDriver(SearchProgress progress);

  bool done() const;
  // Evaluator calls a complete run performs: K + total_budget(K, T).
  std::int64_t planned_calls() const;

  // One trial: choose, evaluate, update, and abandon when the round is full.
  const TrialRecord& step(const Evaluator& evaluator);
  // Steps until done(); rethrows evaluator failures as SearchAborted.
  void run(const Evaluator& evaluator);

  // Final genotype; meaningful once done().
  Genotype result() const;
  SearchResult finish() const;

  const SearchProgress& progress() const { return progress_; }

 private:
  Genotype choose(std::int64_t trial) const;
  bool in_initialization() const;

  SearchProgress progress_;
  std::size_t initial_ops_;
};

SearchResult run_search(const SearchSpace& space, const SearchConfig& config,
                        const Evaluator& evaluator);
SearchResult run_ucbnas_baseline(const SearchSpace& space, const SearchConfig& config,
                                 const Evaluator& evaluator);
SearchResult run_ucbnas_pruning_baseline(const SearchSpace& space, const SearchConfig& config,
                                         const Evaluator& evaluator);
// Not part of the anti-bandit family; anchors statistical comparisons.
SearchResult run_random_baseline(const SearchSpace& space, const SearchConfig& config,
                                 const Evaluator& evaluator);
SearchResult run_strategy(Strategy strategy, const SearchSpace& space, const SearchConfig& config,
                          const Evaluator& evaluator);

}  // namespace antibandit

#endif  // ANTIBANDIT_SEARCH_HPP_
