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

#ifndef ANTIBANDIT_EXPERIMENT_HPP_
#define ANTIBANDIT_EXPERIMENT_HPP_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "antibandit/config.hpp"
#include "antibandit/search.hpp"
#include "antibandit/stats.hpp"

namespace antibandit {

// Bad command-line usage (exit status 2).
class UsageError : public Error {
 public:
  using Error::Error;
};

struct RunOutcome {
  std::uint64_t seed = 0;
  Strategy strategy = Strategy::kAntiBandit;
  Genotype genotype;
  std::int64_t evaluator_calls = 0;
  std::int64_t planned_calls = 0;
  bool finished = false;
  double wall_seconds = 0.0;
  // Synthetic evaluator only.
  std::optional<bool> recovered_optimum;
  std::optional<double> true_score;
};

// Deterministic per-run summary (wall time is kept out so reruns compare
// byte-for-byte).
nlohmann::json outcome_to_json(const RunOutcome& outcome);

struct RunFiles {
  std::filesystem::path dir;
  static constexpr const char* kGenotype = "genotype.json";
  static constexpr const char* kHistory = "history.csv";
  static constexpr const char* kSummary = "summary.json";
  static constexpr const char* kTiming = "timing.json";
  static constexpr const char* kCheckpoint = "checkpoint.json";
};

struct RunOptions {
  // Write genotype/history/summary/checkpoint files here when set.
  std::optional<std::filesystem::path> output_dir;
  // Stop (and checkpoint) once the history holds this many trials.
  std::optional<std::int64_t> max_trials;
};

// One search for one seed. Checkpoints are written after every abandonment
// round, on interruption and at the end.
RunOutcome run_seed(const RunConfig& config, const Evaluator& evaluator, std::uint64_t seed,
                    Strategy strategy, const RunOptions& options = {});

// Continues a driver restored from a checkpoint.
RunOutcome continue_run(SearchDriver& driver, const RunConfig& config, const Evaluator& evaluator,
                        const RunOptions& options);

nlohmann::json make_checkpoint(const RunConfig& config, const SearchProgress& progress,
                               const std::filesystem::path& run_dir);

struct Checkpoint {
  RunConfig config;
  SearchProgress progress;
  std::filesystem::path run_dir;
};

// Throws ValidationError naming the offending field, including a catalog
// that disagrees with the embedded run configuration.
Checkpoint parse_checkpoint(const nlohmann::json& doc);

struct StrategyReport {
  Strategy strategy = Strategy::kAntiBandit;
  std::int64_t runs = 0;
  std::int64_t recovered = 0;
  Interval recovery_ci;  // two-sided 95% Wilson
  double mean_true_score = 0.0;
  double mean_evaluator_calls = 0.0;
};

struct Comparison {
  std::vector<StrategyReport> reports;
  std::vector<RunOutcome> runs;  // strategy-major, seed order preserved
  // One-sided 95% Newcombe lower bound of p(abandit) - p(random).
  double dominance_lower_bound = 0.0;
};

// Runs every strategy on every seed with a synthetic evaluator; `jobs`
// worker threads share the (strategy, seed) tasks.
Comparison compare_strategies(const RunConfig& config, const std::vector<std::uint64_t>& seeds,
                              int jobs);

// Calls fn(i) for i in [0, count) on up to `jobs` threads; rethrows the
// first failure.
void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn);

struct CommandOptions {
  std::optional<std::filesystem::path> out;
  std::optional<std::vector<std::uint64_t>> seeds;
  std::optional<int> jobs;
  std::optional<std::int64_t> max_trials;
};

int cmd_search(const std::filesystem::path& config_path, const CommandOptions& options,
               std::ostream& log);
int cmd_compare(const std::filesystem::path& config_path, const CommandOptions& options,
                std::ostream& log);
// `param`/`values` override the config's sweep block; the default grids are
// lambda = 0.1..0.9 and T = 1..4.
int cmd_sweep(const std::filesystem::path& config_path, std::optional<std::string> param,
              std::optional<std::vector<double>> values, const CommandOptions& options,
              std::ostream& log);
int cmd_resume(const std::filesystem::path& checkpoint_path, const CommandOptions& options,
               std::ostream& log);

std::vector<double> default_sweep_values(const std::string& param);

}  // namespace antibandit

#endif  // ANTIBANDIT_EXPERIMENT_HPP_
