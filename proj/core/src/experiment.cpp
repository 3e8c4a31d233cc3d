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

#include "antibandit/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <fstream>
#include <mutex>
#include <ostream>
#include <thread>

#include "antibandit/error.hpp"
#include "antibandit/serialization.hpp"
#include "antibandit/synthetic.hpp"

namespace antibandit {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr int kCheckpointVersion = 1;
constexpr const char* kCheckpointKind = "antibandit-checkpoint";
constexpr double kZTwoSided95 = 1.959963984540054;

// Target genotype for the recovery flag: exhaustive search when the space is
// small enough, the per-edge planted optimum otherwise (identical for
// separable specs).
Genotype reference_optimum(const SyntheticSpec& spec, const SearchSpace& space) {
  if (space_size(space) <= kBruteForceLimit) return brute_force_best(spec, space).genotype;
  return planted_optimum(spec, space);
}

void write_checkpoint(const fs::path& dir, const RunConfig& config, const SearchProgress& progress) {
  write_json_file(dir / RunFiles::kCheckpoint, make_checkpoint(config, progress, dir));
}

RunConfig with_seed(RunConfig config, std::uint64_t seed) {
  config.search.seed = seed;
  return config;
}

void apply_overrides(RunConfig& config, const CommandOptions& options) {
  if (options.out) config.output_dir = *options.out;
  if (options.seeds) config.seeds = *options.seeds;
  if (options.jobs) config.jobs = *options.jobs;
  config.validate();
}

std::string seed_dir_name(std::uint64_t seed) { return "seed_" + std::to_string(seed); }

json outcome_with_timing(const RunOutcome& o) {
  json j = outcome_to_json(o);
  j["wall_seconds"] = o.wall_seconds;
  return j;
}

}  // namespace

json outcome_to_json(const RunOutcome& o) {
  json j = {{"seed", o.seed},
            {"strategy", std::string(strategy_name(o.strategy))},
            {"genotype", genotype_to_json(o.genotype)},
            {"evaluator_calls", o.evaluator_calls},
            {"planned_calls", o.planned_calls},
            {"finished", o.finished}};
  j["recovered_optimum"] = o.recovered_optimum ? json(*o.recovered_optimum) : json(nullptr);
  j["true_score"] = o.true_score ? json(*o.true_score) : json(nullptr);
  return j;
}

json make_checkpoint(const RunConfig& config, const SearchProgress& progress, const fs::path& run_dir) {
  return {{"schema_version", kCheckpointVersion},
          {"kind", kCheckpointKind},
          {"run", run_config_to_json(config)},
          {"run_dir", run_dir.string()},
          {"progress", progress_to_json(progress)}};
}

Checkpoint parse_checkpoint(const json& doc) {
  if (!doc.is_object()) throw ValidationError("checkpoint: expected a JSON object");
  if (!doc.contains("kind") || doc["kind"] != kCheckpointKind) {
    throw ValidationError("field 'kind': not an antibandit checkpoint");
  }
  if (!doc.contains("schema_version") || doc["schema_version"] != kCheckpointVersion) {
    throw ValidationError("field 'schema_version': unsupported checkpoint version");
  }
  if (!doc.contains("run")) throw ValidationError("field 'run': missing field");
  if (!doc.contains("progress")) throw ValidationError("field 'progress': missing field");
  if (!doc.contains("run_dir") || !doc["run_dir"].is_string()) {
    throw ValidationError("field 'run_dir': expected a string");
  }
  Checkpoint cp{RunConfig{}, progress_from_json(doc["progress"]), doc["run_dir"].get<std::string>()};
  try {
    cp.config = parse_run_config(doc["run"]);
  } catch (const ConfigError& e) {
    throw ValidationError(std::string("checkpoint run config: ") + e.what());
  }
  const SearchSpace expected = cp.config.space.build();
  if (cp.progress.space.catalog() != expected.catalog()) {
    throw ValidationError("field 'progress.space.catalog': does not match the run configuration");
  }
  if (cp.progress.space.cells() != expected.cells() ||
      cp.progress.space.nodes() != expected.nodes()) {
    throw ValidationError("field 'progress.space': layout does not match the run configuration");
  }
  SearchConfig search = cp.config.search;
  search.seed = cp.progress.config.seed;
  if (!(search == cp.progress.config)) {
    throw ValidationError("field 'progress.config': does not match the run configuration");
  }
  cp.config.search.seed = cp.progress.config.seed;
  return cp;
}

RunOutcome continue_run(SearchDriver& driver, const RunConfig& config, const Evaluator& evaluator,
                        const RunOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const std::optional<fs::path>& dir = options.output_dir;
  if (dir) fs::create_directories(*dir);

  std::size_t last_k = driver.progress().state.active_ops;
  while (!driver.done()) {
    if (options.max_trials &&
        static_cast<std::int64_t>(driver.progress().history.size()) >= *options.max_trials) {
      break;
    }
    try {
      driver.step(evaluator);
    } catch (const std::exception& e) {
      if (dir) write_checkpoint(*dir, config, driver.progress());
      throw SearchAborted(std::string("search aborted at trial ") +
                              std::to_string(driver.progress().history.size()) + ": " + e.what(),
                          driver.finish());
    }
    if (dir && driver.progress().state.active_ops != last_k) {
      last_k = driver.progress().state.active_ops;
      write_checkpoint(*dir, config, driver.progress());
    }
  }

  const SearchProgress& p = driver.progress();
  RunOutcome outcome;
  outcome.seed = p.config.seed;
  outcome.strategy = p.strategy;
  outcome.genotype = driver.result();
  outcome.evaluator_calls = static_cast<std::int64_t>(p.history.size());
  outcome.planned_calls = driver.planned_calls();
  outcome.finished = driver.done();
  if (const auto* src = std::get_if<SyntheticSource>(&config.evaluator)) {
    const SearchSpace space = config.space.build();
    const SyntheticSpec spec = src->resolve(space);
    outcome.true_score = noiseless_score(spec, outcome.genotype);
    outcome.recovered_optimum = outcome.genotype == reference_optimum(spec, space);
  }
  outcome.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (dir) {
    write_checkpoint(*dir, config, p);
    if (outcome.finished) {
      write_json_file(*dir / RunFiles::kGenotype, genotype_to_json(outcome.genotype));
      std::ofstream csv(*dir / RunFiles::kHistory, std::ios::binary);
      write_history_csv(csv, p.space, p.history);
      write_json_file(*dir / RunFiles::kSummary, outcome_to_json(outcome));
      write_json_file(*dir / RunFiles::kTiming, {{"wall_seconds", outcome.wall_seconds}});
    }
  }
  return outcome;
}

RunOutcome run_seed(const RunConfig& config, const Evaluator& evaluator, std::uint64_t seed,
                    Strategy strategy, const RunOptions& options) {
  const RunConfig seeded = with_seed(config, seed);
  SearchDriver driver(seeded.space.build(), seeded.search, strategy);
  return continue_run(driver, seeded, evaluator, options);
}

void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::min<std::size_t>(count, static_cast<std::size_t>(std::max(1, jobs)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> threads;
  for (std::size_t w = 0; w < workers; ++w) {
    threads.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);
}

Comparison compare_strategies(const RunConfig& config, const std::vector<std::uint64_t>& seeds,
                              int jobs) {
  if (!config.is_synthetic()) throw ConfigError("compare requires a synthetic evaluator");
  if (seeds.size() < 2) throw ConfigError("compare requires at least two seeds");
  const std::vector<Strategy> strategies = {Strategy::kAntiBandit, Strategy::kUcb,
                                            Strategy::kUcbPruning, Strategy::kUniformRandom};
  const auto evaluator = make_evaluator(config);
  Comparison cmp;
  cmp.runs.resize(strategies.size() * seeds.size());
  parallel_for(cmp.runs.size(), jobs, [&](std::size_t i) {
    cmp.runs[i] = run_seed(config, *evaluator, seeds[i % seeds.size()], strategies[i / seeds.size()]);
  });

  for (std::size_t s = 0; s < strategies.size(); ++s) {
    StrategyReport r;
    r.strategy = strategies[s];
    double score = 0.0;
    double calls = 0.0;
    for (std::size_t k = 0; k < seeds.size(); ++k) {
      const RunOutcome& o = cmp.runs[s * seeds.size() + k];
      ++r.runs;
      r.recovered += o.recovered_optimum.value_or(false) ? 1 : 0;
      score += o.true_score.value_or(0.0);
      calls += static_cast<double>(o.evaluator_calls);
    }
    r.recovery_ci = wilson_interval(r.recovered, r.runs, kZTwoSided95);
    r.mean_true_score = score / static_cast<double>(r.runs);
    r.mean_evaluator_calls = calls / static_cast<double>(r.runs);
    cmp.reports.push_back(r);
  }
  const StrategyReport& ab = cmp.reports.front();
  const StrategyReport& rnd = cmp.reports.back();
  cmp.dominance_lower_bound =
      newcombe_difference(ab.recovered, ab.runs, rnd.recovered, rnd.runs, kZOneSided95).low;
  return cmp;
}

std::vector<double> default_sweep_values(const std::string& param) {
  if (param == "lambda") return {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  if (param == "T") return {1, 2, 3, 4};
  throw UsageError("sweep parameter must be 'lambda' or 'T', got '" + param + "'");
}

int cmd_search(const fs::path& config_path, const CommandOptions& options, std::ostream& log) {
  RunConfig config = load_run_config(config_path);
  apply_overrides(config, options);
  const auto evaluator = make_evaluator(config);
  fs::create_directories(config.output_dir);

  std::vector<RunOutcome> outcomes(config.seeds.size());
  parallel_for(outcomes.size(), config.jobs, [&](std::size_t i) {
    RunOptions run;
    run.output_dir = config.output_dir / seed_dir_name(config.seeds[i]);
    run.max_trials = options.max_trials;
    outcomes[i] = run_seed(config, *evaluator, config.seeds[i], Strategy::kAntiBandit, run);
  });

  json runs = json::array();
  for (const RunOutcome& o : outcomes) {
    runs.push_back(outcome_with_timing(o));
    log << "seed " << o.seed << ": " << (o.finished ? "finished" : "interrupted") << " after "
        << o.evaluator_calls << "/" << o.planned_calls << " evaluator calls";
    if (o.recovered_optimum) log << ", recovered_optimum=" << (*o.recovered_optimum ? "true" : "false");
    log << '\n';
  }
  write_json_file(config.output_dir / "summary.json", {{"command", "search"}, {"runs", runs}});
  return 0;
}

int cmd_compare(const fs::path& config_path, const CommandOptions& options, std::ostream& log) {
  RunConfig config = load_run_config(config_path);
  apply_overrides(config, options);
  if (!config.is_synthetic()) throw ConfigError("field 'evaluator.type': compare requires \"synthetic\"");
  if (config.seeds.size() < 2) throw ConfigError("field 'seeds': compare requires at least two seeds");
  const Comparison cmp = compare_strategies(config, config.seeds, config.jobs);
  fs::create_directories(config.output_dir);

  std::ofstream table(config.output_dir / "compare.csv", std::ios::binary);
  table << "strategy,runs,recovered,recovery_rate,ci_low,ci_high,mean_true_score,mean_evaluator_calls\n";
  log << "strategy         runs  recovered  rate    95% CI            mean score  mean calls\n";
  for (const StrategyReport& r : cmp.reports) {
    const double rate = static_cast<double>(r.recovered) / static_cast<double>(r.runs);
    table << strategy_name(r.strategy) << ',' << r.runs << ',' << r.recovered << ','
          << format_double(rate) << ',' << format_double(r.recovery_ci.low) << ','
          << format_double(r.recovery_ci.high) << ',' << format_double(r.mean_true_score) << ','
          << format_double(r.mean_evaluator_calls) << '\n';
    char line[160];
    std::snprintf(line, sizeof(line), "%-16s %4lld  %9lld  %.3f  [%.3f, %.3f]  %10.4f  %10.1f\n",
                  std::string(strategy_name(r.strategy)).c_str(), static_cast<long long>(r.runs),
                  static_cast<long long>(r.recovered), rate, r.recovery_ci.low, r.recovery_ci.high,
                  r.mean_true_score, r.mean_evaluator_calls);
    log << line;
  }
  log << "abandit - random recovery, one-sided 95% lower bound: "
      << format_double(cmp.dominance_lower_bound) << '\n';
  log << "(random is a uniform-sampling reference added for calibration)\n";

  std::ofstream runs(config.output_dir / "compare_runs.csv", std::ios::binary);
  runs << "strategy,seed,recovered,true_score,evaluator_calls\n";
  for (const RunOutcome& o : cmp.runs) {
    runs << strategy_name(o.strategy) << ',' << o.seed << ','
         << (o.recovered_optimum.value_or(false) ? 1 : 0) << ','
         << format_double(o.true_score.value_or(0.0)) << ',' << o.evaluator_calls << '\n';
  }
  write_json_file(config.output_dir / "summary.json",
                  {{"command", "compare"},
                   {"dominance_lower_bound", cmp.dominance_lower_bound},
                   {"seeds", config.seeds}});
  return 0;
}

int cmd_sweep(const fs::path& config_path, std::optional<std::string> param,
              std::optional<std::vector<double>> values, const CommandOptions& options,
              std::ostream& log) {
  RunConfig config = load_run_config(config_path);
  apply_overrides(config, options);
  if (!param) param = config.sweep ? config.sweep->param : std::string("lambda");
  if (*param != "lambda" && *param != "T") {
    throw UsageError("sweep parameter must be 'lambda' or 'T', got '" + *param + "'");
  }
  if (!values) {
    values = (config.sweep && config.sweep->param == *param) ? config.sweep->values
                                                             : default_sweep_values(*param);
  }
  if (values->empty()) throw UsageError("sweep needs at least one value");

  std::vector<RunConfig> variants;
  for (double v : *values) {
    RunConfig variant = config;
    if (*param == "lambda") {
      if (!(v >= 0.0 && v <= 1.0)) throw UsageError("lambda values must lie in [0, 1]");
      variant.search.lambda = v;
    } else {
      if (v < 1.0 || v != static_cast<double>(static_cast<int>(v))) {
        throw UsageError("T values must be integers >= 1");
      }
      variant.search.samples_per_op = static_cast<int>(v);
    }
    variants.push_back(std::move(variant));
  }

  const auto evaluator = make_evaluator(config);
  fs::create_directories(config.output_dir);
  const std::size_t nseeds = config.seeds.size();
  std::vector<RunOutcome> outcomes(variants.size() * nseeds);
  std::vector<double> scores(outcomes.size(), 0.0);
  parallel_for(outcomes.size(), config.jobs, [&](std::size_t i) {
    const RunConfig& variant = variants[i / nseeds];
    const std::uint64_t seed = config.seeds[i % nseeds];
    RunOptions run;
    run.output_dir = config.output_dir / (*param + "_" + format_double((*values)[i / nseeds])) /
                     seed_dir_name(seed);
    outcomes[i] = run_seed(variant, *evaluator, seed, Strategy::kAntiBandit, run);
    // Without a planted optimum the final architecture is scored by one more
    // evaluation.
    scores[i] = outcomes[i].true_score
                    ? *outcomes[i].true_score
                    : evaluator->evaluate(outcomes[i].genotype, trial_eval_seed(seed, -1));
  });

  std::ofstream csv(config.output_dir / "sweep.csv", std::ios::binary);
  csv << "param,value,seed,recovered,score,evaluator_calls\n";
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const RunOutcome& o = outcomes[i];
    csv << *param << ',' << format_double((*values)[i / nseeds]) << ',' << o.seed << ',';
    if (o.recovered_optimum) csv << (*o.recovered_optimum ? 1 : 0);
    csv << ',' << format_double(scores[i]) << ',' << o.evaluator_calls << '\n';
  }
  log << "sweep over " << *param << ": " << values->size() << " values x " << nseeds
      << " seeds = " << outcomes.size() << " searches\n";
  return 0;
}

int cmd_resume(const fs::path& checkpoint_path, const CommandOptions& options, std::ostream& log) {
  json doc;
  try {
    doc = read_json_file(checkpoint_path);
  } catch (const ConfigError& e) {
    throw ValidationError(e.what());
  }
  Checkpoint cp = parse_checkpoint(doc);
  const fs::path dir = options.out ? *options.out : cp.run_dir;
  SearchDriver driver(std::move(cp.progress));
  if (driver.done()) {
    log << "checkpoint " << checkpoint_path.string() << " is already complete; nothing to do\n";
    return 0;
  }
  const auto evaluator = make_evaluator(cp.config);
  RunOptions run;
  run.output_dir = dir;
  run.max_trials = options.max_trials;
  const RunOutcome o = continue_run(driver, cp.config, *evaluator, run);
  log << "seed " << o.seed << ": " << (o.finished ? "finished" : "interrupted") << " after "
      << o.evaluator_calls << "/" << o.planned_calls << " evaluator calls\n";
  return 0;
}

}  // namespace antibandit
