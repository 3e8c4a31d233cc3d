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

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "antibandit/error.hpp"
#include "antibandit/experiment.hpp"

namespace {

constexpr int kExitError = 1;
constexpr int kExitUsage = 2;

struct Flags {
  std::string config;
  std::string checkpoint;
  std::string out;
  std::vector<std::uint64_t> seeds;
  int jobs = 0;
  std::int64_t max_trials = -1;
  std::string param;
  std::vector<double> values;
};

void add_common(CLI::App* cmd, Flags& f, bool needs_config) {
  auto* config = cmd->add_option("--config", f.config, "Run configuration (JSON)");
  if (needs_config) config->required();
  cmd->add_option("--out", f.out, "Output directory (overrides output_dir)");
  cmd->add_option("--seeds", f.seeds, "Comma-separated seed list")->delimiter(',');
  cmd->add_option("--jobs", f.jobs, "Parallel worker slots")->check(CLI::PositiveNumber);
  cmd->add_option("--max-trials", f.max_trials, "Stop after this many trials and checkpoint")
      ->group("");
}

antibandit::CommandOptions command_options(const Flags& f, CLI::App* cmd) {
  antibandit::CommandOptions o;
  if (cmd->count("--out") > 0) o.out = f.out;
  if (cmd->count("--seeds") > 0) o.seeds = f.seeds;
  if (cmd->count("--jobs") > 0) o.jobs = f.jobs;
  if (cmd->count("--max-trials") > 0) o.max_trials = f.max_trials;
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Anti-bandit neural architecture search"};
  app.require_subcommand(1);
  Flags f;

  auto* search = app.add_subcommand("search", "Run the anti-bandit search for every seed");
  add_common(search, f, true);
  auto* compare = app.add_subcommand(
      "compare", "Compare abandit, ucbnas, ucbnas_pruning and uniform random sampling");
  add_common(compare, f, true);
  auto* sweep = app.add_subcommand("sweep", "Repeat the search over lambda or T values");
  add_common(sweep, f, true);
  sweep->add_option("--param", f.param, "lambda or T");
  sweep->add_option("--values", f.values, "Comma-separated values")->delimiter(',');
  auto* resume = app.add_subcommand("resume", "Continue a search from its checkpoint");
  add_common(resume, f, false);
  resume->add_option("--checkpoint", f.checkpoint, "checkpoint.json written by a prior run");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (search->parsed()) return antibandit::cmd_search(f.config, command_options(f, search), std::cout);
    if (compare->parsed()) {
      return antibandit::cmd_compare(f.config, command_options(f, compare), std::cout);
    }
    if (sweep->parsed()) {
      std::optional<std::string> param;
      std::optional<std::vector<double>> values;
      if (sweep->count("--param") > 0) param = f.param;
      if (sweep->count("--values") > 0) values = f.values;
      return antibandit::cmd_sweep(f.config, param, values, command_options(f, sweep), std::cout);
    }
    // resume accepts the checkpoint through either flag.
    const std::string path = !f.checkpoint.empty() ? f.checkpoint : f.config;
    if (path.empty()) throw antibandit::UsageError("resume needs --checkpoint <path>");
    return antibandit::cmd_resume(path, command_options(f, resume), std::cout);
  } catch (const antibandit::UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
}
