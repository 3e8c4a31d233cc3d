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

#ifndef ANTIBANDIT_CONFIG_HPP_
#define ANTIBANDIT_CONFIG_HPP_

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "antibandit/bandit.hpp"
#include "antibandit/evaluator.hpp"
#include "antibandit/search_space.hpp"
#include "antibandit/synthetic.hpp"
#include "antibandit/tinynet.hpp"

namespace antibandit {

inline constexpr int kConfigSchemaVersion = 1;

struct SpaceConfig {
  int cells = 1;
  int nodes = 2;
  std::vector<OperationKind> catalog = full_catalog();

  SearchSpace build() const { return SearchSpace(cells, nodes, catalog); }
  bool operator==(const SpaceConfig&) const = default;
};

// Either explicit utilities or a generated separable spec.
struct SyntheticSource {
  std::optional<SyntheticSpec> explicit_spec;
  double gap = 0.2;
  std::uint64_t spec_seed = 0;
  double noise_sigma = 0.0;
  bool clip = true;

  SyntheticSpec resolve(const SearchSpace& space) const;
  bool operator==(const SyntheticSource&) const = default;
};

struct SweepConfig {
  std::string param;  // "lambda" or "T"
  std::vector<double> values;
  bool operator==(const SweepConfig&) const = default;
};

struct RunConfig {
  SearchConfig search;
  SpaceConfig space;
  std::variant<SyntheticSource, TinyNetSpec> evaluator;
  std::filesystem::path output_dir = "out";
  std::vector<std::uint64_t> seeds = {0};
  int jobs = 1;
  std::optional<SweepConfig> sweep;

  bool is_synthetic() const { return std::holds_alternative<SyntheticSource>(evaluator); }
  // Throws ConfigError naming the offending field.
  void validate() const;
  bool operator==(const RunConfig&) const = default;
};

// Parses a versioned JSON run configuration. Unknown fields are rejected.
RunConfig parse_run_config(const nlohmann::json& doc);
RunConfig load_run_config(const std::filesystem::path& path);
nlohmann::json run_config_to_json(const RunConfig& config);

// Evaluator described by the config, bound to the config's search space.
std::unique_ptr<Evaluator> make_evaluator(const RunConfig& config);

}  // namespace antibandit

#endif  // ANTIBANDIT_CONFIG_HPP_
