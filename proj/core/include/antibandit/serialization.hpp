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

#ifndef ANTIBANDIT_SERIALIZATION_HPP_
#define ANTIBANDIT_SERIALIZATION_HPP_

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "antibandit/search.hpp"
#include "antibandit/search_space.hpp"
#include "antibandit/synthetic.hpp"
#include "antibandit/tinynet.hpp"

namespace antibandit {

using nlohmann::json;

// {"cells":[{"edges":[{"from":0,"to":1,"op":"gabor_3x3"}, ...]}, ...]}
json genotype_to_json(const Genotype& genotype);
// Throws ValidationError naming the offending element; every edge of the
// implied (cells, nodes) layout must appear exactly once.
Genotype genotype_from_json(const json& doc);

json space_to_json(const SearchSpace& space);
SearchSpace space_from_json(const json& doc);

json attack_to_json(const AttackConfig& attack);
json search_config_to_json(const SearchConfig& config);
json bandit_state_to_json(const BanditState& state);
BanditState bandit_state_from_json(const json& doc);

json progress_to_json(const SearchProgress& progress);
// Throws ValidationError naming the offending field.
SearchProgress progress_from_json(const json& doc);

json synthetic_spec_to_json(const SyntheticSpec& spec);
json tinynet_spec_to_json(const TinyNetSpec& spec);

// trial,cell,edge_from,edge_to,op,accuracy,K_current,N (one row per edge per
// trial). Accuracies use shortest round-trip formatting.
void write_history_csv(std::ostream& out, const SearchSpace& layout,
                       const std::vector<TrialRecord>& history);

// Shortest decimal text that parses back to the same double.
std::string format_double(double value);

json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const json& doc);

}  // namespace antibandit

#endif  // ANTIBANDIT_SERIALIZATION_HPP_
