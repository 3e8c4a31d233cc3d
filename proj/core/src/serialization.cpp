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

#include "antibandit/serialization.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <set>

#include "antibandit/error.hpp"
#include "json_fields.hpp"

namespace antibandit {
namespace {

using Fields = detail::Fields<ValidationError>;

OperationKind op_from_json(const json& v, const std::string& path) {
  if (!v.is_string()) Fields::fail(path, "expected an operation name");
  const auto op = op_from_name(v.get<std::string>());
  if (!op) Fields::fail(path, "unknown operation '" + v.get<std::string>() + "'");
  return *op;
}

json catalog_to_json(const std::vector<OperationKind>& ops) {
  json out = json::array();
  for (OperationKind op : ops) out.push_back(std::string(op_name(op)));
  return out;
}

std::vector<OperationKind> catalog_from_json(const json& v, const std::string& path) {
  if (!v.is_array()) Fields::fail(path, "expected an array of operation names");
  std::vector<OperationKind> ops;
  for (std::size_t i = 0; i < v.size(); ++i) {
    ops.push_back(op_from_json(v[i], path + "[" + std::to_string(i) + "]"));
  }
  return ops;
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

json genotype_to_json(const Genotype& genotype) {
  json cells = json::array();
  std::size_t flat = 0;
  for (int c = 0; c < genotype.cells(); ++c) {
    json edges = json::array();
    for (int to = 1; to <= genotype.nodes(); ++to) {
      for (int from = 0; from < to; ++from, ++flat) {
        edges.push_back({{"from", from}, {"to", to}, {"op", std::string(op_name(genotype[flat]))}});
      }
    }
    cells.push_back({{"edges", std::move(edges)}});
  }
  return {{"cells", std::move(cells)}};
}

Genotype genotype_from_json(const json& doc) {
  const Fields root(doc, "genotype");
  const json& cells = root.array("cells");
  if (cells.empty()) Fields::fail("genotype.cells", "expected at least one cell");
  const auto ncells = static_cast<int>(cells.size());
  int nodes = 0;
  std::vector<OperationKind> choices;
  for (int c = 0; c < ncells; ++c) {
    const std::string cpath = "genotype.cells[" + std::to_string(c) + "]";
    const Fields cell(cells[static_cast<std::size_t>(c)], cpath);
    const json& edges = cell.array("edges");
    // Node count from the edge count: E = M (M + 1) / 2.
    int m = 0;
    while (edges_per_cell(m) < static_cast<int>(edges.size())) ++m;
    if (m == 0 || edges_per_cell(m) != static_cast<int>(edges.size())) {
      Fields::fail(cpath + ".edges", std::to_string(edges.size()) +
                                         " edges do not form a complete cell");
    }
    if (c == 0) {
      nodes = m;
      choices.resize(static_cast<std::size_t>(ncells * edges_per_cell(nodes)));
    } else if (m != nodes) {
      Fields::fail(cpath + ".edges", "cells disagree on the node count");
    }
    std::vector<bool> seen(static_cast<std::size_t>(edges_per_cell(nodes)), false);
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const std::string epath = cpath + ".edges[" + std::to_string(i) + "]";
      const Fields edge(edges[i], epath);
      const auto from = edge.integer("from");
      const auto to = edge.integer("to");
      if (from < 0 || to > nodes || from >= to) Fields::fail(epath, "invalid edge endpoints");
      const auto local = static_cast<std::size_t>(local_edge_index(static_cast<int>(from),
                                                                   static_cast<int>(to)));
      if (seen[local]) Fields::fail(epath, "duplicate edge");
      seen[local] = true;
      choices[static_cast<std::size_t>(c * edges_per_cell(nodes)) + local] =
          op_from_json(edge.at("op"), epath + ".op");
    }
  }
  return Genotype(ncells, nodes, std::move(choices));
}

json space_to_json(const SearchSpace& space) {
  json candidates = json::array();
  for (std::size_t e = 0; e < space.edge_count(); ++e) {
    const auto c = space.candidates(e);
    candidates.push_back(catalog_to_json({c.begin(), c.end()}));
  }
  return {{"cells", space.cells()},
          {"nodes", space.nodes()},
          {"catalog", catalog_to_json(space.catalog())},
          {"candidates", std::move(candidates)}};
}

SearchSpace space_from_json(const json& doc) {
  const Fields f(doc, "space");
  std::optional<SearchSpace> space;
  try {
    space.emplace(static_cast<int>(f.integer("cells")), static_cast<int>(f.integer("nodes")),
                  catalog_from_json(f.at("catalog"), "space.catalog"));
  } catch (const ConfigError& e) {
    throw ValidationError(e.what());
  }
  const json& candidates = f.array("candidates");
  if (candidates.size() != space->edge_count()) {
    Fields::fail("space.candidates", "expected " + std::to_string(space->edge_count()) + " edges");
  }
  for (std::size_t e = 0; e < candidates.size(); ++e) {
    const std::string path = "space.candidates[" + std::to_string(e) + "]";
    const auto ops = catalog_from_json(candidates[e], path);
    const std::set<OperationKind> keep(ops.begin(), ops.end());
    if (keep.empty() || keep.size() != ops.size()) Fields::fail(path, "invalid candidate set");
    for (OperationKind op : keep) {
      if (std::find(space->catalog().begin(), space->catalog().end(), op) == space->catalog().end()) {
        Fields::fail(path, "operation '" + std::string(op_name(op)) + "' is not in the catalog");
      }
    }
    const std::vector<OperationKind> catalog = space->catalog();
    for (OperationKind op : catalog) {
      if (!keep.count(op) && space->is_candidate(e, op)) space = space->without(e, op);
    }
  }
  return *space;
}

json attack_to_json(const AttackConfig& attack) {
  return {{"epsilon", attack.epsilon},
          {"alpha", attack.alpha},
          {"steps", attack.steps},
          {"random_init", attack.random_init}};
}

json search_config_to_json(const SearchConfig& config) {
  return {{"T", config.samples_per_op},
          {"lambda", config.lambda},
          {"seed", config.seed},
          {"attack", attack_to_json(config.attack)}};
}

json bandit_state_to_json(const BanditState& state) {
  json arms = json::array();
  for (const auto& edge : state.arms) {
    json row = json::array();
    for (const ArmStats& a : edge) row.push_back({{"m", a.m}, {"n", a.n}});
    arms.push_back(std::move(row));
  }
  return {{"arms", std::move(arms)},
          {"N", state.total_trials},
          {"c", state.round_trials},
          {"t", state.epoch},
          {"K", state.active_ops}};
}

BanditState bandit_state_from_json(const json& doc) {
  const Fields f(doc, "state");
  BanditState state;
  const json& arms = f.array("arms");
  for (std::size_t e = 0; e < arms.size(); ++e) {
    const std::string epath = "state.arms[" + std::to_string(e) + "]";
    if (!arms[e].is_array()) Fields::fail(epath, "expected an array");
    std::vector<ArmStats> row;
    for (std::size_t k = 0; k < arms[e].size(); ++k) {
      const Fields a(arms[e][k], epath + "[" + std::to_string(k) + "]");
      row.push_back({a.number("m"), a.integer("n")});
      if (row.back().n < 0) Fields::fail(a.child("n"), "must be >= 0");
    }
    state.arms.push_back(std::move(row));
  }
  state.total_trials = f.integer("N");
  state.round_trials = f.integer("c");
  state.epoch = f.integer("t");
  state.active_ops = static_cast<std::size_t>(f.unsigned_integer("K"));
  return state;
}

json progress_to_json(const SearchProgress& p) {
  json history = json::array();
  for (const TrialRecord& r : p.history) {
    json ops = json::array();
    for (OperationKind op : r.genotype.choices()) ops.push_back(op_index(op));
    history.push_back({{"trial", r.trial},
                       {"ops", std::move(ops)},
                       {"accuracy", r.accuracy},
                       {"K", r.active_ops},
                       {"N", r.total_trials}});
  }
  return {{"strategy", std::string(strategy_name(p.strategy))},
          {"config", search_config_to_json(p.config)},
          {"space", space_to_json(p.space)},
          {"state", bandit_state_to_json(p.state)},
          {"history", std::move(history)},
          {"best_trial", p.best_trial ? json(*p.best_trial) : json(nullptr)}};
}

SearchProgress progress_from_json(const json& doc) {
  const Fields f(doc, "progress");
  const auto strategy = strategy_from_name(f.string("strategy"));
  if (!strategy) Fields::fail("progress.strategy", "unknown strategy");

  const Fields c = f.object("config");
  SearchConfig config;
  config.samples_per_op = static_cast<int>(c.integer("T"));
  config.lambda = c.number("lambda");
  config.seed = c.unsigned_integer("seed");
  const Fields a = c.object("attack");
  config.attack = {a.number("epsilon"), a.number("alpha"), static_cast<int>(a.integer("steps")),
                   a.boolean("random_init")};
  try {
    config.validate();
  } catch (const ConfigError& e) {
    throw ValidationError(std::string("progress.config: ") + e.what());
  }

  SearchSpace space = space_from_json(f.at("space"));
  BanditState state = bandit_state_from_json(f.at("state"));

  std::vector<TrialRecord> history;
  const json& h = f.array("history");
  const std::size_t edges = space.edge_count();
  for (std::size_t i = 0; i < h.size(); ++i) {
    const std::string path = "progress.history[" + std::to_string(i) + "]";
    const Fields r(h[i], path);
    const json& ops = r.array("ops");
    if (ops.size() != edges) Fields::fail(r.child("ops"), "wrong edge count");
    std::vector<OperationKind> choices;
    for (std::size_t e = 0; e < ops.size(); ++e) {
      const auto op = op_from_index(static_cast<int>(
          Fields::as_integer(ops[e], r.child("ops") + "[" + std::to_string(e) + "]")));
      if (!op) Fields::fail(r.child("ops"), "operation index out of range");
      choices.push_back(*op);
    }
    TrialRecord rec;
    rec.trial = r.integer("trial");
    if (rec.trial != static_cast<std::int64_t>(i)) Fields::fail(r.child("trial"), "out of sequence");
    rec.genotype = Genotype(space.cells(), space.nodes(), std::move(choices));
    rec.accuracy = r.number("accuracy");
    rec.active_ops = static_cast<std::size_t>(r.unsigned_integer("K"));
    rec.total_trials = r.integer("N");
    history.push_back(std::move(rec));
  }
  std::optional<std::int64_t> best;
  if (f.has("best_trial") && !f.at("best_trial").is_null()) {
    best = f.integer("best_trial");
    if (*best < 0 || *best >= static_cast<std::int64_t>(history.size())) {
      Fields::fail("progress.best_trial", "out of range");
    }
  }
  return {*strategy, config, std::move(space), std::move(state), std::move(history), best};
}

json synthetic_spec_to_json(const SyntheticSpec& spec) {
  json utilities = json::array();
  for (const auto& row : spec.utilities) {
    json entry = json::object();
    for (std::size_t k = 0; k < kNumOperationKinds; ++k) {
      if (!std::isnan(row[k])) entry[std::string(kOperationNames[k])] = row[k];
    }
    utilities.push_back(std::move(entry));
  }
  return {{"noise_sigma", spec.noise_sigma}, {"clip", spec.clip}, {"utilities", std::move(utilities)}};
}

json tinynet_spec_to_json(const TinyNetSpec& spec) {
  return {{"channels", spec.channels},
          {"reduction_cells", spec.reduction_cells},
          {"train_epochs", spec.train_epochs},
          {"dataset_size", spec.dataset_size},
          {"dataset_seed", spec.dataset_seed},
          {"learning_rate", spec.learning_rate},
          {"adversarial_validation", spec.adversarial_validation}};
}

void write_history_csv(std::ostream& out, const SearchSpace& layout,
                       const std::vector<TrialRecord>& history) {
  out << "trial,cell,edge_from,edge_to,op,accuracy,K_current,N\n";
  for (const TrialRecord& r : history) {
    const std::string acc = format_double(r.accuracy);
    for (std::size_t e = 0; e < r.genotype.size(); ++e) {
      const EdgeId& id = layout.edge(e);
      out << r.trial << ',' << id.cell << ',' << id.from << ',' << id.to << ','
          << op_name(r.genotype[e]) << ',' << acc << ',' << r.active_ops << ','
          << r.total_trials << '\n';
    }
  }
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  out << doc.dump(2) << '\n';
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

}  // namespace antibandit
