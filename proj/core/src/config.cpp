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

#include "antibandit/config.hpp"

#include <cmath>
#include <limits>

#include "antibandit/error.hpp"
#include "antibandit/serialization.hpp"
#include "json_fields.hpp"

namespace antibandit {
namespace {

using Fields = detail::Fields<ConfigError>;
using nlohmann::json;

AttackConfig parse_attack(const Fields& f) {
  f.only({"epsilon", "alpha", "steps", "random_init"});
  AttackConfig attack;
  attack.epsilon = f.number_or("epsilon", attack.epsilon);
  attack.alpha = f.number_or("alpha", 1.25 * attack.epsilon);
  attack.steps = static_cast<int>(f.integer_or("steps", attack.steps));
  attack.random_init = f.boolean_or("random_init", attack.random_init);
  return attack;
}

SearchConfig parse_search(const Fields& f) {
  f.only({"T", "lambda", "attack"});
  SearchConfig search;
  search.samples_per_op = static_cast<int>(f.integer_or("T", search.samples_per_op));
  if (search.samples_per_op < 1) Fields::fail(f.child("T"), "must be >= 1");
  search.lambda = f.number_or("lambda", search.lambda);
  if (!(search.lambda >= 0.0 && search.lambda <= 1.0)) {
    Fields::fail(f.child("lambda"), "must lie in [0, 1]");
  }
  if (f.has("attack")) search.attack = parse_attack(f.object("attack"));
  return search;
}

SpaceConfig parse_space(const Fields& f) {
  f.only({"cells", "nodes", "catalog"});
  SpaceConfig space;
  space.cells = static_cast<int>(f.integer_or("cells", space.cells));
  if (space.cells < 1) Fields::fail(f.child("cells"), "must be >= 1");
  space.nodes = static_cast<int>(f.integer_or("nodes", space.nodes));
  if (space.nodes < 1) Fields::fail(f.child("nodes"), "must be >= 1");
  if (f.has("catalog")) {
    const json& names = f.array("catalog");
    if (names.empty()) Fields::fail(f.child("catalog"), "must not be empty");
    space.catalog.clear();
    for (std::size_t i = 0; i < names.size(); ++i) {
      const std::string path = f.child("catalog") + "[" + std::to_string(i) + "]";
      if (!names[i].is_string()) Fields::fail(path, "expected an operation name");
      const auto op = op_from_name(names[i].get<std::string>());
      if (!op) Fields::fail(path, "unknown operation '" + names[i].get<std::string>() + "'");
      for (OperationKind existing : space.catalog) {
        if (existing == *op) Fields::fail(path, "duplicate operation");
      }
      space.catalog.push_back(*op);
    }
  }
  return space;
}

SyntheticSource parse_synthetic(const Fields& f) {
  f.only({"type", "gap", "spec_seed", "noise_sigma", "clip", "utilities"});
  SyntheticSource src;
  src.gap = f.number_or("gap", src.gap);
  if (!(src.gap > 0.0 && src.gap < 1.0)) Fields::fail(f.child("gap"), "must lie in (0, 1)");
  if (f.has("spec_seed")) src.spec_seed = f.unsigned_integer("spec_seed");
  src.noise_sigma = f.number_or("noise_sigma", src.noise_sigma);
  if (!(src.noise_sigma >= 0.0)) Fields::fail(f.child("noise_sigma"), "must be >= 0");
  src.clip = f.boolean_or("clip", src.clip);
  if (f.has("utilities")) {
    const json& rows = f.array("utilities");
    SyntheticSpec spec;
    spec.noise_sigma = src.noise_sigma;
    spec.clip = src.clip;
    for (std::size_t e = 0; e < rows.size(); ++e) {
      const std::string path = f.child("utilities") + "[" + std::to_string(e) + "]";
      if (!rows[e].is_object()) Fields::fail(path, "expected an object of operation utilities");
      std::array<double, kNumOperationKinds> row;
      row.fill(std::numeric_limits<double>::quiet_NaN());
      for (auto it = rows[e].begin(); it != rows[e].end(); ++it) {
        const auto op = op_from_name(it.key());
        if (!op) Fields::fail(path + "." + it.key(), "unknown operation");
        if (!it->is_number()) Fields::fail(path + "." + it.key(), "expected a number");
        const double u = it->get<double>();
        if (!(u >= 0.0 && u <= 1.0)) Fields::fail(path + "." + it.key(), "must lie in [0, 1]");
        row[static_cast<std::size_t>(op_index(*op))] = u;
      }
      spec.utilities.push_back(row);
    }
    src.explicit_spec = std::move(spec);
  }
  return src;
}

TinyNetSpec parse_tinynet(const Fields& f) {
  f.only({"type", "channels", "reduction_cells", "train_epochs", "dataset_size", "dataset_seed",
          "learning_rate", "adversarial_validation"});
  TinyNetSpec spec;
  const auto channels = f.integer_or("channels", static_cast<std::int64_t>(spec.channels));
  if (channels < 1) Fields::fail(f.child("channels"), "must be >= 1");
  spec.channels = static_cast<std::size_t>(channels);
  if (f.has("reduction_cells")) {
    const json& cells = f.array("reduction_cells");
    for (std::size_t i = 0; i < cells.size(); ++i) {
      spec.reduction_cells.push_back(static_cast<int>(Fields::as_integer(
          cells[i], f.child("reduction_cells") + "[" + std::to_string(i) + "]")));
    }
  }
  spec.train_epochs = static_cast<int>(f.integer_or("train_epochs", spec.train_epochs));
  if (spec.train_epochs < 0) Fields::fail(f.child("train_epochs"), "must be >= 0");
  const auto size = f.integer_or("dataset_size", static_cast<std::int64_t>(spec.dataset_size));
  if (size < 2) Fields::fail(f.child("dataset_size"), "must be >= 2");
  spec.dataset_size = static_cast<std::size_t>(size);
  if (f.has("dataset_seed")) spec.dataset_seed = f.unsigned_integer("dataset_seed");
  spec.learning_rate = f.number_or("learning_rate", spec.learning_rate);
  if (!(spec.learning_rate > 0.0)) Fields::fail(f.child("learning_rate"), "must be > 0");
  spec.adversarial_validation = f.boolean_or("adversarial_validation", false);
  return spec;
}

}  // namespace

SyntheticSpec SyntheticSource::resolve(const SearchSpace& space) const {
  SyntheticSpec spec = explicit_spec ? *explicit_spec
                                     : generate_separable_spec(space, gap, noise_sigma, spec_seed);
  spec.noise_sigma = noise_sigma;
  spec.clip = clip;
  spec.validate_for(space);
  return spec;
}

void RunConfig::validate() const {
  try {
    search.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(std::string("field 'search': ") + e.what());
  }
  const SearchSpace built = space.build();
  if (seeds.empty()) throw ConfigError("field 'seeds': must list at least one seed");
  if (jobs < 1) throw ConfigError("field 'jobs': must be >= 1");
  if (const auto* src = std::get_if<SyntheticSource>(&evaluator)) {
    try {
      src->resolve(built);
    } catch (const ConfigError& e) {
      throw ConfigError(std::string("field 'evaluator': ") + e.what());
    }
  } else {
    TinyNetSpec spec = std::get<TinyNetSpec>(evaluator);
    spec.cells = space.cells;
    spec.nodes = space.nodes;
    spec.attack = search.attack;
    try {
      spec.validate();
    } catch (const ConfigError& e) {
      throw ConfigError(std::string("field 'evaluator': ") + e.what());
    }
  }
  if (sweep) {
    if (sweep->param != "lambda" && sweep->param != "T") {
      throw ConfigError("field 'sweep.param': expected \"lambda\" or \"T\"");
    }
    if (sweep->values.empty()) throw ConfigError("field 'sweep.values': must not be empty");
  }
}

RunConfig parse_run_config(const json& doc) {
  const Fields root(doc, "");
  root.only({"schema_version", "search", "space", "evaluator", "output_dir", "seeds", "jobs",
             "sweep"});
  const auto version = root.integer("schema_version");
  if (version != kConfigSchemaVersion) {
    Fields::fail("schema_version", "unsupported version " + std::to_string(version));
  }
  RunConfig config;
  if (root.has("search")) config.search = parse_search(root.object("search"));
  if (root.has("space")) config.space = parse_space(root.object("space"));

  const Fields ev = root.object("evaluator");
  const std::string type = ev.string("type");
  if (type == "synthetic") {
    config.evaluator = parse_synthetic(ev);
  } else if (type == "tinynet") {
    config.evaluator = parse_tinynet(ev);
  } else {
    Fields::fail("evaluator.type", "expected \"synthetic\" or \"tinynet\"");
  }

  if (root.has("output_dir")) config.output_dir = root.string("output_dir");
  if (root.has("seeds")) {
    const json& seeds = root.array("seeds");
    config.seeds.clear();
    for (std::size_t i = 0; i < seeds.size(); ++i) {
      config.seeds.push_back(Fields::as_unsigned(seeds[i], "seeds[" + std::to_string(i) + "]"));
    }
  }
  config.jobs = static_cast<int>(root.integer_or("jobs", config.jobs));
  if (root.has("sweep")) {
    const Fields s = root.object("sweep");
    s.only({"param", "values"});
    SweepConfig sweep;
    sweep.param = s.string("param");
    if (s.has("values")) {
      const json& values = s.array("values");
      for (std::size_t i = 0; i < values.size(); ++i) {
        if (!values[i].is_number()) {
          Fields::fail("sweep.values[" + std::to_string(i) + "]", "expected a number");
        }
        sweep.values.push_back(values[i].get<double>());
      }
    }
    config.sweep = std::move(sweep);
  }
  config.validate();
  return config;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  return parse_run_config(read_json_file(path));
}

json run_config_to_json(const RunConfig& config) {
  json catalog = json::array();
  for (OperationKind op : config.space.catalog) catalog.push_back(std::string(op_name(op)));
  json doc = {
      {"schema_version", kConfigSchemaVersion},
      {"search",
       {{"T", config.search.samples_per_op},
        {"lambda", config.search.lambda},
        {"attack", attack_to_json(config.search.attack)}}},
      {"space", {{"cells", config.space.cells}, {"nodes", config.space.nodes}, {"catalog", catalog}}},
      {"output_dir", config.output_dir.string()},
      {"seeds", config.seeds},
      {"jobs", config.jobs},
  };
  if (const auto* src = std::get_if<SyntheticSource>(&config.evaluator)) {
    json ev = {{"type", "synthetic"},
               {"gap", src->gap},
               {"spec_seed", src->spec_seed},
               {"noise_sigma", src->noise_sigma},
               {"clip", src->clip}};
    if (src->explicit_spec) ev["utilities"] = synthetic_spec_to_json(*src->explicit_spec)["utilities"];
    doc["evaluator"] = std::move(ev);
  } else {
    json ev = tinynet_spec_to_json(std::get<TinyNetSpec>(config.evaluator));
    ev["type"] = "tinynet";
    doc["evaluator"] = std::move(ev);
  }
  if (config.sweep) doc["sweep"] = {{"param", config.sweep->param}, {"values", config.sweep->values}};
  return doc;
}

std::unique_ptr<Evaluator> make_evaluator(const RunConfig& config) {
  const SearchSpace space = config.space.build();
  if (const auto* src = std::get_if<SyntheticSource>(&config.evaluator)) {
    return std::make_unique<SyntheticEvaluator>(src->resolve(space));
  }
  TinyNetSpec spec = std::get<TinyNetSpec>(config.evaluator);
  spec.cells = space.cells();
  spec.nodes = space.nodes();
  spec.attack = config.search.attack;
  return std::make_unique<TinyNetEvaluator>(std::move(spec));
}

}  // namespace antibandit
