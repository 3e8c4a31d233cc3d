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

#include "antibandit/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "antibandit/error.hpp"
#include "antibandit/rng.hpp"

namespace antibandit {
namespace {

double utility(const SyntheticSpec& spec, std::size_t edge, OperationKind op) {
  if (edge >= spec.utilities.size()) {
    throw ConfigError("synthetic spec: no utilities for edge " + std::to_string(edge));
  }
  const double u = spec.utilities[edge][static_cast<std::size_t>(op_index(op))];
  if (std::isnan(u)) {
    throw ConfigError("synthetic spec: missing utility for edge " + std::to_string(edge) +
                      ", operation '" + std::string(op_name(op)) + "'");
  }
  return u;
}

}  // namespace

void SyntheticSpec::validate_for(const SearchSpace& space) const {
  if (utilities.size() != space.edge_count()) {
    throw ConfigError("synthetic spec: expected utilities for " +
                      std::to_string(space.edge_count()) + " edges, got " +
                      std::to_string(utilities.size()));
  }
  for (std::size_t e = 0; e < space.edge_count(); ++e) {
    for (OperationKind op : space.candidates(e)) utility(*this, e, op);
  }
  if (!(noise_sigma >= 0.0)) throw ConfigError("synthetic spec: noise_sigma must be >= 0");
}

bool SyntheticSpec::operator==(const SyntheticSpec& other) const {
  if (noise_sigma != other.noise_sigma || clip != other.clip ||
      utilities.size() != other.utilities.size()) {
    return false;
  }
  for (std::size_t e = 0; e < utilities.size(); ++e) {
    for (std::size_t k = 0; k < kNumOperationKinds; ++k) {
      const double a = utilities[e][k];
      const double b = other.utilities[e][k];
      if (!(a == b || (std::isnan(a) && std::isnan(b)))) return false;
    }
  }
  return true;
}

SyntheticSpec generate_separable_spec(const SearchSpace& space, double gap, double noise_sigma,
                                      std::uint64_t seed) {
  if (!(gap > 0.0 && gap < 1.0)) throw ConfigError("synthetic spec: gap must lie in (0, 1)");
  Rng rng(seed);
  SyntheticSpec spec;
  spec.noise_sigma = noise_sigma;
  spec.utilities.resize(space.edge_count());
  const auto& catalog = space.catalog();
  for (std::size_t e = 0; e < space.edge_count(); ++e) {
    auto& row = spec.utilities[e];
    row.fill(std::numeric_limits<double>::quiet_NaN());
    const std::size_t best = rng.below(catalog.size());
    const double top = rng.uniform(std::max(0.5, gap), 1.0);
    for (std::size_t k = 0; k < catalog.size(); ++k) {
      row[static_cast<std::size_t>(op_index(catalog[k]))] =
          k == best ? top : rng.uniform(0.0, top - gap);
    }
  }
  return spec;
}

double noiseless_score(const SyntheticSpec& spec, const Genotype& genotype) {
  if (genotype.size() == 0) throw ConfigError("synthetic spec: empty genotype");
  double sum = 0.0;
  for (std::size_t e = 0; e < genotype.size(); ++e) sum += utility(spec, e, genotype[e]);
  return sum / static_cast<double>(genotype.size());
}

double synthetic_evaluate(const SyntheticSpec& spec, const Genotype& genotype,
                          std::uint64_t seed) {
  double score = noiseless_score(spec, genotype);
  if (spec.noise_sigma > 0.0) {
    Rng rng(seed);
    score += spec.noise_sigma * rng.normal();
  }
  return spec.clip ? std::clamp(score, 0.0, 1.0) : score;
}

Genotype planted_optimum(const SyntheticSpec& spec, const SearchSpace& space) {
  std::vector<OperationKind> choices(space.edge_count());
  for (std::size_t e = 0; e < space.edge_count(); ++e) {
    const auto candidates = space.candidates(e);
    OperationKind best = candidates[0];
    double best_u = utility(spec, e, best);
    for (OperationKind op : candidates.subspan(1)) {
      const double u = utility(spec, e, op);
      if (u > best_u) {
        best_u = u;
        best = op;
      }
    }
    choices[e] = best;
  }
  return Genotype(space.cells(), space.nodes(), std::move(choices));
}

BruteForceResult brute_force_best(const SyntheticSpec& spec, const SearchSpace& space) {
  const BigInt size = space_size(space);
  if (size > kBruteForceLimit) {
    throw ConfigError("brute_force_best: space holds " + size.str() + " genotypes (limit " +
                      std::to_string(kBruteForceLimit) + ")");
  }
  spec.validate_for(space);
  const std::size_t edges = space.edge_count();
  std::vector<std::size_t> digits(edges, 0);
  std::vector<OperationKind> choices(edges);
  for (std::size_t e = 0; e < edges; ++e) choices[e] = space.candidates(e)[0];

  BruteForceResult best;
  best.score = -std::numeric_limits<double>::infinity();
  // Odometer with the last edge fastest enumerates in lexicographic order, so
  // the first strict maximum is the smallest among ties.
  while (true) {
    Genotype g(space.cells(), space.nodes(), choices);
    const double s = noiseless_score(spec, g);
    ++best.evaluated;
    if (s > best.score) {
      best.score = s;
      best.genotype = std::move(g);
    }
    std::size_t e = edges;
    while (e > 0) {
      --e;
      const auto candidates = space.candidates(e);
      if (++digits[e] < candidates.size()) {
        choices[e] = candidates[digits[e]];
        break;
      }
      digits[e] = 0;
      choices[e] = candidates[0];
      if (e == 0) return best;
    }
  }
}

}  // namespace antibandit
