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

#ifndef ANTIBANDIT_SYNTHETIC_HPP_
#define ANTIBANDIT_SYNTHETIC_HPP_

#include <array>
#include <cstdint>
#include <vector>

#include "antibandit/evaluator.hpp"
#include "antibandit/search_space.hpp"

namespace antibandit {

// Planted per-(edge, operation) utilities. utilities[edge][op_index] is NaN
// where no utility is defined.
struct SyntheticSpec {
  std::vector<std::array<double, kNumOperationKinds>> utilities;
  double noise_sigma = 0.0;
  bool clip = true;

  // Throws ConfigError unless every candidate of `space` has a utility.
  void validate_for(const SearchSpace& space) const;
  bool operator==(const SyntheticSpec&) const;
};

// Separable spec whose per-edge optimum beats every other catalog operation
// by at least `gap`. The optimum utility is drawn from [max(0.5, gap), 1].
SyntheticSpec generate_separable_spec(const SearchSpace& space, double gap, double noise_sigma,
                                      std::uint64_t seed);

// Mean over edges of the chosen utilities (no noise). Throws ConfigError on a
// missing entry.
double noiseless_score(const SyntheticSpec& spec, const Genotype& genotype);

// noiseless_score + N(0, noise_sigma^2) drawn from `seed`, clipped to [0, 1]
// when spec.clip is set.
double synthetic_evaluate(const SyntheticSpec& spec, const Genotype& genotype,
                          std::uint64_t seed);

// Per-edge argmax utility over the current candidates (lowest index on ties).
Genotype planted_optimum(const SyntheticSpec& spec, const SearchSpace& space);

struct BruteForceResult {
  Genotype genotype;
  double score = 0.0;
  std::uint64_t evaluated = 0;
};

inline constexpr std::uint64_t kBruteForceLimit = 1'000'000;

// Exhaustive noiseless search over every genotype of `space`; ties resolve to
// the lexicographically smallest genotype. Throws ConfigError when the space
// holds more than kBruteForceLimit genotypes.
BruteForceResult brute_force_best(const SyntheticSpec& spec, const SearchSpace& space);

class SyntheticEvaluator : public Evaluator {
 public:
  explicit SyntheticEvaluator(SyntheticSpec spec) : spec_(std::move(spec)) {}

  double evaluate(const Genotype& genotype, std::uint64_t seed) const override {
    return synthetic_evaluate(spec_, genotype, seed);
  }

  const SyntheticSpec& spec() const { return spec_; }

 private:
  SyntheticSpec spec_;
};

}  // namespace antibandit

#endif  // ANTIBANDIT_SYNTHETIC_HPP_
