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

#ifndef ANTIBANDIT_EVALUATOR_HPP_
#define ANTIBANDIT_EVALUATOR_HPP_

#include <cstdint>

#include "antibandit/search_space.hpp"

namespace antibandit {

// Reward oracle: maps a genotype to a validation accuracy in [0, 1].
// Implementations must be pure given (genotype, seed, own configuration).
class Evaluator {
 public:
  virtual ~Evaluator() = default;
  virtual double evaluate(const Genotype& genotype, std::uint64_t seed) const = 0;
};

}  // namespace antibandit

#endif  // ANTIBANDIT_EVALUATOR_HPP_
