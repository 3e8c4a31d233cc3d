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

#ifndef ANTIBANDIT_STATS_HPP_
#define ANTIBANDIT_STATS_HPP_

#include <cstdint>

namespace antibandit {

// z for a one-sided 95% bound.
inline constexpr double kZOneSided95 = 1.6448536269514722;

struct Interval {
  double low = 0.0;
  double high = 1.0;
};

// Wilson score interval for a binomial proportion.
Interval wilson_interval(std::int64_t successes, std::int64_t trials, double z);

// Newcombe's hybrid score interval for p1 - p2 built from the two Wilson
// intervals at the same z.
Interval newcombe_difference(std::int64_t successes1, std::int64_t trials1,
                             std::int64_t successes2, std::int64_t trials2, double z);

}  // namespace antibandit

#endif  // ANTIBANDIT_STATS_HPP_
