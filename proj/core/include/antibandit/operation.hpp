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

#ifndef ANTIBANDIT_OPERATION_HPP_
#define ANTIBANDIT_OPERATION_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace antibandit {

// Candidate operations on a cell edge. The underlying value is the stable
// catalog index used by every serialized format.
enum class OperationKind : std::uint8_t {
  kMaxPool3x3 = 0,
  kAvgPool3x3 = 1,
  kSkipConnect = 2,
  kDilConv3x3 = 3,
  kDilConv5x5 = 4,
  kSepConv3x3 = 5,
  kSepConv5x5 = 6,
  kGabor3x3 = 7,
  kDenoise = 8,
};

inline constexpr std::size_t kNumOperationKinds = 9;

inline constexpr std::array<std::string_view, kNumOperationKinds> kOperationNames = {
    "max_pool_3x3", "avg_pool_3x3", "skip_connect", "dil_conv_3x3", "dil_conv_5x5",
    "sep_conv_3x3", "sep_conv_5x5", "gabor_3x3",    "denoise",
};

constexpr int op_index(OperationKind kind) { return static_cast<int>(kind); }

constexpr std::string_view op_name(OperationKind kind) {
  return kOperationNames[static_cast<std::size_t>(kind)];
}

inline std::optional<OperationKind> op_from_index(int index) {
  if (index < 0 || index >= static_cast<int>(kNumOperationKinds)) return std::nullopt;
  return static_cast<OperationKind>(index);
}

inline std::optional<OperationKind> op_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kNumOperationKinds; ++i) {
    if (kOperationNames[i] == name) return static_cast<OperationKind>(i);
  }
  return std::nullopt;
}

// All nine kinds in catalog order.
inline std::vector<OperationKind> full_catalog() {
  std::vector<OperationKind> ops;
  ops.reserve(kNumOperationKinds);
  for (std::size_t i = 0; i < kNumOperationKinds; ++i) {
    ops.push_back(static_cast<OperationKind>(i));
  }
  return ops;
}

}  // namespace antibandit

#endif  // ANTIBANDIT_OPERATION_HPP_
