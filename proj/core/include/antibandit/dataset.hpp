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

#ifndef ANTIBANDIT_DATASET_HPP_
#define ANTIBANDIT_DATASET_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "antibandit/tensor.hpp"

namespace antibandit {

struct Example {
  Tensor image;  // [1, 8, 8]
  int label = 0;
};

struct Dataset {
  std::vector<Example> train;
  std::vector<Example> validation;
};

inline constexpr std::size_t kImageSize = 8;

// Two-class 8x8 images: class 0 carries an oriented bright bar over noise,
// class 1 is isotropic noise. Two thirds go to the training split (rounded
// down), labels alternate within each split. Throws ConfigError for count < 2.
Dataset make_synthetic_dataset(std::size_t count, std::uint64_t seed);

// Flat little-endian binary:
//   u32 rank, u32 dims[rank], u32 count,
//   f64 values[count * prod(dims)] (row-major), i32 labels[count]
void write_examples(const std::filesystem::path& path, const std::vector<Example>& examples);
std::vector<Example> read_examples(const std::filesystem::path& path);

// A single tensor in the same format (count = 1, label = -1).
void write_tensor(const std::filesystem::path& path, const Tensor& tensor);

}  // namespace antibandit

#endif  // ANTIBANDIT_DATASET_HPP_
