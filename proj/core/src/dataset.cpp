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

#include "antibandit/dataset.hpp"

#include <algorithm>
#include <bit>
#include <fstream>

#include "antibandit/error.hpp"
#include "antibandit/rng.hpp"

namespace antibandit {
namespace {

static_assert(std::endian::native == std::endian::little,
              "binary dataset format assumes a little-endian host");

constexpr double kBackground = 0.25;
constexpr double kNoise = 0.08;
constexpr double kBarIntensity = 0.7;

Example make_example(int label, Rng& rng) {
  const std::size_t n = kImageSize;
  Tensor image({1, n, n});
  for (double& v : image.values()) v = kBackground + kNoise * rng.normal();
  if (label == 0) {
    const auto orientation = rng.below(4);
    const auto offset = static_cast<int>(rng.below(n));
    for (int i = 0; i < static_cast<int>(n); ++i) {
      int r = 0;
      int c = 0;
      switch (orientation) {
        case 0:  // horizontal
          r = offset;
          c = i;
          break;
        case 1:  // vertical
          r = i;
          c = offset;
          break;
        case 2:  // diagonal, wrapped
          r = i;
          c = (i + offset) % static_cast<int>(n);
          break;
        default:  // anti-diagonal, wrapped
          r = i;
          c = (static_cast<int>(n) - 1 - i + offset) % static_cast<int>(n);
          break;
      }
      image.at(0, static_cast<std::size_t>(r), static_cast<std::size_t>(c)) += kBarIntensity;
    }
  }
  for (double& v : image.values()) v = std::clamp(v, 0.0, 1.0);
  return {std::move(image), label};
}

template <typename T>
void put(std::ofstream& out, T value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T get(std::ifstream& in, const std::filesystem::path& path) {
  T value{};
  if (!in.read(reinterpret_cast<char*>(&value), sizeof(T))) {
    throw ValidationError("truncated binary file: " + path.string());
  }
  return value;
}

void write_records(const std::filesystem::path& path, const std::vector<std::size_t>& dims,
                   const std::vector<const Tensor*>& tensors, const std::vector<int>& labels) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  put<std::uint32_t>(out, static_cast<std::uint32_t>(dims.size()));
  for (auto d : dims) put<std::uint32_t>(out, static_cast<std::uint32_t>(d));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(tensors.size()));
  for (const Tensor* t : tensors) {
    out.write(reinterpret_cast<const char*>(t->data().data()),
              static_cast<std::streamsize>(t->size() * sizeof(double)));
  }
  for (int label : labels) put<std::int32_t>(out, label);
  if (!out) throw Error("failed writing " + path.string());
}

}  // namespace

Dataset make_synthetic_dataset(std::size_t count, std::uint64_t seed) {
  if (count < 2) throw ConfigError("dataset size must be >= 2");
  Rng rng(seed);
  const std::size_t train_count = std::max<std::size_t>(1, count * 2 / 3);
  Dataset data;
  data.train.reserve(train_count);
  data.validation.reserve(count - train_count);
  for (std::size_t i = 0; i < count; ++i) {
    const bool is_train = i < train_count;
    const std::size_t local = is_train ? i : i - train_count;
    auto& split = is_train ? data.train : data.validation;
    split.push_back(make_example(static_cast<int>(local % 2), rng));
  }
  return data;
}

void write_examples(const std::filesystem::path& path, const std::vector<Example>& examples) {
  std::vector<std::size_t> dims = examples.empty() ? std::vector<std::size_t>{1, kImageSize, kImageSize}
                                                   : examples.front().image.shape();
  std::vector<const Tensor*> tensors;
  std::vector<int> labels;
  for (const auto& e : examples) {
    if (e.image.shape() != dims) throw ShapeError("write_examples: mixed image shapes");
    tensors.push_back(&e.image);
    labels.push_back(e.label);
  }
  write_records(path, dims, tensors, labels);
}

std::vector<Example> read_examples(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  const auto rank = get<std::uint32_t>(in, path);
  if (rank > 8) throw ValidationError("implausible tensor rank in " + path.string());
  std::vector<std::size_t> dims(rank);
  std::size_t per_item = 1;
  for (auto& d : dims) {
    d = get<std::uint32_t>(in, path);
    per_item *= d;
  }
  const auto count = get<std::uint32_t>(in, path);
  std::vector<Example> examples(count);
  for (auto& e : examples) {
    std::vector<double> values(per_item);
    if (!in.read(reinterpret_cast<char*>(values.data()),
                 static_cast<std::streamsize>(per_item * sizeof(double)))) {
      throw ValidationError("truncated binary file: " + path.string());
    }
    e.image = Tensor(dims, std::move(values));
  }
  for (auto& e : examples) e.label = get<std::int32_t>(in, path);
  return examples;
}

void write_tensor(const std::filesystem::path& path, const Tensor& tensor) {
  write_records(path, tensor.shape(), {&tensor}, {-1});
}

}  // namespace antibandit
