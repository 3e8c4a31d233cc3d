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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "antibandit/dataset.hpp"
#include "antibandit/error.hpp"

namespace antibandit {
namespace {

namespace fs = std::filesystem;

fs::path temp_file(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "antibandit_dataset_test";
  fs::create_directories(dir);
  return dir / name;
}

TEST(Dataset, SplitSizes) {
  const Dataset d = make_synthetic_dataset(768, 1);
  EXPECT_EQ(d.train.size(), 512u);
  EXPECT_EQ(d.validation.size(), 256u);
  EXPECT_THROW(make_synthetic_dataset(1, 1), ConfigError);
  const Dataset tiny = make_synthetic_dataset(2, 1);
  EXPECT_EQ(tiny.train.size() + tiny.validation.size(), 2u);
}

TEST(Dataset, BalancedLabelsAndValidImages) {
  for (std::size_t count : {2u, 3u, 7u, 100u, 768u}) {
    const Dataset d = make_synthetic_dataset(count, 5);
    for (const auto* split : {&d.train, &d.validation}) {
      long balance = 0;
      for (const Example& ex : *split) {
        ASSERT_TRUE(ex.label == 0 || ex.label == 1);
        balance += ex.label == 0 ? 1 : -1;
        EXPECT_EQ(ex.image.shape(), (std::vector<std::size_t>{1, 8, 8}));
        for (double v : ex.image.values()) {
          EXPECT_GE(v, 0.0);
          EXPECT_LE(v, 1.0);
        }
      }
      EXPECT_LE(std::abs(balance), 1);
    }
  }
}

TEST(Dataset, SeedReproducesPixels) {
  const Dataset a = make_synthetic_dataset(64, 3);
  const Dataset b = make_synthetic_dataset(64, 3);
  const Dataset c = make_synthetic_dataset(64, 4);
  for (std::size_t i = 0; i < a.train.size(); ++i) {
    EXPECT_EQ(a.train[i].image, b.train[i].image);
    EXPECT_EQ(a.train[i].label, b.train[i].label);
  }
  EXPECT_NE(a.train[0].image, c.train[0].image);
}

TEST(Dataset, BarClassIsBrighter) {
  const Dataset d = make_synthetic_dataset(400, 9);
  double sum[2] = {0, 0};
  int n[2] = {0, 0};
  for (const Example& ex : d.train) {
    for (double v : ex.image.values()) sum[ex.label] += v;
    ++n[ex.label];
  }
  EXPECT_GT(sum[0] / n[0], sum[1] / n[1]);
}

TEST(Dataset, BinaryRoundTrip) {
  const Dataset d = make_synthetic_dataset(20, 2);
  const fs::path path = temp_file("examples.bin");
  write_examples(path, d.train);
  const auto back = read_examples(path);
  ASSERT_EQ(back.size(), d.train.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    EXPECT_EQ(back[i].image, d.train[i].image);
    EXPECT_EQ(back[i].label, d.train[i].label);
  }
  // Layout: rank, dims, count, then doubles and labels.
  EXPECT_EQ(fs::file_size(path), 4u * (1 + 3 + 1) + back.size() * (64 * 8 + 4));
}

TEST(Dataset, TruncatedFileRejected) {
  const Dataset d = make_synthetic_dataset(6, 2);
  const fs::path path = temp_file("truncated.bin");
  write_examples(path, d.train);
  fs::resize_file(path, fs::file_size(path) - 3);
  EXPECT_THROW(read_examples(path), ValidationError);
}

TEST(Dataset, TensorDump) {
  const fs::path path = temp_file("tensor.bin");
  Tensor t({2, 3}, std::vector<double>{1, 2, 3, 4, 5, 6});
  write_tensor(path, t);
  const auto back = read_examples(path);
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(back[0].image, t);
  EXPECT_EQ(back[0].label, -1);
}

}  // namespace
}  // namespace antibandit
