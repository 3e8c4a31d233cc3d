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

#include <benchmark/benchmark.h>

#include <vector>

#include "antibandit/ops.hpp"
#include "antibandit/rng.hpp"
#include "antibandit/search.hpp"
#include "antibandit/synthetic.hpp"

namespace {

using namespace antibandit;

Tensor random_input(std::size_t c, std::size_t hw, Rng& rng) {
  Tensor x({c, hw, hw});
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = rng.uniform(-1.0, 1.0);
  return x;
}

void BM_OpForward(benchmark::State& state) {
  const auto kind = *op_from_index(static_cast<int>(state.range(0)));
  Rng rng(1);
  const Tensor x = random_input(8, 16, rng);
  const std::vector<Tensor> params = init_op_params(kind, 8, rng);
  for (auto _ : state) benchmark::DoNotOptimize(op_forward(kind, x, params));
  state.SetLabel(std::string(op_name(kind)));
}
BENCHMARK(BM_OpForward)->DenseRange(0, 8);

void BM_OpBackward(benchmark::State& state) {
  const auto kind = *op_from_index(static_cast<int>(state.range(0)));
  Rng rng(2);
  const Tensor x = random_input(8, 16, rng);
  const Tensor up = random_input(8, 16, rng);
  const std::vector<Tensor> params = init_op_params(kind, 8, rng);
  for (auto _ : state) benchmark::DoNotOptimize(op_backward(kind, x, params, up));
  state.SetLabel(std::string(op_name(kind)));
}
BENCHMARK(BM_OpBackward)->DenseRange(0, 8);

void BM_SyntheticSearch(benchmark::State& state) {
  const SearchSpace space(static_cast<int>(state.range(0)), 4, full_catalog());
  const SyntheticSpec spec = generate_separable_spec(space, 0.2, 0.1, 3);
  const SyntheticEvaluator ev(spec);
  SearchConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(run_search(space, cfg, ev));
}
BENCHMARK(BM_SyntheticSearch)->Arg(1)->Arg(6)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
