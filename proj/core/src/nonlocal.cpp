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

#include "antibandit/nonlocal.hpp"

#include "antibandit/error.hpp"

namespace antibandit {
namespace {

void check_input(const Tensor& x) {
  if (x.rank() != 3 || x.dim(1) * x.dim(2) == 0) {
    throw ShapeError("nonlocal_means expects a non-empty [C, H, W] map, got " +
                     shape_string(x.shape()));
  }
}

// Channel Gram matrix S = sum_q x_q x_q^T, C x C row-major.
std::vector<double> gram(const Tensor& x) {
  const std::size_t c = x.dim(0);
  const std::size_t l = x.dim(1) * x.dim(2);
  std::vector<double> s(c * c, 0.0);
  const auto d = x.data();
  for (std::size_t a = 0; a < c; ++a) {
    for (std::size_t b = a; b < c; ++b) {
      double acc = 0.0;
      for (std::size_t q = 0; q < l; ++q) acc += d[a * l + q] * d[b * l + q];
      s[a * c + b] = acc;
      s[b * c + a] = acc;
    }
  }
  return s;
}

}  // namespace

Tensor nonlocal_means(const Tensor& x, NonlocalWeighting weighting) {
  check_input(x);
  const std::size_t c = x.dim(0);
  const std::size_t l = x.dim(1) * x.dim(2);
  const double inv_count = 1.0 / static_cast<double>(l);
  const auto d = x.data();
  Tensor z = Tensor::zeros_like(x);
  auto out = z.data();

  if (weighting == NonlocalWeighting::kUniform) {
    for (std::size_t ch = 0; ch < c; ++ch) {
      double sum = 0.0;
      for (std::size_t q = 0; q < l; ++q) sum += d[ch * l + q];
      for (std::size_t p = 0; p < l; ++p) out[ch * l + p] = sum * inv_count;
    }
    return z;
  }

  // With dot-product weights z_p = S x_p / L, which avoids the L x L
  // affinity matrix.
  const auto s = gram(x);
  for (std::size_t a = 0; a < c; ++a) {
    for (std::size_t p = 0; p < l; ++p) {
      double acc = 0.0;
      for (std::size_t b = 0; b < c; ++b) acc += s[a * c + b] * d[b * l + p];
      out[a * l + p] = acc * inv_count;
    }
  }
  return z;
}

Tensor nonlocal_means_backward(const Tensor& x, const Tensor& upstream,
                               NonlocalWeighting weighting) {
  check_input(x);
  require_shape(upstream, x.shape(), "nonlocal_means_backward upstream");
  const std::size_t c = x.dim(0);
  const std::size_t l = x.dim(1) * x.dim(2);
  const double inv_count = 1.0 / static_cast<double>(l);
  const auto d = x.data();
  const auto g = upstream.data();
  Tensor grad = Tensor::zeros_like(x);
  auto out = grad.data();

  if (weighting == NonlocalWeighting::kUniform) {
    for (std::size_t ch = 0; ch < c; ++ch) {
      double sum = 0.0;
      for (std::size_t p = 0; p < l; ++p) sum += g[ch * l + p];
      for (std::size_t q = 0; q < l; ++q) out[ch * l + q] = sum * inv_count;
    }
    return grad;
  }

  // z = S X / L with S = X X^T (channels x locations layout):
  //   dX = (S G + (X G^T + G X^T) X) / L
  const auto s = gram(x);
  std::vector<double> m(c * c, 0.0);  // X G^T + G X^T
  for (std::size_t a = 0; a < c; ++a) {
    for (std::size_t b = 0; b < c; ++b) {
      double acc = 0.0;
      for (std::size_t q = 0; q < l; ++q) acc += d[a * l + q] * g[b * l + q];
      m[a * c + b] += acc;
      m[b * c + a] += acc;
    }
  }
  for (std::size_t a = 0; a < c; ++a) {
    for (std::size_t q = 0; q < l; ++q) {
      double acc = 0.0;
      for (std::size_t b = 0; b < c; ++b) {
        acc += s[a * c + b] * g[b * l + q] + m[a * c + b] * d[b * l + q];
      }
      out[a * l + q] = acc * inv_count;
    }
  }
  return grad;
}

}  // namespace antibandit
