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

#ifndef ANTIBANDIT_OPS_HPP_
#define ANTIBANDIT_OPS_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "antibandit/operation.hpp"
#include "antibandit/rng.hpp"
#include "antibandit/tensor.hpp"

namespace antibandit {

// Every operation maps [C, H, W] to [C, H, W] with stride 1 and zero padding.
//
// Parameter layout per kind (C = channels):
//   max/avg pool, skip     -> none
//   dil_conv kxk (rate 2)  -> {W[C, C, k, k]}          ReLU then conv
//   sep_conv kxk           -> {D[C, k, k], P[C, C]}    ReLU, depthwise, pointwise
//   gabor_3x3              -> {G[C, 5]}                depthwise Gabor filter; row =
//                                                      (sigma, gamma, wavelength, psi, theta)
//   denoise                -> {W[C, C]}                x + W * nonlocal_means(x)

std::vector<std::vector<std::size_t>> op_param_shapes(OperationKind kind, std::size_t channels);

std::vector<Tensor> init_op_params(OperationKind kind, std::size_t channels, Rng& rng);

// Throws ShapeError on a malformed input or parameter list.
Tensor op_forward(OperationKind kind, const Tensor& input, std::span<const Tensor> params);

struct OpGradients {
  Tensor input;
  std::vector<Tensor> params;
};

// Exact reverse-mode derivatives of op_forward. Max pooling routes each
// window's gradient to its first maximal element.
OpGradients op_backward(OperationKind kind, const Tensor& input, std::span<const Tensor> params,
                        const Tensor& upstream);

// Branch decisions taken by op_forward on `input` (ReLU signs, max-pool
// argmax positions). Inputs with equal patterns lie in the same smooth piece
// of the operation.
void append_activation_pattern(OperationKind kind, const Tensor& input,
                               std::vector<std::uint32_t>& pattern);

// Primitive kernels, shared with the network builder.
namespace kernels {

// Same-size convolution: out[o] = sum_i w[o, i] (*) x[i] sampled at
// `dilation` spacing, zero padded.
Tensor conv2d(const Tensor& x, const Tensor& w, int dilation);
void conv2d_backward(const Tensor& x, const Tensor& w, int dilation, const Tensor& upstream,
                     Tensor* grad_x, Tensor* grad_w);

Tensor depthwise_conv2d(const Tensor& x, const Tensor& w);
void depthwise_conv2d_backward(const Tensor& x, const Tensor& w, const Tensor& upstream,
                               Tensor* grad_x, Tensor* grad_w);

// out[o] = sum_i w[o, i] x[i]; w is [Cout, Cin].
Tensor pointwise(const Tensor& x, const Tensor& w);
void pointwise_backward(const Tensor& x, const Tensor& w, const Tensor& upstream, Tensor* grad_x,
                        Tensor* grad_w);

Tensor relu(const Tensor& x);
Tensor relu_backward(const Tensor& x, const Tensor& upstream);

Tensor max_pool3x3(const Tensor& x);
Tensor max_pool3x3_backward(const Tensor& x, const Tensor& upstream);
// Divides by 9 everywhere, so border windows are attenuated by the zero padding.
Tensor avg_pool3x3(const Tensor& x);
Tensor avg_pool3x3_backward(const Tensor& x, const Tensor& upstream);

}  // namespace kernels
}  // namespace antibandit

#endif  // ANTIBANDIT_OPS_HPP_
