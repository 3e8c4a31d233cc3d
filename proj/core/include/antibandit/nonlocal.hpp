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

#ifndef ANTIBANDIT_NONLOCAL_HPP_
#define ANTIBANDIT_NONLOCAL_HPP_

#include "antibandit/tensor.hpp"

namespace antibandit {

enum class NonlocalWeighting {
  kDotProduct,  // f(x_p, x_q) = <x_p, x_q>
  kUniform,     // f = 1; the result is the spatial mean everywhere
};

// Non-local mean over all spatial locations of a [C, H, W] map:
//   z_p = (1 / HW) * sum_q f(x_p, x_q) * x_q
// This is the bare denoising step; the residual 1x1 wrapper lives in the
// operation layer.
Tensor nonlocal_means(const Tensor& x,
                      NonlocalWeighting weighting = NonlocalWeighting::kDotProduct);

// dL/dx given dL/dz.
Tensor nonlocal_means_backward(const Tensor& x, const Tensor& upstream,
                               NonlocalWeighting weighting = NonlocalWeighting::kDotProduct);

}  // namespace antibandit

#endif  // ANTIBANDIT_NONLOCAL_HPP_
