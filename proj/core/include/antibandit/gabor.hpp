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

#ifndef ANTIBANDIT_GABOR_HPP_
#define ANTIBANDIT_GABOR_HPP_

#include <array>

#include "antibandit/tensor.hpp"

namespace antibandit {

// Learnable parameters of one Gabor filter. `wavelength` is the period of the
// cosine carrier.
struct GaborParams {
  double sigma = 1.0;
  double gamma = 0.5;
  double wavelength = 3.0;
  double psi = 0.0;
  double theta = 0.0;

  void validate() const;  // throws ParameterError

  std::array<double, 5> to_array() const { return {sigma, gamma, wavelength, psi, theta}; }
  static GaborParams from_array(const std::array<double, 5>& v) {
    return {v[0], v[1], v[2], v[3], v[4]};
  }
};

struct GaborGradient {
  double sigma = 0.0;
  double gamma = 0.0;
  double wavelength = 0.0;
  double psi = 0.0;
  double theta = 0.0;
};

// size x size kernel; entry [r][c] sits at offsets x = c - size/2, y = r - size/2:
//   exp(-(x'^2 + gamma^2 y'^2) / (2 sigma^2)) * cos(2 pi x' / wavelength + psi)
//   x' =  x cos(theta) + y sin(theta)
//   y' = -x sin(theta) + y cos(theta)
// Throws ParameterError for non-positive sigma or wavelength, or an even size.
Tensor gabor_kernel(const GaborParams& params, int size);

// Chain rule from dL/dkernel (`upstream`, size x size) to the five parameters.
GaborGradient gabor_param_gradients(const GaborParams& params, int size, const Tensor& upstream);

}  // namespace antibandit

#endif  // ANTIBANDIT_GABOR_HPP_
