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

#include "antibandit/gabor.hpp"

#include <cmath>
#include <numbers>

#include "antibandit/error.hpp"

namespace antibandit {
namespace {

void check_size(int size) {
  if (size < 1 || size % 2 == 0) throw ParameterError("gabor kernel size must be odd and >= 1");
}

}  // namespace

void GaborParams::validate() const {
  if (!(sigma > 0.0)) throw ParameterError("gabor sigma must be > 0");
  if (!(wavelength > 0.0)) throw ParameterError("gabor wavelength must be > 0");
}

Tensor gabor_kernel(const GaborParams& p, int size) {
  check_size(size);
  p.validate();
  const auto n = static_cast<std::size_t>(size);
  const int half = size / 2;
  const double ct = std::cos(p.theta);
  const double st = std::sin(p.theta);
  Tensor kernel({n, n});
  for (int r = 0; r < size; ++r) {
    for (int c = 0; c < size; ++c) {
      const double x = c - half;
      const double y = r - half;
      const double xr = x * ct + y * st;
      const double yr = -x * st + y * ct;
      const double envelope =
          std::exp(-(xr * xr + p.gamma * p.gamma * yr * yr) / (2.0 * p.sigma * p.sigma));
      kernel[static_cast<std::size_t>(r) * n + static_cast<std::size_t>(c)] =
          envelope * std::cos(2.0 * std::numbers::pi * xr / p.wavelength + p.psi);
    }
  }
  return kernel;
}

GaborGradient gabor_param_gradients(const GaborParams& p, int size, const Tensor& upstream) {
  check_size(size);
  p.validate();
  const auto n = static_cast<std::size_t>(size);
  require_shape(upstream, {n, n}, "gabor_param_gradients upstream");
  const int half = size / 2;
  const double ct = std::cos(p.theta);
  const double st = std::sin(p.theta);
  const double s2 = p.sigma * p.sigma;
  const double g2 = p.gamma * p.gamma;
  const double two_pi = 2.0 * std::numbers::pi;

  GaborGradient grad;
  for (int r = 0; r < size; ++r) {
    for (int c = 0; c < size; ++c) {
      const double u = upstream[static_cast<std::size_t>(r) * n + static_cast<std::size_t>(c)];
      if (u == 0.0) continue;
      const double x = c - half;
      const double y = r - half;
      const double xr = x * ct + y * st;
      const double yr = -x * st + y * ct;
      const double q = xr * xr + g2 * yr * yr;
      const double envelope = std::exp(-q / (2.0 * s2));
      const double phase = two_pi * xr / p.wavelength + p.psi;
      const double carrier = std::cos(phase);
      const double dcarrier = -std::sin(phase);
      // d(xr)/d(theta) = yr, d(yr)/d(theta) = -xr.
      const double d_env_sigma = envelope * q / (s2 * p.sigma);
      const double d_env_gamma = -envelope * p.gamma * yr * yr / s2;
      const double d_env_theta = -envelope * xr * yr * (1.0 - g2) / s2;
      const double d_phase_wavelength = -two_pi * xr / (p.wavelength * p.wavelength);
      const double d_phase_theta = two_pi * yr / p.wavelength;

      grad.sigma += u * d_env_sigma * carrier;
      grad.gamma += u * d_env_gamma * carrier;
      grad.wavelength += u * envelope * dcarrier * d_phase_wavelength;
      grad.psi += u * envelope * dcarrier;
      grad.theta += u * (d_env_theta * carrier + envelope * dcarrier * d_phase_theta);
    }
  }
  return grad;
}

}  // namespace antibandit
