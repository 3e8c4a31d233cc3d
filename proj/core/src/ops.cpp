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

#include "antibandit/ops.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "antibandit/error.hpp"
#include "antibandit/gabor.hpp"
#include "antibandit/nonlocal.hpp"

namespace antibandit {
namespace kernels {
namespace {

void require_map(const Tensor& x, const char* what) {
  if (x.rank() != 3) {
    throw ShapeError(std::string(what) + ": expected a [C, H, W] map, got " +
                     shape_string(x.shape()));
  }
}

}  // namespace

Tensor conv2d(const Tensor& x, const Tensor& w, int dilation) {
  require_map(x, "conv2d input");
  if (w.rank() != 4 || w.dim(1) != x.dim(0) || w.dim(2) != w.dim(3) || w.dim(2) % 2 == 0) {
    throw ShapeError("conv2d: weight " + shape_string(w.shape()) + " incompatible with input " +
                     shape_string(x.shape()));
  }
  const int cin = static_cast<int>(x.dim(0));
  const int height = static_cast<int>(x.dim(1));
  const int width = static_cast<int>(x.dim(2));
  const int cout = static_cast<int>(w.dim(0));
  const int k = static_cast<int>(w.dim(2));
  const int half = k / 2;
  Tensor out({static_cast<std::size_t>(cout), x.dim(1), x.dim(2)});
  for (int o = 0; o < cout; ++o) {
    for (int i = 0; i < cin; ++i) {
      for (int kh = 0; kh < k; ++kh) {
        for (int kw = 0; kw < k; ++kw) {
          const double wv = w[((static_cast<std::size_t>(o) * cin + i) * k + kh) * k + kw];
          const int dh = dilation * (kh - half);
          const int dw = dilation * (kw - half);
          for (int h = 0; h < height; ++h) {
            const int sh = h + dh;
            if (sh < 0 || sh >= height) continue;
            for (int ww = 0; ww < width; ++ww) {
              const int sw = ww + dw;
              if (sw < 0 || sw >= width) continue;
              out.at(o, h, ww) += wv * x.at(i, sh, sw);
            }
          }
        }
      }
    }
  }
  return out;
}

void conv2d_backward(const Tensor& x, const Tensor& w, int dilation, const Tensor& upstream,
                     Tensor* grad_x, Tensor* grad_w) {
  const int cin = static_cast<int>(x.dim(0));
  const int height = static_cast<int>(x.dim(1));
  const int width = static_cast<int>(x.dim(2));
  const int cout = static_cast<int>(w.dim(0));
  const int k = static_cast<int>(w.dim(2));
  const int half = k / 2;
  require_shape(upstream, {w.dim(0), x.dim(1), x.dim(2)}, "conv2d_backward upstream");
  if (grad_x) *grad_x = Tensor::zeros_like(x);
  if (grad_w) *grad_w = Tensor::zeros_like(w);
  for (int o = 0; o < cout; ++o) {
    for (int i = 0; i < cin; ++i) {
      for (int kh = 0; kh < k; ++kh) {
        for (int kw = 0; kw < k; ++kw) {
          const std::size_t widx = ((static_cast<std::size_t>(o) * cin + i) * k + kh) * k + kw;
          const double wv = w[widx];
          const int dh = dilation * (kh - half);
          const int dw = dilation * (kw - half);
          double gw = 0.0;
          for (int h = 0; h < height; ++h) {
            const int sh = h + dh;
            if (sh < 0 || sh >= height) continue;
            for (int ww = 0; ww < width; ++ww) {
              const int sw = ww + dw;
              if (sw < 0 || sw >= width) continue;
              const double g = upstream.at(o, h, ww);
              gw += g * x.at(i, sh, sw);
              if (grad_x) grad_x->at(i, sh, sw) += wv * g;
            }
          }
          if (grad_w) (*grad_w)[widx] += gw;
        }
      }
    }
  }
}

Tensor depthwise_conv2d(const Tensor& x, const Tensor& w) {
  require_map(x, "depthwise_conv2d input");
  if (w.rank() != 3 || w.dim(0) != x.dim(0) || w.dim(1) != w.dim(2) || w.dim(1) % 2 == 0) {
    throw ShapeError("depthwise_conv2d: weight " + shape_string(w.shape()) +
                     " incompatible with input " + shape_string(x.shape()));
  }
  const int channels = static_cast<int>(x.dim(0));
  const int height = static_cast<int>(x.dim(1));
  const int width = static_cast<int>(x.dim(2));
  const int k = static_cast<int>(w.dim(1));
  const int half = k / 2;
  Tensor out = Tensor::zeros_like(x);
  for (int c = 0; c < channels; ++c) {
    for (int kh = 0; kh < k; ++kh) {
      for (int kw = 0; kw < k; ++kw) {
        const double wv = w[(static_cast<std::size_t>(c) * k + kh) * k + kw];
        for (int h = 0; h < height; ++h) {
          const int sh = h + kh - half;
          if (sh < 0 || sh >= height) continue;
          for (int ww = 0; ww < width; ++ww) {
            const int sw = ww + kw - half;
            if (sw < 0 || sw >= width) continue;
            out.at(c, h, ww) += wv * x.at(c, sh, sw);
          }
        }
      }
    }
  }
  return out;
}

void depthwise_conv2d_backward(const Tensor& x, const Tensor& w, const Tensor& upstream,
                               Tensor* grad_x, Tensor* grad_w) {
  require_shape(upstream, x.shape(), "depthwise_conv2d_backward upstream");
  const int channels = static_cast<int>(x.dim(0));
  const int height = static_cast<int>(x.dim(1));
  const int width = static_cast<int>(x.dim(2));
  const int k = static_cast<int>(w.dim(1));
  const int half = k / 2;
  if (grad_x) *grad_x = Tensor::zeros_like(x);
  if (grad_w) *grad_w = Tensor::zeros_like(w);
  for (int c = 0; c < channels; ++c) {
    for (int kh = 0; kh < k; ++kh) {
      for (int kw = 0; kw < k; ++kw) {
        const std::size_t widx = (static_cast<std::size_t>(c) * k + kh) * k + kw;
        const double wv = w[widx];
        double gw = 0.0;
        for (int h = 0; h < height; ++h) {
          const int sh = h + kh - half;
          if (sh < 0 || sh >= height) continue;
          for (int ww = 0; ww < width; ++ww) {
            const int sw = ww + kw - half;
            if (sw < 0 || sw >= width) continue;
            const double g = upstream.at(c, h, ww);
            gw += g * x.at(c, sh, sw);
            if (grad_x) grad_x->at(c, sh, sw) += wv * g;
          }
        }
        if (grad_w) (*grad_w)[widx] += gw;
      }
    }
  }
}

Tensor pointwise(const Tensor& x, const Tensor& w) {
  require_map(x, "pointwise input");
  if (w.rank() != 2 || w.dim(1) != x.dim(0)) {
    throw ShapeError("pointwise: weight " + shape_string(w.shape()) +
                     " incompatible with input " + shape_string(x.shape()));
  }
  const std::size_t cout = w.dim(0);
  const std::size_t cin = w.dim(1);
  const std::size_t l = x.dim(1) * x.dim(2);
  Tensor out({cout, x.dim(1), x.dim(2)});
  const auto xd = x.data();
  auto od = out.data();
  for (std::size_t o = 0; o < cout; ++o) {
    for (std::size_t i = 0; i < cin; ++i) {
      const double wv = w[o * cin + i];
      for (std::size_t p = 0; p < l; ++p) od[o * l + p] += wv * xd[i * l + p];
    }
  }
  return out;
}

void pointwise_backward(const Tensor& x, const Tensor& w, const Tensor& upstream, Tensor* grad_x,
                        Tensor* grad_w) {
  const std::size_t cout = w.dim(0);
  const std::size_t cin = w.dim(1);
  const std::size_t l = x.dim(1) * x.dim(2);
  require_shape(upstream, {cout, x.dim(1), x.dim(2)}, "pointwise_backward upstream");
  if (grad_x) *grad_x = Tensor::zeros_like(x);
  if (grad_w) *grad_w = Tensor::zeros_like(w);
  const auto xd = x.data();
  const auto gd = upstream.data();
  for (std::size_t o = 0; o < cout; ++o) {
    for (std::size_t i = 0; i < cin; ++i) {
      const double wv = w[o * cin + i];
      double gw = 0.0;
      for (std::size_t p = 0; p < l; ++p) {
        gw += gd[o * l + p] * xd[i * l + p];
        if (grad_x) (*grad_x)[i * l + p] += wv * gd[o * l + p];
      }
      if (grad_w) (*grad_w)[o * cin + i] = gw;
    }
  }
}

Tensor relu(const Tensor& x) {
  Tensor out = x;
  for (double& v : out.values()) v = v > 0.0 ? v : 0.0;
  return out;
}

Tensor relu_backward(const Tensor& x, const Tensor& upstream) {
  Tensor out = upstream;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (!(x[i] > 0.0)) out[i] = 0.0;
  }
  return out;
}

namespace detail {

// Flat index of the first maximal element of the 3x3 window centred at (h, w).
std::size_t window_argmax(const Tensor& x, int c, int h, int w) {
  const int height = static_cast<int>(x.dim(1));
  const int width = static_cast<int>(x.dim(2));
  double best = -std::numeric_limits<double>::infinity();
  std::size_t arg = 0;
  for (int dh = -1; dh <= 1; ++dh) {
    const int sh = h + dh;
    if (sh < 0 || sh >= height) continue;
    for (int dw = -1; dw <= 1; ++dw) {
      const int sw = w + dw;
      if (sw < 0 || sw >= width) continue;
      const double v = x.at(c, sh, sw);
      if (v > best) {
        best = v;
        arg = (static_cast<std::size_t>(c) * height + sh) * width + sw;
      }
    }
  }
  return arg;
}

}  // namespace detail

using detail::window_argmax;

Tensor max_pool3x3(const Tensor& x) {
  require_map(x, "max_pool3x3 input");
  Tensor out = Tensor::zeros_like(x);
  for (int c = 0; c < static_cast<int>(x.dim(0)); ++c) {
    for (int h = 0; h < static_cast<int>(x.dim(1)); ++h) {
      for (int w = 0; w < static_cast<int>(x.dim(2)); ++w) {
        out.at(c, h, w) = x[window_argmax(x, c, h, w)];
      }
    }
  }
  return out;
}

Tensor max_pool3x3_backward(const Tensor& x, const Tensor& upstream) {
  require_shape(upstream, x.shape(), "max_pool3x3_backward upstream");
  Tensor grad = Tensor::zeros_like(x);
  for (int c = 0; c < static_cast<int>(x.dim(0)); ++c) {
    for (int h = 0; h < static_cast<int>(x.dim(1)); ++h) {
      for (int w = 0; w < static_cast<int>(x.dim(2)); ++w) {
        grad[window_argmax(x, c, h, w)] += upstream.at(c, h, w);
      }
    }
  }
  return grad;
}

Tensor avg_pool3x3(const Tensor& x) {
  require_map(x, "avg_pool3x3 input");
  const int height = static_cast<int>(x.dim(1));
  const int width = static_cast<int>(x.dim(2));
  Tensor out = Tensor::zeros_like(x);
  for (int c = 0; c < static_cast<int>(x.dim(0)); ++c) {
    for (int h = 0; h < height; ++h) {
      for (int w = 0; w < width; ++w) {
        double sum = 0.0;
        for (int dh = -1; dh <= 1; ++dh) {
          const int sh = h + dh;
          if (sh < 0 || sh >= height) continue;
          for (int dw = -1; dw <= 1; ++dw) {
            const int sw = w + dw;
            if (sw < 0 || sw >= width) continue;
            sum += x.at(c, sh, sw);
          }
        }
        out.at(c, h, w) = sum / 9.0;
      }
    }
  }
  return out;
}

Tensor avg_pool3x3_backward(const Tensor& x, const Tensor& upstream) {
  require_shape(upstream, x.shape(), "avg_pool3x3_backward upstream");
  // The window operator is symmetric, so its adjoint is itself.
  return avg_pool3x3(upstream);
}

}  // namespace kernels

namespace {

int kernel_size(OperationKind kind) {
  switch (kind) {
    case OperationKind::kDilConv3x3:
    case OperationKind::kSepConv3x3:
    case OperationKind::kGabor3x3:
      return 3;
    case OperationKind::kDilConv5x5:
    case OperationKind::kSepConv5x5:
      return 5;
    default:
      return 0;
  }
}

constexpr int kDilation = 2;

void check_params(OperationKind kind, const Tensor& input, std::span<const Tensor> params) {
  if (input.rank() != 3) {
    throw ShapeError(std::string(op_name(kind)) + ": expected a [C, H, W] input, got " +
                     shape_string(input.shape()));
  }
  const auto shapes = op_param_shapes(kind, input.dim(0));
  if (params.size() != shapes.size()) {
    throw ShapeError(std::string(op_name(kind)) + ": expected " + std::to_string(shapes.size()) +
                     " parameter tensors, got " + std::to_string(params.size()));
  }
  for (std::size_t i = 0; i < shapes.size(); ++i) {
    require_shape(params[i], shapes[i], op_name(kind).data());
  }
}

std::uint32_t max_pool_pattern_entry(const Tensor& x, int c, int h, int w) {
  return static_cast<std::uint32_t>(kernels::detail::window_argmax(x, c, h, w));
}

GaborParams gabor_row(const Tensor& g, std::size_t c) {
  return {g[c * 5 + 0], g[c * 5 + 1], g[c * 5 + 2], g[c * 5 + 3], g[c * 5 + 4]};
}

// Stack the per-channel Gabor kernels into a [C, 3, 3] depthwise weight.
Tensor gabor_bank(const Tensor& g) {
  const std::size_t channels = g.dim(0);
  Tensor bank({channels, 3, 3});
  for (std::size_t c = 0; c < channels; ++c) {
    const Tensor k = gabor_kernel(gabor_row(g, c), 3);
    for (std::size_t i = 0; i < 9; ++i) bank[c * 9 + i] = k[i];
  }
  return bank;
}

}  // namespace

void append_activation_pattern(OperationKind kind, const Tensor& input,
                               std::vector<std::uint32_t>& pattern) {
  switch (kind) {
    case OperationKind::kMaxPool3x3:
      for (int c = 0; c < static_cast<int>(input.dim(0)); ++c) {
        for (int h = 0; h < static_cast<int>(input.dim(1)); ++h) {
          for (int w = 0; w < static_cast<int>(input.dim(2)); ++w) {
            pattern.push_back(max_pool_pattern_entry(input, c, h, w));
          }
        }
      }
      break;
    case OperationKind::kDilConv3x3:
    case OperationKind::kDilConv5x5:
    case OperationKind::kSepConv3x3:
    case OperationKind::kSepConv5x5:
      for (double v : input.values()) pattern.push_back(v > 0.0 ? 1u : 0u);
      break;
    default:
      break;
  }
}

std::vector<std::vector<std::size_t>> op_param_shapes(OperationKind kind, std::size_t channels) {
  const auto k = static_cast<std::size_t>(kernel_size(kind));
  switch (kind) {
    case OperationKind::kDilConv3x3:
    case OperationKind::kDilConv5x5:
      return {{channels, channels, k, k}};
    case OperationKind::kSepConv3x3:
    case OperationKind::kSepConv5x5:
      return {{channels, k, k}, {channels, channels}};
    case OperationKind::kGabor3x3:
      return {{channels, 5}};
    case OperationKind::kDenoise:
      return {{channels, channels}};
    default:
      return {};
  }
}

std::vector<Tensor> init_op_params(OperationKind kind, std::size_t channels, Rng& rng) {
  std::vector<Tensor> params;
  for (const auto& shape : op_param_shapes(kind, channels)) params.emplace_back(shape);
  const double c = static_cast<double>(channels);
  const double k = kernel_size(kind);
  switch (kind) {
    case OperationKind::kDilConv3x3:
    case OperationKind::kDilConv5x5: {
      const double scale = std::sqrt(2.0 / (c * k * k));
      for (double& v : params[0].values()) v = scale * rng.normal();
      break;
    }
    case OperationKind::kSepConv3x3:
    case OperationKind::kSepConv5x5: {
      const double dw_scale = std::sqrt(2.0 / (k * k));
      for (double& v : params[0].values()) v = dw_scale * rng.normal();
      const double pw_scale = std::sqrt(1.0 / c);
      for (double& v : params[1].values()) v = pw_scale * rng.normal();
      break;
    }
    case OperationKind::kGabor3x3: {
      // Orientations spread over [0, pi); the rest starts from a smooth
      // 3x3-scale filter.
      for (std::size_t ch = 0; ch < channels; ++ch) {
        const GaborParams p{1.0, 0.5, 2.5 + 0.5 * rng.uniform(), 0.0,
                            std::numbers::pi * static_cast<double>(ch) / c};
        const auto row = p.to_array();
        for (std::size_t i = 0; i < 5; ++i) params[0][ch * 5 + i] = row[i];
      }
      break;
    }
    case OperationKind::kDenoise: {
      const double scale = 0.1 / std::sqrt(c);
      for (double& v : params[0].values()) v = scale * rng.normal();
      break;
    }
    default:
      break;
  }
  return params;
}

Tensor op_forward(OperationKind kind, const Tensor& input, std::span<const Tensor> params) {
  check_params(kind, input, params);
  using namespace kernels;
  switch (kind) {
    case OperationKind::kMaxPool3x3:
      return max_pool3x3(input);
    case OperationKind::kAvgPool3x3:
      return avg_pool3x3(input);
    case OperationKind::kSkipConnect:
      return input;
    case OperationKind::kDilConv3x3:
    case OperationKind::kDilConv5x5:
      return conv2d(relu(input), params[0], kDilation);
    case OperationKind::kSepConv3x3:
    case OperationKind::kSepConv5x5:
      return pointwise(depthwise_conv2d(relu(input), params[0]), params[1]);
    case OperationKind::kGabor3x3:
      return depthwise_conv2d(input, gabor_bank(params[0]));
    case OperationKind::kDenoise:
      return input + pointwise(nonlocal_means(input), params[0]);
  }
  throw ShapeError("op_forward: unknown operation kind");
}

OpGradients op_backward(OperationKind kind, const Tensor& input, std::span<const Tensor> params,
                        const Tensor& upstream) {
  check_params(kind, input, params);
  require_shape(upstream, input.shape(), "op_backward upstream");
  using namespace kernels;
  OpGradients grads;
  switch (kind) {
    case OperationKind::kMaxPool3x3:
      grads.input = max_pool3x3_backward(input, upstream);
      break;
    case OperationKind::kAvgPool3x3:
      grads.input = avg_pool3x3_backward(input, upstream);
      break;
    case OperationKind::kSkipConnect:
      grads.input = upstream;
      break;
    case OperationKind::kDilConv3x3:
    case OperationKind::kDilConv5x5: {
      const Tensor activated = relu(input);
      Tensor g_act;
      grads.params.emplace_back();
      conv2d_backward(activated, params[0], kDilation, upstream, &g_act, &grads.params[0]);
      grads.input = relu_backward(input, g_act);
      break;
    }
    case OperationKind::kSepConv3x3:
    case OperationKind::kSepConv5x5: {
      const Tensor activated = relu(input);
      const Tensor depth = depthwise_conv2d(activated, params[0]);
      Tensor g_depth;
      Tensor g_act;
      grads.params.resize(2);
      pointwise_backward(depth, params[1], upstream, &g_depth, &grads.params[1]);
      depthwise_conv2d_backward(activated, params[0], g_depth, &g_act, &grads.params[0]);
      grads.input = relu_backward(input, g_act);
      break;
    }
    case OperationKind::kGabor3x3: {
      const Tensor bank = gabor_bank(params[0]);
      Tensor g_bank;
      depthwise_conv2d_backward(input, bank, upstream, &grads.input, &g_bank);
      Tensor g_params = Tensor::zeros_like(params[0]);
      for (std::size_t c = 0; c < input.dim(0); ++c) {
        Tensor upstream_kernel({3, 3});
        for (std::size_t i = 0; i < 9; ++i) upstream_kernel[i] = g_bank[c * 9 + i];
        const GaborGradient g = gabor_param_gradients(gabor_row(params[0], c), 3, upstream_kernel);
        g_params[c * 5 + 0] = g.sigma;
        g_params[c * 5 + 1] = g.gamma;
        g_params[c * 5 + 2] = g.wavelength;
        g_params[c * 5 + 3] = g.psi;
        g_params[c * 5 + 4] = g.theta;
      }
      grads.params.push_back(std::move(g_params));
      break;
    }
    case OperationKind::kDenoise: {
      const Tensor z = nonlocal_means(input);
      Tensor g_z;
      grads.params.emplace_back();
      pointwise_backward(z, params[0], upstream, &g_z, &grads.params[0]);
      grads.input = upstream + nonlocal_means_backward(input, g_z);
      break;
    }
  }
  return grads;
}

}  // namespace antibandit
