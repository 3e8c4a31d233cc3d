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

// Independent reference implementations used as test oracles. Nothing here
// calls into the library's numeric kernels.
#ifndef ANTIBANDIT_TESTS_ORACLES_HPP_
#define ANTIBANDIT_TESTS_ORACLES_HPP_

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include "antibandit/attack.hpp"
#include "antibandit/tensor.hpp"

namespace oracle {

using antibandit::Tensor;

// Direct loop over output pixel, output channel, input channel and tap.
inline Tensor conv2d(const Tensor& x, const Tensor& w, int dilation) {
  const int cin = static_cast<int>(x.dim(0));
  const int h = static_cast<int>(x.dim(1));
  const int wd = static_cast<int>(x.dim(2));
  const int cout = static_cast<int>(w.dim(0));
  const int k = static_cast<int>(w.dim(2));
  const int reach = dilation * (k / 2);
  Tensor out({static_cast<std::size_t>(cout), x.dim(1), x.dim(2)});
  for (int o = 0; o < cout; ++o) {
    for (int r = 0; r < h; ++r) {
      for (int c = 0; c < wd; ++c) {
        double acc = 0.0;
        for (int i = 0; i < cin; ++i) {
          for (int a = 0; a < k; ++a) {
            for (int b = 0; b < k; ++b) {
              const int rr = r - reach + a * dilation;
              const int cc = c - reach + b * dilation;
              if (rr < 0 || rr >= h || cc < 0 || cc >= wd) continue;
              acc += w[((static_cast<std::size_t>(o) * cin + i) * k + a) * k + b] *
                     x.at(static_cast<std::size_t>(i), static_cast<std::size_t>(rr),
                          static_cast<std::size_t>(cc));
            }
          }
        }
        out.at(static_cast<std::size_t>(o), static_cast<std::size_t>(r),
               static_cast<std::size_t>(c)) = acc;
      }
    }
  }
  return out;
}

// Gabor kernel with the rotation done as a complex multiplication.
inline std::vector<std::vector<double>> gabor(double sigma, double gamma, double wavelength,
                                              double psi, double theta, int size) {
  std::vector<std::vector<double>> k(static_cast<std::size_t>(size),
                                     std::vector<double>(static_cast<std::size_t>(size)));
  const std::complex<double> rot = std::polar(1.0, -theta);
  const int half = size / 2;
  for (int r = 0; r < size; ++r) {
    for (int c = 0; c < size; ++c) {
      const std::complex<double> p = std::complex<double>(c - half, r - half) * rot;
      const double xp = p.real();
      const double yp = p.imag();
      k[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
          std::exp(-(xp * xp + gamma * gamma * yp * yp) / (2.0 * sigma * sigma)) *
          std::cos(2.0 * std::numbers::pi * xp / wavelength + psi);
    }
  }
  return k;
}

// z_p = (1/HW) sum_q <x_p, x_q> x_q, by explicit double loop over locations.
inline Tensor nonlocal_means(const Tensor& x, bool uniform = false) {
  const std::size_t ch = x.dim(0);
  const std::size_t h = x.dim(1);
  const std::size_t w = x.dim(2);
  Tensor z(x.shape());
  for (std::size_t pr = 0; pr < h; ++pr) {
    for (std::size_t pc = 0; pc < w; ++pc) {
      for (std::size_t qr = 0; qr < h; ++qr) {
        for (std::size_t qc = 0; qc < w; ++qc) {
          double f = 1.0;
          if (!uniform) {
            f = 0.0;
            for (std::size_t c = 0; c < ch; ++c) f += x.at(c, pr, pc) * x.at(c, qr, qc);
          }
          for (std::size_t c = 0; c < ch; ++c) z.at(c, pr, pc) += f * x.at(c, qr, qc);
        }
      }
      for (std::size_t c = 0; c < ch; ++c) z.at(c, pr, pc) /= static_cast<double>(h * w);
    }
  }
  return z;
}

// Central difference of f along every coordinate of `t` (restored after).
inline Tensor numeric_gradient(Tensor& t, const std::function<double()>& f, double h) {
  Tensor g(t.shape());
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double saved = t[i];
    t[i] = saved + h;
    const double up = f();
    t[i] = saved - h;
    const double down = f();
    t[i] = saved;
    g[i] = (up - down) / (2.0 * h);
  }
  return g;
}

// ||a - b|| / max(||a||, ||b||); 0 when both vanish.
inline double relative_error(const Tensor& a, const Tensor& b) {
  double diff = 0.0;
  double na = 0.0;
  double nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    diff += (a[i] - b[i]) * (a[i] - b[i]);
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  const double scale = std::sqrt(std::max(na, nb));
  return scale == 0.0 ? std::sqrt(diff) : std::sqrt(diff) / scale;
}

// Binary logistic model on flattened pixels: loss = log(1 + exp(-s (w.x + b))),
// s = +1 for label 1 and -1 for label 0. Convex in x.
class LogisticModel : public antibandit::LossModel {
 public:
  LogisticModel(std::vector<double> w, double b) : w_(std::move(w)), b_(b) {}

  double margin(const Tensor& x, int label) const {
    double z = b_;
    for (std::size_t i = 0; i < w_.size(); ++i) z += w_[i] * x[i];
    return (label == 1 ? 1.0 : -1.0) * z;
  }

  double loss(const Tensor& x, int label, Tensor* input_grad) const override {
    const double m = margin(x, label);
    if (input_grad) {
      *input_grad = Tensor(x.shape());
      const double s = label == 1 ? 1.0 : -1.0;
      const double sig = 1.0 / (1.0 + std::exp(m));
      for (std::size_t i = 0; i < w_.size(); ++i) (*input_grad)[i] = -s * sig * w_[i];
    }
    return m > 0 ? std::log1p(std::exp(-m)) : -m + std::log1p(std::exp(m));
  }

  const std::vector<double>& weights() const { return w_; }

 private:
  std::vector<double> w_;
  double b_;
};

inline Tensor random_tensor(std::vector<std::size_t> shape, std::mt19937_64& gen, double lo = -1.0,
                            double hi = 1.0) {
  Tensor t(std::move(shape));
  std::uniform_real_distribution<double> d(lo, hi);
  for (double& v : t.values()) v = d(gen);
  return t;
}

}  // namespace oracle

#endif  // ANTIBANDIT_TESTS_ORACLES_HPP_
