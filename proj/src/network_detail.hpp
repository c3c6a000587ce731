#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>

#include "kpx/linalg.hpp"
#include "kpx/rng.hpp"

namespace kpx::detail {

inline void fill_uniform(Matrix& m, Rng& rng, double range) {
  for (double& v : m.values()) v = rng.uniform(-range, range);
}

inline void copy_bias(const Matrix& bias, std::span<double> out) {
  std::copy(bias.values().begin(), bias.values().end(), out.begin());
}

inline void tanh_into(std::span<const double> in, std::span<double> out) {
  for (std::size_t i = 0; i < in.size(); ++i) out[i] = std::tanh(in[i]);
}

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// da = dh * (1 - h^2)
inline void tanh_backward(std::span<const double> h, std::span<const double> dh,
                          std::span<double> da) {
  for (std::size_t i = 0; i < h.size(); ++i) da[i] = dh[i] * (1.0 - h[i] * h[i]);
}

inline void check_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("alpha must lie in [0, 1]");
  }
}

}  // namespace kpx::detail
