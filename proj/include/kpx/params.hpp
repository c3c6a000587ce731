#pragma once

// Generic helpers over parameter sets. A parameter set P exposes
//   template <class Self, class F> static void visit(Self& self, F&& f);
// calling f(name, matrix) for every tensor in a fixed declaration order.

#include <cmath>
#include <concepts>
#include <cstddef>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "kpx/linalg.hpp"

namespace kpx {

template <class P>
concept ParameterSet = requires(P& mut, const P& cref) {
  P::visit(mut, [](std::string_view, Matrix&) {});
  P::visit(cref, [](std::string_view, const Matrix&) {});
};

template <ParameterSet P>
std::vector<Matrix*> tensors(P& params) {
  std::vector<Matrix*> out;
  P::visit(params, [&](std::string_view, Matrix& m) { out.push_back(&m); });
  return out;
}

template <ParameterSet P>
std::vector<const Matrix*> tensors(const P& params) {
  std::vector<const Matrix*> out;
  P::visit(params, [&](std::string_view, const Matrix& m) { out.push_back(&m); });
  return out;
}

template <ParameterSet P>
P zeros_like(const P& params) {
  P out = params;
  P::visit(out, [](std::string_view, Matrix& m) { m.fill(0.0); });
  return out;
}

template <ParameterSet P>
std::size_t parameter_count(const P& params) {
  std::size_t n = 0;
  P::visit(params, [&](std::string_view, const Matrix& m) { n += m.size(); });
  return n;
}

template <ParameterSet P>
double global_norm(const P& params) {
  double sum = 0.0;
  P::visit(params, [&](std::string_view, const Matrix& m) {
    for (double v : m.values()) sum += v * v;
  });
  return std::sqrt(sum);
}

template <ParameterSet P>
bool all_finite(const P& params) {
  bool ok = true;
  P::visit(params, [&](std::string_view, const Matrix& m) {
    for (double v : m.values()) ok = ok && std::isfinite(v);
  });
  return ok;
}

// dst += scale * src
template <ParameterSet P>
void add_scaled(P& dst, const P& src, double scale) {
  const auto d = tensors(dst);
  const auto s = tensors(src);
  for (std::size_t i = 0; i < d.size(); ++i) {
    axpy(scale, s[i]->values(), d[i]->values());
  }
}

// Clips the global gradient norm to clip_norm (no clipping when clip_norm <= 0),
// then params -= learning_rate * grads. Returns the norm of the applied step.
template <ParameterSet P>
double sgd_step(P& params, const P& grads, double learning_rate, double clip_norm) {
  if (!(learning_rate > 0.0)) {
    throw std::invalid_argument("learning rate must be positive");
  }
  const double norm = global_norm(grads);
  double scale = 1.0;
  if (clip_norm > 0.0 && norm > clip_norm) {
    scale = clip_norm / norm;
  }
  add_scaled(params, grads, -learning_rate * scale);
  return learning_rate * scale * norm;
}

}  // namespace kpx
