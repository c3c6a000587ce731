#include "kpx/jrnn.hpp"

#include <stdexcept>
#include <string>
#include <vector>

#include "kpx/params.hpp"
#include "kpx/rng.hpp"
#include "network_detail.hpp"

namespace kpx {

JrnnParams init_jrnn(std::size_t input_dim, std::size_t hidden1, std::size_t hidden2,
                     std::size_t classes, std::uint64_t seed) {
  if (input_dim == 0 || hidden1 == 0 || hidden2 == 0 || classes == 0) {
    throw std::invalid_argument("network dimensions must be positive");
  }
  JrnnParams p{Matrix(hidden1, input_dim), Matrix(hidden1, hidden1), Matrix(hidden1, 1),
               Matrix(kImportanceClasses, hidden1), Matrix(kImportanceClasses, 1),
               Matrix(hidden2, hidden1), Matrix(hidden2, hidden2), Matrix(hidden2, 1),
               Matrix(classes, hidden2), Matrix(classes, 1)};
  Rng rng(seed);
  for (Matrix* m : {&p.in_h1, &p.h1_h1, &p.h1_y1, &p.h1_h2, &p.h2_h2, &p.h2_y2}) {
    detail::fill_uniform(*m, rng, kInitRange);
  }
  return p;
}

JrnnCache forward(const JrnnParams& p, const Matrix& inputs) {
  if (inputs.cols() != p.input_dim()) {
    throw std::invalid_argument("input width " + std::to_string(inputs.cols()) +
                                " does not match network input " + std::to_string(p.input_dim()));
  }
  const std::size_t steps = inputs.rows();
  JrnnCache c{Matrix(steps, p.hidden1()), Matrix(steps, p.hidden1()),
              Matrix(steps, p.hidden2()), Matrix(steps, p.hidden2()),
              Matrix(steps, kImportanceClasses), Matrix(steps, p.classes())};
  std::vector<double> logits1(kImportanceClasses);
  std::vector<double> logits2(p.classes());

  for (std::size_t t = 0; t < steps; ++t) {
    auto a1 = c.pre_h1.row(t);
    detail::copy_bias(p.b_h1, a1);
    multiply_add(p.in_h1, inputs.row(t), a1);
    if (t > 0) multiply_add(p.h1_h1, c.h1.row(t - 1), a1);
    detail::tanh_into(a1, c.h1.row(t));

    auto a2 = c.pre_h2.row(t);
    detail::copy_bias(p.b_h2, a2);
    multiply_add(p.h1_h2, c.h1.row(t), a2);
    if (t > 0) multiply_add(p.h2_h2, c.h2.row(t - 1), a2);
    detail::tanh_into(a2, c.h2.row(t));

    detail::copy_bias(p.b_y1, logits1);
    multiply_add(p.h1_y1, c.h1.row(t), logits1);
    softmax(logits1, c.y1.row(t));

    detail::copy_bias(p.b_y2, logits2);
    multiply_add(p.h2_y2, c.h2.row(t), logits2);
    softmax(logits2, c.y2.row(t));
  }
  return c;
}

LossBreakdown loss_joint(const JrnnCache& cache, std::span<const Label> importance,
                         std::span<const Label> tags, double alpha, LossKind kind) {
  detail::check_alpha(alpha);
  const std::size_t steps = cache.length();
  if (importance.size() != steps || tags.size() != steps) {
    throw std::invalid_argument("target length does not match sequence length");
  }
  LossBreakdown out;
  if (steps == 0) return out;
  for (std::size_t t = 0; t < steps; ++t) {
    out.importance += distance(cache.y1.row(t), importance[t], kind);
    out.tagging += distance(cache.y2.row(t), tags[t], kind);
  }
  out.importance /= static_cast<double>(steps);
  out.tagging /= static_cast<double>(steps);
  out.total = alpha * out.importance + (1.0 - alpha) * out.tagging;
  return out;
}

JrnnParams backward(const JrnnParams& p, const Matrix& inputs, const JrnnCache& c,
                    std::span<const Label> importance, std::span<const Label> tags, double alpha,
                    LossKind kind) {
  detail::check_alpha(alpha);
  const std::size_t steps = c.length();
  if (inputs.rows() != steps || inputs.cols() != p.input_dim()) {
    throw std::invalid_argument("inputs do not match the forward cache");
  }
  if (importance.size() != steps || tags.size() != steps) {
    throw std::invalid_argument("target length does not match sequence length");
  }
  JrnnParams g = zeros_like(p);
  if (steps == 0) return g;

  const double w1 = alpha / static_cast<double>(steps);
  const double w2 = (1.0 - alpha) / static_cast<double>(steps);
  std::vector<double> dz1(kImportanceClasses), dz2(p.classes());
  std::vector<double> dh1(p.hidden1()), dh2(p.hidden2());
  std::vector<double> carry1(p.hidden1(), 0.0), carry2(p.hidden2(), 0.0);
  std::vector<double> da1(p.hidden1()), da2(p.hidden2());

  for (std::size_t t = steps; t-- > 0;) {
    std::fill(dz1.begin(), dz1.end(), 0.0);
    std::fill(dz2.begin(), dz2.end(), 0.0);
    if (w1 != 0.0) add_distance_gradient(c.y1.row(t), importance[t], kind, w1, dz1);
    if (w2 != 0.0) add_distance_gradient(c.y2.row(t), tags[t], kind, w2, dz2);

    // layer-2 output and recurrence
    outer_add(g.h2_y2, 1.0, dz2, c.h2.row(t));
    axpy(1.0, dz2, g.b_y2.values());
    dh2 = carry2;
    multiply_transposed_add(p.h2_y2, dz2, dh2);
    detail::tanh_backward(c.h2.row(t), dh2, da2);
    outer_add(g.h1_h2, 1.0, da2, c.h1.row(t));
    if (t > 0) outer_add(g.h2_h2, 1.0, da2, c.h2.row(t - 1));
    axpy(1.0, da2, g.b_h2.values());
    std::fill(carry2.begin(), carry2.end(), 0.0);
    multiply_transposed_add(p.h2_h2, da2, carry2);

    // layer-1 output, the layer-2 path into h1, and recurrence
    outer_add(g.h1_y1, 1.0, dz1, c.h1.row(t));
    axpy(1.0, dz1, g.b_y1.values());
    dh1 = carry1;
    multiply_transposed_add(p.h1_y1, dz1, dh1);
    multiply_transposed_add(p.h1_h2, da2, dh1);
    detail::tanh_backward(c.h1.row(t), dh1, da1);
    outer_add(g.in_h1, 1.0, da1, inputs.row(t));
    if (t > 0) outer_add(g.h1_h1, 1.0, da1, c.h1.row(t - 1));
    axpy(1.0, da1, g.b_h1.values());
    std::fill(carry1.begin(), carry1.end(), 0.0);
    multiply_transposed_add(p.h1_h1, da1, carry1);
  }
  return g;
}

}  // namespace kpx
