#include <stdexcept>
#include <string>
#include <vector>

#include "kpx/baselines.hpp"
#include "kpx/params.hpp"
#include "kpx/jrnn.hpp"
#include "network_detail.hpp"

namespace kpx {

LossBreakdown loss_tagging(const Matrix& probs, std::span<const Label> tags, LossKind kind) {
  if (tags.size() != probs.rows()) {
    throw std::invalid_argument("target length does not match sequence length");
  }
  LossBreakdown out;
  if (tags.empty()) return out;
  for (std::size_t t = 0; t < tags.size(); ++t) {
    out.tagging += distance(probs.row(t), tags[t], kind);
  }
  out.tagging /= static_cast<double>(tags.size());
  out.total = out.tagging;
  return out;
}

RnnParams init_rnn(std::size_t input_dim, std::size_t hidden, std::size_t classes,
                   std::uint64_t seed) {
  if (input_dim == 0 || hidden == 0 || classes == 0) {
    throw std::invalid_argument("network dimensions must be positive");
  }
  RnnParams p{Matrix(hidden, input_dim), Matrix(hidden, hidden), Matrix(hidden, 1),
              Matrix(classes, hidden), Matrix(classes, 1)};
  Rng rng(seed);
  for (Matrix* m : {&p.in_h, &p.h_h, &p.h_y}) detail::fill_uniform(*m, rng, kInitRange);
  return p;
}

RnnCache forward(const RnnParams& p, const Matrix& inputs) {
  if (inputs.cols() != p.input_dim()) {
    throw std::invalid_argument("input width " + std::to_string(inputs.cols()) +
                                " does not match network input " + std::to_string(p.input_dim()));
  }
  const std::size_t steps = inputs.rows();
  RnnCache c{Matrix(steps, p.hidden()), Matrix(steps, p.hidden()), Matrix(steps, p.classes())};
  std::vector<double> logits(p.classes());
  for (std::size_t t = 0; t < steps; ++t) {
    auto a = c.pre_h.row(t);
    detail::copy_bias(p.b_h, a);
    multiply_add(p.in_h, inputs.row(t), a);
    if (t > 0) multiply_add(p.h_h, c.h.row(t - 1), a);
    detail::tanh_into(a, c.h.row(t));
    detail::copy_bias(p.b_y, logits);
    multiply_add(p.h_y, c.h.row(t), logits);
    softmax(logits, c.y.row(t));
  }
  return c;
}

RnnParams backward(const RnnParams& p, const Matrix& inputs, const RnnCache& c,
                   std::span<const Label> tags, LossKind kind) {
  const std::size_t steps = c.length();
  if (inputs.rows() != steps || tags.size() != steps) {
    throw std::invalid_argument("inputs or targets do not match the forward cache");
  }
  RnnParams g = zeros_like(p);
  if (steps == 0) return g;
  const double w = 1.0 / static_cast<double>(steps);
  std::vector<double> dz(p.classes()), dh(p.hidden()), da(p.hidden());
  std::vector<double> carry(p.hidden(), 0.0);
  for (std::size_t t = steps; t-- > 0;) {
    std::fill(dz.begin(), dz.end(), 0.0);
    add_distance_gradient(c.y.row(t), tags[t], kind, w, dz);
    outer_add(g.h_y, 1.0, dz, c.h.row(t));
    axpy(1.0, dz, g.b_y.values());
    dh = carry;
    multiply_transposed_add(p.h_y, dz, dh);
    detail::tanh_backward(c.h.row(t), dh, da);
    outer_add(g.in_h, 1.0, da, inputs.row(t));
    if (t > 0) outer_add(g.h_h, 1.0, da, c.h.row(t - 1));
    axpy(1.0, da, g.b_h.values());
    std::fill(carry.begin(), carry.end(), 0.0);
    multiply_transposed_add(p.h_h, da, carry);
  }
  return g;
}

}  // namespace kpx
