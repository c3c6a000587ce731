#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "kpx/baselines.hpp"
#include "kpx/jrnn.hpp"
#include "kpx/params.hpp"
#include "network_detail.hpp"

namespace kpx {

LstmParams init_lstm(std::size_t input_dim, std::size_t hidden, std::size_t classes,
                     std::uint64_t seed) {
  if (input_dim == 0 || hidden == 0 || classes == 0) {
    throw std::invalid_argument("network dimensions must be positive");
  }
  LstmParams p{Matrix(4 * hidden, input_dim), Matrix(4 * hidden, hidden),
               Matrix(4 * hidden, 1), Matrix(classes, hidden), Matrix(classes, 1)};
  Rng rng(seed);
  for (Matrix* m : {&p.in_gates, &p.h_gates, &p.h_y}) detail::fill_uniform(*m, rng, kInitRange);
  return p;
}

LstmCache forward(const LstmParams& p, const Matrix& inputs) {
  if (inputs.cols() != p.input_dim()) {
    throw std::invalid_argument("input width " + std::to_string(inputs.cols()) +
                                " does not match network input " + std::to_string(p.input_dim()));
  }
  const std::size_t steps = inputs.rows();
  const std::size_t H = p.hidden();
  LstmCache c{Matrix(steps, 4 * H), Matrix(steps, H), Matrix(steps, H), Matrix(steps, H),
              Matrix(steps, p.classes())};
  std::vector<double> logits(p.classes());
  for (std::size_t t = 0; t < steps; ++t) {
    auto z = c.gates.row(t);
    detail::copy_bias(p.b_gates, z);
    multiply_add(p.in_gates, inputs.row(t), z);
    if (t > 0) multiply_add(p.h_gates, c.h.row(t - 1), z);
    for (std::size_t j = 0; j < 3 * H; ++j) z[j] = detail::sigmoid(z[j]);
    for (std::size_t j = 3 * H; j < 4 * H; ++j) z[j] = std::tanh(z[j]);

    auto cell = c.cell.row(t);
    for (std::size_t j = 0; j < H; ++j) {
      const double prev = t > 0 ? c.cell(t - 1, j) : 0.0;
      cell[j] = z[H + j] * prev + z[j] * z[3 * H + j];
      c.tanh_cell(t, j) = std::tanh(cell[j]);
      c.h(t, j) = z[2 * H + j] * c.tanh_cell(t, j);
    }
    detail::copy_bias(p.b_y, logits);
    multiply_add(p.h_y, c.h.row(t), logits);
    softmax(logits, c.y.row(t));
  }
  return c;
}

LstmParams backward(const LstmParams& p, const Matrix& inputs, const LstmCache& c,
                    std::span<const Label> tags, LossKind kind) {
  const std::size_t steps = c.length();
  if (inputs.rows() != steps || tags.size() != steps) {
    throw std::invalid_argument("inputs or targets do not match the forward cache");
  }
  LstmParams g = zeros_like(p);
  if (steps == 0) return g;
  const std::size_t H = p.hidden();
  const double w = 1.0 / static_cast<double>(steps);
  std::vector<double> dz(p.classes()), dh(H), dgates(4 * H);
  std::vector<double> carry_h(H, 0.0), carry_c(H, 0.0);

  for (std::size_t t = steps; t-- > 0;) {
    std::fill(dz.begin(), dz.end(), 0.0);
    add_distance_gradient(c.y.row(t), tags[t], kind, w, dz);
    outer_add(g.h_y, 1.0, dz, c.h.row(t));
    axpy(1.0, dz, g.b_y.values());
    dh = carry_h;
    multiply_transposed_add(p.h_y, dz, dh);

    const auto gates = c.gates.row(t);
    for (std::size_t j = 0; j < H; ++j) {
      const double i = gates[j], f = gates[H + j], o = gates[2 * H + j], cand = gates[3 * H + j];
      const double tc = c.tanh_cell(t, j);
      const double prev = t > 0 ? c.cell(t - 1, j) : 0.0;
      const double dc = dh[j] * o * (1.0 - tc * tc) + carry_c[j];
      dgates[j] = dc * cand * i * (1.0 - i);
      dgates[H + j] = dc * prev * f * (1.0 - f);
      dgates[2 * H + j] = dh[j] * tc * o * (1.0 - o);
      dgates[3 * H + j] = dc * i * (1.0 - cand * cand);
      carry_c[j] = dc * f;
    }
    outer_add(g.in_gates, 1.0, dgates, inputs.row(t));
    if (t > 0) outer_add(g.h_gates, 1.0, dgates, c.h.row(t - 1));
    axpy(1.0, dgates, g.b_gates.values());
    std::fill(carry_h.begin(), carry_h.end(), 0.0);
    multiply_transposed_add(p.h_gates, dgates, carry_h);
  }
  return g;
}

}  // namespace kpx
