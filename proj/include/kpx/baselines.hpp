#pragma once

// Single-layer baseline taggers: a vanilla tanh RNN and an LSTM, both
// predicting the keyphrase tag directly from one recurrent layer.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

#include "kpx/linalg.hpp"
#include "kpx/loss.hpp"

namespace kpx {

struct RnnParams {
  Matrix in_h;  // H x input
  Matrix h_h;   // H x H
  Matrix b_h;   // H x 1
  Matrix h_y;   // K x H
  Matrix b_y;   // K x 1

  std::size_t input_dim() const { return in_h.cols(); }
  std::size_t hidden() const { return in_h.rows(); }
  std::size_t classes() const { return h_y.rows(); }

  template <class Self, class F>
  static void visit(Self& p, F&& f) {
    f(std::string_view("in_h"), p.in_h);
    f(std::string_view("h_h"), p.h_h);
    f(std::string_view("b_h"), p.b_h);
    f(std::string_view("h_y"), p.h_y);
    f(std::string_view("b_y"), p.b_y);
  }

  bool operator==(const RnnParams&) const = default;
};

struct RnnCache {
  Matrix pre_h;
  Matrix h;
  Matrix y;

  std::size_t length() const { return h.rows(); }
};

RnnParams init_rnn(std::size_t input_dim, std::size_t hidden, std::size_t classes,
                   std::uint64_t seed);
RnnCache forward(const RnnParams& params, const Matrix& inputs);
RnnParams backward(const RnnParams& params, const Matrix& inputs, const RnnCache& cache,
                   std::span<const Label> tags, LossKind kind);

// Gate blocks are stacked [input, forget, output, candidate] along the rows
// of the gate matrices.
struct LstmParams {
  Matrix in_gates;  // 4H x input
  Matrix h_gates;   // 4H x H
  Matrix b_gates;   // 4H x 1
  Matrix h_y;       // K x H
  Matrix b_y;       // K x 1

  std::size_t input_dim() const { return in_gates.cols(); }
  std::size_t hidden() const { return h_gates.cols(); }
  std::size_t classes() const { return h_y.rows(); }

  template <class Self, class F>
  static void visit(Self& p, F&& f) {
    f(std::string_view("in_gates"), p.in_gates);
    f(std::string_view("h_gates"), p.h_gates);
    f(std::string_view("b_gates"), p.b_gates);
    f(std::string_view("h_y"), p.h_y);
    f(std::string_view("b_y"), p.b_y);
  }

  bool operator==(const LstmParams&) const = default;
};

struct LstmCache {
  Matrix gates;   // T x 4H, post-activation
  Matrix cell;    // T x H
  Matrix tanh_cell;
  Matrix h;
  Matrix y;

  std::size_t length() const { return h.rows(); }
};

LstmParams init_lstm(std::size_t input_dim, std::size_t hidden, std::size_t classes,
                     std::uint64_t seed);
LstmCache forward(const LstmParams& params, const Matrix& inputs);
LstmParams backward(const LstmParams& params, const Matrix& inputs, const LstmCache& cache,
                    std::span<const Label> tags, LossKind kind);

// Mean per-step distance of a tag distribution sequence; importance = 0.
LossBreakdown loss_tagging(const Matrix& probs, std::span<const Label> tags, LossKind kind);

}  // namespace kpx
