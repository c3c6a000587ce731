#pragma once

// Joint-layer RNN: two stacked tanh recurrences, each with its own softmax
// output. Layer 1 predicts word importance (2 classes), layer 2 the keyphrase
// tag (3 or 5 classes). Training minimizes alpha * J1 + (1 - alpha) * J2.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

#include "kpx/linalg.hpp"
#include "kpx/loss.hpp"

namespace kpx {

inline constexpr std::size_t kImportanceClasses = 2;

struct JrnnParams {
  Matrix in_h1;  // h1 x input
  Matrix h1_h1;  // h1 x h1
  Matrix b_h1;   // h1 x 1
  Matrix h1_y1;  // 2 x h1
  Matrix b_y1;   // 2 x 1
  Matrix h1_h2;  // h2 x h1
  Matrix h2_h2;  // h2 x h2
  Matrix b_h2;   // h2 x 1
  Matrix h2_y2;  // K x h2
  Matrix b_y2;   // K x 1

  std::size_t input_dim() const { return in_h1.cols(); }
  std::size_t hidden1() const { return in_h1.rows(); }
  std::size_t hidden2() const { return h1_h2.rows(); }
  std::size_t classes() const { return h2_y2.rows(); }

  template <class Self, class F>
  static void visit(Self& p, F&& f) {
    f(std::string_view("in_h1"), p.in_h1);
    f(std::string_view("h1_h1"), p.h1_h1);
    f(std::string_view("b_h1"), p.b_h1);
    f(std::string_view("h1_y1"), p.h1_y1);
    f(std::string_view("b_y1"), p.b_y1);
    f(std::string_view("h1_h2"), p.h1_h2);
    f(std::string_view("h2_h2"), p.h2_h2);
    f(std::string_view("b_h2"), p.b_h2);
    f(std::string_view("h2_y2"), p.h2_y2);
    f(std::string_view("b_y2"), p.b_y2);
  }

  bool operator==(const JrnnParams&) const = default;
};

// Per-step activations; every matrix has one row per time step.
struct JrnnCache {
  Matrix pre_h1;
  Matrix h1;
  Matrix pre_h2;
  Matrix h2;
  Matrix y1;  // importance distribution
  Matrix y2;  // tag distribution

  std::size_t length() const { return h1.rows(); }
};

inline constexpr double kInitRange = 0.08;

// Weights ~ U(-0.08, 0.08), biases zero.
JrnnParams init_jrnn(std::size_t input_dim, std::size_t hidden1, std::size_t hidden2,
                     std::size_t classes, std::uint64_t seed);

JrnnCache forward(const JrnnParams& params, const Matrix& inputs);

LossBreakdown loss_joint(const JrnnCache& cache, std::span<const Label> importance,
                         std::span<const Label> tags, double alpha, LossKind kind);

// Exact gradient of loss_joint by backpropagation through time.
JrnnParams backward(const JrnnParams& params, const Matrix& inputs, const JrnnCache& cache,
                    std::span<const Label> importance, std::span<const Label> tags, double alpha,
                    LossKind kind);

}  // namespace kpx
