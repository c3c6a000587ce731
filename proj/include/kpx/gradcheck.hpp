#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "kpx/model.hpp"

namespace kpx {

struct GradCheckSpec {
  Architecture architecture = Architecture::jrnn;
  std::size_t input_dim = 8;
  std::size_t hidden1 = 6;
  std::size_t hidden2 = 6;
  std::size_t classes = 3;
  std::size_t length = 5;
  double epsilon = 1e-5;
  double alpha = 0.5;
  LossKind loss = LossKind::cross_entropy;
  std::uint64_t seed = 1;
  // Scales every analytic entry by 1.01; used to prove the harness can fail.
  bool inject_fault = false;
};

struct GradCheckResult {
  double max_relative_error = 0.0;
  std::string worst_tensor;
  std::size_t worst_index = 0;
  std::size_t entries_checked = 0;
};

// Compares the analytic gradient with central differences on every
// parameter entry of a randomly initialized model on random data. Relative
// error is |a - n| / max(|a| + |n|, 1e-12).
GradCheckResult grad_check(const GradCheckSpec& spec);

}  // namespace kpx
