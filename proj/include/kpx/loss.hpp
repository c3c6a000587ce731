#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

#include "kpx/corpus.hpp"

namespace kpx {

enum class LossKind : std::uint8_t { cross_entropy, squared_euclidean };

std::string_view to_string(LossKind kind);  // "xent" | "euclid"
LossKind parse_loss_kind(std::string_view name);

// J = alpha * J1 + (1 - alpha) * J2, each a per-step mean. Single-layer
// taggers report importance = 0 and total = tagging.
struct LossBreakdown {
  double total = 0.0;
  double importance = 0.0;  // J1, word-importance layer
  double tagging = 0.0;     // J2, keyphrase-tag layer
};

void softmax(std::span<const double> logits, std::span<double> out);

// dist(p, onehot(target)): -log p[target], or sum_k (p_k - y_k)^2.
double distance(std::span<const double> probs, Label target, LossKind kind);

// grad += scale * d dist(softmax(z), target) / dz, given probs = softmax(z).
void add_distance_gradient(std::span<const double> probs, Label target, LossKind kind,
                           double scale, std::span<double> grad);

// Lowest index wins ties.
std::size_t argmax(std::span<const double> values);

}  // namespace kpx
