#include "kpx/loss.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace kpx {

std::string_view to_string(LossKind kind) {
  return kind == LossKind::cross_entropy ? "xent" : "euclid";
}

LossKind parse_loss_kind(std::string_view name) {
  if (name == "xent" || name == "cross-entropy") return LossKind::cross_entropy;
  if (name == "euclid" || name == "squared-euclidean") return LossKind::squared_euclidean;
  throw std::invalid_argument("unknown loss kind: " + std::string(name));
}

void softmax(std::span<const double> logits, std::span<double> out) {
  const double peak = *std::max_element(logits.begin(), logits.end());
  double sum = 0.0;
  for (std::size_t k = 0; k < logits.size(); ++k) {
    out[k] = std::exp(logits[k] - peak);
    sum += out[k];
  }
  for (double& v : out) v /= sum;
}

double distance(std::span<const double> probs, Label target, LossKind kind) {
  if (kind == LossKind::cross_entropy) {
    return -std::log(probs[target]);
  }
  double sum = 0.0;
  for (std::size_t k = 0; k < probs.size(); ++k) {
    const double diff = probs[k] - (k == target ? 1.0 : 0.0);
    sum += diff * diff;
  }
  return sum;
}

void add_distance_gradient(std::span<const double> probs, Label target, LossKind kind,
                           double scale, std::span<double> grad) {
  if (kind == LossKind::cross_entropy) {
    for (std::size_t k = 0; k < probs.size(); ++k) {
      grad[k] += scale * (probs[k] - (k == target ? 1.0 : 0.0));
    }
    return;
  }
  // d/dp = 2 (p - y); back through softmax: dz_j = p_j (g_j - sum_k p_k g_k)
  double weighted = 0.0;
  for (std::size_t k = 0; k < probs.size(); ++k) {
    weighted += probs[k] * 2.0 * (probs[k] - (k == target ? 1.0 : 0.0));
  }
  for (std::size_t j = 0; j < probs.size(); ++j) {
    const double g = 2.0 * (probs[j] - (j == target ? 1.0 : 0.0));
    grad[j] += scale * probs[j] * (g - weighted);
  }
}

std::size_t argmax(std::span<const double> values) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < values.size(); ++k) {
    if (values[k] > values[best]) best = k;
  }
  return best;
}

}  // namespace kpx
