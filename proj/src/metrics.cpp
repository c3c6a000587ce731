#include "kpx/metrics.hpp"

#include <stdexcept>

namespace kpx {

ConfusionCounts& ConfusionCounts::operator+=(const ConfusionCounts& other) {
  tp += other.tp;
  tn += other.tn;
  fp += other.fp;
  fn += other.fn;
  return *this;
}

ConfusionCounts confusion_counts(std::span<const Label> predicted, std::span<const Label> gold) {
  if (predicted.size() != gold.size()) {
    throw std::invalid_argument("prediction and gold sequences differ in length");
  }
  ConfusionCounts counts;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    const bool gold_positive = gold[i] != kp3::outside;
    const bool pred_positive = predicted[i] != kp3::outside;
    if (gold_positive) {
      ++(pred_positive ? counts.tp : counts.fn);
    } else {
      ++(pred_positive ? counts.fp : counts.tn);
    }
  }
  return counts;
}

MetricsReport metrics(const ConfusionCounts& c) {
  if (c.total() == 0) {
    throw std::invalid_argument("cannot compute metrics over zero words");
  }
  MetricsReport r;
  const auto ratio = [](std::size_t num, std::size_t den) {
    return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
  };
  r.precision = ratio(c.tp, c.tp + c.fp);
  r.recall = ratio(c.tp, c.tp + c.fn);
  r.f1 = r.precision + r.recall > 0.0
             ? 2.0 * r.precision * r.recall / (r.precision + r.recall)
             : 0.0;
  r.accuracy = ratio(c.tp + c.tn, c.total());
  return r;
}

}  // namespace kpx
