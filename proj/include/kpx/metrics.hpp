#pragma once

// Word-level keyphrase metrics. A word is positive when its KP3 label is 1
// or 2; the begin/tail distinction does not affect the counts.

#include <cstddef>
#include <span>

#include "kpx/corpus.hpp"

namespace kpx {

struct ConfusionCounts {
  std::size_t tp = 0;
  std::size_t tn = 0;
  std::size_t fp = 0;  // gold 0, predicted 1 or 2
  std::size_t fn = 0;  // gold 1 or 2, predicted 0

  std::size_t total() const { return tp + tn + fp + fn; }
  ConfusionCounts& operator+=(const ConfusionCounts& other);
  bool operator==(const ConfusionCounts&) const = default;
};

struct MetricsReport {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double accuracy = 0.0;

  bool operator==(const MetricsReport&) const = default;
};

// Throws std::invalid_argument on length mismatch.
ConfusionCounts confusion_counts(std::span<const Label> predicted, std::span<const Label> gold);

// Throws std::invalid_argument when counts.total() == 0.
MetricsReport metrics(const ConfusionCounts& counts);

}  // namespace kpx
