#pragma once

// Corpus-level evaluation and the comparison / alpha-sweep harness.

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kpx/augment.hpp"
#include "kpx/corpus.hpp"
#include "kpx/features.hpp"
#include "kpx/metrics.hpp"
#include "kpx/model.hpp"
#include "kpx/rake.hpp"

namespace kpx {

// Produces KP3 labels for a tweet. Must be safe to call concurrently when
// evaluation runs with jobs > 1.
using Labeler = std::function<std::vector<Label>(const Tweet&)>;

Labeler model_labeler(const Model& model, const EmbeddingTable& table);
Labeler rake_labeler(RakeConfig config);

// Micro-averaged: counts are summed over all tweets, metrics computed once.
// Gold labels are read through the corpus scheme and compared in KP3.
ConfusionCounts evaluate_counts(const Labeler& labeler, const Corpus& corpus, unsigned jobs = 1);
MetricsReport evaluate(const Labeler& labeler, const Corpus& corpus, unsigned jobs = 1);

struct ReportRow {
  std::string key;
  MetricsReport metrics;
  std::size_t train_examples = 0;
};

struct Report {
  std::string key_header;
  std::vector<ReportRow> rows;

  // First row with the highest value; rows must be non-empty.
  std::size_t best_f1_row() const;
  std::size_t best_accuracy_row() const;
};

// ".7763" for values below one, "1.0000" otherwise.
std::string format_metric(double value);
// Aligned plain-text table; '*' marks the best F1 and best accuracy.
std::string render_table(const Report& report);
// Tab-separated: key, P, R, F1, Acc with four decimals.
std::string render_delimited(const Report& report);

inline constexpr double kDefaultAlphas[] = {0.1, 0.3, 0.5, 0.7, 0.9};

// One jrnn model per alpha on the same data and seed, scored on test.
Report alpha_sweep(const Corpus& train, const Corpus& val, const Corpus& test,
                   const EmbeddingTable& table, const FeatureConfig& features,
                   const TrainConfig& base, std::span<const double> alphas);

struct MethodSpec {
  enum class Kind { rake, rnn, lstm, jrnn5, jrnn3 };
  Kind kind = Kind::jrnn3;
  bool use_pos = false;
  bool use_ne = false;
  bool use_ds = false;
  bool augmented = false;
  std::string name;
};

// Accepts RAKE, RNN[-WE], LSTM[-WE], JRNN5[-WE] and JRNN3[-WE] followed by
// any of -POS, -NE, -DS, -Augmentation (case-insensitive, any order).
// Throws std::invalid_argument for anything else.
MethodSpec parse_method(std::string_view name);

// Baselines, then the JRNN3 feature ablations, then the augmented row.
std::vector<std::string> default_methods();

struct CompareResources {
  const StopwordSet* stopwords = nullptr;  // required for RAKE and augmentation
  const SynsetDB* synsets = nullptr;       // required for augmentation
  AugmentConfig augment;
  double rake_fraction = 1.0 / 3.0;
};

// One row per method. Neural rows train on `train` (augmented rows on its
// augmented copy), select on `val`, and are scored on `test`. `features`
// supplies the window and tag inventories; each method sets its own flags.
Report compare_methods(const Corpus& train, const Corpus& val, const Corpus& test,
                       const EmbeddingTable& table, const FeatureConfig& features,
                       const TrainConfig& config, std::span<const std::string> methods,
                       const CompareResources& resources);

}  // namespace kpx
