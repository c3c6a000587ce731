#pragma once

// Tagger models behind one interface: the joint-layer RNN (3- or 5-class)
// and the single-layer RNN/LSTM baselines, with SGD training and prediction.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string_view>
#include <variant>
#include <vector>

#include "kpx/baselines.hpp"
#include "kpx/corpus.hpp"
#include "kpx/features.hpp"
#include "kpx/jrnn.hpp"
#include "kpx/loss.hpp"
#include "kpx/metrics.hpp"

namespace kpx {

enum class Architecture : std::uint8_t { jrnn, rnn, lstm };

std::string_view to_string(Architecture arch);
Architecture parse_architecture(std::string_view name);

using NetworkParams = std::variant<JrnnParams, RnnParams, LstmParams>;

struct TrainConfig {
  Architecture architecture = Architecture::jrnn;
  Scheme scheme = Scheme::kp3;  // output label scheme
  double alpha = 0.5;
  double learning_rate = 0.1;
  std::size_t hidden1 = 300;
  std::size_t hidden2 = 300;  // jrnn only
  std::size_t max_epochs = 50;
  std::size_t patience = 5;
  double grad_clip_norm = 5.0;
  LossKind loss = LossKind::cross_entropy;
  std::uint64_t seed = 42;

  void validate() const;
  bool operator==(const TrainConfig&) const = default;
};

struct EpochRecord {
  std::size_t epoch = 0;
  double train_loss = 0.0;  // mean per-tweet J during the epoch
  MetricsReport validation;

  bool operator==(const EpochRecord&) const = default;
};

struct Model {
  TrainConfig config;
  FeatureConfig features;
  std::size_t embedding_dim = 0;
  NetworkParams params;
  std::vector<EpochRecord> history;

  Architecture architecture() const { return config.architecture; }
  Scheme scheme() const { return config.scheme; }
  std::size_t input_dim() const;
};

// Gold targets: tags in the given scheme, importance = (tag != outside).
struct SequenceTargets {
  std::vector<Label> importance;
  std::vector<Label> tags;
};
SequenceTargets make_targets(const Tweet& tweet);

NetworkParams init_network(Architecture arch, std::size_t input_dim, std::size_t hidden1,
                           std::size_t hidden2, std::size_t classes, std::uint64_t seed);

// Loss of one sequence; when grad is non-null it receives the exact gradient.
// alpha is ignored by the single-layer families.
LossBreakdown loss_and_gradient(const JrnnParams& params, const Matrix& inputs,
                                const SequenceTargets& targets, double alpha, LossKind kind,
                                JrnnParams* grad);
LossBreakdown loss_and_gradient(const RnnParams& params, const Matrix& inputs,
                                const SequenceTargets& targets, double alpha, LossKind kind,
                                RnnParams* grad);
LossBreakdown loss_and_gradient(const LstmParams& params, const Matrix& inputs,
                                const SequenceTargets& targets, double alpha, LossKind kind,
                                LstmParams* grad);

// T x K tag distributions.
Matrix tag_distributions(const NetworkParams& params, const Matrix& inputs);

// Untrained model with seeded initial parameters.
Model make_model(const FeatureConfig& features, std::size_t embedding_dim,
                 const TrainConfig& config);

using EpochObserver = std::function<void(const EpochRecord&)>;

// Per-tweet SGD over a seeded shuffle; keeps the parameters of the epoch
// with the best validation F1 and stops after `patience` epochs without a
// strict improvement. An empty validation corpus falls back to the training
// corpus for model selection. Both corpora must use config.scheme.
Model train(const Corpus& train, const Corpus& val, const EmbeddingTable& table,
            const FeatureConfig& features, const TrainConfig& config,
            const EpochObserver& observer = {});

// Argmax of the tag layer, ties to the lowest class. Labels are in the
// model's scheme.
std::vector<Label> predict(const Model& model, const EmbeddingTable& table, const Tweet& tweet);
std::vector<Label> predict_kp3(const Model& model, const EmbeddingTable& table,
                               const Tweet& tweet);

}  // namespace kpx
