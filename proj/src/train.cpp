#include <numeric>
#include <stdexcept>
#include <string>

#include "kpx/model.hpp"
#include "kpx/params.hpp"
#include "kpx/rng.hpp"

namespace kpx {
namespace {

struct Prepared {
  std::vector<InputSequence> inputs;
  std::vector<SequenceTargets> targets;
};

Prepared prepare(const Corpus& corpus, const EmbeddingTable& table, const FeatureConfig& features) {
  Prepared out;
  out.inputs.reserve(corpus.size());
  out.targets.reserve(corpus.size());
  for (const Tweet& tweet : corpus.tweets) {
    out.inputs.push_back(build_input_sequence(tweet, table, features));
    out.targets.push_back(make_targets(tweet));
  }
  return out;
}

std::vector<Label> argmax_rows(const Matrix& probs) {
  std::vector<Label> out(probs.rows());
  for (std::size_t t = 0; t < probs.rows(); ++t) {
    out[t] = static_cast<Label>(argmax(probs.row(t)));
  }
  return out;
}

MetricsReport score(const NetworkParams& params, const Prepared& data, Scheme scheme) {
  ConfusionCounts counts;
  for (std::size_t i = 0; i < data.inputs.size(); ++i) {
    const auto predicted = argmax_rows(tag_distributions(params, data.inputs[i].vectors));
    counts += confusion_counts(convert_labels(predicted, scheme, Scheme::kp3),
                               convert_labels(data.targets[i].tags, scheme, Scheme::kp3));
  }
  return metrics(counts);
}

}  // namespace

std::string_view to_string(Architecture arch) {
  switch (arch) {
    case Architecture::jrnn:
      return "jrnn";
    case Architecture::rnn:
      return "rnn";
    case Architecture::lstm:
      return "lstm";
  }
  return "unknown";
}

Architecture parse_architecture(std::string_view name) {
  if (name == "jrnn") return Architecture::jrnn;
  if (name == "rnn") return Architecture::rnn;
  if (name == "lstm") return Architecture::lstm;
  throw std::invalid_argument("unknown architecture: " + std::string(name));
}

void TrainConfig::validate() const {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in [0, 1]");
  if (!(learning_rate > 0.0)) throw std::invalid_argument("learning rate must be positive");
  if (hidden1 == 0 || hidden2 == 0) throw std::invalid_argument("hidden sizes must be positive");
}

std::size_t Model::input_dim() const {
  return std::visit([](const auto& p) { return p.input_dim(); }, params);
}

SequenceTargets make_targets(const Tweet& tweet) {
  SequenceTargets t;
  t.tags = tweet.labels();
  t.importance.reserve(t.tags.size());
  // outside is ordinal 0 in both schemes
  for (Label l : t.tags) t.importance.push_back(l != 0 ? 1 : 0);
  return t;
}

NetworkParams init_network(Architecture arch, std::size_t input_dim, std::size_t hidden1,
                           std::size_t hidden2, std::size_t classes, std::uint64_t seed) {
  switch (arch) {
    case Architecture::jrnn:
      return init_jrnn(input_dim, hidden1, hidden2, classes, seed);
    case Architecture::rnn:
      return init_rnn(input_dim, hidden1, classes, seed);
    case Architecture::lstm:
      return init_lstm(input_dim, hidden1, classes, seed);
  }
  throw std::invalid_argument("unknown architecture");
}

LossBreakdown loss_and_gradient(const JrnnParams& params, const Matrix& inputs,
                                const SequenceTargets& targets, double alpha, LossKind kind,
                                JrnnParams* grad) {
  const JrnnCache cache = forward(params, inputs);
  const LossBreakdown loss = loss_joint(cache, targets.importance, targets.tags, alpha, kind);
  if (grad != nullptr) {
    *grad = backward(params, inputs, cache, targets.importance, targets.tags, alpha, kind);
  }
  return loss;
}

LossBreakdown loss_and_gradient(const RnnParams& params, const Matrix& inputs,
                                const SequenceTargets& targets, double /*alpha*/, LossKind kind,
                                RnnParams* grad) {
  const RnnCache cache = forward(params, inputs);
  const LossBreakdown loss = loss_tagging(cache.y, targets.tags, kind);
  if (grad != nullptr) *grad = backward(params, inputs, cache, targets.tags, kind);
  return loss;
}

LossBreakdown loss_and_gradient(const LstmParams& params, const Matrix& inputs,
                                const SequenceTargets& targets, double /*alpha*/, LossKind kind,
                                LstmParams* grad) {
  const LstmCache cache = forward(params, inputs);
  const LossBreakdown loss = loss_tagging(cache.y, targets.tags, kind);
  if (grad != nullptr) *grad = backward(params, inputs, cache, targets.tags, kind);
  return loss;
}

Matrix tag_distributions(const NetworkParams& params, const Matrix& inputs) {
  return std::visit(
      [&](const auto& p) -> Matrix {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, JrnnParams>) {
          return forward(p, inputs).y2;
        } else {
          return forward(p, inputs).y;
        }
      },
      params);
}

Model make_model(const FeatureConfig& features, std::size_t embedding_dim,
                 const TrainConfig& config) {
  config.validate();
  features.validate();
  Model model;
  model.config = config;
  model.features = features;
  model.embedding_dim = embedding_dim;
  model.params = init_network(config.architecture, features.input_dim(embedding_dim),
                              config.hidden1, config.hidden2, class_count(config.scheme),
                              derive_seed(config.seed, "init"));
  return model;
}

Model train(const Corpus& train_corpus, const Corpus& val_corpus, const EmbeddingTable& table,
            const FeatureConfig& features, const TrainConfig& config,
            const EpochObserver& observer) {
  if (train_corpus.empty()) {
    throw std::invalid_argument("training corpus is empty");
  }
  if (train_corpus.scheme != config.scheme || val_corpus.scheme != config.scheme) {
    throw std::invalid_argument("corpus label scheme does not match the training configuration");
  }
  Model model = make_model(features, table.dimension(), config);

  const Prepared train_data = prepare(train_corpus, table, features);
  const Prepared val_data =
      val_corpus.empty() ? train_data : prepare(val_corpus, table, features);

  std::vector<std::size_t> order(train_corpus.size());
  std::iota(order.begin(), order.end(), 0);
  Rng shuffle_rng(derive_seed(config.seed, "shuffle"));

  NetworkParams best = model.params;
  double best_f1 = -1.0;
  std::size_t stale = 0;

  for (std::size_t epoch = 1; epoch <= config.max_epochs; ++epoch) {
    shuffle_rng.shuffle(order);
    double loss_sum = 0.0;
    std::visit(
        [&](auto& params) {
          using P = std::decay_t<decltype(params)>;
          P grad;
          for (std::size_t i : order) {
            loss_sum += loss_and_gradient(params, train_data.inputs[i].vectors,
                                          train_data.targets[i], config.alpha, config.loss, &grad)
                            .total;
            sgd_step(params, grad, config.learning_rate, config.grad_clip_norm);
          }
        },
        model.params);

    EpochRecord record;
    record.epoch = epoch;
    record.train_loss = loss_sum / static_cast<double>(order.size());
    record.validation = score(model.params, val_data, config.scheme);
    model.history.push_back(record);
    if (observer) observer(record);

    if (record.validation.f1 > best_f1) {
      best_f1 = record.validation.f1;
      best = model.params;
      stale = 0;
    } else {
      ++stale;
    }
    if (stale >= config.patience) break;
  }
  model.params = std::move(best);
  return model;
}

std::vector<Label> predict(const Model& model, const EmbeddingTable& table, const Tweet& tweet) {
  if (table.dimension() != model.embedding_dim) {
    throw std::invalid_argument("embedding dimension " + std::to_string(table.dimension()) +
                                " does not match model (" + std::to_string(model.embedding_dim) +
                                ")");
  }
  const InputSequence inputs = build_input_sequence(tweet, table, model.features);
  return argmax_rows(tag_distributions(model.params, inputs.vectors));
}

std::vector<Label> predict_kp3(const Model& model, const EmbeddingTable& table,
                               const Tweet& tweet) {
  return convert_labels(predict(model, table, tweet), model.scheme(), Scheme::kp3);
}

}  // namespace kpx
