#include "kpx/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <vector>

#include "kpx/augment.hpp"
#include "kpx/corpus.hpp"
#include "kpx/eval.hpp"
#include "kpx/features.hpp"
#include "kpx/gradcheck.hpp"
#include "kpx/model.hpp"
#include "kpx/model_io.hpp"
#include "kpx/rake.hpp"
#include "kpx/stopwords.hpp"
#include "kpx/version.hpp"
#include "manifest.hpp"

namespace kpx::cli {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Streams {
  std::ostream& out;
  std::ostream& err;
};

void ensure_parent(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
}

std::ofstream open_output(const fs::path& path) {
  ensure_parent(path);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path.string());
  return out;
}

std::string shortest(double value) {
  char buf[32];
  const auto result = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, result.ptr);
}

fs::path with_suffix(const fs::path& prefix, std::string_view suffix) {
  return prefix.string() + std::string(suffix);
}

// Options shared by every command that trains a network.

struct NetworkOptions {
  std::string corpus;
  std::string val;
  double val_fraction = 0.1;
  std::string embeddings;
  std::string arch = "jrnn";
  std::string scheme = "kp3";
  double alpha = 0.5;
  double lr = 0.1;
  std::size_t hidden1 = 300;
  std::size_t hidden2 = 300;
  std::size_t window = 3;
  bool use_pos = false;
  bool use_ne = false;
  bool use_ds = false;
  std::size_t epochs = 50;
  std::size_t patience = 5;
  double clip = 5.0;
  std::string loss = "xent";
  std::uint64_t seed = 42;

  void bind(CLI::App& app) {
    app.add_option("--corpus", corpus, "Training corpus")->required()->check(CLI::ExistingFile);
    app.add_option("--val", val, "Validation corpus (default: split off the training corpus)")
        ->check(CLI::ExistingFile);
    app.add_option("--val-fraction", val_fraction, "Held-out share when --val is absent")
        ->capture_default_str()
        ->check(CLI::Range(0.0, 1.0));
    app.add_option("--embeddings", embeddings, "Word vectors")->required()->check(CLI::ExistingFile);
    app.add_option("--arch", arch, "Network family")
        ->capture_default_str()
        ->check(CLI::IsMember({"jrnn", "rnn", "lstm"}));
    app.add_option("--scheme", scheme, "Label scheme of the corpora and the model")
        ->capture_default_str()
        ->check(CLI::IsMember({"kp3", "kp5"}));
    app.add_option("--alpha", alpha, "Weight of the importance loss")
        ->capture_default_str()
        ->check(CLI::Range(0.0, 1.0));
    app.add_option("--lr", lr, "SGD learning rate")->capture_default_str();
    app.add_option("--hidden1", hidden1, "First hidden layer size")->capture_default_str();
    app.add_option("--hidden2", hidden2, "Second hidden layer size")->capture_default_str();
    app.add_option("--window", window, "Embedding context window (odd)")->capture_default_str();
    app.add_flag("--use-pos", use_pos, "Add part-of-speech one-hots");
    app.add_flag("--use-ne", use_ne, "Add named-entity one-hots");
    app.add_flag("--use-ds", use_ds, "Add dependency one-hots");
    app.add_option("--epochs", epochs, "Maximum epochs")->capture_default_str();
    app.add_option("--patience", patience, "Epochs without improvement before stopping")
        ->capture_default_str();
    app.add_option("--clip", clip, "Global gradient norm clip")->capture_default_str();
    app.add_option("--loss", loss, "Per-step distance")
        ->capture_default_str()
        ->check(CLI::IsMember({"xent", "euclid"}));
    app.add_option("--seed", seed, "Seed for every random draw")->capture_default_str();
  }

  Scheme label_scheme() const { return parse_scheme(scheme); }

  TrainConfig config() const {
    TrainConfig c;
    c.architecture = parse_architecture(arch);
    c.scheme = label_scheme();
    c.alpha = alpha;
    c.learning_rate = lr;
    c.hidden1 = hidden1;
    c.hidden2 = hidden2;
    c.max_epochs = epochs;
    c.patience = patience;
    c.grad_clip_norm = clip;
    c.loss = parse_loss_kind(loss);
    c.seed = seed;
    c.validate();
    return c;
  }

  void record(json& o) const {
    o["arch"] = arch;
    o["scheme"] = scheme;
    o["alpha"] = alpha;
    o["lr"] = lr;
    o["hidden1"] = hidden1;
    o["hidden2"] = hidden2;
    o["window"] = window;
    o["use_pos"] = use_pos;
    o["use_ne"] = use_ne;
    o["use_ds"] = use_ds;
    o["epochs"] = epochs;
    o["patience"] = patience;
    o["clip"] = clip;
    o["loss"] = loss;
    o["val_fraction"] = val.empty() ? json(val_fraction) : json(nullptr);
  }

  void add_inputs(Manifest& manifest) const {
    manifest.add_input("corpus", corpus);
    if (!val.empty()) manifest.add_input("val", val);
    manifest.add_input("embeddings", embeddings);
  }
};

struct TrainingData {
  Corpus train;
  Corpus val;
};

TrainingData load_training_data(const NetworkOptions& o) {
  Corpus corpus = load_corpus(o.corpus, o.label_scheme());
  if (!o.val.empty()) return {std::move(corpus), load_corpus(o.val, o.label_scheme())};
  if (o.val_fraction == 0.0 || corpus.size() < 2) {
    return {std::move(corpus), Corpus{o.label_scheme(), {}}};
  }
  auto [train_part, val_part] = split_train_val(corpus, o.val_fraction, o.seed);
  return {std::move(train_part), std::move(val_part)};
}

std::string epoch_line(const EpochRecord& r) {
  std::ostringstream line;
  line << "epoch " << r.epoch << "  loss " << shortest(r.train_loss) << "  P "
       << format_metric(r.validation.precision) << "  R " << format_metric(r.validation.recall)
       << "  F1 " << format_metric(r.validation.f1) << "  Acc "
       << format_metric(r.validation.accuracy);
  return line.str();
}

void write_report(const Report& report, const fs::path& prefix, Manifest& manifest) {
  const fs::path txt = with_suffix(prefix, ".txt");
  const fs::path tsv = with_suffix(prefix, ".tsv");
  open_output(txt) << render_table(report);
  open_output(tsv) << render_delimited(report);
  manifest.add_output(txt);
  manifest.add_output(tsv);
  manifest.write(manifest_path(prefix));
}

// train

struct TrainArgs {
  NetworkOptions net;
  std::string out = "model.kpx";
};

int cmd_train(const TrainArgs& a, Streams io) {
  const TrainConfig config = a.net.config();
  const EmbeddingTable table = load_embeddings(a.net.embeddings);
  const TrainingData data = load_training_data(a.net);
  const FeatureConfig features =
      make_feature_config(data.train, a.net.use_pos, a.net.use_ne, a.net.use_ds, a.net.window);

  const Model model = train(data.train, data.val, table, features, config,
                            [&](const EpochRecord& r) { io.out << epoch_line(r) << '\n'; });
  ensure_parent(a.out);
  save_model(model, a.out);

  const fs::path history = with_suffix(a.out, ".history.tsv");
  {
    std::ofstream h = open_output(history);
    h << "epoch\tloss\tP\tR\tF1\tAcc\n";
    for (const EpochRecord& r : model.history) {
      h << r.epoch << '\t' << shortest(r.train_loss) << '\t' << format_metric(r.validation.precision)
        << '\t' << format_metric(r.validation.recall) << '\t' << format_metric(r.validation.f1)
        << '\t' << format_metric(r.validation.accuracy) << '\n';
    }
  }

  Manifest manifest("train");
  a.net.record(manifest.options());
  manifest.options()["out"] = a.out;
  manifest.set_seed(a.net.seed);
  a.net.add_inputs(manifest);
  manifest.add_output(a.out);
  manifest.add_output(history);
  manifest.write(manifest_path(a.out));
  io.out << "trained " << data.train.size() << " tweets, " << model.history.size()
         << " epochs; model written to " << a.out << '\n';
  return kExitOk;
}

// predict

struct PredictArgs {
  std::string model;
  std::string corpus;
  std::string embeddings;
  std::string scheme;
  std::string out;
  bool phrases = false;
};

void write_phrases(std::ostream& out, const Tweet& tweet, std::span<const Label> kp3) {
  for (const PhraseSpan& span : decode_phrases(kp3)) {
    out << tweet.id << '\t' << span.start << '\t' << span.end << '\t';
    for (std::size_t t = span.start; t <= span.end; ++t) {
      out << (t == span.start ? "" : " ") << tweet.tokens[t].form;
    }
    out << '\n';
  }
}

int cmd_predict(const PredictArgs& a, Streams io) {
  const Model model = load_model(a.model);
  if (!a.scheme.empty() && parse_scheme(a.scheme) != model.scheme()) {
    throw UsageError("scheme mismatch: model predicts " + std::string(to_string(model.scheme())) +
                     " labels, input declared " + a.scheme);
  }
  const EmbeddingTable table = load_embeddings(a.embeddings);
  if (table.dimension() != model.embedding_dim) {
    throw UsageError("embedding dimension " + std::to_string(table.dimension()) +
                     " does not match the model's " + std::to_string(model.embedding_dim));
  }
  Corpus corpus = load_corpus(a.corpus, model.scheme(), LoadOptions{.require_labels = false});

  std::ostringstream text;
  for (Tweet& tweet : corpus.tweets) {
    if (a.phrases) {
      write_phrases(text, tweet, predict_kp3(model, table, tweet));
      continue;
    }
    const std::vector<Label> labels = predict(model, table, tweet);
    for (std::size_t t = 0; t < tweet.size(); ++t) tweet.tokens[t].label = labels[t];
  }
  if (!a.phrases) write_corpus(text, corpus);

  if (a.out.empty()) {
    io.out << text.str();
    return kExitOk;
  }
  open_output(a.out) << text.str();
  Manifest manifest("predict");
  manifest.options()["phrases"] = a.phrases;
  manifest.options()["out"] = a.out;
  manifest.add_input("model", a.model);
  manifest.add_input("corpus", a.corpus);
  manifest.add_input("embeddings", a.embeddings);
  manifest.add_output(a.out);
  manifest.write(manifest_path(a.out));
  return kExitOk;
}

// eval

struct EvalArgs {
  std::vector<std::string> models;
  std::string test;
  std::string embeddings;
  std::string scheme = "kp3";
  std::string out;
  unsigned jobs = 1;
};

int cmd_eval(const EvalArgs& a, Streams io) {
  if (a.jobs == 0) throw UsageError("--jobs must be at least 1");
  const EmbeddingTable table = load_embeddings(a.embeddings);
  const Corpus test = load_corpus(a.test, parse_scheme(a.scheme));

  Report report{"Model", {}};
  for (const std::string& path : a.models) {
    const Model model = load_model(path);
    if (table.dimension() != model.embedding_dim) {
      throw UsageError("embedding dimension does not match model " + path);
    }
    report.rows.push_back({fs::path(path).filename().string(),
                           evaluate(model_labeler(model, table), test, a.jobs), 0});
  }
  io.out << render_table(report);
  if (a.out.empty()) return kExitOk;

  Manifest manifest("eval");
  manifest.options()["scheme"] = a.scheme;
  manifest.options()["out"] = a.out;
  for (std::size_t i = 0; i < a.models.size(); ++i) {
    manifest.add_input("model[" + std::to_string(i) + "]", a.models[i]);
  }
  manifest.add_input("test", a.test);
  manifest.add_input("embeddings", a.embeddings);
  write_report(report, a.out, manifest);
  return kExitOk;
}

// augment

struct AugmentArgs {
  std::string corpus;
  std::string synsets;
  std::string stopwords;
  std::string scheme = "kp3";
  std::size_t n = 3;
  std::size_t m = 3;
  std::uint64_t seed = 42;
  std::string out;
};

int cmd_augment(const AugmentArgs& a, Streams io) {
  const AugmentConfig config{a.n, a.m, a.seed};
  config.validate();
  const Corpus corpus = load_corpus(a.corpus, parse_scheme(a.scheme));
  const SynsetDB db = load_synsets(a.synsets);
  const StopwordSet stopwords = load_stopwords(a.stopwords);
  const Corpus augmented = augment_corpus(corpus, db, stopwords, config);
  ensure_parent(a.out);
  save_corpus(a.out, augmented);

  Manifest manifest("augment");
  manifest.options()["scheme"] = a.scheme;
  manifest.options()["n"] = a.n;
  manifest.options()["m"] = a.m;
  manifest.options()["out"] = a.out;
  manifest.set_seed(a.seed);
  manifest.add_input("corpus", a.corpus);
  manifest.add_input("synsets", a.synsets);
  manifest.add_input("stopwords", a.stopwords);
  manifest.add_output(a.out);
  manifest.write(manifest_path(a.out));
  io.out << corpus.size() << " tweets in, " << augmented.size() << " tweets written to " << a.out
         << '\n';
  return kExitOk;
}

// rake

struct RakeArgs {
  std::string corpus;
  std::string stopwords;
  std::string scheme = "kp3";
  double fraction = 1.0 / 3.0;
  std::optional<std::size_t> top_n;
  bool labels = false;
  std::string out;
};

int cmd_rake(const RakeArgs& a, Streams io) {
  RakeConfig config{load_stopwords(a.stopwords), a.fraction, a.top_n};
  config.validate();
  Corpus corpus = load_corpus(a.corpus, parse_scheme(a.scheme), LoadOptions{.require_labels = false});

  std::ostringstream text;
  if (a.labels) {
    corpus.scheme = Scheme::kp3;
    for (Tweet& tweet : corpus.tweets) {
      const RakeResult result = rake_extract(tweet, config);
      for (std::size_t t = 0; t < tweet.size(); ++t) tweet.tokens[t].label = result.labels[t];
    }
    write_corpus(text, corpus);
  } else {
    for (const Tweet& tweet : corpus.tweets) {
      const RakeResult result = rake_extract(tweet, config);
      text << "# id = " << tweet.id << '\n';
      for (std::size_t r = 0; r < result.ranked.size(); ++r) {
        const ScoredPhrase& p = result.ranked[r];
        text << (r < result.selected ? '*' : ' ') << '\t' << shortest(p.score) << '\t'
             << p.span.start << '\t' << p.span.end << '\t';
        for (std::size_t w = 0; w < p.words.size(); ++w) text << (w ? " " : "") << p.words[w];
        text << '\n';
      }
      text << '\n';
    }
  }

  if (a.out.empty()) {
    io.out << text.str();
    return kExitOk;
  }
  open_output(a.out) << text.str();
  Manifest manifest("rake");
  manifest.options()["scheme"] = a.scheme;
  manifest.options()["fraction"] = a.fraction;
  manifest.options()["top_n"] = a.top_n ? json(*a.top_n) : json(nullptr);
  manifest.options()["labels"] = a.labels;
  manifest.options()["out"] = a.out;
  manifest.add_input("corpus", a.corpus);
  manifest.add_input("stopwords", a.stopwords);
  manifest.add_output(a.out);
  manifest.write(manifest_path(a.out));
  return kExitOk;
}

// gradcheck

struct GradCheckArgs {
  double epsilon = 1e-5;
  double tolerance = 1e-4;
  std::uint64_t seed = 42;
  bool inject_fault = false;
  std::string out;
};

struct Family {
  const char* name;
  Architecture arch;
  std::size_t classes;
};

int cmd_gradcheck(const GradCheckArgs& a, Streams io) {
  if (!(a.epsilon > 0.0)) throw UsageError("--epsilon must be positive");
  constexpr Family kFamilies[] = {{"JRNN3", Architecture::jrnn, 3},
                                  {"JRNN5", Architecture::jrnn, 5},
                                  {"RNN", Architecture::rnn, 3},
                                  {"LSTM", Architecture::lstm, 3}};
  constexpr LossKind kLosses[] = {LossKind::cross_entropy, LossKind::squared_euclidean};
  constexpr double kAlphas[] = {0.0, 0.5, 1.0};

  std::ostringstream text;
  double worst = 0.0;
  std::size_t failures = 0;
  for (const Family& family : kFamilies) {
    for (const LossKind loss : kLosses) {
      for (const double alpha : kAlphas) {
        GradCheckSpec spec;
        spec.architecture = family.arch;
        spec.input_dim = 12;
        spec.hidden1 = 8;
        spec.hidden2 = 8;
        spec.classes = family.classes;
        spec.length = 5;
        spec.epsilon = a.epsilon;
        spec.alpha = alpha;
        spec.loss = loss;
        spec.seed = derive_seed(a.seed, std::string(family.name) + "/" + std::string(to_string(loss)) +
                                            "/" + shortest(alpha));
        spec.inject_fault = a.inject_fault;
        const GradCheckResult r = grad_check(spec);
        const bool ok = r.max_relative_error < a.tolerance;
        failures += ok ? 0 : 1;
        worst = std::max(worst, r.max_relative_error);
        char line[160];
        std::snprintf(line, sizeof(line), "%-6s %-7s alpha=%-4s max_rel_err=%.3e (%s[%zu]) %s\n",
                      family.name, std::string(to_string(loss)).c_str(), shortest(alpha).c_str(),
                      r.max_relative_error, r.worst_tensor.c_str(), r.worst_index,
                      ok ? "ok" : "FAIL");
        text << line;
      }
    }
  }
  char summary[96];
  std::snprintf(summary, sizeof(summary), "max relative error %.3e, %zu failing configuration(s)\n",
                worst, failures);
  text << summary;
  io.out << text.str();

  if (!a.out.empty()) {
    open_output(a.out) << text.str();
    Manifest manifest("gradcheck");
    manifest.options()["epsilon"] = a.epsilon;
    manifest.options()["tolerance"] = a.tolerance;
    manifest.options()["inject_fault"] = a.inject_fault;
    manifest.options()["out"] = a.out;
    manifest.set_seed(a.seed);
    manifest.add_output(a.out);
    manifest.write(manifest_path(a.out));
  }
  return failures == 0 ? kExitOk : kExitVerificationFailed;
}

// sweep / compare

struct SweepArgs {
  NetworkOptions net;
  std::string test;
  std::vector<double> alphas{std::begin(kDefaultAlphas), std::end(kDefaultAlphas)};
  std::string out;
};

int cmd_sweep(const SweepArgs& a, Streams io) {
  if (a.net.arch != "jrnn") throw UsageError("sweep requires --arch jrnn");
  const TrainConfig config = a.net.config();
  const EmbeddingTable table = load_embeddings(a.net.embeddings);
  const TrainingData data = load_training_data(a.net);
  const Corpus test = load_corpus(a.test, a.net.label_scheme());
  const FeatureConfig features =
      make_feature_config(data.train, a.net.use_pos, a.net.use_ne, a.net.use_ds, a.net.window);

  const Report report = alpha_sweep(data.train, data.val, test, table, features, config, a.alphas);
  io.out << render_table(report);
  if (a.out.empty()) return kExitOk;

  Manifest manifest("sweep");
  a.net.record(manifest.options());
  manifest.options().erase("alpha");
  manifest.options()["alphas"] = a.alphas;
  manifest.options()["out"] = a.out;
  manifest.set_seed(a.net.seed);
  a.net.add_inputs(manifest);
  manifest.add_input("test", a.test);
  write_report(report, a.out, manifest);
  return kExitOk;
}

struct CompareArgs {
  NetworkOptions net;
  std::string test;
  std::vector<std::string> methods = default_methods();
  std::string stopwords;
  std::string synsets;
  std::size_t n = 3;
  std::size_t m = 3;
  double fraction = 1.0 / 3.0;
  std::string out;
};

int cmd_compare(const CompareArgs& a, Streams io) {
  if (a.net.scheme != "kp3") throw UsageError("compare reads KP3 corpora; JRNN5 rows convert internally");
  bool needs_stopwords = false;
  bool needs_synsets = false;
  for (const std::string& name : a.methods) {
    const MethodSpec spec = parse_method(name);
    needs_stopwords |= spec.kind == MethodSpec::Kind::rake || spec.augmented;
    needs_synsets |= spec.augmented;
  }
  if (needs_stopwords && a.stopwords.empty()) throw UsageError("--stopwords is required for RAKE and augmentation rows");
  if (needs_synsets && a.synsets.empty()) throw UsageError("--synsets is required for augmentation rows");

  const TrainConfig config = a.net.config();
  const EmbeddingTable table = load_embeddings(a.net.embeddings);
  const TrainingData data = load_training_data(a.net);
  const Corpus test = load_corpus(a.test, Scheme::kp3);
  const FeatureConfig features = make_feature_config(data.train, false, false, false, a.net.window);

  std::optional<StopwordSet> stopwords;
  std::optional<SynsetDB> synsets;
  if (!a.stopwords.empty()) stopwords = load_stopwords(a.stopwords);
  if (!a.synsets.empty()) synsets = load_synsets(a.synsets);
  CompareResources resources;
  resources.stopwords = stopwords ? &*stopwords : nullptr;
  resources.synsets = synsets ? &*synsets : nullptr;
  resources.augment = AugmentConfig{a.n, a.m, derive_seed(a.net.seed, "augment")};
  resources.augment.validate();
  resources.rake_fraction = a.fraction;

  const Report report =
      compare_methods(data.train, data.val, test, table, features, config, a.methods, resources);
  io.out << render_table(report);
  if (a.out.empty()) return kExitOk;

  Manifest manifest("compare");
  a.net.record(manifest.options());
  for (const char* key : {"arch", "scheme", "use_pos", "use_ne", "use_ds"}) manifest.options().erase(key);
  manifest.options()["methods"] = a.methods;
  manifest.options()["n"] = a.n;
  manifest.options()["m"] = a.m;
  manifest.options()["fraction"] = a.fraction;
  manifest.options()["out"] = a.out;
  manifest.set_seed(a.net.seed);
  a.net.add_inputs(manifest);
  manifest.add_input("test", a.test);
  if (!a.stopwords.empty()) manifest.add_input("stopwords", a.stopwords);
  if (!a.synsets.empty()) manifest.add_input("synsets", a.synsets);
  write_report(report, a.out, manifest);
  return kExitOk;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Keyphrase extraction toolkit: joint-layer RNN tagger, baselines and evaluation",
               "kpx"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  TrainArgs train_args;
  CLI::App* train_cmd = app.add_subcommand("train", "Train a tagger and save it");
  train_args.net.bind(*train_cmd);
  train_cmd->add_option("--out,--model", train_args.out, "Model file to write")->capture_default_str();

  PredictArgs predict_args;
  CLI::App* predict_cmd = app.add_subcommand("predict", "Label a corpus with a trained model");
  predict_cmd->add_option("--model", predict_args.model)->required()->check(CLI::ExistingFile);
  predict_cmd->add_option("--corpus", predict_args.corpus, "Tweets to label (labels optional)")
      ->required()
      ->check(CLI::ExistingFile);
  predict_cmd->add_option("--embeddings", predict_args.embeddings)->required()->check(CLI::ExistingFile);
  predict_cmd->add_option("--scheme", predict_args.scheme, "Expected model scheme")
      ->check(CLI::IsMember({"kp3", "kp5"}));
  predict_cmd->add_option("--out", predict_args.out, "Output file (default: stdout)");
  predict_cmd->add_flag("--phrases", predict_args.phrases, "Emit one keyphrase per line");

  EvalArgs eval_args;
  CLI::App* eval_cmd = app.add_subcommand("eval", "Score trained models on a test corpus");
  eval_cmd->add_option("--model", eval_args.models, "Model file (repeatable)")
      ->required()
      ->check(CLI::ExistingFile);
  eval_cmd->add_option("--test", eval_args.test)->required()->check(CLI::ExistingFile);
  eval_cmd->add_option("--embeddings", eval_args.embeddings)->required()->check(CLI::ExistingFile);
  eval_cmd->add_option("--scheme", eval_args.scheme, "Label scheme of the test corpus")
      ->capture_default_str()
      ->check(CLI::IsMember({"kp3", "kp5"}));
  eval_cmd->add_option("--out", eval_args.out, "Report prefix (.txt, .tsv)");
  eval_cmd->add_option("--jobs", eval_args.jobs, "Evaluation threads")->capture_default_str();

  AugmentArgs augment_args;
  CLI::App* augment_cmd = app.add_subcommand("augment", "Write a synonym-augmented copy of a corpus");
  augment_cmd->add_option("--corpus", augment_args.corpus)->required()->check(CLI::ExistingFile);
  augment_cmd->add_option("--synsets", augment_args.synsets)->required()->check(CLI::ExistingFile);
  augment_cmd->add_option("--stopwords", augment_args.stopwords)->required()->check(CLI::ExistingFile);
  augment_cmd->add_option("--scheme", augment_args.scheme)
      ->capture_default_str()
      ->check(CLI::IsMember({"kp3", "kp5"}));
  augment_cmd->add_option("--n", augment_args.n, "Variants per tweet")->capture_default_str();
  augment_cmd->add_option("--m", augment_args.m, "Replacements per variant")->capture_default_str();
  augment_cmd->add_option("--seed", augment_args.seed)->capture_default_str();
  augment_cmd->add_option("--out", augment_args.out, "Corpus file to write")->required();

  RakeArgs rake_args;
  CLI::App* rake_cmd = app.add_subcommand("rake", "Extract keyphrases with RAKE");
  rake_cmd->add_option("--corpus", rake_args.corpus)->required()->check(CLI::ExistingFile);
  rake_cmd->add_option("--stopwords", rake_args.stopwords)->required()->check(CLI::ExistingFile);
  rake_cmd->add_option("--scheme", rake_args.scheme)
      ->capture_default_str()
      ->check(CLI::IsMember({"kp3", "kp5"}));
  rake_cmd->add_option("--fraction", rake_args.fraction, "Share of candidates selected")
      ->capture_default_str();
  rake_cmd->add_option("--top-n", rake_args.top_n, "Select exactly this many candidates");
  rake_cmd->add_flag("--labels", rake_args.labels, "Emit the corpus with KP3 labels instead");
  rake_cmd->add_option("--out", rake_args.out, "Output file (default: stdout)");

  GradCheckArgs grad_args;
  CLI::App* grad_cmd = app.add_subcommand("gradcheck", "Check analytic gradients numerically");
  grad_cmd->add_option("--epsilon", grad_args.epsilon)->capture_default_str();
  grad_cmd->add_option("--tolerance", grad_args.tolerance)->capture_default_str();
  grad_cmd->add_option("--seed", grad_args.seed)->capture_default_str();
  grad_cmd->add_flag("--inject-fault", grad_args.inject_fault, "Perturb analytic gradients");
  grad_cmd->add_option("--out", grad_args.out, "Report file");

  SweepArgs sweep_args;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Train one joint model per alpha");
  sweep_args.net.bind(*sweep_cmd);
  sweep_cmd->add_option("--test", sweep_args.test)->required()->check(CLI::ExistingFile);
  sweep_cmd->add_option("--alphas", sweep_args.alphas)->delimiter(',')->capture_default_str();
  sweep_cmd->add_option("--out", sweep_args.out, "Report prefix (.txt, .tsv)");

  CompareArgs compare_args;
  CLI::App* compare_cmd = app.add_subcommand("compare", "Compare baselines and feature ablations");
  compare_args.net.bind(*compare_cmd);
  compare_cmd->add_option("--test", compare_args.test)->required()->check(CLI::ExistingFile);
  compare_cmd->add_option("--methods", compare_args.methods, "Comma-separated method names")
      ->delimiter(',');
  compare_cmd->add_option("--stopwords", compare_args.stopwords)->check(CLI::ExistingFile);
  compare_cmd->add_option("--synsets", compare_args.synsets)->check(CLI::ExistingFile);
  compare_cmd->add_option("--n", compare_args.n)->capture_default_str();
  compare_cmd->add_option("--m", compare_args.m)->capture_default_str();
  compare_cmd->add_option("--fraction", compare_args.fraction, "RAKE selection share")
      ->capture_default_str();
  compare_cmd->add_option("--out", compare_args.out, "Report prefix (.txt, .tsv)");

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const Streams io{out, err};
  try {
    if (train_cmd->parsed()) return cmd_train(train_args, io);
    if (predict_cmd->parsed()) return cmd_predict(predict_args, io);
    if (eval_cmd->parsed()) return cmd_eval(eval_args, io);
    if (augment_cmd->parsed()) return cmd_augment(augment_args, io);
    if (rake_cmd->parsed()) return cmd_rake(rake_args, io);
    if (grad_cmd->parsed()) return cmd_gradcheck(grad_args, io);
    if (sweep_cmd->parsed()) return cmd_sweep(sweep_args, io);
    if (compare_cmd->parsed()) return cmd_compare(compare_args, io);
  } catch (const std::exception& e) {
    err << "kpx: error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace kpx::cli
