#include "kpx/eval.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace kpx {
namespace {

std::string upper(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
  }
  return out;
}

std::string format_alpha(double alpha) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), alpha);
  std::string s(buf, ptr);
  if (s.starts_with("0.")) s.erase(0, 1);
  return s;
}

ConfusionCounts count_range(const Labeler& labeler, const Corpus& corpus, std::size_t begin,
                            std::size_t end) {
  ConfusionCounts counts;
  for (std::size_t i = begin; i < end; ++i) {
    const Tweet& tweet = corpus.tweets[i];
    counts += confusion_counts(labeler(tweet), kp3_labels(tweet, corpus.scheme));
  }
  return counts;
}

template <class Pick>
std::size_t best_row(const std::vector<ReportRow>& rows, Pick pick) {
  if (rows.empty()) throw std::logic_error("report has no rows");
  std::size_t best = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (pick(rows[i].metrics) > pick(rows[best].metrics)) best = i;
  }
  return best;
}

}  // namespace

Labeler model_labeler(const Model& model, const EmbeddingTable& table) {
  return [&model, &table](const Tweet& tweet) { return predict_kp3(model, table, tweet); };
}

Labeler rake_labeler(RakeConfig config) {
  config.validate();
  return [config = std::move(config)](const Tweet& tweet) {
    return rake_extract(tweet, config).labels;
  };
}

ConfusionCounts evaluate_counts(const Labeler& labeler, const Corpus& corpus, unsigned jobs) {
  const std::size_t n = corpus.size();
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (jobs == 1) return count_range(labeler, corpus, 0, n);

  std::vector<ConfusionCounts> partial(jobs);
  {
    std::vector<std::jthread> workers;
    for (unsigned j = 0; j < jobs; ++j) {
      const std::size_t begin = n * j / jobs;
      const std::size_t end = n * (j + 1) / jobs;
      workers.emplace_back([&, j, begin, end] { partial[j] = count_range(labeler, corpus, begin, end); });
    }
  }
  ConfusionCounts total;
  for (const auto& c : partial) total += c;
  return total;
}

MetricsReport evaluate(const Labeler& labeler, const Corpus& corpus, unsigned jobs) {
  return metrics(evaluate_counts(labeler, corpus, jobs));
}

std::size_t Report::best_f1_row() const {
  return best_row(rows, [](const MetricsReport& m) { return m.f1; });
}

std::size_t Report::best_accuracy_row() const {
  return best_row(rows, [](const MetricsReport& m) { return m.accuracy; });
}

std::string format_metric(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", value);
  std::string s(buf);
  if (s.starts_with("0.")) s.erase(0, 1);
  return s;
}

std::string render_table(const Report& report) {
  std::size_t key_width = report.key_header.size();
  for (const auto& row : report.rows) key_width = std::max(key_width, row.key.size());
  const std::size_t best_f1 = report.rows.empty() ? 0 : report.best_f1_row();
  const std::size_t best_acc = report.rows.empty() ? 0 : report.best_accuracy_row();

  std::ostringstream out;
  auto cell = [&](const std::string& text, bool marked) {
    std::string s = text + (marked ? "*" : " ");
    out << "  " << std::string(s.size() < 8 ? 8 - s.size() : 0, ' ') << s;
  };
  out << report.key_header << std::string(key_width - report.key_header.size(), ' ');
  for (const char* h : {"P", "R", "F1", "Acc"}) cell(h, false);
  out << '\n';
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    const auto& row = report.rows[i];
    out << row.key << std::string(key_width - row.key.size(), ' ');
    cell(format_metric(row.metrics.precision), false);
    cell(format_metric(row.metrics.recall), false);
    cell(format_metric(row.metrics.f1), i == best_f1);
    cell(format_metric(row.metrics.accuracy), i == best_acc);
    out << '\n';
  }
  return out.str();
}

std::string render_delimited(const Report& report) {
  std::ostringstream out;
  out << report.key_header << "\tP\tR\tF1\tAcc\n";
  for (const auto& row : report.rows) {
    out << row.key << '\t' << format_metric(row.metrics.precision) << '\t'
        << format_metric(row.metrics.recall) << '\t' << format_metric(row.metrics.f1) << '\t'
        << format_metric(row.metrics.accuracy) << '\n';
  }
  return out.str();
}

Report alpha_sweep(const Corpus& train_corpus, const Corpus& val, const Corpus& test,
                   const EmbeddingTable& table, const FeatureConfig& features,
                   const TrainConfig& base, std::span<const double> alphas) {
  if (alphas.empty()) throw std::invalid_argument("alpha sweep needs at least one alpha");
  if (base.architecture != Architecture::jrnn) {
    throw std::invalid_argument("alpha sweep applies to the joint-layer architecture only");
  }
  for (double a : alphas) {
    if (!(a >= 0.0 && a <= 1.0)) throw std::invalid_argument("alpha must lie in [0, 1]");
  }
  const Corpus train_in = convert_scheme(train_corpus, base.scheme);
  const Corpus val_in = convert_scheme(val, base.scheme);

  Report report{"alpha", {}};
  for (double alpha : alphas) {
    TrainConfig config = base;
    config.alpha = alpha;
    const Model model = train(train_in, val_in, table, features, config);
    report.rows.push_back(
        {format_alpha(alpha), evaluate(model_labeler(model, table), test), train_in.size()});
  }
  return report;
}

MethodSpec parse_method(std::string_view name) {
  MethodSpec spec;
  spec.name = std::string(name);
  std::vector<std::string> parts;
  {
    std::string token;
    for (char c : upper(name)) {
      if (c == '-') {
        parts.push_back(token);
        token.clear();
      } else {
        token += c;
      }
    }
    parts.push_back(token);
  }
  const auto fail = [&] { throw std::invalid_argument("unknown method: " + std::string(name)); };
  if (parts.empty() || parts.front().empty()) fail();

  const std::string& head = parts.front();
  std::size_t next = 1;
  if (head == "RAKE") {
    spec.kind = MethodSpec::Kind::rake;
    if (parts.size() != 1) fail();
    return spec;
  }
  if (head == "RNN") spec.kind = MethodSpec::Kind::rnn;
  else if (head == "LSTM") spec.kind = MethodSpec::Kind::lstm;
  else if (head == "JRNN5") spec.kind = MethodSpec::Kind::jrnn5;
  else if (head == "JRNN3" || head == "JRNN") spec.kind = MethodSpec::Kind::jrnn3;
  else fail();

  if (next < parts.size() && parts[next] == "WE") ++next;
  for (; next < parts.size(); ++next) {
    if (spec.kind != MethodSpec::Kind::jrnn3) fail();
    const std::string& p = parts[next];
    bool* flag = nullptr;
    if (p == "POS") flag = &spec.use_pos;
    else if (p == "NE") flag = &spec.use_ne;
    else if (p == "DS") flag = &spec.use_ds;
    else if (p == "AUGMENTATION" || p == "AUG") flag = &spec.augmented;
    if (flag == nullptr || *flag) fail();
    *flag = true;
  }
  return spec;
}

Report compare_methods(const Corpus& train_corpus, const Corpus& val, const Corpus& test,
                       const EmbeddingTable& table, const FeatureConfig& features,
                       const TrainConfig& config, std::span<const std::string> methods,
                       const CompareResources& resources) {
  std::vector<MethodSpec> specs;
  for (const std::string& m : methods) specs.push_back(parse_method(m));

  Report report{"Method", {}};
  for (const MethodSpec& spec : specs) {
    if (spec.kind == MethodSpec::Kind::rake) {
      if (resources.stopwords == nullptr) {
        throw std::invalid_argument("RAKE needs a stopword list");
      }
      RakeConfig rake{*resources.stopwords, resources.rake_fraction, std::nullopt};
      report.rows.push_back({spec.name, evaluate(rake_labeler(std::move(rake)), test), 0});
      continue;
    }

    TrainConfig tc = config;
    FeatureConfig fc = features;
    fc.use_pos = spec.use_pos;
    fc.use_ne = spec.use_ne;
    fc.use_ds = spec.use_ds;
    tc.scheme = Scheme::kp3;
    switch (spec.kind) {
      case MethodSpec::Kind::rnn:
        tc.architecture = Architecture::rnn;
        break;
      case MethodSpec::Kind::lstm:
        tc.architecture = Architecture::lstm;
        break;
      case MethodSpec::Kind::jrnn5:
        tc.architecture = Architecture::jrnn;
        tc.scheme = Scheme::kp5;
        break;
      default:
        tc.architecture = Architecture::jrnn;
        break;
    }

    Corpus train_in = convert_scheme(train_corpus, tc.scheme);
    if (spec.augmented) {
      if (resources.stopwords == nullptr || resources.synsets == nullptr) {
        throw std::invalid_argument("augmentation needs synset and stopword files");
      }
      train_in = augment_corpus(train_in, *resources.synsets, *resources.stopwords,
                                resources.augment);
    }
    const Model model = train(train_in, convert_scheme(val, tc.scheme), table, fc, tc);
    report.rows.push_back({spec.name, evaluate(model_labeler(model, table), test), train_in.size()});
  }
  return report;
}

std::vector<std::string> default_methods() {
  return {"RAKE",           "RNN-WE",          "LSTM-WE",
          "JRNN5-WE",       "JRNN3-WE",        "JRNN3-WE-POS",
          "JRNN3-WE-NE",    "JRNN3-WE-DS",     "JRNN3-WE-POS-NE",
          "JRNN3-WE-POS-DS", "JRNN3-WE-NE-DS", "JRNN3-WE-NE-POS-DS",
          "JRNN3-WE-NE-POS-DS-Augmentation"};
}

}  // namespace kpx
