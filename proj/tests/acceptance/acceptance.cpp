// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "kpx/augment.hpp"
#include "kpx/cli.hpp"
#include "kpx/corpus.hpp"
#include "kpx/eval.hpp"
#include "kpx/metrics.hpp"
#include "kpx/model.hpp"
#include "kpx/model_io.hpp"
#include "kpx/params.hpp"
#include "kpx/rake.hpp"
#include "kpx/synthetic.hpp"

using namespace kpx;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

const fs::path kData = KPX_DATA_DIR;

// Collects failure reasons for one criterion.
struct Check {
  std::vector<std::string> failures;
  std::string detail;
  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), f, v);
  return buf;
}

std::string read_bytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int run_cli(const std::vector<std::string>& args, std::string* out = nullptr) {
  std::ostringstream o, e;
  const int code = cli::run(args, o, e);
  if (out) *out = o.str();
  return code;
}

std::vector<Label> random_labels(Rng& rng, std::size_t n, std::size_t classes) {
  std::vector<Label> v(n);
  for (Label& l : v) l = static_cast<Label>(rng.below(classes));
  return v;
}

// 1
void gradient_fidelity(Check& c) {
  const auto start = Clock::now();
  std::string out;
  const int code = run_cli({"gradcheck", "--epsilon", "1e-5"}, &out);
  const double elapsed = seconds_since(start);

  std::size_t configs = 0;
  double worst = 0.0;
  std::istringstream lines(out);
  for (std::string line; std::getline(lines, line);) {
    const auto at = line.find("max_rel_err=");
    if (at == std::string::npos) continue;
    ++configs;
    worst = std::max(worst, std::stod(line.substr(at + 12)));
  }
  c.expect(code == 0, "gradcheck exit status " + std::to_string(code));
  c.expect(configs == 4 * 2 * 3, "expected 24 configurations, saw " + std::to_string(configs));
  c.expect(worst < 1e-4, "max relative error " + fmt("%.3e", worst));
  c.expect(elapsed < 10.0, "runtime " + fmt("%.2f s", elapsed));
  c.detail = std::to_string(configs) + " configs, max rel err " + fmt("%.2e", worst) + ", " +
             fmt("%.2f s", elapsed);
}

// 2
void joint_loss_endpoints(Check& c) {
  Rng rng(2024);
  double worst_endpoint = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t classes = trial % 2 ? 5 : 3;
    JrnnParams p = init_jrnn(6, 5, 4, classes, static_cast<std::uint64_t>(trial));
    JrnnParams::visit(p, [&](std::string_view, Matrix& m) {
      for (double& v : m.values()) v = rng.uniform(-1.0, 1.0);
    });
    const std::size_t len = 1 + rng.below(10);
    Matrix x(len, 6);
    for (double& v : x.values()) v = rng.normal();
    const auto tags = random_labels(rng, len, classes);
    std::vector<Label> importance;
    for (Label t : tags) importance.push_back(t != 0);
    const JrnnCache cache = forward(p, x);
    for (const LossKind kind : {LossKind::cross_entropy, LossKind::squared_euclidean}) {
      double j1 = 0.0, j2 = 0.0;
      for (std::size_t t = 0; t < len; ++t) {
        j1 += distance(cache.y1.row(t), importance[t], kind);
        j2 += distance(cache.y2.row(t), tags[t], kind);
      }
      j1 /= static_cast<double>(len);
      j2 /= static_cast<double>(len);
      worst_endpoint = std::max(worst_endpoint,
                                std::abs(loss_joint(cache, importance, tags, 1.0, kind).total - j1));
      worst_endpoint = std::max(worst_endpoint,
                                std::abs(loss_joint(cache, importance, tags, 0.0, kind).total - j2));
    }
  }
  c.expect(worst_endpoint < 1e-12, "endpoint deviation " + fmt("%.3e", worst_endpoint));

  const JrnnParams zero = zeros_like(init_jrnn(6, 5, 4, 3, 1));
  Matrix x(8, 6);
  for (double& v : x.values()) v = rng.normal();
  const JrnnCache cache = forward(zero, x);
  double worst_ln = 0.0;
  for (std::size_t t = 0; t < 8; ++t) {
    for (Label target = 0; target < 3; ++target) {
      worst_ln = std::max(worst_ln,
                          std::abs(distance(cache.y2.row(t), target, LossKind::cross_entropy) - std::log(3.0)));
    }
    for (Label target = 0; target < 2; ++target) {
      worst_ln = std::max(worst_ln,
                          std::abs(distance(cache.y1.row(t), target, LossKind::cross_entropy) - std::log(2.0)));
    }
  }
  c.expect(worst_ln < 1e-9, "zero-init deviation " + fmt("%.3e", worst_ln));
  c.detail = "endpoint dev " + fmt("%.1e", worst_endpoint) + ", ln2/ln3 dev " + fmt("%.1e", worst_ln);
}

// 3
void overfit_oracle(Check& c) {
  const Corpus corpus = load_corpus(kData / "tiny.tsv", Scheme::kp3);
  const EmbeddingTable table = load_embeddings(kData / "embeddings.txt");
  const FeatureConfig features = make_feature_config(corpus, false, false, false, 3);
  c.expect(corpus.size() == 10, "fixture has " + std::to_string(corpus.size()) + " tweets");

  const auto start = Clock::now();
  for (const Architecture arch : {Architecture::jrnn, Architecture::rnn, Architecture::lstm}) {
    TrainConfig config;
    config.architecture = arch;
    config.hidden1 = config.hidden2 = 32;
    config.max_epochs = 200;
    config.patience = 200;
    std::size_t first_perfect = 0;
    const Model model = train(corpus, corpus, table, features, config, [&](const EpochRecord& r) {
      if (first_perfect == 0 && r.validation.f1 == 1.0) first_perfect = r.epoch;
    });
    const double f1 = evaluate(model_labeler(model, table), corpus).f1;
    const std::string name(to_string(arch));
    c.expect(f1 == 1.0, name + " F1 " + fmt("%.4f", f1));
    c.detail += name + " F1=" + format_metric(f1) + " @" + std::to_string(first_perfect) + "  ";
  }
  const double elapsed = seconds_since(start);
  c.expect(elapsed < 30.0, "runtime " + fmt("%.2f s", elapsed));
  c.detail += fmt("(%.2f s)", elapsed);
}

// 4
void scheme_mapping(Check& c) {
  const std::vector<Label> all{kp5::O, kp5::B, kp5::M, kp5::E, kp5::S};
  c.expect(kp5_to_kp3(all) == std::vector<Label>{0, 1, 2, 2, 1}, "table mismatch");
  Rng rng(4);
  std::size_t bad = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto seq = random_labels(rng, 1 + rng.below(40), 5);
    const auto binary = to_binary_labels(kp5_to_kp3(seq));
    for (std::size_t i = 0; i < seq.size(); ++i) bad += binary[i] != (seq[i] != kp5::O ? 1 : 0);
  }
  c.expect(bad == 0, std::to_string(bad) + " misplaced positives");
  c.detail = "5 symbols, 1000 random sequences";
}

// 5
void round_trip(Check& c) {
  Rng rng(5);
  std::size_t bad_trip = 0, bad_repair = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t len = 1 + rng.below(50);
    std::vector<PhraseSpan> spans;
    for (std::size_t t = rng.below(3); t < len;) {
      const std::size_t end = std::min(len - 1, t + rng.below(4));
      spans.push_back({t, end});
      t = end + 1 + rng.below(4);
    }
    bad_trip += decode_phrases(encode_phrases(spans, len)) != spans;

    const auto raw = random_labels(rng, rng.below(50), 3);
    const auto decoded = decode_phrases(raw);
    try {
      bad_repair += decode_phrases(encode_phrases(decoded, raw.size())) != decoded;
    } catch (const std::exception&) {
      ++bad_repair;
    }
  }
  c.expect(bad_trip == 0, std::to_string(bad_trip) + " round-trip failures");
  c.expect(bad_repair == 0, std::to_string(bad_repair) + " repair failures");
  c.detail = "1000 span lists, 1000 raw sequences";
}

// 6
void augmentation_laws(Check& c) {
  const Corpus corpus = make_synthetic_corpus({.tweets = 1000, .seed = 6, .id_prefix = "aug"});
  const SynsetDB db = load_synsets(kData / "synsets.txt");
  const StopwordSet stop = load_stopwords(kData / "stopwords.txt");
  const AugmentConfig config{3, 3, 42};
  const Corpus out = augment_corpus(corpus, db, stop, config);
  c.expect(out.size() == 4000, "output size " + std::to_string(out.size()));

  std::size_t stopword_edits = 0, over_budget = 0, label_changes = 0, other_fields = 0, edited = 0;
  for (std::size_t i = 0; i < corpus.size() && out.size() == 4000; ++i) {
    const Tweet& parent = corpus.tweets[i];
    c.expect(out.tweets[i] == parent, "original " + parent.id + " altered");
    for (std::size_t k = 0; k < 3; ++k) {
      const Tweet& v = out.tweets[1000 + 3 * i + k];
      std::size_t changed = 0;
      for (std::size_t t = 0; t < parent.size(); ++t) {
        const Token& a = parent.tokens[t];
        const Token& b = v.tokens[t];
        if (a.form != b.form) {
          ++changed;
          stopword_edits += stop.contains(a.form);
        }
        other_fields += a.pos != b.pos || a.ne != b.ne || a.head != b.head || a.deprel != b.deprel;
      }
      edited += changed > 0;
      over_budget += changed > config.m;
      label_changes += v.labels() != parent.labels() ||
                       decode_phrases(v.labels()) != decode_phrases(parent.labels());
    }
  }
  c.expect(stopword_edits == 0, std::to_string(stopword_edits) + " stopword edits");
  c.expect(over_budget == 0, std::to_string(over_budget) + " variants over m");
  c.expect(label_changes == 0, std::to_string(label_changes) + " label changes");
  c.expect(other_fields == 0, std::to_string(other_fields) + " annotation changes");

  std::ostringstream a, b;
  write_corpus(a, out);
  write_corpus(b, augment_corpus(corpus, db, stop, config));
  c.expect(a.str() == b.str(), "second run differs");
  c.detail = "1000 -> " + std::to_string(out.size()) + ", " + std::to_string(edited) +
             " variants edited, byte-identical rerun";
}

// 7
void rake_oracle(Check& c) {
  Tweet t;
  t.id = "rake";
  for (const char* form : {"deep", "learning", "and", "deep", "models"}) {
    t.tokens.push_back({form, "X", "O", std::nullopt, "dep", 0});
  }
  for (std::size_t i = 1; i < t.size(); ++i) t.tokens[i].head = 0;
  const RakeConfig config{StopwordSet{"and"}, 1.0 / 3.0, std::nullopt};

  const auto spans = rake_candidates(t, config.stopwords);
  const RakeScores scores = rake_scores(spans, t);
  const std::map<std::string, double> expected{{"deep", 2.0}, {"learning", 2.0}, {"models", 2.0}};
  c.expect(scores.word_scores == expected, "word scores");
  c.expect(scores.phrases.size() == 2 && scores.phrases[0].score == 4.0 && scores.phrases[1].score == 4.0,
           "phrase scores");
  const RakeResult first = rake_extract(t, config);
  c.expect(first.selected == 1 && first.ranked[0].span == PhraseSpan{0, 1}, "selection");
  c.expect(first.labels == std::vector<Label>{1, 2, 0, 0, 0}, "labels");
  const RakeResult second = rake_extract(t, config);
  c.expect(second.labels == first.labels && second.selected == first.selected, "nondeterministic");
  c.detail = "deep=2 learning=2 models=2, phrases 4/4, earlier selected";
}

// 8
void metrics_oracle(Check& c) {
  Rng rng(8);
  std::size_t mismatches = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + rng.below(40);
    const auto pred = random_labels(rng, n, 3);
    const auto gold = random_labels(rng, n, 3);
    ConfusionCounts brute;
    for (std::size_t i = 0; i < n; ++i) {
      const bool p = pred[i] != 0, g = gold[i] != 0;
      (p ? (g ? brute.tp : brute.fp) : (g ? brute.fn : brute.tn))++;
    }
    const ConfusionCounts got = confusion_counts(pred, gold);
    const MetricsReport m = metrics(got);
    const double P = brute.tp + brute.fp ? double(brute.tp) / double(brute.tp + brute.fp) : 0.0;
    const double R = brute.tp + brute.fn ? double(brute.tp) / double(brute.tp + brute.fn) : 0.0;
    const double F = P + R > 0 ? 2 * P * R / (P + R) : 0.0;
    const double A = double(brute.tp + brute.tn) / double(n);
    mismatches += !(got == brute) || std::abs(m.precision - P) > 1e-15 ||
                  std::abs(m.recall - R) > 1e-15 || std::abs(m.f1 - F) > 1e-15 ||
                  std::abs(m.accuracy - A) > 1e-15;
  }
  c.expect(mismatches == 0, std::to_string(mismatches) + " mismatches");

  const std::vector<Label> pred{1, 2, 0}, gold{1, 0, 0};
  const ConfusionCounts worked = confusion_counts(pred, gold);
  c.expect(worked == ConfusionCounts{1, 1, 1, 0}, "worked example counts");
  const MetricsReport m = metrics(worked);
  const std::string shown = format_metric(m.precision) + " " + format_metric(m.recall) + " " +
                            format_metric(m.f1) + " " + format_metric(m.accuracy);
  c.expect(shown == ".5000 1.0000 .6667 .6667", "worked example metrics " + shown);
  c.detail = "1000 random pairs; worked example P R F1 Acc = " + shown;
}

// 9
void harness_shape(Check& c) {
  const auto start = Clock::now();
  const Corpus corpus = load_corpus(kData / "train.tsv", Scheme::kp3);
  const Corpus test = load_corpus(kData / "test.tsv", Scheme::kp3);
  const EmbeddingTable table = load_embeddings(kData / "embeddings.txt");
  const SynsetDB db = load_synsets(kData / "synsets.txt");
  const StopwordSet stop = load_stopwords(kData / "stopwords.txt");
  c.expect(corpus.size() == 100, "training fixture has " + std::to_string(corpus.size()) + " tweets");
  const auto [train_part, val_part] = split_train_val(corpus, 0.1, 42);
  const FeatureConfig features = make_feature_config(train_part, false, false, false, 3);

  TrainConfig config;
  config.hidden1 = config.hidden2 = 32;

  const Report sweep = alpha_sweep(train_part, val_part, test, table, features, config, kDefaultAlphas);
  const Report sweep_again = alpha_sweep(train_part, val_part, test, table, features, config, kDefaultAlphas);
  c.expect(sweep.rows.size() == 5, "sweep rows " + std::to_string(sweep.rows.size()));
  c.expect(sweep.key_header == "alpha", "sweep header");
  c.expect(render_delimited(sweep) == render_delimited(sweep_again), "sweep not deterministic");

  const std::vector<std::string> methods = default_methods();
  const CompareResources resources{&stop, &db, AugmentConfig{3, 3, 42}, 1.0 / 3.0};
  const Report cmp = compare_methods(train_part, val_part, test, table, features, config, methods, resources);
  const Report cmp_again =
      compare_methods(train_part, val_part, test, table, features, config, methods, resources);
  c.expect(cmp.rows.size() == methods.size(), "compare rows " + std::to_string(cmp.rows.size()));
  for (std::size_t i = 0; i < cmp.rows.size() && i < methods.size(); ++i) {
    c.expect(cmp.rows[i].key == methods[i], "row " + std::to_string(i) + " is " + cmp.rows[i].key);
  }
  c.expect(render_delimited(cmp) == render_delimited(cmp_again), "compare not deterministic");
  const double elapsed = seconds_since(start);
  c.expect(elapsed < 300.0, "runtime " + fmt("%.1f s", elapsed));

  std::cout << render_table(sweep) << render_table(cmp);
  c.detail = "5 sweep rows, " + std::to_string(cmp.rows.size()) + " compare rows, repeated bit-identically, " +
             fmt("%.1f s", elapsed);
}

// 10
void persistence(Check& c) {
  const Corpus corpus = load_corpus(kData / "train.tsv", Scheme::kp3);
  const Corpus test = load_corpus(kData / "test.tsv", Scheme::kp3);
  const EmbeddingTable table = load_embeddings(kData / "embeddings.txt");
  const fs::path dir = fs::temp_directory_path() / "kpx-acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);

  std::size_t differing = 0;
  for (const Architecture arch : {Architecture::jrnn, Architecture::rnn, Architecture::lstm}) {
    TrainConfig config;
    config.architecture = arch;
    config.hidden1 = config.hidden2 = 16;
    config.max_epochs = 5;
    const FeatureConfig features = make_feature_config(corpus, true, true, true, 3);
    const Model model = train(corpus, Corpus{}, table, features, config);
    const fs::path path = dir / (std::string(to_string(arch)) + ".kpx");
    save_model(model, path);
    const Model loaded = load_model(path);
    for (const Tweet& t : test.tweets) {
      const InputSequence in = build_input_sequence(t, table, model.features);
      const Matrix a = tag_distributions(model.params, in.vectors);
      const Matrix b = tag_distributions(loaded.params, in.vectors);
      differing += !(a == b) || predict(model, table, t) != predict(loaded, table, t);
    }
  }
  c.expect(differing == 0, std::to_string(differing) + " tweets differ after reload");

  const std::string out = (dir / "cli.kpx").string();
  const std::vector<std::string> args{"train",      "--corpus",  (kData / "train.tsv").string(),
                                      "--embeddings", (kData / "embeddings.txt").string(),
                                      "--hidden1",  "16",        "--hidden2",
                                      "16",         "--epochs",  "5",
                                      "--use-pos",  "--out",     out};
  c.expect(run_cli(args) == 0, "first CLI run failed");
  const std::string model1 = read_bytes(out), history1 = read_bytes(out + ".history.tsv"),
                    manifest1 = read_bytes(out + ".manifest.json");
  c.expect(run_cli(args) == 0, "second CLI run failed");
  c.expect(read_bytes(out) == model1, "model bytes differ");
  c.expect(read_bytes(out + ".history.tsv") == history1, "history differs");
  c.expect(read_bytes(out + ".manifest.json") == manifest1, "manifest differs");
  fs::remove_all(dir);
  c.detail = "3 families reload bit-identically; CLI rerun reproduces model, history, manifest";
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<void(Check&)> run;
  };
  const std::vector<Criterion> criteria{
      {1, "gradient fidelity", gradient_fidelity},
      {2, "joint-loss endpoints", joint_loss_endpoints},
      {3, "overfit oracle", overfit_oracle},
      {4, "scheme mapping", scheme_mapping},
      {5, "decode/encode round trip", round_trip},
      {6, "augmentation laws", augmentation_laws},
      {7, "RAKE oracle", rake_oracle},
      {8, "metrics oracle", metrics_oracle},
      {9, "harness shape", harness_shape},
      {10, "determinism and persistence", persistence},
  };

  std::vector<std::string> summary;
  int failed = 0;
  for (const Criterion& criterion : criteria) {
    Check check;
    try {
      criterion.run(check);
    } catch (const std::exception& e) {
      check.failures.push_back(std::string("exception: ") + e.what());
    }
    const bool ok = check.failures.empty();
    failed += !ok;
    std::string line = std::string(ok ? "PASS" : "FAIL") + " [" + std::to_string(criterion.id) + "] " +
                       criterion.name + ": ";
    if (ok) {
      line += check.detail;
    } else {
      for (std::size_t i = 0; i < check.failures.size(); ++i) line += (i ? "; " : "") + check.failures[i];
    }
    summary.push_back(line);
    std::cout << line << std::endl;
  }
  std::cout << "\nSummary\n";
  for (const std::string& line : summary) std::cout << line << '\n';
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << '\n';
  return failed == 0 ? 0 : 1;
}
