#include <doctest.h>

#include <sstream>

#include "kpx/eval.hpp"
#include "kpx/model.hpp"
#include "kpx/model_io.hpp"
#include "kpx/synthetic.hpp"
#include "support.hpp"

using namespace kpx;

namespace {

struct Fixture {
  Corpus corpus = make_synthetic_corpus({.tweets = 10, .seed = 9});
  EmbeddingTable table = make_synthetic_embeddings(16, 11);
  FeatureConfig features = make_feature_config(corpus, false, false, false, 3);
};

TrainConfig small_config(Architecture arch) {
  TrainConfig c;
  c.architecture = arch;
  c.hidden1 = 32;
  c.hidden2 = 32;
  c.max_epochs = 200;
  c.patience = 200;
  return c;
}

double corpus_f1(const Model& m, const EmbeddingTable& table, const Corpus& c) {
  return evaluate(model_labeler(m, table), c).f1;
}

}  // namespace

TEST_CASE("each family memorizes a small corpus") {
  const Fixture fx;
  for (const Architecture arch : {Architecture::jrnn, Architecture::rnn, Architecture::lstm}) {
    CAPTURE(to_string(arch));
    const Model m = train(fx.corpus, Corpus{Scheme::kp3, {}}, fx.table, fx.features, small_config(arch));
    CHECK(corpus_f1(m, fx.table, fx.corpus) == 1.0);
    for (const Tweet& t : fx.corpus.tweets) {
      CHECK(to_binary_labels(predict(m, fx.table, t)) == to_binary_labels(t.labels()));
    }
  }
}

TEST_CASE("training is deterministic for a seed") {
  const Fixture fx;
  TrainConfig c = small_config(Architecture::jrnn);
  c.max_epochs = 3;
  const Model a = train(fx.corpus, fx.corpus, fx.table, fx.features, c);
  const Model b = train(fx.corpus, fx.corpus, fx.table, fx.features, c);
  CHECK(a.history == b.history);
  CHECK(std::get<JrnnParams>(a.params) == std::get<JrnnParams>(b.params));
  c.seed = 43;
  const Model d = train(fx.corpus, fx.corpus, fx.table, fx.features, c);
  CHECK_FALSE(std::get<JrnnParams>(a.params) == std::get<JrnnParams>(d.params));
}

TEST_CASE("patience bounds the number of epochs") {
  const Fixture fx;
  TrainConfig c = small_config(Architecture::rnn);
  c.patience = 0;
  CHECK(train(fx.corpus, fx.corpus, fx.table, fx.features, c).history.size() == 1);
  c.patience = 2;
  c.max_epochs = 30;
  const Model m = train(fx.corpus, fx.corpus, fx.table, fx.features, c);
  // stopped either at the cap or two epochs after the best F1
  std::size_t best = 0;
  for (std::size_t i = 0; i < m.history.size(); ++i) {
    if (m.history[i].validation.f1 > m.history[best].validation.f1) best = i;
  }
  CHECK((m.history.size() == 30 || m.history.size() == best + 3));
}

TEST_CASE("the kept parameters are the best validation epoch") {
  const Fixture fx;
  TrainConfig c = small_config(Architecture::jrnn);
  c.max_epochs = 6;
  c.learning_rate = 0.5;
  const Model m = train(fx.corpus, fx.corpus, fx.table, fx.features, c);
  double best = 0.0;
  for (const EpochRecord& r : m.history) best = std::max(best, r.validation.f1);
  CHECK(corpus_f1(m, fx.table, fx.corpus) == best);
}

TEST_CASE("five-class joint model trains on converted labels") {
  const Fixture fx;
  const Corpus kp5 = convert_scheme(fx.corpus, Scheme::kp5);
  TrainConfig c = small_config(Architecture::jrnn);
  c.scheme = Scheme::kp5;
  const Model m = train(kp5, Corpus{Scheme::kp5, {}}, fx.table, fx.features, c);
  CHECK(corpus_f1(m, fx.table, kp5) == 1.0);
  CHECK(to_binary_labels(predict_kp3(m, fx.table, kp5.tweets[0])) ==
        to_binary_labels(fx.corpus.tweets[0].labels()));
}

TEST_CASE("training input validation") {
  const Fixture fx;
  TrainConfig c = small_config(Architecture::jrnn);
  CHECK_THROWS_AS(train(Corpus{}, Corpus{}, fx.table, fx.features, c), std::invalid_argument);
  CHECK_THROWS_AS(train(convert_scheme(fx.corpus, Scheme::kp5), Corpus{}, fx.table, fx.features, c),
                  std::invalid_argument);
  c.alpha = 2.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = small_config(Architecture::jrnn);
  c.hidden1 = 0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = small_config(Architecture::jrnn);
  c.learning_rate = -1;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("prediction length always equals tweet length") {
  const Fixture fx;
  const Model m = make_model(fx.features, 16, small_config(Architecture::lstm));
  const Corpus other = make_synthetic_corpus({.tweets = 20, .seed = 77});
  for (const Tweet& t : other.tweets) CHECK(predict(m, fx.table, t).size() == t.size());
  const EmbeddingTable wrong(3, {{"bank", {1.0, 2.0, 3.0}}});
  CHECK_THROWS_AS(predict(m, wrong, other.tweets[0]), std::invalid_argument);
}

TEST_CASE("model files round trip exactly") {
  const Fixture fx;
  TrainConfig c = small_config(Architecture::jrnn);
  c.max_epochs = 4;
  const FeatureConfig features = make_feature_config(fx.corpus, true, true, true, 3);
  const Model m = train(fx.corpus, fx.corpus, fx.table, features, c);
  std::stringstream buffer;
  write_model(buffer, m);
  const Model back = read_model(buffer);
  CHECK(back.config == m.config);
  CHECK(back.features == m.features);
  CHECK(back.history == m.history);
  CHECK(std::get<JrnnParams>(back.params) == std::get<JrnnParams>(m.params));
  for (const Tweet& t : fx.corpus.tweets) CHECK(predict(back, fx.table, t) == predict(m, fx.table, t));

  for (const Architecture arch : {Architecture::rnn, Architecture::lstm}) {
    const Model base = make_model(fx.features, 16, small_config(arch));
    std::stringstream b;
    write_model(b, base);
    CHECK(read_model(b).params == base.params);
  }
}

TEST_CASE("damaged model files are rejected") {
  const Fixture fx;
  const Model m = make_model(fx.features, 16, small_config(Architecture::rnn));
  std::ostringstream out;
  write_model(out, m);
  const std::string bytes = out.str();

  auto read = [](const std::string& s) {
    std::istringstream in(s);
    return read_model(in);
  };
  CHECK_NOTHROW(read(bytes));
  CHECK_THROWS_AS(read(bytes.substr(0, bytes.size() / 2)), CorruptModelError);
  CHECK_THROWS_AS(read(bytes.substr(0, bytes.size() - 1)), CorruptModelError);
  CHECK_THROWS_AS(read(bytes + "x"), CorruptModelError);
  CHECK_THROWS_AS(read("NOTAMODEL"), ModelFormatError);

  std::string future = bytes;
  future[8] = 2;  // version field follows the 8-byte magic
  CHECK_THROWS_AS(read(future), ModelVersionError);
}
