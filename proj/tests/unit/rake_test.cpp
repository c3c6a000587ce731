#include <doctest.h>

#include <algorithm>
#include <map>

#include "kpx/rake.hpp"
#include "kpx/synthetic.hpp"
#include "support.hpp"

using namespace kpx;

namespace {

const StopwordSet kStop{"and", "di", "is"};

RakeConfig config(double fraction = 1.0 / 3.0, std::optional<std::size_t> top_n = std::nullopt) {
  return RakeConfig{kStop, fraction, top_n};
}

}  // namespace

TEST_CASE("candidates are maximal non-stopword runs") {
  CHECK(rake_candidates(test::make_tweet({"di", "bank", "bagus"}), StopwordSet{"di"}) ==
        std::vector<PhraseSpan>{{1, 2}});
  CHECK(rake_candidates(test::make_tweet({"di", "and"}), kStop).empty());
  CHECK(rake_candidates(test::make_tweet({"a", "b", "c"}), kStop) == std::vector<PhraseSpan>{{0, 2}});
  CHECK(rake_candidates(test::make_tweet({"a", ",", "b", "!", "!"}), kStop) ==
        std::vector<PhraseSpan>{{0, 0}, {2, 2}});
}

TEST_CASE("deep learning and deep models") {
  const Tweet t = test::make_tweet({"Deep", "learning", "and", "deep", "models"});
  const auto spans = rake_candidates(t, kStop);
  const RakeScores s = rake_scores(spans, t);
  CHECK(s.word_scores == std::map<std::string, double>{{"deep", 2}, {"learning", 2}, {"models", 2}});
  REQUIRE(s.phrases.size() == 2);
  CHECK(s.phrases[0].score == 4.0);
  CHECK(s.phrases[1].score == 4.0);

  const RakeResult r = rake_extract(t, config());
  CHECK(r.selected == 1);
  CHECK(r.ranked[0].span == PhraseSpan{0, 1});
  CHECK(r.labels == std::vector<Label>{1, 2, 0, 0, 0});
}

TEST_CASE("scores against a brute-force counter") {
  Rng rng(31);
  const std::vector<std::string> vocab{"a", "b", "c", "d", "and", "is", ","};
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<std::string> forms;
    for (std::size_t i = 0, n = 1 + rng.below(15); i < n; ++i) forms.push_back(vocab[rng.below(vocab.size())]);
    const Tweet t = test::make_tweet(forms);
    const auto spans = rake_candidates(t, kStop);
    const RakeScores s = rake_scores(spans, t);

    std::map<std::string, double> freq, deg;
    for (const PhraseSpan& p : spans) {
      for (std::size_t i = p.start; i <= p.end; ++i) {
        freq[forms[i]] += 1;
        deg[forms[i]] += static_cast<double>(p.length());
      }
    }
    for (const auto& [w, f] : freq) REQUIRE(s.word_scores.at(w) == deg[w] / f);
    for (const ScoredPhrase& p : s.phrases) {
      double sum = 0.0;
      for (const std::string& w : p.words) sum += s.word_scores.at(w);
      REQUIRE(p.score == sum);
    }

    const RakeResult r = rake_extract(t, config(0.5));
    double min_selected = 1e300, max_rejected = -1.0;
    for (std::size_t i = 0; i < r.ranked.size(); ++i) {
      (i < r.selected ? min_selected : max_rejected) =
          i < r.selected ? std::min(min_selected, r.ranked[i].score) : std::max(max_rejected, r.ranked[i].score);
    }
    REQUIRE(min_selected >= max_rejected);
    std::vector<PhraseSpan> chosen;
    for (std::size_t i = 0; i < r.selected; ++i) chosen.push_back(r.ranked[i].span);
    std::sort(chosen.begin(), chosen.end());
    REQUIRE(decode_phrases(r.labels) == chosen);
  }
}

TEST_CASE("selection size and ties") {
  const Tweet t = test::make_tweet({"x", "and", "y", "and", "z"});
  CHECK(rake_extract(t, config()).selected == 1);
  CHECK(rake_extract(t, config()).ranked[0].span == PhraseSpan{0, 0});
  CHECK(rake_extract(t, config(2.0 / 3.0)).selected == 2);
  CHECK(rake_extract(t, config(1.0, 1)).selected == 1);
  CHECK(rake_extract(test::make_tweet({"and"}), config()).labels == std::vector<Label>{0});

  const Tweet single = test::make_tweet({"atm"});
  CHECK(rake_scores(rake_candidates(single, kStop), single).phrases[0].score == 1.0);

  RakeConfig bad = config(0.0);
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = config(0.5, 0);
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("duplicate phrases leave word scores unchanged") {
  const Tweet once = test::make_tweet({"deep", "learning"});
  const Tweet twice = test::make_tweet({"deep", "learning", "and", "deep", "learning"});
  const auto a = rake_scores(rake_candidates(once, kStop), once);
  const auto b = rake_scores(rake_candidates(twice, kStop), twice);
  CHECK(a.word_scores == b.word_scores);
}
