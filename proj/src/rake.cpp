#include "kpx/rake.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace kpx {

void RakeConfig::validate() const {
  if (top_n) {
    if (*top_n < 1) throw std::invalid_argument("RAKE top-N must be at least 1");
  } else if (!(top_fraction > 0.0 && top_fraction <= 1.0)) {
    throw std::invalid_argument("RAKE top fraction must lie in (0, 1]");
  }
}

bool is_punctuation(std::string_view form) {
  if (form.empty()) return false;
  return std::all_of(form.begin(), form.end(), [](char c) {
    const auto u = static_cast<unsigned char>(c);
    return u < 0x80 && std::ispunct(u);
  });
}

std::vector<PhraseSpan> rake_candidates(const Tweet& tweet, const StopwordSet& stopwords) {
  std::vector<PhraseSpan> spans;
  bool open = false;
  for (std::size_t t = 0; t < tweet.size(); ++t) {
    const std::string& form = tweet.tokens[t].form;
    if (stopwords.contains(form) || is_punctuation(form)) {
      open = false;
      continue;
    }
    if (open) {
      spans.back().end = t;
    } else {
      spans.push_back({t, t});
      open = true;
    }
  }
  return spans;
}

RakeScores rake_scores(std::span<const PhraseSpan> candidates, const Tweet& tweet) {
  std::map<std::string, double> degree;
  std::map<std::string, double> frequency;
  RakeScores out;
  for (const PhraseSpan& span : candidates) {
    ScoredPhrase phrase{span, {}, 0.0};
    for (std::size_t t = span.start; t <= span.end; ++t) {
      phrase.words.push_back(to_lower_ascii(tweet.tokens[t].form));
    }
    for (const std::string& w : phrase.words) {
      degree[w] += static_cast<double>(span.length());
      frequency[w] += 1.0;
    }
    out.phrases.push_back(std::move(phrase));
  }
  for (const auto& [word, deg] : degree) {
    out.word_scores[word] = deg / frequency[word];
  }
  for (ScoredPhrase& phrase : out.phrases) {
    for (const std::string& w : phrase.words) phrase.score += out.word_scores[w];
  }
  return out;
}

RakeResult rake_extract(const Tweet& tweet, const RakeConfig& config) {
  config.validate();
  const auto candidates = rake_candidates(tweet, config.stopwords);
  RakeScores scores = rake_scores(candidates, tweet);

  RakeResult result;
  result.ranked = std::move(scores.phrases);
  std::stable_sort(result.ranked.begin(), result.ranked.end(),
                   [](const ScoredPhrase& a, const ScoredPhrase& b) { return a.score > b.score; });

  const std::size_t n = result.ranked.size();
  if (config.top_n) {
    result.selected = std::min(*config.top_n, n);
  } else {
    // guard against 3 * (1/3) landing a hair above an integer
    const double wanted = config.top_fraction * static_cast<double>(n);
    result.selected = std::min(n, static_cast<std::size_t>(std::ceil(wanted - 1e-9)));
  }

  std::vector<PhraseSpan> chosen;
  for (std::size_t i = 0; i < result.selected; ++i) chosen.push_back(result.ranked[i].span);
  std::sort(chosen.begin(), chosen.end());
  result.labels = encode_phrases(chosen, tweet.size());
  return result;
}

}  // namespace kpx
