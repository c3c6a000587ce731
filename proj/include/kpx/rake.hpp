#pragma once

// RAKE keyword extraction: candidate phrases are maximal runs of tokens that
// are neither stopwords nor punctuation; each word scores deg(w) / freq(w)
// over the candidates and a phrase scores the sum of its words. Words are
// compared lowercased.

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kpx/corpus.hpp"
#include "kpx/stopwords.hpp"

namespace kpx {

struct RakeConfig {
  StopwordSet stopwords;
  double top_fraction = 1.0 / 3.0;   // ceil(fraction * candidates) selected
  std::optional<std::size_t> top_n;  // overrides top_fraction when set

  void validate() const;
};

struct ScoredPhrase {
  PhraseSpan span;
  std::vector<std::string> words;  // lowercased
  double score = 0.0;
};

struct RakeScores {
  std::map<std::string, double> word_scores;
  std::vector<ScoredPhrase> phrases;  // candidate order
};

struct RakeResult {
  std::vector<Label> labels;          // KP3 projection of the selected spans
  std::vector<ScoredPhrase> ranked;   // all candidates, best first
  std::size_t selected = 0;           // ranked[0 .. selected) were chosen
};

bool is_punctuation(std::string_view form);

std::vector<PhraseSpan> rake_candidates(const Tweet& tweet, const StopwordSet& stopwords);
RakeScores rake_scores(std::span<const PhraseSpan> candidates, const Tweet& tweet);

// Ranked by score descending, ties to the earlier phrase.
RakeResult rake_extract(const Tweet& tweet, const RakeConfig& config);

}  // namespace kpx
