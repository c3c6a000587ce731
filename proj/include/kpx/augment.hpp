#pragma once

// Synonym-replacement data augmentation. For each training tweet, n variants
// are generated; each replaces the forms of up to m non-stopword tokens with
// synonyms drawn from a synset database. Variants keep every annotation
// column of the original tweet.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "kpx/corpus.hpp"
#include "kpx/rng.hpp"
#include "kpx/stopwords.hpp"

namespace kpx {

using Synset = std::vector<std::string>;

class SynsetDB {
 public:
  // Throws std::invalid_argument on a duplicate headword or an empty synset.
  void add(std::string headword, std::vector<Synset> synsets);

  // Empty for absent words.
  const std::vector<Synset>& lookup(std::string_view word) const;
  std::size_t size() const { return entries_.size(); }

 private:
  std::map<std::string, std::vector<Synset>, std::less<>> entries_;
};

// Line format: word<TAB>syn1,syn2|syn3  (synsets split by '|', members by ',').
SynsetDB parse_synsets(std::istream& in, std::string_view source);
SynsetDB load_synsets(const std::filesystem::path& path);

struct AugmentConfig {
  std::size_t n = 3;  // variants per tweet
  std::size_t m = 3;  // replaced positions per variant
  std::uint64_t seed = 42;

  void validate() const;
};

// Positions of non-stopword tokens that have at least one synonym differing
// from their own form, in sentence order.
std::vector<std::size_t> candidate_positions(const Tweet& tweet, const SynsetDB& db,
                                             const StopwordSet& stopwords);

// n variants, each derived independently from the original tweet. Variant
// ids are "<parent>-aug<k>" with k from 1.
std::vector<Tweet> augment_example(const Tweet& tweet, const SynsetDB& db,
                                   const StopwordSet& stopwords, const AugmentConfig& config,
                                   Rng& rng);

// Original tweets followed by all variants (N * (n + 1) tweets). Each
// tweet's variants are drawn from a sub-seed of (config.seed, tweet id), so
// the output does not depend on processing order.
Corpus augment_corpus(const Corpus& corpus, const SynsetDB& db, const StopwordSet& stopwords,
                      const AugmentConfig& config);

}  // namespace kpx
