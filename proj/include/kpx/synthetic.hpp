#pragma once

// Synthetic Indonesian-banking-flavoured fixtures in the corpus format:
// tweets mixing function words with 1-3 word keyphrases, with POS, NE and
// dependency columns filled by simple deterministic rules.

#include <cstddef>
#include <cstdint>
#include <string>

#include "kpx/augment.hpp"
#include "kpx/corpus.hpp"
#include "kpx/features.hpp"
#include "kpx/stopwords.hpp"

namespace kpx {

struct SyntheticSpec {
  std::size_t tweets = 100;
  std::uint64_t seed = 7;
  std::size_t min_segments = 3;
  std::size_t max_segments = 7;
  std::string id_prefix = "syn";
};

// KP3 corpus; every tweet has at least one keyphrase.
Corpus make_synthetic_corpus(const SyntheticSpec& spec);

// Covers every form the generator and the synset list can emit. Synonyms sit
// close to their headword.
EmbeddingTable make_synthetic_embeddings(std::size_t dimension, std::uint64_t seed);

// Synset and stopword files, in their on-disk text formats.
std::string synthetic_synset_text();
std::string synthetic_stopword_text();

SynsetDB make_synthetic_synsets();
StopwordSet make_synthetic_stopwords();

}  // namespace kpx
