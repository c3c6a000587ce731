#include "kpx/synthetic.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <sstream>
#include <string_view>
#include <stdexcept>

#include "kpx/rng.hpp"

namespace kpx {
namespace {

struct Word {
  const char* form;
  const char* pos;
  const char* ne;
};

constexpr std::array kKeyWords{
    Word{"bank", "NNP", "ORG"},      Word{"bca", "NNP", "ORG"},
    Word{"bni", "NNP", "ORG"},       Word{"telkomsel", "NNP", "ORG"},
    Word{"indosat", "NNP", "ORG"},   Word{"atm", "NN", "O"},
    Word{"kartu", "NN", "O"},        Word{"saldo", "NN", "O"},
    Word{"mutasi", "NN", "O"},       Word{"transfer", "NN", "O"},
    Word{"aplikasi", "NN", "PRODUCT"}, Word{"akun", "NN", "O"},
    Word{"pin", "NN", "O"},          Word{"rekening", "NN", "O"},
    Word{"nasabah", "NN", "PERSON"}, Word{"layanan", "NN", "O"},
    Word{"internet", "NN", "O"},     Word{"paket", "NN", "PRODUCT"},
    Word{"kredit", "NN", "O"},       Word{"tabungan", "NN", "O"},
    Word{"cabang", "NN", "LOC"},     Word{"token", "NN", "O"},
    Word{"cek", "VB", "O"},          Word{"daftar", "VB", "O"},
    Word{"blokir", "VB", "O"},       Word{"bayar", "VB", "O"},
    Word{"beli", "VB", "O"},         Word{"jelek", "JJ", "O"},
    Word{"susah", "JJ", "O"},        Word{"gagal", "JJ", "O"},
    Word{"lambat", "JJ", "O"},       Word{"bagus", "JJ", "O"},
};

constexpr std::array kFillers{
    Word{"di", "IN", "O"},        Word{"ke", "IN", "O"},       Word{"yang", "SC", "O"},
    Word{"dan", "CC", "O"},       Word{"tapi", "CC", "O"},     Word{"ini", "PR", "O"},
    Word{"itu", "PR", "O"},       Word{"sudah", "MD", "O"},    Word{"bisa", "MD", "O"},
    Word{"mau", "MD", "O"},       Word{"perlu", "MD", "O"},    Word{"ya", "PART", "O"},
    Word{"kok", "PART", "O"},     Word{"kan", "PART", "O"},    Word{"aja", "RB", "O"},
    Word{"amat", "RB", "O"},      Word{"banget", "RB", "O"},   Word{"doang", "RB", "O"},
    Word{"lagi", "RB", "O"},      Word{"ternyata", "RB", "O"}, Word{"saya", "PRP", "O"},
    Word{"aku", "PRP", "O"},      Word{"enggak", "NEG", "O"},  Word{"!", "Z", "O"},
    Word{"?", "Z", "O"},          Word{",", "Z", "O"},
};

constexpr std::array<std::pair<const char*, const char*>, 18> kSynsets{{
    {"jelek", "buruk,parah|payah"},
    {"susah", "sulit,ribet"},
    {"gagal", "batal"},
    {"lambat", "lelet,lemot"},
    {"bagus", "baik,oke|mantap"},
    {"cek", "periksa|lihat"},
    {"daftar", "registrasi"},
    {"bayar", "lunasi"},
    {"beli", "borong"},
    {"saldo", "dana"},
    {"aplikasi", "app,apps"},
    {"akun", "account"},
    {"layanan", "pelayanan,servis"},
    {"rekening", "norek"},
    {"nasabah", "pelanggan"},
    {"cabang", "kantor"},
    {"kartu", "card"},
    {"blokir", "kunci|tutup"},
}};

std::string deprel_for_filler(std::string_view pos) {
  if (pos == "IN") return "case";
  if (pos == "RB" || pos == "NEG") return "advmod";
  if (pos == "MD") return "aux";
  if (pos == "CC") return "cc";
  if (pos == "Z") return "punct";
  if (pos == "PRP") return "nsubj";
  if (pos == "PR") return "det";
  if (pos == "SC") return "mark";
  return "discourse";
}

std::string deprel_for_phrase_start(std::string_view pos, bool before_root) {
  if (pos == "VB") return "conj";
  if (pos == "JJ") return "amod";
  return before_root ? "nsubj" : "obj";
}

}  // namespace

Corpus make_synthetic_corpus(const SyntheticSpec& spec) {
  if (spec.min_segments == 0 || spec.max_segments < spec.min_segments) {
    throw std::invalid_argument("invalid synthetic segment range");
  }
  Rng rng(spec.seed);
  Corpus corpus{Scheme::kp3, {}};
  char id[64];

  for (std::size_t n = 0; n < spec.tweets; ++n) {
    Tweet tweet;
    std::snprintf(id, sizeof(id), "%s-%04zu", spec.id_prefix.c_str(), n + 1);
    tweet.id = id;

    const std::size_t segments =
        spec.min_segments + rng.below(spec.max_segments - spec.min_segments + 1);
    bool keyphrase_next = rng.below(2) == 0;
    bool has_keyphrase = false;
    std::vector<std::pair<std::size_t, std::size_t>> phrases;  // [start, end]

    for (std::size_t s = 0; s < segments || !has_keyphrase; ++s) {
      if (keyphrase_next) {
        const std::size_t roll = rng.below(20);
        const std::size_t length = roll < 10 ? 1 : (roll < 17 ? 2 : 3);
        const std::size_t start = tweet.tokens.size();
        for (std::size_t k = 0; k < length; ++k) {
          const Word& w = kKeyWords[rng.below(kKeyWords.size())];
          tweet.tokens.push_back({w.form, w.pos, w.ne, std::nullopt, "",
                                  k == 0 ? kp3::begin : kp3::tail});
        }
        phrases.emplace_back(start, tweet.tokens.size() - 1);
        has_keyphrase = true;
      } else {
        const std::size_t length = 1 + rng.below(3);
        for (std::size_t k = 0; k < length; ++k) {
          const Word& w = kFillers[rng.below(kFillers.size())];
          tweet.tokens.push_back({w.form, w.pos, w.ne, std::nullopt, "", kp3::outside});
        }
      }
      keyphrase_next = !keyphrase_next;
    }

    // Dependency columns: the first keyphrase head is the root, later phrase
    // starts attach to it, phrase continuations to their left neighbour and
    // function words to the nearest keyphrase token.
    const std::size_t root = phrases.front().first;
    tweet.tokens[root].deprel = "root";
    for (const auto& [start, end] : phrases) {
      if (start != root) {
        tweet.tokens[start].head = root;
        tweet.tokens[start].deprel = deprel_for_phrase_start(tweet.tokens[start].pos, start < root);
      }
      for (std::size_t t = start + 1; t <= end; ++t) {
        tweet.tokens[t].head = t - 1;
        tweet.tokens[t].deprel = tweet.tokens[t - 1].pos == std::string("VB") ? "obj" : "compound";
      }
    }
    for (std::size_t t = 0; t < tweet.size(); ++t) {
      Token& token = tweet.tokens[t];
      if (token.label != kp3::outside) continue;
      std::size_t best = root;
      std::size_t best_distance = SIZE_MAX;
      for (const auto& [start, end] : phrases) {
        const std::size_t d = t < start ? start - t : t - end;
        if (d < best_distance) {
          best_distance = d;
          best = t < start ? start : end;
        }
      }
      token.head = best;
      token.deprel = deprel_for_filler(token.pos);
    }
    corpus.tweets.push_back(std::move(tweet));
  }
  return corpus;
}

EmbeddingTable make_synthetic_embeddings(std::size_t dimension, std::uint64_t seed) {
  Rng rng(seed);
  const double scale = 1.0 / std::sqrt(static_cast<double>(dimension));
  std::unordered_map<std::string, std::vector<double>> entries;
  auto random_vector = [&] {
    std::vector<double> v(dimension);
    for (double& x : v) x = rng.normal() * scale;
    return v;
  };
  // Content words, function words and punctuation each lean towards their
  // own centroid, as they do in trained vectors.
  const std::vector<double> content = random_vector();
  const std::vector<double> function = random_vector();
  const std::vector<double> punct = random_vector();
  auto clustered = [&](const std::vector<double>& centroid) {
    std::vector<double> v = random_vector();
    for (std::size_t i = 0; i < dimension; ++i) v[i] = 0.8 * v[i] + 0.6 * centroid[i];
    return v;
  };
  for (const Word& w : kKeyWords) entries[w.form] = clustered(content);
  for (const Word& w : kFillers) {
    entries[w.form] = clustered(std::string_view(w.pos) == "Z" ? punct : function);
  }

  const SynsetDB db = make_synthetic_synsets();
  for (const auto& [head, text] : kSynsets) {
    for (const Synset& synset : db.lookup(head)) {
      for (const std::string& member : synset) {
        if (entries.contains(member)) continue;
        std::vector<double> v = entries.at(head);
        for (double& x : v) x += 0.1 * rng.normal() * scale;
        entries[member] = std::move(v);
      }
    }
  }
  return EmbeddingTable(dimension, std::move(entries));
}

std::string synthetic_synset_text() {
  std::string out = "# headword<TAB>synonyms, synsets separated by '|'\n";
  for (const auto& [head, text] : kSynsets) {
    out += head;
    out += '\t';
    out += text;
    out += '\n';
  }
  return out;
}

std::string synthetic_stopword_text() {
  std::string out = "# function words used by the synthetic fixtures\n";
  for (const Word& w : kFillers) {
    if (std::string_view(w.pos) == "Z") continue;
    out += w.form;
    out += '\n';
  }
  return out;
}

SynsetDB make_synthetic_synsets() {
  std::istringstream in(synthetic_synset_text());
  return parse_synsets(in, "<synthetic synsets>");
}

StopwordSet make_synthetic_stopwords() {
  std::istringstream in(synthetic_stopword_text());
  return parse_stopwords(in);
}

}  // namespace kpx
