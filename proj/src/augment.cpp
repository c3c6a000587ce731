#include "kpx/augment.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <numeric>
#include <stdexcept>

namespace kpx {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t begin = 0;
  while (true) {
    const std::size_t pos = s.find(sep, begin);
    out.push_back(s.substr(begin, pos == std::string_view::npos ? pos : pos - begin));
    if (pos == std::string_view::npos) return out;
    begin = pos + 1;
  }
}

bool has_alternative(const Synset& synset, std::string_view form) {
  return std::any_of(synset.begin(), synset.end(), [&](const std::string& s) { return s != form; });
}

}  // namespace

void SynsetDB::add(std::string headword, std::vector<Synset> synsets) {
  for (const Synset& s : synsets) {
    if (s.empty()) throw std::invalid_argument("empty synset for '" + headword + "'");
  }
  if (entries_.contains(headword)) {
    throw std::invalid_argument("duplicate headword '" + headword + "'");
  }
  entries_.emplace(std::move(headword), std::move(synsets));
}

const std::vector<Synset>& SynsetDB::lookup(std::string_view word) const {
  static const std::vector<Synset> kNone;
  const auto it = entries_.find(word);
  return it == entries_.end() ? kNone : it->second;
}

SynsetDB parse_synsets(std::istream& in, std::string_view source) {
  const std::string name(source);
  SynsetDB db;
  std::map<std::string, std::size_t, std::less<>> first_line;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    const std::size_t tab = text.find('\t');
    if (tab == std::string_view::npos) {
      throw ParseError(name, line_no, "expected 'word<TAB>synonyms'");
    }
    const std::string headword(trim(text.substr(0, tab)));
    if (headword.empty()) throw ParseError(name, line_no, "empty headword");
    if (const auto it = first_line.find(headword); it != first_line.end()) {
      throw ParseError(name, line_no,
                       "duplicate headword '" + headword + "' (first defined on line " +
                           std::to_string(it->second) + ")");
    }
    std::vector<Synset> synsets;
    for (std::string_view group : split(text.substr(tab + 1), '|')) {
      Synset synset;
      for (std::string_view member : split(group, ',')) {
        member = trim(member);
        if (member.empty()) throw ParseError(name, line_no, "empty synonym in synset");
        synset.emplace_back(member);
      }
      synsets.push_back(std::move(synset));
    }
    first_line.emplace(headword, line_no);
    db.add(headword, std::move(synsets));
  }
  return db;
}

SynsetDB load_synsets(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open synset file: " + path.string());
  return parse_synsets(in, path.string());
}

void AugmentConfig::validate() const {
  if (m < 1) throw std::invalid_argument("augmentation needs m >= 1");
}

std::vector<std::size_t> candidate_positions(const Tweet& tweet, const SynsetDB& db,
                                             const StopwordSet& stopwords) {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < tweet.size(); ++j) {
    const std::string& form = tweet.tokens[j].form;
    if (stopwords.contains(form)) continue;
    const auto& synsets = db.lookup(form);
    if (std::any_of(synsets.begin(), synsets.end(),
                    [&](const Synset& s) { return has_alternative(s, form); })) {
      out.push_back(j);
    }
  }
  return out;
}

std::vector<Tweet> augment_example(const Tweet& tweet, const SynsetDB& db,
                                   const StopwordSet& stopwords, const AugmentConfig& config,
                                   Rng& rng) {
  config.validate();
  const std::vector<std::size_t> candidates = candidate_positions(tweet, db, stopwords);
  std::vector<Tweet> variants;
  variants.reserve(config.n);

  for (std::size_t k = 0; k < config.n; ++k) {
    Tweet variant = tweet;
    variant.id = tweet.id + "-aug" + std::to_string(k + 1);

    std::vector<std::size_t> chosen = candidates;
    if (chosen.size() > config.m) {
      // partial Fisher-Yates: the first m slots become a uniform sample
      for (std::size_t i = 0; i < config.m; ++i) {
        std::swap(chosen[i], chosen[i + rng.below(chosen.size() - i)]);
      }
      chosen.resize(config.m);
      std::sort(chosen.begin(), chosen.end());
    }

    for (std::size_t position : chosen) {
      std::string& form = variant.tokens[position].form;
      const auto& synsets = db.lookup(tweet.tokens[position].form);
      std::vector<const Synset*> usable;
      for (const Synset& s : synsets) {
        if (has_alternative(s, form)) usable.push_back(&s);
      }
      const Synset& synset = *usable[rng.below(usable.size())];
      std::vector<const std::string*> options;
      for (const std::string& member : synset) {
        if (member != form) options.push_back(&member);
      }
      form = *options[rng.below(options.size())];
    }
    variants.push_back(std::move(variant));
  }
  return variants;
}

Corpus augment_corpus(const Corpus& corpus, const SynsetDB& db, const StopwordSet& stopwords,
                      const AugmentConfig& config) {
  config.validate();
  Corpus out{corpus.scheme, corpus.tweets};
  out.tweets.reserve(corpus.size() * (config.n + 1));
  for (const Tweet& tweet : corpus.tweets) {
    Rng rng(derive_seed(config.seed, "augment:" + tweet.id));
    for (Tweet& variant : augment_example(tweet, db, stopwords, config, rng)) {
      out.tweets.push_back(std::move(variant));
    }
  }
  return out;
}

}  // namespace kpx
