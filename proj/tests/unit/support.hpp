#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "kpx/corpus.hpp"
#include "kpx/rng.hpp"

namespace kpx::test {

inline std::filesystem::path data_dir() { return KPX_DATA_DIR; }

// Fresh per-test scratch directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("kpx-test-" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

inline Corpus parse(const std::string& text, Scheme scheme = Scheme::kp3) {
  std::istringstream in(text);
  return parse_corpus(in, scheme, "<test>");
}

// Tweet with forms only; every token is a root-less child of token 0.
inline Tweet make_tweet(const std::vector<std::string>& forms, std::vector<Label> labels = {},
                        std::string id = "t") {
  Tweet tweet;
  tweet.id = std::move(id);
  for (std::size_t i = 0; i < forms.size(); ++i) {
    Token token{forms[i], "NN", "O", std::nullopt, "dep", 0};
    if (i > 0) token.head = 0;
    if (i < labels.size()) token.label = labels[i];
    tweet.tokens.push_back(token);
  }
  return tweet;
}

inline std::vector<Label> random_labels(Rng& rng, std::size_t length, std::size_t classes) {
  std::vector<Label> out(length);
  for (Label& l : out) l = static_cast<Label>(rng.below(classes));
  return out;
}

}  // namespace kpx::test
