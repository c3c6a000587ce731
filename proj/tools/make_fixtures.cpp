// Regenerates the synthetic fixtures under data/.
//   kpx_fixtures <dir>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "kpx/corpus.hpp"
#include "kpx/features.hpp"
#include "kpx/synthetic.hpp"

namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: kpx_fixtures <dir>\n";
    return 2;
  }
  const std::filesystem::path dir = argv[1];
  try {
    std::filesystem::create_directories(dir);

    const kpx::Corpus train = kpx::make_synthetic_corpus({.tweets = 100, .seed = 7, .id_prefix = "train"});
    const kpx::Corpus test = kpx::make_synthetic_corpus({.tweets = 40, .seed = 8, .id_prefix = "test"});
    const kpx::Corpus tiny = kpx::make_synthetic_corpus({.tweets = 10, .seed = 9, .id_prefix = "tiny"});
    kpx::save_corpus(dir / "train.tsv", train);
    kpx::save_corpus(dir / "train.kp5.tsv", kpx::convert_scheme(train, kpx::Scheme::kp5));
    kpx::save_corpus(dir / "test.tsv", test);
    kpx::save_corpus(dir / "tiny.tsv", tiny);

    std::ofstream vectors(dir / "embeddings.txt", std::ios::binary);
    kpx::write_embeddings(vectors, kpx::make_synthetic_embeddings(16, 11));

    write_text(dir / "synsets.txt", kpx::synthetic_synset_text());
    write_text(dir / "stopwords.txt", kpx::synthetic_stopword_text());
  } catch (const std::exception& e) {
    std::cerr << "kpx_fixtures: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
