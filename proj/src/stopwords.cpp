#include "kpx/stopwords.hpp"

#include <fstream>
#include <istream>
#include <stdexcept>

namespace kpx {

std::string to_lower_ascii(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

StopwordSet::StopwordSet(std::initializer_list<std::string_view> words) {
  for (auto w : words) insert(w);
}

void StopwordSet::insert(std::string_view word) { words_.insert(to_lower_ascii(word)); }

bool StopwordSet::contains(std::string_view word) const {
  return words_.find(to_lower_ascii(word)) != words_.end();
}

StopwordSet parse_stopwords(std::istream& in) {
  StopwordSet set;
  std::string line;
  while (std::getline(in, line)) {
    std::string_view w(line);
    while (!w.empty() && (w.back() == '\r' || w.back() == ' ' || w.back() == '\t')) w.remove_suffix(1);
    while (!w.empty() && (w.front() == ' ' || w.front() == '\t')) w.remove_prefix(1);
    if (w.empty() || w.front() == '#') continue;
    set.insert(w);
  }
  return set;
}

StopwordSet load_stopwords(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open stopword file: " + path.string());
  return parse_stopwords(in);
}

}  // namespace kpx
