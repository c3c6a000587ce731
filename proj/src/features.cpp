#include "kpx/features.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace kpx {
namespace {

std::vector<std::string_view> split_spaces(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t begin = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > begin) out.push_back(line.substr(begin, i - begin));
  }
  return out;
}

template <class T>
bool parse_number(std::string_view text, T& value) {
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  return ec == std::errc() && ptr == text.data() + text.size();
}

const std::string& column(const Token& token, TagKind kind) {
  switch (kind) {
    case TagKind::pos:
      return token.pos;
    case TagKind::ne:
      return token.ne;
    case TagKind::deprel:
      return token.deprel;
  }
  return token.pos;
}

}  // namespace

EmbeddingTable::EmbeddingTable(std::size_t dimension,
                               std::unordered_map<std::string, std::vector<double>> entries)
    : dimension_(dimension) {
  if (dimension == 0) {
    throw std::invalid_argument("embedding dimension must be positive");
  }
  if (entries.empty()) {
    throw std::invalid_argument("embedding vocabulary is empty");
  }
  for (auto& [form, vec] : entries) {
    if (vec.size() != dimension) {
      throw std::invalid_argument("embedding for '" + form + "' has wrong dimension");
    }
    entries_.emplace(form, std::move(vec));
  }
}

bool EmbeddingTable::contains(std::string_view form) const {
  return entries_.find(form) != entries_.end();
}

const std::vector<double>* EmbeddingTable::find(std::string_view form) const {
  const auto it = entries_.find(form);
  return it == entries_.end() ? nullptr : &it->second;
}

std::vector<std::string> EmbeddingTable::vocabulary() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto& [form, vec] : entries_) out.push_back(form);
  std::sort(out.begin(), out.end());
  return out;
}

EmbeddingTable parse_embeddings(std::istream& in, std::string_view source) {
  const std::string name(source);
  std::string line;
  std::size_t line_no = 0;
  std::size_t count = 0;
  std::size_t dim = 0;

  while (std::getline(in, line)) {
    ++line_no;
    const auto fields = split_spaces(line);
    if (fields.empty()) continue;
    if (fields.size() != 2 || !parse_number(fields[0], count) || !parse_number(fields[1], dim)) {
      throw ParseError(name, line_no, "expected header 'count dim'");
    }
    break;
  }
  if (dim == 0) {
    throw ParseError(name, line_no, "missing or zero embedding dimension");
  }

  std::unordered_map<std::string, std::vector<double>> entries;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto fields = split_spaces(line);
    if (fields.empty()) continue;
    if (fields.size() != dim + 1) {
      throw ParseError(name, line_no,
                       "expected token plus " + std::to_string(dim) + " values, found " +
                           std::to_string(fields.size() - 1) + " values");
    }
    std::vector<double> vec(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      if (!parse_number(fields[i + 1], vec[i])) {
        throw ParseError(name, line_no, "non-numeric value '" + std::string(fields[i + 1]) + "'");
      }
    }
    if (!entries.emplace(std::string(fields[0]), std::move(vec)).second) {
      throw ParseError(name, line_no, "duplicate token '" + std::string(fields[0]) + "'");
    }
    ++rows;
  }
  if (rows != count) {
    throw ParseError(name, line_no,
                     "header declares " + std::to_string(count) + " rows but file has " +
                         std::to_string(rows));
  }
  return EmbeddingTable(dim, std::move(entries));
}

EmbeddingTable load_embeddings(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open embedding file: " + path.string());
  }
  return parse_embeddings(in, path.string());
}

void write_embeddings(std::ostream& out, const EmbeddingTable& table) {
  out << table.size() << ' ' << table.dimension() << '\n';
  char buf[64];
  for (const std::string& form : table.vocabulary()) {
    out << form;
    for (double v : *table.find(form)) {
      // shortest round-trip representation
      const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
      out << ' ' << std::string_view(buf, static_cast<std::size_t>(ptr - buf));
    }
    out << '\n';
  }
}

std::vector<double> embed_token(const EmbeddingTable& table, std::string_view form) {
  if (const auto* vec = table.find(form)) {
    return *vec;
  }
  return std::vector<double>(table.dimension(), 0.0);
}

std::string_view to_string(TagKind kind) {
  switch (kind) {
    case TagKind::pos:
      return "pos";
    case TagKind::ne:
      return "ne";
    case TagKind::deprel:
      return "deprel";
  }
  return "unknown";
}

TagInventory::TagInventory(TagKind kind, std::vector<std::string> symbols)
    : kind_(kind), symbols_(std::move(symbols)) {
  if (symbols_.empty() || symbols_.front() != kUnknownTag) {
    throw std::invalid_argument("tag inventory must start with the UNK symbol");
  }
  std::unordered_set<std::string_view> seen;
  for (const auto& s : symbols_) {
    if (!seen.insert(s).second) {
      throw std::invalid_argument("duplicate tag in inventory: " + s);
    }
  }
}

std::size_t TagInventory::index_of(std::string_view tag) const {
  // Inventories are small (tens of tags); a linear scan is fine.
  for (std::size_t i = 1; i < symbols_.size(); ++i) {
    if (symbols_[i] == tag) return i;
  }
  return 0;
}

TagInventory build_inventory(const Corpus& corpus, TagKind kind) {
  std::vector<std::string> symbols{std::string(kUnknownTag)};
  std::unordered_set<std::string> seen{std::string(kUnknownTag)};
  for (const Tweet& tweet : corpus.tweets) {
    for (const Token& token : tweet.tokens) {
      const std::string& tag = column(token, kind);
      if (seen.insert(tag).second) {
        symbols.push_back(tag);
      }
    }
  }
  return TagInventory(kind, std::move(symbols));
}

std::vector<double> encode_tag(const TagInventory& inventory, std::string_view tag) {
  std::vector<double> out(inventory.size(), 0.0);
  out[inventory.index_of(tag)] = 1.0;
  return out;
}

std::vector<double> encode_ds(const TagInventory& deprels, const Token& token,
                              std::size_t position) {
  std::vector<double> out = encode_tag(deprels, token.deprel);
  std::size_t direction = 2;
  if (token.head) {
    direction = *token.head < position ? 0 : 1;
  }
  out.resize(out.size() + kHeadDirectionWidth, 0.0);
  out[deprels.size() + direction] = 1.0;
  return out;
}

std::size_t FeatureConfig::input_dim(std::size_t embedding_dim) const {
  std::size_t dim = window * embedding_dim;
  if (use_pos) dim += pos->size();
  if (use_ne) dim += ne->size();
  if (use_ds) dim += deprel->size() + kHeadDirectionWidth;
  return dim;
}

void FeatureConfig::validate() const {
  if (window == 0 || window % 2 == 0) {
    throw std::invalid_argument("window must be an odd positive integer");
  }
  if ((use_pos && !pos) || (use_ne && !ne) || (use_ds && !deprel)) {
    throw std::invalid_argument("enabled feature has no tag inventory");
  }
}

FeatureConfig make_feature_config(const Corpus& corpus, bool use_pos, bool use_ne, bool use_ds,
                                  std::size_t window) {
  FeatureConfig config;
  config.use_pos = use_pos;
  config.use_ne = use_ne;
  config.use_ds = use_ds;
  config.window = window;
  config.pos = build_inventory(corpus, TagKind::pos);
  config.ne = build_inventory(corpus, TagKind::ne);
  config.deprel = build_inventory(corpus, TagKind::deprel);
  config.validate();
  return config;
}

InputSequence build_input_sequence(const Tweet& tweet, const EmbeddingTable& table,
                                   const FeatureConfig& config) {
  config.validate();
  const std::size_t d = table.dimension();
  const std::size_t n = tweet.size();
  const auto half = static_cast<std::ptrdiff_t>(config.window / 2);

  InputSequence seq{Matrix(n, config.input_dim(d))};
  for (std::size_t t = 0; t < n; ++t) {
    std::span<double> row = seq.vectors.row(t);
    std::size_t offset = 0;
    for (std::ptrdiff_t k = -half; k <= half; ++k, offset += d) {
      const std::ptrdiff_t j = static_cast<std::ptrdiff_t>(t) + k;
      if (j < 0 || j >= static_cast<std::ptrdiff_t>(n)) continue;
      if (const auto* vec = table.find(tweet.tokens[static_cast<std::size_t>(j)].form)) {
        std::copy(vec->begin(), vec->end(), row.begin() + static_cast<std::ptrdiff_t>(offset));
      }
    }
    const Token& token = tweet.tokens[t];
    if (config.use_pos) {
      row[offset + config.pos->index_of(token.pos)] = 1.0;
      offset += config.pos->size();
    }
    if (config.use_ne) {
      row[offset + config.ne->index_of(token.ne)] = 1.0;
      offset += config.ne->size();
    }
    if (config.use_ds) {
      const auto ds = encode_ds(*config.deprel, token, t);
      std::copy(ds.begin(), ds.end(), row.begin() + static_cast<std::ptrdiff_t>(offset));
      offset += ds.size();
    }
  }
  return seq;
}

}  // namespace kpx
