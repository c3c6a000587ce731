#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "kpx/corpus.hpp"
#include "kpx/linalg.hpp"

namespace kpx {

// Pre-trained word vectors. Lookup is case-sensitive; unknown forms embed
// to the zero vector.
class EmbeddingTable {
 public:
  EmbeddingTable(std::size_t dimension, std::unordered_map<std::string, std::vector<double>> entries);

  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return entries_.size(); }
  bool contains(std::string_view form) const;
  const std::vector<double>* find(std::string_view form) const;

  // Sorted vocabulary, for deterministic iteration.
  std::vector<std::string> vocabulary() const;

 private:
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const { return std::hash<std::string_view>{}(s); }
  };
  std::size_t dimension_;
  std::unordered_map<std::string, std::vector<double>, Hash, std::equal_to<>> entries_;
};

// Text format: header "count dim", then one "token v1 .. v_dim" row per line.
EmbeddingTable load_embeddings(const std::filesystem::path& path);
EmbeddingTable parse_embeddings(std::istream& in, std::string_view source);
void write_embeddings(std::ostream& out, const EmbeddingTable& table);

std::vector<double> embed_token(const EmbeddingTable& table, std::string_view form);

enum class TagKind : std::uint8_t { pos, ne, deprel };
std::string_view to_string(TagKind kind);

inline constexpr std::string_view kUnknownTag = "<UNK>";

class TagInventory {
 public:
  TagInventory() = default;
  // symbols[0] must be kUnknownTag; all symbols unique.
  TagInventory(TagKind kind, std::vector<std::string> symbols);

  TagKind kind() const { return kind_; }
  const std::vector<std::string>& symbols() const { return symbols_; }
  std::size_t size() const { return symbols_.size(); }
  // Unseen tags map to 0 (UNK).
  std::size_t index_of(std::string_view tag) const;

  bool operator==(const TagInventory& other) const {
    return kind_ == other.kind_ && symbols_ == other.symbols_;
  }

 private:
  TagKind kind_ = TagKind::pos;
  std::vector<std::string> symbols_{std::string(kUnknownTag)};
};

// UNK followed by the distinct tags of that column in first-occurrence order.
TagInventory build_inventory(const Corpus& corpus, TagKind kind);

std::vector<double> encode_tag(const TagInventory& inventory, std::string_view tag);

inline constexpr std::size_t kHeadDirectionWidth = 3;  // head-left, head-right, root

// Deprel one-hot followed by the head-direction one-hot.
std::vector<double> encode_ds(const TagInventory& deprels, const Token& token, std::size_t position);

struct FeatureConfig {
  bool use_pos = false;
  bool use_ne = false;
  bool use_ds = false;
  std::size_t window = 3;
  std::optional<TagInventory> pos;
  std::optional<TagInventory> ne;
  std::optional<TagInventory> deprel;

  std::size_t input_dim(std::size_t embedding_dim) const;
  // Throws std::invalid_argument when the window is even or an enabled
  // feature lacks its inventory.
  void validate() const;

  bool operator==(const FeatureConfig&) const = default;
};

// Builds all three inventories from the corpus so flags can be toggled later.
FeatureConfig make_feature_config(const Corpus& corpus, bool use_pos, bool use_ne, bool use_ds,
                                  std::size_t window = 3);

// One row per token: window embeddings (zero padded at the edges) followed by
// the enabled one-hot features of the center token.
struct InputSequence {
  Matrix vectors;

  std::size_t length() const { return vectors.rows(); }
  std::size_t dimension() const { return vectors.cols(); }
};

InputSequence build_input_sequence(const Tweet& tweet, const EmbeddingTable& table,
                                   const FeatureConfig& config);

}  // namespace kpx
