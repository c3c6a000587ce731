#pragma once

// Annotated tweet corpora, label schemes, and phrase/label conversions.
//
// File format: one token per line, six tab-separated columns
//   FORM  POS  NE  HEAD  DEPREL  LABEL
// HEAD is a 0-based in-tweet index or `_` for the root. A blank line ends a
// tweet; `# id = ...` comment lines name the following tweet.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace kpx {

enum class Scheme : std::uint8_t { kp3, kp5 };

std::string_view to_string(Scheme scheme);
Scheme parse_scheme(std::string_view name);
std::size_t class_count(Scheme scheme);

// Label ordinal within a scheme.
using Label = std::uint8_t;

namespace kp3 {
inline constexpr Label outside = 0;
inline constexpr Label begin = 1;
inline constexpr Label tail = 2;
}  // namespace kp3

namespace kp5 {
inline constexpr Label O = 0;
inline constexpr Label B = 1;
inline constexpr Label M = 2;
inline constexpr Label E = 3;
inline constexpr Label S = 4;
}  // namespace kp5

std::string_view label_symbol(Scheme scheme, Label label);
std::optional<Label> parse_label(Scheme scheme, std::string_view symbol);

struct Token {
  std::string form;
  std::string pos;
  std::string ne;
  std::optional<std::size_t> head;  // nullopt = root
  std::string deprel;
  Label label = 0;

  bool operator==(const Token&) const = default;
};

struct Tweet {
  std::string id;
  std::vector<Token> tokens;

  std::size_t size() const { return tokens.size(); }
  std::vector<Label> labels() const;

  bool operator==(const Tweet&) const = default;
};

struct Corpus {
  Scheme scheme = Scheme::kp3;
  std::vector<Tweet> tweets;

  std::size_t size() const { return tweets.size(); }
  bool empty() const { return tweets.empty(); }

  bool operator==(const Corpus&) const = default;
};

// Inclusive token range [start, end].
struct PhraseSpan {
  std::size_t start = 0;
  std::size_t end = 0;

  std::size_t length() const { return end - start + 1; }
  auto operator<=>(const PhraseSpan&) const = default;
};

struct Rational {
  std::uint64_t numerator = 0;
  std::uint64_t denominator = 1;

  double value() const {
    return static_cast<double>(numerator) / static_cast<double>(denominator);
  }
  bool operator==(const Rational&) const = default;
};

struct CorpusStats {
  std::size_t tweets = 0;
  std::size_t keyphrases = 0;
  Rational mean_keyphrases;  // keyphrases / tweets, reduced
  std::size_t words = 0;
  std::vector<std::size_t> class_counts;  // indexed by label ordinal
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string source, std::size_t line, const std::string& message);

  const std::string& source() const { return source_; }
  std::size_t line() const { return line_; }

 private:
  std::string source_;
  std::size_t line_;
};

struct LoadOptions {
  // When false, a `_` label is accepted and read as the scheme's outside class.
  bool require_labels = true;
};

Corpus load_corpus(const std::filesystem::path& path, Scheme scheme, LoadOptions options = {});
Corpus parse_corpus(std::istream& in, Scheme scheme, std::string_view source,
                    LoadOptions options = {});

void write_corpus(std::ostream& out, const Corpus& corpus);
void save_corpus(const std::filesystem::path& path, const Corpus& corpus);

// Throws std::invalid_argument on any Token/Tweet invariant violation.
void validate_tweet(const Tweet& tweet, Scheme scheme);

// Validation part has round(fraction * N) tweets, clamped to [1, N-1]. Both
// parts keep the original corpus order.
std::pair<Corpus, Corpus> split_train_val(const Corpus& corpus, double fraction,
                                          std::uint64_t seed);

std::vector<Label> to_binary_labels(std::span<const Label> kp3_labels);
std::vector<Label> kp5_to_kp3(std::span<const Label> kp5_labels);
// Spans of length 1 become S, longer spans B M.. E. Ill-formed input is
// repaired through decode_phrases first.
std::vector<Label> kp3_to_kp5(std::span<const Label> kp3_labels);

// A span opens at every 1; a 2 extends the open span, or opens a new one
// when no span is open.
std::vector<PhraseSpan> decode_phrases(std::span<const Label> kp3_labels);

// Throws std::invalid_argument on overlapping, unsorted, or out-of-range spans.
std::vector<Label> encode_phrases(std::span<const PhraseSpan> spans, std::size_t length);

std::vector<Label> convert_labels(std::span<const Label> labels, Scheme from, Scheme to);
Corpus convert_scheme(const Corpus& corpus, Scheme target);

// KP3 view of a tweet's gold labels regardless of the corpus scheme.
std::vector<Label> kp3_labels(const Tweet& tweet, Scheme scheme);

CorpusStats corpus_stats(const Corpus& corpus);

}  // namespace kpx
