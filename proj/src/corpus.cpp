#include "kpx/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>
#include <unordered_set>

#include "kpx/rng.hpp"

namespace kpx {
namespace {

constexpr std::string_view kKp3Symbols[] = {"0", "1", "2"};
constexpr std::string_view kKp5Symbols[] = {"O", "B", "M", "E", "S"};
constexpr std::string_view kIdPrefix = "# id = ";

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t begin = 0;
  while (true) {
    const std::size_t tab = line.find('\t', begin);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(begin));
      return fields;
    }
    fields.push_back(line.substr(begin, tab - begin));
    begin = tab + 1;
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace

std::string_view to_string(Scheme scheme) { return scheme == Scheme::kp3 ? "kp3" : "kp5"; }

Scheme parse_scheme(std::string_view name) {
  if (name == "kp3" || name == "KP3") return Scheme::kp3;
  if (name == "kp5" || name == "KP5") return Scheme::kp5;
  throw std::invalid_argument("unknown label scheme: " + std::string(name));
}

std::size_t class_count(Scheme scheme) { return scheme == Scheme::kp3 ? 3 : 5; }

std::string_view label_symbol(Scheme scheme, Label label) {
  if (label >= class_count(scheme)) {
    throw std::invalid_argument("label ordinal out of range for scheme " +
                                std::string(to_string(scheme)));
  }
  return scheme == Scheme::kp3 ? kKp3Symbols[label] : kKp5Symbols[label];
}

std::optional<Label> parse_label(Scheme scheme, std::string_view symbol) {
  const std::span<const std::string_view> symbols =
      scheme == Scheme::kp3 ? std::span<const std::string_view>(kKp3Symbols)
                            : std::span<const std::string_view>(kKp5Symbols);
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (symbols[i] == symbol) {
      return static_cast<Label>(i);
    }
  }
  return std::nullopt;
}

std::vector<Label> Tweet::labels() const {
  std::vector<Label> out;
  out.reserve(tokens.size());
  for (const Token& token : tokens) {
    out.push_back(token.label);
  }
  return out;
}

ParseError::ParseError(std::string source, std::size_t line, const std::string& message)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + message),
      source_(std::move(source)),
      line_(line) {}

void validate_tweet(const Tweet& tweet, Scheme scheme) {
  if (tweet.tokens.empty()) {
    throw std::invalid_argument("tweet '" + tweet.id + "' has no tokens");
  }
  for (std::size_t i = 0; i < tweet.tokens.size(); ++i) {
    const Token& token = tweet.tokens[i];
    if (token.form.empty()) {
      throw std::invalid_argument("tweet '" + tweet.id + "' token " + std::to_string(i) +
                                  " has an empty form");
    }
    if (token.head && (*token.head >= tweet.tokens.size() || *token.head == i)) {
      throw std::invalid_argument("tweet '" + tweet.id + "' token " + std::to_string(i) +
                                  " has invalid head " + std::to_string(*token.head));
    }
    if (token.label >= class_count(scheme)) {
      throw std::invalid_argument("tweet '" + tweet.id + "' token " + std::to_string(i) +
                                  " has a label outside the " + std::string(to_string(scheme)) +
                                  " alphabet");
    }
  }
}

Corpus parse_corpus(std::istream& in, Scheme scheme, std::string_view source,
                    LoadOptions options) {
  const std::string source_name(source);
  Corpus corpus;
  corpus.scheme = scheme;

  std::unordered_set<std::string> seen_ids;
  std::optional<std::string> pending_id;
  std::size_t pending_id_line = 0;
  Tweet current;
  std::vector<std::size_t> token_lines;

  auto finish_tweet = [&](std::size_t line_no) {
    if (current.tokens.empty()) {
      if (pending_id) {
        throw ParseError(source_name, pending_id_line, "tweet '" + *pending_id + "' has no tokens");
      }
      return;
    }
    current.id = pending_id ? *pending_id : "tweet-" + std::to_string(corpus.tweets.size() + 1);
    const std::size_t id_line = pending_id ? pending_id_line : token_lines.front();
    if (!seen_ids.insert(current.id).second) {
      throw ParseError(source_name, id_line, "duplicate tweet id '" + current.id + "'");
    }
    for (std::size_t i = 0; i < current.tokens.size(); ++i) {
      const auto& head = current.tokens[i].head;
      if (head && (*head >= current.tokens.size() || *head == i)) {
        throw ParseError(source_name, token_lines[i],
                         "head index " + std::to_string(*head) + " out of range for tweet of " +
                             std::to_string(current.tokens.size()) + " tokens");
      }
    }
    (void)line_no;
    corpus.tweets.push_back(std::move(current));
    current = Tweet{};
    token_lines.clear();
    pending_id.reset();
  };

  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line(raw);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    if (trim(line).empty()) {
      finish_tweet(line_no);
      continue;
    }
    if (line.front() == '#') {
      if (line.starts_with(kIdPrefix)) {
        if (!current.tokens.empty()) {
          throw ParseError(source_name, line_no, "id comment inside a tweet");
        }
        const std::string_view id = trim(line.substr(kIdPrefix.size()));
        if (id.empty()) {
          throw ParseError(source_name, line_no, "empty tweet id");
        }
        pending_id = std::string(id);
        pending_id_line = line_no;
      }
      continue;
    }

    const auto fields = split_tabs(line);
    if (fields.size() != 6) {
      throw ParseError(source_name, line_no,
                       "expected 6 tab-separated columns, found " + std::to_string(fields.size()));
    }
    Token token;
    token.form = std::string(fields[0]);
    if (token.form.empty()) {
      throw ParseError(source_name, line_no, "empty FORM column");
    }
    token.pos = std::string(fields[1]);
    token.ne = std::string(fields[2]);
    if (fields[3] != "_") {
      std::size_t head = 0;
      const auto [ptr, ec] =
          std::from_chars(fields[3].data(), fields[3].data() + fields[3].size(), head);
      if (ec != std::errc() || ptr != fields[3].data() + fields[3].size()) {
        throw ParseError(source_name, line_no,
                         "HEAD must be a 0-based index or '_', got '" + std::string(fields[3]) + "'");
      }
      token.head = head;
    }
    token.deprel = std::string(fields[4]);
    if (!options.require_labels && fields[5] == "_") {
      token.label = 0;
    } else if (const auto label = parse_label(scheme, fields[5])) {
      token.label = *label;
    } else {
      throw ParseError(source_name, line_no,
                       "unknown " + std::string(to_string(scheme)) + " label '" +
                           std::string(fields[5]) + "'");
    }
    current.tokens.push_back(std::move(token));
    token_lines.push_back(line_no);
  }
  finish_tweet(line_no + 1);
  return corpus;
}

Corpus load_corpus(const std::filesystem::path& path, Scheme scheme, LoadOptions options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open corpus file: " + path.string());
  }
  return parse_corpus(in, scheme, path.string(), options);
}

void write_corpus(std::ostream& out, const Corpus& corpus) {
  for (const Tweet& tweet : corpus.tweets) {
    out << kIdPrefix << tweet.id << '\n';
    for (const Token& token : tweet.tokens) {
      out << token.form << '\t' << token.pos << '\t' << token.ne << '\t';
      if (token.head) {
        out << *token.head;
      } else {
        out << '_';
      }
      out << '\t' << token.deprel << '\t' << label_symbol(corpus.scheme, token.label) << '\n';
    }
    out << '\n';
  }
}

void save_corpus(const std::filesystem::path& path, const Corpus& corpus) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write corpus file: " + path.string());
  }
  write_corpus(out, corpus);
}

std::pair<Corpus, Corpus> split_train_val(const Corpus& corpus, double fraction,
                                          std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction < 1.0)) {
    throw std::invalid_argument("validation fraction must lie in (0, 1)");
  }
  const std::size_t n = corpus.size();
  if (n < 2) {
    throw std::invalid_argument("cannot split a corpus with fewer than 2 tweets");
  }
  const auto rounded = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(n)));
  const std::size_t val_size = std::clamp<std::size_t>(rounded, 1, n - 1);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(derive_seed(seed, "split"));
  rng.shuffle(order);

  std::vector<bool> in_val(n, false);
  for (std::size_t i = 0; i < val_size; ++i) {
    in_val[order[i]] = true;
  }
  Corpus train{corpus.scheme, {}};
  Corpus val{corpus.scheme, {}};
  for (std::size_t i = 0; i < n; ++i) {
    (in_val[i] ? val : train).tweets.push_back(corpus.tweets[i]);
  }
  return {std::move(train), std::move(val)};
}

std::vector<Label> to_binary_labels(std::span<const Label> kp3_labels) {
  std::vector<Label> out(kp3_labels.size());
  std::transform(kp3_labels.begin(), kp3_labels.end(), out.begin(),
                 [](Label l) { return static_cast<Label>(l != kp3::outside ? 1 : 0); });
  return out;
}

std::vector<Label> kp5_to_kp3(std::span<const Label> kp5_labels) {
  static constexpr Label kMap[] = {kp3::outside, kp3::begin, kp3::tail, kp3::tail, kp3::begin};
  std::vector<Label> out;
  out.reserve(kp5_labels.size());
  for (Label l : kp5_labels) {
    if (l >= 5) {
      throw std::invalid_argument("KP5 label ordinal out of range");
    }
    out.push_back(kMap[l]);
  }
  return out;
}

std::vector<PhraseSpan> decode_phrases(std::span<const Label> kp3_labels) {
  std::vector<PhraseSpan> spans;
  bool open = false;
  for (std::size_t t = 0; t < kp3_labels.size(); ++t) {
    switch (kp3_labels[t]) {
      case kp3::begin:
        spans.push_back({t, t});
        open = true;
        break;
      case kp3::tail:
        if (open) {
          spans.back().end = t;
        } else {
          spans.push_back({t, t});
          open = true;
        }
        break;
      default:
        open = false;
        break;
    }
  }
  return spans;
}

std::vector<Label> encode_phrases(std::span<const PhraseSpan> spans, std::size_t length) {
  std::vector<Label> out(length, kp3::outside);
  std::optional<std::size_t> previous_end;
  for (const PhraseSpan& span : spans) {
    if (span.start > span.end || span.end >= length) {
      throw std::invalid_argument("phrase span out of range");
    }
    if (previous_end && span.start <= *previous_end) {
      throw std::invalid_argument("phrase spans overlap or are not sorted");
    }
    out[span.start] = kp3::begin;
    for (std::size_t t = span.start + 1; t <= span.end; ++t) {
      out[t] = kp3::tail;
    }
    previous_end = span.end;
  }
  return out;
}

std::vector<Label> kp3_to_kp5(std::span<const Label> kp3_labels) {
  std::vector<Label> out(kp3_labels.size(), kp5::O);
  for (const PhraseSpan& span : decode_phrases(kp3_labels)) {
    if (span.start == span.end) {
      out[span.start] = kp5::S;
      continue;
    }
    out[span.start] = kp5::B;
    for (std::size_t t = span.start + 1; t < span.end; ++t) {
      out[t] = kp5::M;
    }
    out[span.end] = kp5::E;
  }
  return out;
}

std::vector<Label> convert_labels(std::span<const Label> labels, Scheme from, Scheme to) {
  if (from == to) {
    return {labels.begin(), labels.end()};
  }
  return from == Scheme::kp5 ? kp5_to_kp3(labels) : kp3_to_kp5(labels);
}

Corpus convert_scheme(const Corpus& corpus, Scheme target) {
  Corpus out = corpus;
  out.scheme = target;
  if (target == corpus.scheme) {
    return out;
  }
  for (Tweet& tweet : out.tweets) {
    const auto converted = convert_labels(tweet.labels(), corpus.scheme, target);
    for (std::size_t i = 0; i < converted.size(); ++i) {
      tweet.tokens[i].label = converted[i];
    }
  }
  return out;
}

std::vector<Label> kp3_labels(const Tweet& tweet, Scheme scheme) {
  return convert_labels(tweet.labels(), scheme, Scheme::kp3);
}

CorpusStats corpus_stats(const Corpus& corpus) {
  CorpusStats stats;
  stats.tweets = corpus.size();
  stats.class_counts.assign(class_count(corpus.scheme), 0);
  for (const Tweet& tweet : corpus.tweets) {
    stats.words += tweet.size();
    for (const Token& token : tweet.tokens) {
      ++stats.class_counts.at(token.label);
    }
    stats.keyphrases += decode_phrases(kp3_labels(tweet, corpus.scheme)).size();
  }
  if (stats.tweets > 0) {
    const std::uint64_t g = std::gcd<std::uint64_t, std::uint64_t>(stats.keyphrases, stats.tweets);
    stats.mean_keyphrases = {stats.keyphrases / g, stats.tweets / g};
  } else {
    stats.mean_keyphrases = {0, 1};
  }
  return stats;
}

}  // namespace kpx
