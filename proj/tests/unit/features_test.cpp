#include <doctest.h>

#include <cmath>
#include <sstream>

#include "kpx/features.hpp"
#include "kpx/synthetic.hpp"
#include "support.hpp"

using namespace kpx;

namespace {

EmbeddingTable parse_table(const std::string& text) {
  std::istringstream in(text);
  return parse_embeddings(in, "<test>");
}

}  // namespace

TEST_CASE("embedding file parsing") {
  const EmbeddingTable t = parse_table("2 3\nbank 1 2 3\nBank -1 0.5 1e-3\n");
  CHECK(t.dimension() == 3);
  CHECK(t.size() == 2);
  CHECK(*t.find("bank") == std::vector<double>{1, 2, 3});
  CHECK(*t.find("Bank") == std::vector<double>{-1, 0.5, 1e-3});
  CHECK(embed_token(t, "BANK") == std::vector<double>(3, 0.0));
}

TEST_CASE("embedding file errors") {
  CHECK_THROWS_AS(parse_table("2 3\nbank 1 2 3\n"), ParseError);
  CHECK_THROWS_AS(parse_table("1 3\nbank 1 2\n"), ParseError);
  CHECK_THROWS_AS(parse_table("1 3\nbank 1 2 x\n"), ParseError);
  CHECK_THROWS_AS(parse_table("2 1\nbank 1\nbank 2\n"), ParseError);
  CHECK_THROWS_AS(parse_table("three 1\n"), ParseError);
}

TEST_CASE("embedding round trip is exact") {
  const EmbeddingTable t = make_synthetic_embeddings(7, 3);
  std::ostringstream out;
  write_embeddings(out, t);
  const EmbeddingTable back = parse_table(out.str());
  REQUIRE(back.size() == t.size());
  for (const std::string& w : t.vocabulary()) CHECK(*back.find(w) == *t.find(w));
}

TEST_CASE("tag inventories and one-hots") {
  const Corpus c = test::parse(
      "a\tNN\tO\t_\troot\t1\nb\tVB\tORG\t0\tobj\t0\nc\tNN\tO\t1\tcase\t0\n");
  const TagInventory pos = build_inventory(c, TagKind::pos);
  CHECK(pos.symbols() == std::vector<std::string>{"<UNK>", "NN", "VB"});
  CHECK(encode_tag(pos, "VB") == std::vector<double>{0, 0, 1});
  CHECK(encode_tag(pos, "JJ") == std::vector<double>{1, 0, 0});

  const TagInventory deprel = build_inventory(c, TagKind::deprel);
  // deprel one-hot then [head-left, head-right, root]
  CHECK(encode_ds(deprel, c.tweets[0].tokens[0], 0) == std::vector<double>{0, 1, 0, 0, 0, 0, 1});
  CHECK(encode_ds(deprel, c.tweets[0].tokens[1], 1) == std::vector<double>{0, 0, 1, 0, 1, 0, 0});
  CHECK(encode_ds(deprel, c.tweets[0].tokens[2], 2) == std::vector<double>{0, 0, 0, 1, 1, 0, 0});
}

TEST_CASE("input sequence layout") {
  const EmbeddingTable t = parse_table("2 2\na 1 2\nc 3 4\n");
  const Corpus c = test::parse(
      "a\tNN\tO\t_\troot\t1\nb\tVB\tORG\t0\tobj\t0\nc\tNN\tO\t1\tcase\t0\n");
  const FeatureConfig f = make_feature_config(c, true, false, false, 3);
  CHECK(f.input_dim(2) == 3 * 2 + 3);
  const InputSequence s = build_input_sequence(c.tweets[0], t, f);
  REQUIRE(s.length() == 3);
  REQUIRE(s.dimension() == 9);
  // token 1 ("b", unknown form): [a | zero | c] then POS one-hot for VB
  const std::vector<double> row1(s.vectors.row(1).begin(), s.vectors.row(1).end());
  CHECK(row1 == std::vector<double>{1, 2, 0, 0, 3, 4, 0, 0, 1});
  // left edge padded with zeros
  const std::vector<double> row0(s.vectors.row(0).begin(), s.vectors.row(0).end());
  CHECK(row0 == std::vector<double>{0, 0, 1, 2, 0, 0, 0, 1, 0});
}

TEST_CASE("feature config validation") {
  const Corpus c = make_synthetic_corpus({.tweets = 5});
  FeatureConfig f = make_feature_config(c, true, true, true, 5);
  CHECK_NOTHROW(f.validate());
  f.window = 4;
  CHECK_THROWS_AS(f.validate(), std::invalid_argument);
  f.window = 3;
  f.ne.reset();
  CHECK_THROWS_AS(f.validate(), std::invalid_argument);
  f.use_ne = false;
  CHECK_NOTHROW(f.validate());
}
