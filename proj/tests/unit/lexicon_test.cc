// Copyright 2026 The ctfaug Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ctfaug/lexicon.h"

#include "ctfaug/status.h"
#include "gtest/gtest.h"
#include "json.hpp"
#include "testing/test_util.h"

namespace ctfaug {
namespace {

struct Fixture {
  Vocabulary vocab;
  LinearModel model;
};

Fixture Model(std::vector<std::pair<std::string, double>> coefs) {
  std::vector<std::string> terms;
  for (auto& [t, c] : coefs) terms.push_back(t);
  Fixture f{Vocabulary(terms), {}};
  f.model.coefficients.assign(f.vocab.size(), 0.0);
  for (auto& [t, c] : coefs) f.model.coefficients[*f.vocab.IndexOf(t)] = c;
  return f;
}

TEST(LexiconTest, SymmetricClosure) {
  auto lex = ParseLexicon("boring\tant\tinteresting\nfantastic\tsyn\tawesome\n");
  EXPECT_TRUE(lex.Antonyms("boring").count("interesting"));
  EXPECT_TRUE(lex.Antonyms("interesting").count("boring"));
  EXPECT_TRUE(lex.Synonyms("fantastic").count("awesome"));
  EXPECT_TRUE(lex.Synonyms("awesome").count("fantastic"));
  EXPECT_TRUE(lex.Antonyms("unknown").empty());
  EXPECT_EQ(lex.num_antonym_pairs(), 1u);
}

TEST(LexiconTest, CommentsBlankLinesAndSelfPairs) {
  auto lex = ParseLexicon("# header\n\nfun\tant\tfun\ngood\tant\tbad\n");
  EXPECT_TRUE(lex.Antonyms("fun").empty());
  EXPECT_EQ(lex.num_antonym_pairs(), 1u);
}

TEST(LexiconTest, MalformedRowsReportedWithLineNumbers) {
  try {
    ParseLexicon("good\tant\tbad\nbroken row\ngood\tmaybe\tfine\n", "lex.tsv");
    FAIL() << "expected an error";
  } catch (const IoError& e) {
    std::string what = e.what();
    EXPECT_NE(what.find("lex.tsv"), std::string::npos);
    EXPECT_NE(what.find("2, 3"), std::string::npos) << what;
  }
  EXPECT_THROW(ParseLexicon("# only comments\n"), IoError);
}

TEST(AntonymsForTest, FantasticPicksOppositeSign) {
  auto f = Model({{"fantastic", 1.3}, {"unimpressive", -0.8}, {"inferior", -1.1},
                  {"awesome", 0.9}, {"great", 0.4}});
  auto lex = ParseLexicon(
      "fantastic\tant\tunimpressive\nfantastic\tant\tinferior\nfantastic\tant\tgreat\n");
  auto c = AntonymsFor("fantastic", f.model, f.vocab, lex);
  ASSERT_TRUE(c);
  EXPECT_EQ(c->Terms(), (std::vector<std::string>{"inferior", "unimpressive"}));
  EXPECT_FALSE(c->from_synonyms);
  EXPECT_DOUBLE_EQ(c->term_coef, 1.3);
}

TEST(AntonymsForTest, SynonymFallback) {
  // no direct antonym of "awesome"; its synonym "fantastic" has one
  auto f = Model({{"awesome", 1.0}, {"fantastic", 1.2}, {"unimpressive", -0.5}});
  auto lex = ParseLexicon("fantastic\tsyn\tawesome\nfantastic\tant\tunimpressive\n");
  auto c = AntonymsFor("awesome", f.model, f.vocab, lex);
  ASSERT_TRUE(c);
  EXPECT_TRUE(c->from_synonyms);
  EXPECT_EQ(c->Terms(), (std::vector<std::string>{"unimpressive"}));
}

TEST(AntonymsForTest, FallbackOnlyWhenDirectEmpty) {
  auto f = Model({{"a", 1.0}, {"b", -1.0}, {"s", 1.0}, {"c", -2.0}});
  auto lex = ParseLexicon("a\tant\tb\na\tsyn\ts\ns\tant\tc\n");
  auto c = AntonymsFor("a", f.model, f.vocab, lex);
  ASSERT_TRUE(c);
  EXPECT_EQ(c->Terms(), (std::vector<std::string>{"b"}));
}

TEST(AntonymsForTest, NoneAndErrors) {
  auto f = Model({{"good", 1.0}, {"bad", 0.5}, {"zero", 0.0}});
  auto lex = ParseLexicon("good\tant\tbad\ngood\tant\tmissing\n");
  EXPECT_FALSE(AntonymsFor("good", f.model, f.vocab, lex));  // same sign
  EXPECT_THROW(AntonymsFor("oov", f.model, f.vocab, lex), InvalidArgument);
  EXPECT_THROW(AntonymsFor("zero", f.model, f.vocab, lex), InvalidArgument);
  auto selected = SelectAntonyms({"good", "oov", "zero"}, f.model, f.vocab, lex);
  EXPECT_TRUE(selected.empty());
}

TEST(AntonymsForTest, OrderByMagnitudeThenTerm) {
  auto f = Model({{"t", 1.0}, {"x", -0.5}, {"b", -0.5}, {"y", -2.0}});
  auto lex = ParseLexicon("t\tant\tx\nt\tant\tb\nt\tant\ty\n");
  auto c = AntonymsFor("t", f.model, f.vocab, lex);
  ASSERT_TRUE(c);
  EXPECT_EQ(c->Terms(), (std::vector<std::string>{"y", "b", "x"}));
}

TEST(CandidatesJsonTest, Shape) {
  auto f = Model({{"good", 1.0}, {"bad", -1.0}});
  auto lex = ParseLexicon("good\tant\tbad\n");
  auto json = nlohmann::json::parse(
      CandidatesToJson(SelectAntonyms({"good"}, f.model, f.vocab, lex)));
  ASSERT_TRUE(json.is_array() || json.is_object());
  EXPECT_NE(json.dump().find("bad"), std::string::npos);
}

}  // namespace
}  // namespace ctfaug
