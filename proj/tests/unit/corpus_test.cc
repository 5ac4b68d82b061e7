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

#include "ctfaug/corpus.h"

#include <set>
#include <string>
#include <vector>

#include "ctfaug/status.h"
#include "gtest/gtest.h"
#include "testing/test_util.h"

namespace ctfaug {
namespace {

using testing::ScratchDir;
using testing::WriteText;

TEST(TokenizeTest, LowercasesAndStripsPunctuation) {
  EXPECT_EQ(Tokenize("Fantastic film."),
            (std::vector<std::string>{"fantastic", "film"}));
  EXPECT_EQ(Tokenize("It's GREAT -- 10/10!!"),
            (std::vector<std::string>{"it", "s", "great"}));
}

TEST(TokenizeTest, EmptyAndPunctuationOnly) {
  EXPECT_TRUE(Tokenize("").empty());
  EXPECT_TRUE(Tokenize("  ...!? 123 ").empty());
}

TEST(TokenizeTest, NonAsciiBytesSeparate) {
  EXPECT_EQ(Tokenize("caf\xc3\xa9 noir"), (std::vector<std::string>{"caf", "noir"}));
}

TEST(LabelFromRatingTest, MapsScale) {
  EXPECT_EQ(LabelFromRating(5), Label::kPositive);
  EXPECT_EQ(LabelFromRating(4), Label::kPositive);
  EXPECT_EQ(LabelFromRating(2), Label::kNegative);
  EXPECT_EQ(LabelFromRating(1), Label::kNegative);
  EXPECT_EQ(LabelFromRating(3), std::nullopt);
}

TEST(LabelFromRatingTest, RejectsOutOfRange) {
  EXPECT_THROW(LabelFromRating(0), InvalidArgument);
  EXPECT_THROW(LabelFromRating(6), InvalidArgument);
}

TEST(LabelTest, ParseAndFlip) {
  EXPECT_EQ(ParseLabel("pos"), Label::kPositive);
  EXPECT_EQ(ParseLabel("negative"), Label::kNegative);
  EXPECT_EQ(ParseLabel("meh"), std::nullopt);
  EXPECT_EQ(Flip(Label::kPositive), Label::kNegative);
  EXPECT_EQ(ToInt(Label::kNegative), -1);
  EXPECT_EQ(LabelName(Label::kPositive), "pos");
}

TEST(DocumentTest, TokensFollowText) {
  Document d = MakeDocument("a", "Terrible film.", Label::kNegative);
  EXPECT_EQ(d.tokens, Tokenize(d.raw_text));
  EXPECT_TRUE(d.Contains("terrible"));
  EXPECT_FALSE(d.Contains("Terrible"));
}

TEST(DocumentTest, AutoCounterfactualNeedsSource) {
  EXPECT_THROW(MakeDocument("a", "x", Label::kPositive, Origin::kAutoCounterfactual),
               InvalidArgument);
  EXPECT_NO_THROW(MakeDocument("a", "x", Label::kPositive, Origin::kAutoCounterfactual,
                               std::string("b")));
}

TEST(LoadCorpusTest, JsonlLabelsAndRatings) {
  ScratchDir dir;
  WriteText(dir.File("c.jsonl"),
            R"({"id": "a", "text": "Fantastic film.", "label": "pos"})" "\n"
            R"({"id": "b", "text": "x", "rating": 3})" "\n"
            R"({"id": "c", "text": "meh", "rating": 1})" "\n"
            "\n"
            R"({"id": "d", "text": "ok", "label": "neg", "rating": 5})" "\n");
  LoadStats stats;
  LabeledCorpus c = LoadCorpus(dir.File("c.jsonl"), CorpusFormat::kJsonl,
                               Split::kTrain, &stats);
  ASSERT_EQ(c.size(), 3u);
  EXPECT_EQ(c.name, "c");
  EXPECT_EQ(c.documents[0].label, Label::kPositive);
  EXPECT_EQ(c.documents[1].id, "c");
  EXPECT_EQ(c.documents[1].label, Label::kNegative);
  // explicit label wins over the rating
  EXPECT_EQ(c.documents[2].label, Label::kNegative);
  EXPECT_EQ(stats.records, 4u);
  EXPECT_EQ(stats.skipped, 1u);
  EXPECT_EQ(stats.loaded, 3u);
}

TEST(LoadCorpusTest, OutOfRangeRatingIsSkipped) {
  ScratchDir dir;
  WriteText(dir.File("c.jsonl"),
            R"({"text": "a", "rating": 9})" "\n" R"({"text": "b", "label": "pos"})" "\n");
  LoadStats stats;
  auto c = LoadCorpus(dir.File("c.jsonl"), CorpusFormat::kJsonl, Split::kTrain, &stats);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c.documents[0].id, "1");  // record index when id is absent
  EXPECT_EQ(stats.skipped, 1u);
}

TEST(LoadCorpusTest, CsvWithQuotes) {
  ScratchDir dir;
  WriteText(dir.File("c.csv"),
            "id,text,rating\n"
            "r1,\"Loved it, truly\",5\n"
            "r2,\"She said \"\"meh\"\"\",2\n"
            "r3,\"multi\nline\",4\n");
  auto c = LoadCorpus(dir.File("c.csv"), CorpusFormat::kCsv);
  ASSERT_EQ(c.size(), 3u);
  EXPECT_EQ(c.documents[0].raw_text, "Loved it, truly");
  EXPECT_EQ(c.documents[1].raw_text, "She said \"meh\"");
  EXPECT_EQ(c.documents[1].label, Label::kNegative);
  EXPECT_EQ(c.documents[2].tokens, (std::vector<std::string>{"multi", "line"}));
}

TEST(LoadCorpusTest, Errors) {
  ScratchDir dir;
  WriteText(dir.File("empty.jsonl"), "");
  EXPECT_THROW(LoadCorpus(dir.File("empty.jsonl"), CorpusFormat::kJsonl), InvalidArgument);
  WriteText(dir.File("dup.jsonl"),
            R"({"id": "a", "text": "x", "label": "pos"})" "\n"
            R"({"id": "a", "text": "y", "label": "neg"})" "\n");
  EXPECT_THROW(LoadCorpus(dir.File("dup.jsonl"), CorpusFormat::kJsonl), InvalidArgument);
  EXPECT_THROW(LoadCorpus(dir.File("missing.jsonl"), CorpusFormat::kJsonl), IoError);
  WriteText(dir.File("bad.jsonl"), "{not json}\n");
  EXPECT_THROW(LoadCorpus(dir.File("bad.jsonl"), CorpusFormat::kJsonl), Error);
  EXPECT_THROW(ParseCorpusFormat("xml"), InvalidArgument);
}

TEST(LoadCorpusTest, JsonlRoundTrip) {
  ScratchDir dir;
  LabeledCorpus c;
  c.name = "rt";
  c.documents.push_back(MakeDocument("a", "Great \"acting\"\n", Label::kPositive));
  c.documents.push_back(MakeDocument("a~ctf", "Awful acting", Label::kNegative,
                                     Origin::kAutoCounterfactual, std::string("a")));
  SaveCorpusJsonl(c, dir.File("rt.jsonl"));
  auto back = LoadCorpus(dir.File("rt.jsonl"), CorpusFormat::kJsonl);
  ASSERT_EQ(back.size(), 2u);
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_EQ(back.documents[i].id, c.documents[i].id);
    EXPECT_EQ(back.documents[i].raw_text, c.documents[i].raw_text);
    EXPECT_EQ(back.documents[i].label, c.documents[i].label);
    EXPECT_EQ(back.documents[i].origin, c.documents[i].origin);
    EXPECT_EQ(back.documents[i].source_id, c.documents[i].source_id);
  }
  EXPECT_EQ(CorpusToJsonl(back), CorpusToJsonl(c));
}

TEST(CorpusTest, TrainableNeedsBothLabels) {
  auto c = testing::MakeCorpus({{"a", 1}, {"b", 1}});
  EXPECT_THROW(c.CheckTrainable(), InvalidArgument);
  c.documents.push_back(MakeDocument("z", "c", Label::kNegative));
  EXPECT_NO_THROW(c.CheckTrainable());
  EXPECT_EQ(c.CountLabel(Label::kPositive), 2u);
}

TEST(SplitSentencesTest, SplitsOnTerminators) {
  EXPECT_EQ(SplitSentences("Great plot. Bad acting! Why? ok"),
            (std::vector<std::string>{"Great plot.", "Bad acting!", "Why?", "ok"}));
  EXPECT_EQ(SplitSentences("Version 2.0 was fine."),
            (std::vector<std::string>{"Version 2.0 was fine."}));
  EXPECT_TRUE(SplitSentences("   ").empty());
}

TEST(SegmentSentencesTest, KeepsKeywordSentences) {
  LabeledCorpus c;
  c.name = "kindle";
  c.documents.push_back(
      MakeDocument("r1", "The story was boring. I read it on a train.", Label::kNegative));
  auto s = SegmentSentences(c, {"boring", "dull"});
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s.documents[0].id, "r1#s0");
  EXPECT_EQ(s.documents[0].source_id, "r1");
  EXPECT_EQ(s.documents[0].label, Label::kNegative);
  EXPECT_THROW(SegmentSentences(c, {}), InvalidArgument);
}

}  // namespace
}  // namespace ctfaug
