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

#include "ctfaug/embedders.h"

#include <cmath>

#include "ctfaug/status.h"
#include "ctfaug/util.h"
#include "gtest/gtest.h"
#include "testing/test_util.h"

namespace ctfaug {
namespace {

using testing::ScratchDir;
using testing::WriteText;

TEST(NormalizeContextTest, TokenizesAndJoins) {
  EXPECT_EQ(NormalizeContext("  The  PLOT, was."), "the plot was");
  EXPECT_EQ(NormalizeContext(""), "");
}

TEST(AveragedWordVectorsTest, AveragesKnownTokens) {
  AveragedWordVectors emb({{"a", {1, 0}}, {"b", {0, 2}}}, "words:x");
  EXPECT_EQ(emb.dimension(), 2u);
  EXPECT_EQ(emb.Embed("a b zzz"), (Embedding{0.5, 1.0}));
  EXPECT_EQ(emb.Embed("A"), (Embedding{1.0, 0.0}));
  EXPECT_TRUE(emb.Knows("a"));
  EXPECT_FALSE(emb.Knows("zzz"));
}

TEST(AveragedWordVectorsTest, AllUnknownUsesFallback) {
  AveragedWordVectors emb({{"a", {1, 0, 0, 0}}}, "words:x");
  Embedding v = emb.Embed("nothing known");
  for (double x : v) EXPECT_DOUBLE_EQ(x, 0.5);
  EXPECT_EQ(emb.Embed(""), v);
}

TEST(AveragedWordVectorsTest, RejectsBadTables) {
  EXPECT_THROW(AveragedWordVectors({}, "x"), InvalidArgument);
  EXPECT_THROW(AveragedWordVectors({{"a", {1, 0}}, {"b", {1}}}, "x"), InvalidArgument);
}

TEST(AveragedWordVectorsTest, LoadsWord2VecText) {
  ScratchDir dir;
  WriteText(dir.File("v.txt"), "2 3\nfilm 0.1 0.2 0.3\ngreat 1 0 -1\n");
  auto emb = AveragedWordVectors::Load(dir.File("v.txt"));
  EXPECT_EQ(emb->dimension(), 3u);
  EXPECT_EQ(emb->Embed("great"), (Embedding{1, 0, -1}));
  EXPECT_EQ(emb->id().rfind("words:", 0), 0u);
  WriteText(dir.File("bad.txt"), "film 0.1 x\n");
  EXPECT_THROW(AveragedWordVectors::Load(dir.File("bad.txt")), IoError);
  auto via_spec = LoadEmbedder("words:" + dir.File("v.txt"));
  EXPECT_EQ(via_spec->id(), emb->id());
  EXPECT_EQ(LoadEmbedder(dir.File("v.txt"))->id(), emb->id());
}

TEST(PrecomputedLookupTest, KeysOnNormalizedContext) {
  ScratchDir dir;
  const std::string digest = Sha256Hex("the plot was");
  WriteText(dir.File("c.tsv"), digest + "\t0.5 0.25\n");
  auto emb = PrecomputedLookup::Load(dir.File("c.tsv"));
  EXPECT_EQ(emb->Embed("The plot  was!"), (Embedding{0.5, 0.25}));
  EXPECT_THROW(emb->Embed("another context"), NotFound);
  EXPECT_EQ(LoadEmbedder("precomputed:" + dir.File("c.tsv"))->dimension(), 2u);
}

TEST(PrecomputedLookupTest, RejectsZeroAndBadDigest) {
  const std::string digest = Sha256Hex("x");
  EXPECT_THROW(PrecomputedLookup({{digest, {0.0, 0.0}}}, "p"), InvalidArgument);
  EXPECT_THROW(PrecomputedLookup({{"abc", {1.0}}}, "p"), InvalidArgument);
}

}  // namespace
}  // namespace ctfaug
