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

#include "ctfaug/util.h"

#include <atomic>
#include <map>
#include <set>
#include <stdexcept>

#include "ctfaug/status.h"
#include "gtest/gtest.h"
#include "testing/test_util.h"

namespace ctfaug {
namespace {

TEST(Sha256Test, KnownDigests) {
  EXPECT_EQ(Sha256Hex(""),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(Sha256Hex("abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(DeriveSeedTest, DependsOnBothInputs) {
  EXPECT_EQ(DeriveSeed(1, "a"), DeriveSeed(1, "a"));
  EXPECT_NE(DeriveSeed(1, "a"), DeriveSeed(2, "a"));
  EXPECT_NE(DeriveSeed(1, "a"), DeriveSeed(1, "b"));
}

TEST(UniformIndexTest, StaysInRangeAndCoversIt) {
  std::mt19937_64 rng(7);
  std::map<std::size_t, int> counts;
  for (int i = 0; i < 6000; ++i) {
    std::size_t k = UniformIndex(rng, 3);
    ASSERT_LT(k, 3u);
    ++counts[k];
  }
  for (auto& [k, c] : counts) EXPECT_NEAR(c, 2000, 200) << k;
  EXPECT_THROW(UniformIndex(rng, 0), InvalidArgument);
}

TEST(SampleIndicesTest, DistinctSortedAndSeeded) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto s = SampleIndices(100, 10, seed);
    ASSERT_EQ(s.size(), 10u);
    EXPECT_TRUE(std::is_sorted(s.begin(), s.end()));
    EXPECT_EQ(std::set<std::size_t>(s.begin(), s.end()).size(), 10u);
    EXPECT_LT(s.back(), 100u);
    EXPECT_EQ(s, SampleIndices(100, 10, seed));
  }
  EXPECT_EQ(SampleIndices(3, 5, 0), (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_NE(SampleIndices(1000, 10, 1), SampleIndices(1000, 10, 2));
}

TEST(SampleIndicesTest, RoughlyUniform) {
  std::vector<int> hits(20, 0);
  for (std::uint64_t seed = 0; seed < 2000; ++seed) {
    for (auto i : SampleIndices(20, 5, seed)) ++hits[i];
  }
  for (int h : hits) EXPECT_NEAR(h, 500, 80);
}

TEST(FileTest, AtomicWriteAndRead) {
  testing::ScratchDir dir;
  const std::string path = dir.File("nested/out.txt");
  WriteFileAtomic(path, "hello");
  EXPECT_EQ(ReadFile(path), "hello");
  WriteFileAtomic(path, "bye");
  EXPECT_EQ(ReadFile(path), "bye");
  EXPECT_FALSE(std::filesystem::exists(path + ".tmp"));
  EXPECT_THROW(ReadFile(dir.File("none")), IoError);
}

TEST(ParallelForTest, VisitsEveryIndexOnce) {
  for (int jobs : {1, 3, 8}) {
    std::vector<std::atomic<int>> seen(50);
    ParallelFor(seen.size(), jobs, [&](std::size_t i) { ++seen[i]; });
    for (auto& s : seen) EXPECT_EQ(s.load(), 1);
  }
}

TEST(ParallelForTest, PropagatesExceptions) {
  EXPECT_THROW(ParallelFor(10, 4,
                           [](std::size_t i) {
                             if (i == 7) throw std::runtime_error("boom");
                           }),
               std::runtime_error);
}

TEST(JoinTest, Basic) {
  EXPECT_EQ(Join({}, ","), "");
  EXPECT_EQ(Join({"a", "b"}, ", "), "a, b");
}

}  // namespace
}  // namespace ctfaug
