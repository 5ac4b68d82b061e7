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

#include "ctfaug/linear_model.h"

#include <cmath>
#include <random>

#include "ctfaug/status.h"
#include "gtest/gtest.h"
#include "testing/test_util.h"

namespace ctfaug {
namespace {

using testing::MakeCorpus;

TrainingSet SetFor(const LabeledCorpus& c, Vocabulary* v) {
  *v = BuildVocabulary(c);
  return MakeTrainingSet(c, *v);
}

TEST(LogisticObjectiveTest, ValueAtZeroIsLog2) {
  auto c = MakeCorpus({{"good", 1}, {"bad", -1}, {"good bad", 1}});
  Vocabulary v;
  TrainingSet data = SetFor(c, &v);
  LogisticObjective f(data, 1.0);
  std::vector<double> zero(f.dimension(), 0.0);
  EXPECT_NEAR(f.Value(zero), std::log(2.0), 1e-15);
}

TEST(LogisticObjectiveTest, MatchesDenseReference) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> normal(0.0, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    auto c = testing::RandomCorpus(rng, {});
    Vocabulary v;
    TrainingSet data = SetFor(c, &v);
    const double l2_c = trial % 2 ? 0.3 : 10.0;
    LogisticObjective f(data, l2_c);
    std::vector<double> p(f.dimension());
    for (auto& x : p) x = normal(rng);
    EXPECT_NEAR(f.Value(p), testing::ReferenceObjective(data, l2_c, p), 1e-12);
  }
}

TEST(LogisticObjectiveTest, GradientMatchesFiniteDifferences) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> normal(0.0, 1.0);
  auto c = testing::RandomCorpus(rng, {.min_docs = 10, .max_docs = 10});
  Vocabulary v;
  TrainingSet data = SetFor(c, &v);
  LogisticObjective f(data, 0.5);
  for (int point = 0; point < 10; ++point) {
    std::vector<double> p(f.dimension());
    for (auto& x : p) x = normal(rng);
    std::vector<double> g(f.dimension());
    f.ValueAndGradient(p, g);
    for (std::size_t j = 0; j < p.size(); ++j) {
      const double h = 1e-6;
      auto plus = p, minus = p;
      plus[j] += h;
      minus[j] -= h;
      const double fd = (f.Value(plus) - f.Value(minus)) / (2 * h);
      EXPECT_NEAR(g[j], fd, 1e-6 * std::max(1.0, std::abs(fd)));
    }
  }
}

TEST(FitTest, TwoDocumentSigns) {
  auto c = MakeCorpus({{"good", 1}, {"bad", -1}});
  Vocabulary v = BuildVocabulary(c);
  FitResult r = Fit(c, v, {.l2_c = 1.0});
  EXPECT_TRUE(r.converged);
  EXPECT_GT(r.model.Coefficient(v, "good"), 0.0);
  EXPECT_LT(r.model.Coefficient(v, "bad"), 0.0);
  EXPECT_EQ(r.model.Coefficient(v, "missing"), 0.0);
  EXPECT_LT(r.gradient_norm, 1e-6);
}

TEST(FitTest, SixDocumentsMatchNewton) {
  auto c = MakeCorpus({{"great film", 1},
                       {"great plot boring ending", 1},
                       {"fun film", 1},
                       {"boring film", -1},
                       {"terrible plot", -1},
                       {"great cast terrible film", -1}});
  Vocabulary v = BuildVocabulary(c);
  TrainingSet data = MakeTrainingSet(c, v);
  for (double l2_c : {0.1, 1.0, 10.0}) {
    FitResult r = Fit(data, {.l2_c = l2_c});
    ASSERT_TRUE(r.converged);
    auto oracle = testing::NewtonOracle(data, l2_c);
    for (std::size_t j = 0; j < v.size(); ++j) {
      EXPECT_NEAR(r.model.coefficients[j], oracle.weights[j], 1e-3) << v.Term(j);
    }
    EXPECT_NEAR(r.model.intercept, oracle.intercept, 1e-3);
  }
}

TEST(FitTest, ObjectiveTraceNonIncreasing) {
  std::mt19937_64 rng(9);
  auto c = testing::RandomCorpus(rng, {.min_docs = 30, .max_docs = 30});
  Vocabulary v = BuildVocabulary(c);
  FitResult r = Fit(c, v, {.l2_c = 5.0, .record_trace = true});
  ASSERT_GE(r.objective_trace.size(), 2u);
  for (std::size_t i = 1; i < r.objective_trace.size(); ++i) {
    EXPECT_LE(r.objective_trace[i], r.objective_trace[i - 1] + 1e-15);
  }
}

TEST(FitTest, NonConvergenceIsReported) {
  std::mt19937_64 rng(2);
  auto c = testing::RandomCorpus(rng, {.min_docs = 20, .max_docs = 20});
  Vocabulary v = BuildVocabulary(c);
  FitResult r = Fit(c, v, {.l2_c = 100.0, .max_iterations = 1});
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.iterations, 1);
  EXPECT_GT(r.gradient_norm, 1e-6);
}

TEST(FitTest, Errors) {
  auto one_class = MakeCorpus({{"a", 1}, {"b", 1}});
  Vocabulary v = BuildVocabulary(one_class);
  EXPECT_THROW(Fit(one_class, v, {}), InvalidArgument);
  auto c = MakeCorpus({{"a", 1}, {"b", -1}});
  EXPECT_THROW(Fit(c, BuildVocabulary(c), {.l2_c = 0.0}), InvalidArgument);
}

// Flipping every label negates the solution.
TEST(FitTest, LabelFlipSymmetry) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    auto c = testing::RandomCorpus(rng, {});
    auto flipped = c;
    for (auto& d : flipped.documents) d.label = Flip(d.label);
    Vocabulary v = BuildVocabulary(c);
    auto a = Fit(c, v, {}).model;
    auto b = Fit(flipped, v, {}).model;
    for (std::size_t j = 0; j < v.size(); ++j) {
      EXPECT_NEAR(a.coefficients[j], -b.coefficients[j], 1e-5);
    }
    auto neg = a.Negated();
    EXPECT_NEAR(neg.intercept, -a.intercept, 0.0);
  }
}

TEST(FitTest, DeterministicAcrossRuns) {
  std::mt19937_64 rng(4);
  auto c = testing::RandomCorpus(rng, {.min_docs = 40, .max_docs = 40});
  Vocabulary v = BuildVocabulary(c);
  auto a = Fit(c, v, {});
  auto b = Fit(c, v, {});
  EXPECT_EQ(a.model.coefficients, b.model.coefficients);
  EXPECT_EQ(a.model.intercept, b.model.intercept);
}

TEST(PredictTest, TieGoesPositive) {
  LinearModel m;
  m.coefficients = {0.0};
  Vocabulary v({"x"});
  Document d = MakeDocument("a", "x", Label::kNegative);
  Prediction p = Predict(m, d, v);
  EXPECT_EQ(p.probability, 0.5);
  EXPECT_EQ(p.label, Label::kPositive);
}

TEST(PredictTest, AccuracyAndEmpty) {
  auto c = MakeCorpus({{"good", 1}, {"bad", -1}});
  Vocabulary v = BuildVocabulary(c);
  auto m = Fit(c, v, {}).model;
  EXPECT_EQ(Accuracy(m, c, v), 1.0);
  LabeledCorpus empty;
  EXPECT_THROW(Accuracy(m, empty, v), InvalidArgument);
}

TEST(SigmoidTest, StableAtExtremes) {
  EXPECT_EQ(Sigmoid(0.0), 0.5);
  EXPECT_NEAR(Sigmoid(800.0), 1.0, 0.0);
  EXPECT_NEAR(Sigmoid(-800.0), 0.0, 1e-300);
  EXPECT_FALSE(std::isnan(Sigmoid(-1e308)));
}

TEST(TopTermsTest, ThresholdAndOrder) {
  Vocabulary v({"a", "b", "c", "d"});
  LinearModel m;
  m.coefficients = {0.5, -1.5, 1.5, 0.39};
  TopTermSet top = TopTerms(m, v, 0.4);
  ASSERT_EQ(top.entries.size(), 3u);
  EXPECT_EQ(top.entries[0].first, "b");  // |1.5| tie broken by term
  EXPECT_EQ(top.entries[1].first, "c");
  EXPECT_EQ(top.entries[2].first, "a");
  EXPECT_TRUE(top.Contains("a"));
  EXPECT_FALSE(top.Contains("d"));
  EXPECT_TRUE(TopTerms(m, v, 10.0).entries.empty());
  EXPECT_THROW(TopTerms(m, v, 0.0), InvalidArgument);
}

TEST(ModelJsonTest, RoundTrip) {
  auto c = MakeCorpus({{"good film", 1}, {"bad film", -1}});
  Vocabulary v = BuildVocabulary(c);
  auto m = Fit(c, v, {.l2_c = 2.0, .seed = 7}).model;
  std::string json = ModelToJson(m, v);
  Vocabulary v2;
  LinearModel back = ModelFromJson(json, &v2);
  EXPECT_EQ(v2.terms(), v.terms());
  EXPECT_EQ(back.coefficients, m.coefficients);
  EXPECT_EQ(back.intercept, m.intercept);
  EXPECT_EQ(back.l2_c, 2.0);
  EXPECT_EQ(back.seed, 7u);
  EXPECT_EQ(ModelToJson(back, v2), json);
  std::string tampered = json;
  tampered.replace(tampered.find(m.vocab_hash), m.vocab_hash.size(),
                   std::string(m.vocab_hash.size(), '0'));
  EXPECT_THROW(ModelFromJson(tampered, &v2), Error);
}

}  // namespace
}  // namespace ctfaug
