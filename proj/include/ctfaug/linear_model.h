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
//
// L2-regularized binary logistic regression over binary bag-of-words
// features.
//
// The training objective for n documents with labels y in {-1, +1} is
//
//   L(w, b) = (1/n) sum_i log(1 + exp(-y_i (<x_i, w> + b)))
//             + ||w||^2 / (2 C n)
//
// which has the same minimizer as the sum-of-losses form with penalty
// ||w||^2 / (2C). The intercept b is not penalized.

#ifndef CTFAUG_LINEAR_MODEL_H_
#define CTFAUG_LINEAR_MODEL_H_

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ctfaug/corpus.h"
#include "ctfaug/features.h"

namespace ctfaug {

struct LinearModel {
  std::vector<double> coefficients;  // one per vocabulary index
  double intercept = 0.0;
  double l2_c = 1.0;
  std::uint64_t seed = 0;
  std::string trained_on;
  std::string vocab_hash;

  // Coefficient of `term`, or 0 when it is out of vocabulary.
  double Coefficient(const Vocabulary& vocab, std::string_view term) const;
  LinearModel Negated() const;
};

// A labeled design matrix: binary rows plus +-1 targets.
struct TrainingSet {
  std::size_t num_features = 0;
  std::vector<FeatureVector> rows;
  std::vector<int> labels;
};

TrainingSet MakeTrainingSet(const LabeledCorpus& corpus, const Vocabulary& vocab);

// Objective value and gradient. Parameters are packed as [w_0..w_{V-1}, b].
class LogisticObjective {
 public:
  LogisticObjective(const TrainingSet& data, double l2_c);

  std::size_t dimension() const { return data_.num_features + 1; }
  double Value(std::span<const double> params) const;
  // Returns the value and writes the gradient into `grad`.
  double ValueAndGradient(std::span<const double> params,
                          std::span<double> grad) const;

 private:
  const TrainingSet& data_;
  double l2_c_;
};

struct FitOptions {
  double l2_c = 1.0;
  std::uint64_t seed = 0;
  int max_iterations = 1000;
  double gradient_tolerance = 1e-6;  // infinity norm
  int history = 10;                  // L-BFGS memory
  bool record_trace = false;
};

struct FitResult {
  LinearModel model;
  int iterations = 0;
  double gradient_norm = 0.0;
  bool converged = false;
  std::vector<double> objective_trace;  // filled when record_trace is set
};

// Minimizes the objective with L-BFGS and Armijo backtracking, starting at
// zero. Deterministic for a fixed corpus order. Non-convergence is reported
// through FitResult::converged rather than thrown. Throws InvalidArgument for
// single-class corpora or non-positive l2_c.
FitResult Fit(const LabeledCorpus& corpus, const Vocabulary& vocab,
              const FitOptions& options);
FitResult Fit(const TrainingSet& data, const FitOptions& options);

double Sigmoid(double z);

struct Prediction {
  Label label;
  double probability;  // P(y = +1)
};

Prediction Predict(const LinearModel& model, const FeatureVector& x);
Prediction Predict(const LinearModel& model, const Document& doc,
                   const Vocabulary& vocab);

// Fraction of documents whose predicted label matches. Throws on empty input.
double Accuracy(const LinearModel& model, const LabeledCorpus& corpus,
                const Vocabulary& vocab);

struct TopTermSet {
  double threshold = 0.0;
  // Sorted by descending |coefficient|, ties by term.
  std::vector<std::pair<std::string, double>> entries;

  bool Contains(std::string_view term) const;
};

// Terms with |coefficient| >= threshold. Throws if threshold <= 0.
TopTermSet TopTerms(const LinearModel& model, const Vocabulary& vocab,
                    double threshold);

// {"vocab_hash", "intercept", "coefficients": [[term, value], ...], "l2_c",
//  "seed", "trained_on"}
std::string ModelToJson(const LinearModel& model, const Vocabulary& vocab);
// Parses a model file. The vocabulary is rebuilt from the coefficient terms
// and checked against vocab_hash.
LinearModel ModelFromJson(std::string_view text, Vocabulary* vocab);

}  // namespace ctfaug

#endif  // CTFAUG_LINEAR_MODEL_H_
