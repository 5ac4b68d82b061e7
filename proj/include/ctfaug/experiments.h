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
// Experiment harness: trains a classifier per supervision level, evaluates
// it on the original and counterfactual test sets, and produces the derived
// analyses (term-count sweep, coefficient changes, regularization sweep,
// size-controlled augmentation).

#ifndef CTFAUG_EXPERIMENTS_H_
#define CTFAUG_EXPERIMENTS_H_

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ctfaug/counterfactual.h"
#include "ctfaug/dataset.h"
#include "ctfaug/features.h"
#include "ctfaug/linear_model.h"
#include "ctfaug/matcher.h"
#include "json.hpp"

namespace ctfaug {

// Training configurations ordered by increasing human effort.
enum class SupervisionLevel {
  kOriginalOnly,
  kAutoPredictedTerms,       // causal terms from closest-opposite matching
  kAutoAnnotatedTopTerms,    // human-picked causal terms among top terms
  kAutoAnnotatedVocabTerms,  // human-picked causal terms from the vocabulary
  kHumanCounterfactuals,     // human-written counterfactual training data
};

const std::vector<SupervisionLevel>& AllLevels();
std::string LevelName(SupervisionLevel level);
SupervisionLevel ParseLevel(const std::string& name);

struct ExperimentConfig {
  std::uint64_t seed = 0;
  double l2_c = 1.0;
  int min_df = 1;
  std::optional<double> coef_threshold;  // overrides the dataset default
  double match_threshold = 0.95;
  std::size_t max_pairs = 5000;
  bool rebuild_vocab = true;
  int max_iterations = 1000;
  int jobs = 1;  // does not affect results

  nlohmann::ordered_json ToJson() const;
  static ExperimentConfig FromJson(const nlohmann::json& obj);
  // Hash of the result-affecting fields plus the dataset and embedder ids.
  std::string Hash(const std::string& dataset, const std::string& embedder) const;
};

struct Baseline {
  Vocabulary vocab;
  LinearModel model;
  bool converged = false;
  TopTermSet top_terms;
};

// Original training data minus any document that shares an id or source_id
// with a test or counterfactual-test document.
LabeledCorpus LeakageFilteredTrain(const Dataset& dataset,
                                   const LabeledCorpus& train);

Baseline TrainBaseline(const Dataset& dataset, const ExperimentConfig& config);

struct TrainedLevel {
  SupervisionLevel level = SupervisionLevel::kOriginalOnly;
  bool available = true;
  std::string note;
  LabeledCorpus training;
  Vocabulary vocab;
  LinearModel model;
  bool converged = false;
  std::size_t n_counterfactuals = 0;
  std::vector<std::string> causal_terms;  // terms used for generation
  CausalAntonyms antonyms;
};

// Causal term list for the annotated levels, in the dataset's order.
std::vector<std::string> AnnotatedTerms(const Dataset& dataset,
                                        SupervisionLevel level,
                                        const Baseline& baseline);

// Orders terms by descending |coefficient| in the baseline model.
std::vector<std::string> OrderByCoefficient(std::vector<std::string> terms,
                                            const Baseline& baseline);

// Builds the training corpus for `level` and fits the classifier. Throws
// InvalidArgument when the level's inputs are missing; a missing human
// counterfactual training set yields available = false instead.
TrainedLevel TrainLevel(const Dataset& dataset, SupervisionLevel level,
                        const ExperimentConfig& config,
                        const Baseline& baseline);

// Augments the original data with counterfactuals from `terms` and retrains.
TrainedLevel TrainWithTerms(const Dataset& dataset,
                            const std::vector<std::string>& terms,
                            const ExperimentConfig& config,
                            const Baseline& baseline);

struct ReportRow {
  std::string dataset;
  SupervisionLevel level = SupervisionLevel::kOriginalOnly;
  bool available = true;
  std::optional<double> orig_accuracy;
  std::optional<double> ctf_accuracy;
  std::size_t n_train = 0;
  std::size_t n_counterfactuals = 0;
  std::size_t n_causal_terms = 0;
  bool converged = true;
  std::uint64_t seed = 0;
  double l2_c = 1.0;
  double coef_threshold = 0.0;
  double match_threshold = 0.0;
  std::string embedder;
  std::string config_hash;
  std::string note;

  nlohmann::ordered_json ToJson() const;
};

ReportRow EvaluateLevel(const Dataset& dataset, const TrainedLevel& trained,
                        const ExperimentConfig& config);

struct ExperimentReport {
  nlohmann::ordered_json config;
  std::vector<ReportRow> rows;  // sorted by (dataset, level)

  std::string ToJson() const;
  // Table with one Orig/CTF column pair per dataset and one row per level.
  std::string ToMarkdown() const;
};

ExperimentReport RunSupervisionGrid(
    const std::vector<const Dataset*>& datasets, const ExperimentConfig& config,
    const std::vector<SupervisionLevel>& levels = AllLevels());

struct CurvePoint {
  std::size_t n = 0;
  double orig_accuracy = 0.0;
  std::optional<double> ctf_accuracy;
};

// For each n, augments with the first n terms (ordered by descending
// baseline |coefficient|) and retrains. Counts beyond the list are clipped.
std::vector<CurvePoint> SweepTermCount(const Dataset& dataset,
                                       const std::vector<std::string>& terms,
                                       const std::vector<std::size_t>& counts,
                                       const ExperimentConfig& config);
std::string CurveToCsv(const std::vector<CurvePoint>& curve);

struct TermChange {
  std::string term;
  double original = 0.0;
  double robust = 0.0;
  bool causal = false;
};

struct CorrectedSample {
  std::string doc_id;
  std::string text;
  Label label = Label::kPositive;
  std::vector<TermChange> terms;  // distinct in-vocabulary tokens, doc order
};

struct ChangeAggregate {
  std::size_t occurrences = 0;
  double signed_change = 0.0;  // sum over occurrences of y * delta
  double raw_change = 0.0;     // sum over occurrences of delta
  double per_document = 0.0;   // signed_change / corrected samples
  double per_term = 0.0;       // signed_change / occurrences
};

struct CoefficientChangeReport {
  std::vector<TermChange> terms;  // shared vocabulary, by |delta| descending
  std::vector<CorrectedSample> corrected;
  ChangeAggregate causal;
  ChangeAggregate non_causal;

  std::string ToJson(std::size_t max_terms = 0) const;
};

// Compares two models on `test`. A corrected sample is misclassified by the
// original model and classified correctly by the robust one.
CoefficientChangeReport MakeCoefficientChangeReport(
    const LinearModel& original, const Vocabulary& original_vocab,
    const LinearModel& robust, const Vocabulary& robust_vocab,
    const LabeledCorpus& test, const std::set<std::string>& causal_terms);

struct RegularizationRow {
  double l2_c = 0.0;
  double orig_accuracy = 0.0;
  std::optional<double> ctf_accuracy;
  bool converged = true;
};

std::vector<RegularizationRow> RegularizationSweep(
    const Dataset& dataset, const std::vector<double>& c_values,
    const ExperimentConfig& config);
std::string RegularizationToCsv(const std::vector<RegularizationRow>& rows);

// Downsamples the augmented corpus for `level` to the original training size
// (seeded, uniform), retrains and evaluates.
ReportRow SizeControlledAugment(const Dataset& dataset, SupervisionLevel level,
                                const ExperimentConfig& config);

}  // namespace ctfaug

#endif  // CTFAUG_EXPERIMENTS_H_
