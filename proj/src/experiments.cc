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

#include "ctfaug/experiments.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <unordered_set>

#include "ctfaug/status.h"
#include "ctfaug/util.h"

namespace ctfaug {

using ojson = nlohmann::ordered_json;

namespace {

double CoefThreshold(const Dataset& dataset, const ExperimentConfig& config) {
  return config.coef_threshold.value_or(dataset.coef_threshold);
}

FitOptions MakeFitOptions(const ExperimentConfig& config) {
  FitOptions options;
  options.l2_c = config.l2_c;
  options.seed = config.seed;
  options.max_iterations = config.max_iterations;
  return options;
}

// Fits on `training`, rebuilding the vocabulary unless frozen.
void FitInto(TrainedLevel* out, const ExperimentConfig& config,
             const Baseline& baseline) {
  out->vocab = config.rebuild_vocab ? BuildVocabulary(out->training, config.min_df)
                                    : baseline.vocab;
  FitResult fit = Fit(out->training, out->vocab, MakeFitOptions(config));
  out->model = std::move(fit.model);
  out->converged = fit.converged;
}

// Accuracy as ".816": three decimals, no leading zero.
std::string FormatAccuracy(std::optional<double> value) {
  if (!value) return "n/a";
  char buffer[16];
  std::snprintf(buffer, sizeof(buffer), "%.3f", *value);
  std::string s(buffer);
  if (s.rfind("0.", 0) == 0) s.erase(0, 1);
  return s;
}

std::string LevelTrainingLabel(SupervisionLevel level) {
  switch (level) {
    case SupervisionLevel::kOriginalOnly:
      return "not used | not used";
    case SupervisionLevel::kAutoPredictedTerms:
      return "auto-generated | predicted from top words";
    case SupervisionLevel::kAutoAnnotatedTopTerms:
      return "auto-generated | annotated from top words";
    case SupervisionLevel::kAutoAnnotatedVocabTerms:
      return "auto-generated | annotated from whole vocabulary";
    case SupervisionLevel::kHumanCounterfactuals:
      return "human-generated | not used";
  }
  return "";
}

std::optional<double> CtfAccuracy(const Dataset& dataset, const LinearModel& model,
                                  const Vocabulary& vocab) {
  if (!dataset.ctf_test || dataset.ctf_test->empty()) return std::nullopt;
  return Accuracy(model, *dataset.ctf_test, vocab);
}

ojson OptionalNumber(std::optional<double> v) {
  return v ? ojson(*v) : ojson(nullptr);
}

}  // namespace

const std::vector<SupervisionLevel>& AllLevels() {
  static const std::vector<SupervisionLevel> kLevels = {
      SupervisionLevel::kOriginalOnly, SupervisionLevel::kAutoPredictedTerms,
      SupervisionLevel::kAutoAnnotatedTopTerms,
      SupervisionLevel::kAutoAnnotatedVocabTerms,
      SupervisionLevel::kHumanCounterfactuals};
  return kLevels;
}

std::string LevelName(SupervisionLevel level) {
  switch (level) {
    case SupervisionLevel::kOriginalOnly:
      return "original_only";
    case SupervisionLevel::kAutoPredictedTerms:
      return "auto_predicted_terms";
    case SupervisionLevel::kAutoAnnotatedTopTerms:
      return "auto_annotated_top_terms";
    case SupervisionLevel::kAutoAnnotatedVocabTerms:
      return "auto_annotated_vocab_terms";
    case SupervisionLevel::kHumanCounterfactuals:
      return "human_counterfactuals";
  }
  return "";
}

SupervisionLevel ParseLevel(const std::string& name) {
  for (auto level : AllLevels()) {
    if (LevelName(level) == name) return level;
  }
  throw InvalidArgument("unknown supervision level: " + name);
}

ojson ExperimentConfig::ToJson() const {
  ojson obj;
  obj["seed"] = seed;
  obj["l2_c"] = l2_c;
  obj["min_df"] = min_df;
  obj["coef_threshold"] = coef_threshold ? ojson(*coef_threshold) : ojson(nullptr);
  obj["match_threshold"] = match_threshold;
  obj["max_pairs"] = max_pairs;
  obj["rebuild_vocab"] = rebuild_vocab;
  obj["max_iterations"] = max_iterations;
  return obj;
}

ExperimentConfig ExperimentConfig::FromJson(const nlohmann::json& obj) {
  ExperimentConfig c;
  c.seed = obj.value("seed", c.seed);
  c.l2_c = obj.value("l2_c", c.l2_c);
  c.min_df = obj.value("min_df", c.min_df);
  if (obj.contains("coef_threshold") && !obj["coef_threshold"].is_null()) {
    c.coef_threshold = obj["coef_threshold"].get<double>();
  }
  c.match_threshold = obj.value("match_threshold", c.match_threshold);
  c.max_pairs = obj.value("max_pairs", c.max_pairs);
  c.rebuild_vocab = obj.value("rebuild_vocab", c.rebuild_vocab);
  c.max_iterations = obj.value("max_iterations", c.max_iterations);
  return c;
}

std::string ExperimentConfig::Hash(const std::string& dataset,
                                   const std::string& embedder) const {
  ojson obj = ToJson();
  obj["dataset"] = dataset;
  obj["embedder"] = embedder;
  return Sha256Hex(obj.dump()).substr(0, 12);
}

LabeledCorpus LeakageFilteredTrain(const Dataset& dataset,
                                   const LabeledCorpus& train) {
  std::unordered_set<std::string> held_out;
  auto add = [&](const LabeledCorpus& corpus) {
    for (const auto& doc : corpus.documents) {
      held_out.insert(doc.id);
      if (doc.source_id) held_out.insert(*doc.source_id);
    }
  };
  add(dataset.test);
  if (dataset.ctf_test) add(*dataset.ctf_test);
  LabeledCorpus out;
  out.name = train.name;
  out.split = train.split;
  for (const auto& doc : train.documents) {
    if (held_out.count(doc.id)) continue;
    if (doc.source_id && held_out.count(*doc.source_id)) continue;
    out.documents.push_back(doc);
  }
  return out;
}

Baseline TrainBaseline(const Dataset& dataset, const ExperimentConfig& config) {
  Baseline b;
  LabeledCorpus train = LeakageFilteredTrain(dataset, dataset.train);
  b.vocab = BuildVocabulary(train, config.min_df);
  FitResult fit = Fit(train, b.vocab, MakeFitOptions(config));
  b.model = std::move(fit.model);
  b.converged = fit.converged;
  b.top_terms = TopTerms(b.model, b.vocab, CoefThreshold(dataset, config));
  return b;
}

std::vector<std::string> OrderByCoefficient(std::vector<std::string> terms,
                                            const Baseline& baseline) {
  std::vector<std::string> unique;
  std::unordered_set<std::string> seen;
  for (auto& t : terms) {
    if (seen.insert(t).second) unique.push_back(std::move(t));
  }
  std::stable_sort(unique.begin(), unique.end(),
                   [&](const std::string& a, const std::string& b) {
                     const double ca =
                         std::abs(baseline.model.Coefficient(baseline.vocab, a));
                     const double cb =
                         std::abs(baseline.model.Coefficient(baseline.vocab, b));
                     if (ca != cb) return ca > cb;
                     return a < b;
                   });
  return unique;
}

std::vector<std::string> AnnotatedTerms(const Dataset& dataset,
                                        SupervisionLevel level,
                                        const Baseline& baseline) {
  if (level == SupervisionLevel::kAutoAnnotatedTopTerms) {
    if (dataset.annotated_top_causal) return *dataset.annotated_top_causal;
    if (!dataset.annotated_causal) {
      throw InvalidArgument(dataset.name +
                            ": annotated top-term level needs an annotated causal "
                            "term list");
    }
    std::vector<std::string> out;
    for (const auto& term : *dataset.annotated_causal) {
      if (baseline.top_terms.Contains(term)) out.push_back(term);
    }
    return out;
  }
  if (level == SupervisionLevel::kAutoAnnotatedVocabTerms) {
    if (!dataset.annotated_causal) {
      throw InvalidArgument(dataset.name +
                            ": annotated vocabulary level needs an annotated "
                            "causal term list");
    }
    return *dataset.annotated_causal;
  }
  throw InvalidArgument("level " + LevelName(level) + " has no annotated terms");
}

TrainedLevel TrainWithTerms(const Dataset& dataset,
                            const std::vector<std::string>& terms,
                            const ExperimentConfig& config,
                            const Baseline& baseline) {
  if (!dataset.lexicon) {
    throw InvalidArgument(dataset.name + ": counterfactual generation needs a lexicon");
  }
  TrainedLevel out;
  out.causal_terms = terms;
  out.antonyms = SelectAntonyms(terms, baseline.model, baseline.vocab,
                                *dataset.lexicon);
  LabeledCorpus train = LeakageFilteredTrain(dataset, dataset.train);
  AugmentResult augmented = Augment(train, out.antonyms, config.seed, config.jobs);
  out.training = std::move(augmented.corpus);
  out.n_counterfactuals = augmented.stats.generated;
  FitInto(&out, config, baseline);
  return out;
}

TrainedLevel TrainLevel(const Dataset& dataset, SupervisionLevel level,
                        const ExperimentConfig& config,
                        const Baseline& baseline) {
  TrainedLevel out;
  switch (level) {
    case SupervisionLevel::kOriginalOnly: {
      out.training = LeakageFilteredTrain(dataset, dataset.train);
      out.vocab = baseline.vocab;
      out.model = baseline.model;
      out.converged = baseline.converged;
      break;
    }
    case SupervisionLevel::kAutoPredictedTerms: {
      if (!dataset.embedder) {
        throw InvalidArgument(dataset.name +
                              ": predicted-term level needs a context embedder");
      }
      LabeledCorpus train = LeakageFilteredTrain(dataset, dataset.train);
      MatchOptions options;
      options.max_pairs = config.max_pairs;
      options.seed = config.seed;
      Matcher matcher(train, baseline.top_terms, *dataset.embedder, options);
      CausalTermSet causal =
          IdentifyCausalTerms(matcher.MatchAll(config.jobs), config.match_threshold);
      std::vector<std::string> terms;
      for (const auto& [term, match] : causal.terms) terms.push_back(term);
      out = TrainWithTerms(dataset, OrderByCoefficient(terms, baseline), config,
                           baseline);
      break;
    }
    case SupervisionLevel::kAutoAnnotatedTopTerms:
    case SupervisionLevel::kAutoAnnotatedVocabTerms: {
      out = TrainWithTerms(
          dataset, OrderByCoefficient(AnnotatedTerms(dataset, level, baseline), baseline),
          config, baseline);
      break;
    }
    case SupervisionLevel::kHumanCounterfactuals: {
      if (!dataset.ctf_train) {
        out.available = false;
        out.note = "no human counterfactual training data";
        break;
      }
      out.training = LeakageFilteredTrain(dataset, dataset.train);
      LabeledCorpus human = LeakageFilteredTrain(dataset, *dataset.ctf_train);
      std::unordered_set<std::string> ids;
      for (const auto& d : out.training.documents) ids.insert(d.id);
      for (auto& doc : human.documents) {
        if (ids.count(doc.id)) doc.id += "~human";
        out.training.documents.push_back(std::move(doc));
      }
      out.n_counterfactuals = human.size();
      FitInto(&out, config, baseline);
      break;
    }
  }
  out.level = level;
  return out;
}

ojson ReportRow::ToJson() const {
  ojson obj;
  obj["dataset"] = dataset;
  obj["level"] = LevelName(level);
  obj["available"] = available;
  obj["orig_accuracy"] = OptionalNumber(orig_accuracy);
  obj["ctf_accuracy"] = OptionalNumber(ctf_accuracy);
  obj["n_train"] = n_train;
  obj["n_counterfactuals"] = n_counterfactuals;
  obj["n_causal_terms"] = n_causal_terms;
  obj["converged"] = converged;
  obj["seed"] = seed;
  obj["l2_c"] = l2_c;
  obj["coef_threshold"] = coef_threshold;
  obj["match_threshold"] = match_threshold;
  obj["embedder"] = embedder;
  obj["config_hash"] = config_hash;
  obj["note"] = note;
  return obj;
}

ReportRow EvaluateLevel(const Dataset& dataset, const TrainedLevel& trained,
                        const ExperimentConfig& config) {
  ReportRow row;
  row.dataset = dataset.name;
  row.level = trained.level;
  row.available = trained.available;
  row.note = trained.note;
  row.seed = config.seed;
  row.l2_c = config.l2_c;
  row.coef_threshold = CoefThreshold(dataset, config);
  row.match_threshold = config.match_threshold;
  row.embedder = dataset.embedder ? dataset.embedder->id() : "";
  row.config_hash = config.Hash(dataset.name, row.embedder);
  if (!trained.available) return row;
  row.orig_accuracy = Accuracy(trained.model, dataset.test, trained.vocab);
  row.ctf_accuracy = CtfAccuracy(dataset, trained.model, trained.vocab);
  row.n_train = trained.training.size();
  row.n_counterfactuals = trained.n_counterfactuals;
  row.n_causal_terms = trained.antonyms.size();
  row.converged = trained.converged;
  return row;
}

std::string ExperimentReport::ToJson() const {
  ojson obj;
  obj["config"] = config;
  ojson list = ojson::array();
  for (const auto& row : rows) list.push_back(row.ToJson());
  obj["rows"] = std::move(list);
  return obj.dump(1) + "\n";
}

std::string ExperimentReport::ToMarkdown() const {
  std::vector<std::string> datasets;
  for (const auto& row : rows) {
    if (std::find(datasets.begin(), datasets.end(), row.dataset) == datasets.end()) {
      datasets.push_back(row.dataset);
    }
  }
  std::map<std::pair<std::string, SupervisionLevel>, const ReportRow*> cell;
  for (const auto& row : rows) cell[{row.dataset, row.level}] = &row;

  std::string out = "| Counterfactual training samples | Causal terms |";
  std::string rule = "|---|---|";
  for (const auto& d : datasets) {
    out += " " + d + " Orig | " + d + " CTF |";
    rule += "---|---|";
  }
  out += "\n" + rule + "\n";
  for (auto level : AllLevels()) {
    bool any = false;
    for (const auto& d : datasets) any = any || cell.count({d, level});
    if (!any) continue;
    out += "| " + LevelTrainingLabel(level) + " |";
    for (const auto& d : datasets) {
      auto it = cell.find({d, level});
      const ReportRow* row = it == cell.end() ? nullptr : it->second;
      const bool ok = row && row->available;
      out += " " + FormatAccuracy(ok ? row->orig_accuracy : std::nullopt) + " | " +
             FormatAccuracy(ok ? row->ctf_accuracy : std::nullopt) + " |";
    }
    out += "\n";
  }
  return out;
}

ExperimentReport RunSupervisionGrid(const std::vector<const Dataset*>& datasets,
                                    const ExperimentConfig& config,
                                    const std::vector<SupervisionLevel>& levels) {
  ExperimentReport report;
  report.config = config.ToJson();
  for (const Dataset* dataset : datasets) {
    const Baseline baseline = TrainBaseline(*dataset, config);
    for (auto level : levels) {
      TrainedLevel trained = TrainLevel(*dataset, level, config, baseline);
      report.rows.push_back(EvaluateLevel(*dataset, trained, config));
    }
  }
  std::stable_sort(report.rows.begin(), report.rows.end(),
                   [](const ReportRow& a, const ReportRow& b) {
                     if (a.dataset != b.dataset) return a.dataset < b.dataset;
                     return a.level < b.level;
                   });
  return report;
}

std::vector<CurvePoint> SweepTermCount(const Dataset& dataset,
                                       const std::vector<std::string>& terms,
                                       const std::vector<std::size_t>& counts,
                                       const ExperimentConfig& config) {
  const Baseline baseline = TrainBaseline(dataset, config);
  const std::vector<std::string> ordered = OrderByCoefficient(terms, baseline);
  std::vector<std::size_t> clipped;
  for (std::size_t n : counts) {
    n = std::min(n, ordered.size());
    if (std::find(clipped.begin(), clipped.end(), n) == clipped.end()) {
      clipped.push_back(n);
    }
  }
  std::vector<CurvePoint> curve;
  for (std::size_t n : clipped) {
    CurvePoint point;
    point.n = n;
    if (n == 0) {
      point.orig_accuracy = Accuracy(baseline.model, dataset.test, baseline.vocab);
      point.ctf_accuracy = CtfAccuracy(dataset, baseline.model, baseline.vocab);
    } else {
      std::vector<std::string> prefix(ordered.begin(), ordered.begin() + n);
      TrainedLevel trained = TrainWithTerms(dataset, prefix, config, baseline);
      point.orig_accuracy = Accuracy(trained.model, dataset.test, trained.vocab);
      point.ctf_accuracy = CtfAccuracy(dataset, trained.model, trained.vocab);
    }
    curve.push_back(point);
  }
  return curve;
}

std::string CurveToCsv(const std::vector<CurvePoint>& curve) {
  std::string out = "n,orig_acc,ctf_acc\n";
  char buffer[64];
  for (const auto& p : curve) {
    std::snprintf(buffer, sizeof(buffer), "%zu,%.6f,", p.n, p.orig_accuracy);
    out += buffer;
    if (p.ctf_accuracy) {
      std::snprintf(buffer, sizeof(buffer), "%.6f", *p.ctf_accuracy);
      out += buffer;
    }
    out += "\n";
  }
  return out;
}

CoefficientChangeReport MakeCoefficientChangeReport(
    const LinearModel& original, const Vocabulary& original_vocab,
    const LinearModel& robust, const Vocabulary& robust_vocab,
    const LabeledCorpus& test, const std::set<std::string>& causal_terms) {
  CoefficientChangeReport report;
  for (const auto& term : original_vocab.terms()) {
    if (!robust_vocab.Contains(term)) continue;
    report.terms.push_back({term, original.Coefficient(original_vocab, term),
                            robust.Coefficient(robust_vocab, term),
                            causal_terms.count(term) > 0});
  }
  std::stable_sort(report.terms.begin(), report.terms.end(),
                   [](const TermChange& a, const TermChange& b) {
                     return std::abs(a.robust - a.original) >
                            std::abs(b.robust - b.original);
                   });

  for (const auto& doc : test.documents) {
    const bool was_wrong = Predict(original, doc, original_vocab).label != doc.label;
    const bool now_right = Predict(robust, doc, robust_vocab).label == doc.label;
    if (!was_wrong || !now_right) continue;
    CorrectedSample sample;
    sample.doc_id = doc.id;
    sample.text = doc.raw_text;
    sample.label = doc.label;
    std::unordered_set<std::string> listed;
    const double y = ToInt(doc.label);
    for (const auto& token : doc.tokens) {
      if (!original_vocab.Contains(token) || !robust_vocab.Contains(token)) continue;
      const double before = original.Coefficient(original_vocab, token);
      const double after = robust.Coefficient(robust_vocab, token);
      const bool causal = causal_terms.count(token) > 0;
      ChangeAggregate& agg = causal ? report.causal : report.non_causal;
      ++agg.occurrences;
      agg.signed_change += y * (after - before);
      agg.raw_change += after - before;
      if (listed.insert(token).second) {
        sample.terms.push_back({token, before, after, causal});
      }
    }
    report.corrected.push_back(std::move(sample));
  }
  const double n_docs = static_cast<double>(report.corrected.size());
  for (ChangeAggregate* agg : {&report.causal, &report.non_causal}) {
    agg->per_document = n_docs > 0 ? agg->signed_change / n_docs : 0.0;
    agg->per_term = agg->occurrences > 0
                        ? agg->signed_change / static_cast<double>(agg->occurrences)
                        : 0.0;
  }
  return report;
}

std::string CoefficientChangeReport::ToJson(std::size_t max_terms) const {
  auto change_json = [](const TermChange& t) {
    ojson obj;
    obj["term"] = t.term;
    obj["original"] = t.original;
    obj["robust"] = t.robust;
    obj["delta"] = t.robust - t.original;
    obj["causal"] = t.causal;
    return obj;
  };
  auto agg_json = [](const ChangeAggregate& a) {
    ojson obj;
    obj["occurrences"] = a.occurrences;
    obj["per_document"] = a.per_document;
    obj["per_term"] = a.per_term;
    obj["signed_change"] = a.signed_change;
    obj["raw_change"] = a.raw_change;
    return obj;
  };
  ojson obj;
  ojson term_list = ojson::array();
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (max_terms > 0 && i >= max_terms) break;
    term_list.push_back(change_json(terms[i]));
  }
  obj["terms"] = std::move(term_list);
  ojson corrected_list = ojson::array();
  for (const auto& c : corrected) {
    ojson s;
    s["doc_id"] = c.doc_id;
    s["text"] = c.text;
    s["label"] = LabelName(c.label);
    ojson ts = ojson::array();
    for (const auto& t : c.terms) ts.push_back(change_json(t));
    s["terms"] = std::move(ts);
    corrected_list.push_back(std::move(s));
  }
  obj["corrected"] = std::move(corrected_list);
  obj["aggregate"] = {{"causal", agg_json(causal)},
                      {"non_causal", agg_json(non_causal)},
                      {"n_corrected", corrected.size()}};
  return obj.dump(1) + "\n";
}

std::vector<RegularizationRow> RegularizationSweep(
    const Dataset& dataset, const std::vector<double>& c_values,
    const ExperimentConfig& config) {
  std::vector<RegularizationRow> rows;
  for (double c : c_values) {
    if (!(c > 0.0)) throw InvalidArgument("C values must be positive");
    ExperimentConfig cfg = config;
    cfg.l2_c = c;
    LabeledCorpus train = LeakageFilteredTrain(dataset, dataset.train);
    Vocabulary vocab = BuildVocabulary(train, cfg.min_df);
    FitResult fit = Fit(train, vocab, MakeFitOptions(cfg));
    RegularizationRow row;
    row.l2_c = c;
    row.orig_accuracy = Accuracy(fit.model, dataset.test, vocab);
    row.ctf_accuracy = CtfAccuracy(dataset, fit.model, vocab);
    row.converged = fit.converged;
    rows.push_back(row);
  }
  return rows;
}

std::string RegularizationToCsv(const std::vector<RegularizationRow>& rows) {
  std::string out = "c,orig_acc,ctf_acc\n";
  char buffer[96];
  for (const auto& r : rows) {
    std::snprintf(buffer, sizeof(buffer), "%g,%.6f,", r.l2_c, r.orig_accuracy);
    out += buffer;
    if (r.ctf_accuracy) {
      std::snprintf(buffer, sizeof(buffer), "%.6f", *r.ctf_accuracy);
      out += buffer;
    }
    out += "\n";
  }
  return out;
}

ReportRow SizeControlledAugment(const Dataset& dataset, SupervisionLevel level,
                                const ExperimentConfig& config) {
  const Baseline baseline = TrainBaseline(dataset, config);
  TrainedLevel trained = TrainLevel(dataset, level, config, baseline);
  const std::size_t target = LeakageFilteredTrain(dataset, dataset.train).size();
  if (!trained.available || trained.training.size() <= target) {
    ReportRow row = EvaluateLevel(dataset, trained, config);
    row.note = "size control skipped: augmented corpus not larger than original";
    return row;
  }
  auto keep = SampleIndices(trained.training.size(), target,
                            DeriveSeed(config.seed, "size-control"));
  LabeledCorpus sampled;
  sampled.name = trained.training.name + "-sized";
  sampled.split = trained.training.split;
  std::size_t n_ctf = 0;
  for (std::size_t i : keep) {
    const Document& doc = trained.training.documents[i];
    if (doc.origin != Origin::kOriginal) ++n_ctf;
    sampled.documents.push_back(doc);
  }
  trained.training = std::move(sampled);
  trained.n_counterfactuals = n_ctf;
  FitInto(&trained, config, baseline);
  ReportRow row = EvaluateLevel(dataset, trained, config);
  row.note = "size-controlled";
  return row;
}

}  // namespace ctfaug
