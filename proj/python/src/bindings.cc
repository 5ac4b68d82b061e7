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

// Python bindings for the core library. Reports are returned as JSON text and
// decoded by the pure-Python wrapper in ctfaug/__init__.py.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ctfaug/corpus.h"
#include "ctfaug/counterfactual.h"
#include "ctfaug/dataset.h"
#include "ctfaug/embedders.h"
#include "ctfaug/experiments.h"
#include "ctfaug/features.h"
#include "ctfaug/lexicon.h"
#include "ctfaug/linear_model.h"
#include "ctfaug/matcher.h"
#include "ctfaug/status.h"

namespace py = pybind11;

namespace ctfaug {
namespace {

Label ToLabel(int value) {
  if (value == 1) return Label::kPositive;
  if (value == -1) return Label::kNegative;
  throw InvalidArgument("labels are +1 or -1, got " + std::to_string(value));
}

LabeledCorpus CorpusFromRecords(const std::vector<std::tuple<std::string, std::string, int>>& rows,
                                const std::string& name) {
  LabeledCorpus corpus;
  corpus.name = name;
  for (const auto& [id, text, label] : rows) {
    corpus.documents.push_back(MakeDocument(id, text, ToLabel(label)));
  }
  corpus.CheckUniqueIds();
  return corpus;
}

ExperimentConfig MakeConfig(std::uint64_t seed, double l2_c, int min_df,
                            std::optional<double> coef_threshold, double match_threshold,
                            std::size_t max_pairs, bool rebuild_vocab, int max_iterations,
                            int jobs) {
  ExperimentConfig c;
  c.seed = seed;
  c.l2_c = l2_c;
  c.min_df = min_df;
  c.coef_threshold = coef_threshold;
  c.match_threshold = match_threshold;
  c.max_pairs = max_pairs;
  c.rebuild_vocab = rebuild_vocab;
  c.max_iterations = max_iterations;
  c.jobs = jobs;
  return c;
}

std::vector<SupervisionLevel> ParseLevels(const std::vector<std::string>& names) {
  if (names.empty()) return AllLevels();
  std::vector<SupervisionLevel> levels;
  for (const auto& n : names) levels.push_back(ParseLevel(n));
  return levels;
}

std::vector<std::pair<std::string, double>> MatchTerms(const Dataset& dataset,
                                                       const ExperimentConfig& config) {
  if (!dataset.embedder) throw InvalidArgument("dataset has no embedder");
  Baseline baseline = TrainBaseline(dataset, config);
  LabeledCorpus train = LeakageFilteredTrain(dataset, dataset.train);
  Matcher matcher(train, baseline.top_terms, *dataset.embedder,
                  {.max_pairs = config.max_pairs, .seed = config.seed});
  std::vector<std::pair<std::string, double>> out;
  for (const auto& [term, m] : matcher.MatchAll(config.jobs)) out.emplace_back(term, m.score);
  return out;
}

}  // namespace
}  // namespace ctfaug

PYBIND11_MODULE(_core, m) {
  using namespace ctfaug;
  m.doc() = "Counterfactual data augmentation core";

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const InvalidArgument& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const NotFound& e) {
      PyErr_SetString(PyExc_KeyError, e.what());
    } catch (const IoError& e) {
      PyErr_SetString(PyExc_OSError, e.what());
    } catch (const Busy& e) {
      PyErr_SetString(PyExc_RuntimeError, e.what());
    }
  });

  m.def("tokenize", [](const std::string& text) { return Tokenize(text); }, py::arg("text"));

  py::class_<Document>(m, "Document")
      .def_readonly("id", &Document::id)
      .def_readonly("text", &Document::raw_text)
      .def_readonly("tokens", &Document::tokens)
      .def_property_readonly("label", [](const Document& d) { return ToInt(d.label); })
      .def_property_readonly("origin", [](const Document& d) { return OriginName(d.origin); })
      .def_readonly("source_id", &Document::source_id)
      .def("__repr__", [](const Document& d) {
        return "<Document " + d.id + " " + LabelName(d.label) + ">";
      });

  py::class_<LabeledCorpus>(m, "Corpus")
      .def_static("from_records", &CorpusFromRecords, py::arg("records"),
                  py::arg("name") = "corpus",
                  "Builds a corpus from (id, text, label) tuples with labels +1/-1.")
      .def_readonly("name", &LabeledCorpus::name)
      .def_readonly("documents", &LabeledCorpus::documents)
      .def("__len__", &LabeledCorpus::size)
      .def("to_jsonl", [](const LabeledCorpus& c) { return CorpusToJsonl(c); });

  m.def(
      "load_corpus",
      [](const std::string& path, const std::string& format, const std::string& split) {
        return LoadCorpus(path, ParseCorpusFormat(format),
                          split == "test" ? Split::kTest : Split::kTrain);
      },
      py::arg("path"), py::arg("format") = "jsonl", py::arg("split") = "train");

  py::class_<Vocabulary>(m, "Vocabulary")
      .def(py::init<std::vector<std::string>>(), py::arg("terms"))
      .def_property_readonly("terms", &Vocabulary::terms)
      .def("__len__", &Vocabulary::size)
      .def("__contains__", [](const Vocabulary& v, const std::string& t) { return v.Contains(t); })
      .def("index_of", [](const Vocabulary& v, const std::string& t) { return v.IndexOf(t); });
  m.def("build_vocabulary", &BuildVocabulary, py::arg("corpus"), py::arg("min_df") = 1);

  py::class_<LinearModel>(m, "Model")
      .def_readonly("coefficients", &LinearModel::coefficients)
      .def_readonly("intercept", &LinearModel::intercept)
      .def_readonly("l2_c", &LinearModel::l2_c)
      .def("coefficient", [](const LinearModel& model, const Vocabulary& v,
                             const std::string& term) { return model.Coefficient(v, term); })
      .def("to_json", [](const LinearModel& model, const Vocabulary& v) {
        return ModelToJson(model, v);
      });

  py::class_<FitResult>(m, "FitResult")
      .def_readonly("model", &FitResult::model)
      .def_readonly("iterations", &FitResult::iterations)
      .def_readonly("gradient_norm", &FitResult::gradient_norm)
      .def_readonly("converged", &FitResult::converged);

  m.def(
      "fit",
      [](const LabeledCorpus& corpus, const Vocabulary& vocab, double l2_c,
         int max_iterations, double gradient_tolerance) {
        py::gil_scoped_release release;
        return Fit(corpus, vocab,
                   {.l2_c = l2_c, .max_iterations = max_iterations,
                    .gradient_tolerance = gradient_tolerance});
      },
      py::arg("corpus"), py::arg("vocab"), py::arg("l2_c") = 1.0,
      py::arg("max_iterations") = 1000, py::arg("gradient_tolerance") = 1e-6);

  m.def(
      "predict_proba",
      [](const LinearModel& model, const Vocabulary& vocab, const std::string& text) {
        return Predict(model, MakeDocument("q", text, Label::kPositive), vocab).probability;
      },
      py::arg("model"), py::arg("vocab"), py::arg("text"));
  m.def("accuracy", &Accuracy, py::arg("model"), py::arg("corpus"), py::arg("vocab"));
  m.def(
      "top_terms",
      [](const LinearModel& model, const Vocabulary& vocab, double threshold) {
        return TopTerms(model, vocab, threshold).entries;
      },
      py::arg("model"), py::arg("vocab"), py::arg("threshold"));

  py::class_<Dataset>(m, "Dataset")
      .def_readonly("name", &Dataset::name)
      .def_readonly("coef_threshold", &Dataset::coef_threshold)
      .def_readonly("train", &Dataset::train)
      .def_readonly("test", &Dataset::test)
      .def_readonly("ctf_test", &Dataset::ctf_test)
      .def_readonly("ctf_train", &Dataset::ctf_train)
      .def_readonly("annotated_causal", &Dataset::annotated_causal)
      .def_property_readonly("embedder", [](const Dataset& d) {
        return d.embedder ? std::optional<std::string>(d.embedder->id()) : std::nullopt;
      });
  m.def("load_dataset", &LoadDataset, py::arg("directory"), py::arg("embedder") = "",
        py::arg("lexicon") = "");

  py::class_<ExperimentConfig>(m, "ExperimentConfig")
      .def(py::init(&MakeConfig), py::arg("seed") = 0, py::arg("l2_c") = 1.0,
           py::arg("min_df") = 1, py::arg("coef_threshold") = std::nullopt,
           py::arg("match_threshold") = 0.95, py::arg("max_pairs") = 5000,
           py::arg("rebuild_vocab") = true, py::arg("max_iterations") = 1000,
           py::arg("jobs") = 1)
      .def_readwrite("seed", &ExperimentConfig::seed)
      .def_readwrite("l2_c", &ExperimentConfig::l2_c)
      .def_readwrite("coef_threshold", &ExperimentConfig::coef_threshold)
      .def_readwrite("match_threshold", &ExperimentConfig::match_threshold)
      .def_readwrite("jobs", &ExperimentConfig::jobs)
      .def("hash", &ExperimentConfig::Hash, py::arg("dataset"), py::arg("embedder"));

  m.def("match_terms", &MatchTerms, py::arg("dataset"), py::arg("config"),
        py::call_guard<py::gil_scoped_release>(),
        "Closest-opposite-match score for every top term of the baseline model.");

  m.def(
      "augment",
      [](const LabeledCorpus& corpus, const std::map<std::string, std::vector<std::string>>& antonyms,
         std::uint64_t seed) {
        CausalAntonyms causal;
        for (const auto& [term, list] : antonyms) {
          AntonymCandidates c;
          c.term = term;
          for (const auto& a : list) c.candidates.emplace_back(a, 0.0);
          causal.emplace(term, std::move(c));
        }
        return Augment(corpus, causal, seed).corpus;
      },
      py::arg("corpus"), py::arg("antonyms"), py::arg("seed") = 0,
      "Appends one counterfactual per document containing a causal term.");

  m.def(
      "run_grid_json",
      [](const std::vector<const Dataset*>& datasets, const ExperimentConfig& config,
         const std::vector<std::string>& levels) {
        auto report = RunSupervisionGrid(datasets, config, ParseLevels(levels));
        return std::make_pair(report.ToJson(), report.ToMarkdown());
      },
      py::arg("datasets"), py::arg("config"), py::arg("levels") = std::vector<std::string>{},
      py::call_guard<py::gil_scoped_release>());

  m.def(
      "regularization_sweep",
      [](const Dataset& dataset, const std::vector<double>& c_values,
         const ExperimentConfig& config) {
        std::vector<std::tuple<double, double, std::optional<double>>> rows;
        for (const auto& r : RegularizationSweep(dataset, c_values, config)) {
          rows.emplace_back(r.l2_c, r.orig_accuracy, r.ctf_accuracy);
        }
        return rows;
      },
      py::arg("dataset"), py::arg("c_values"), py::arg("config"),
      py::call_guard<py::gil_scoped_release>());
}
