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
// ctfaug command-line tool.

#include <chrono>
#include <csignal>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ctfaug/annotation_service.h"
#include "ctfaug/corpus.h"
#include "ctfaug/counterfactual.h"
#include "ctfaug/dataset.h"
#include "ctfaug/embedders.h"
#include "ctfaug/experiments.h"
#include "ctfaug/http_server.h"
#include "ctfaug/lexicon.h"
#include "ctfaug/linear_model.h"
#include "ctfaug/matcher.h"
#include "ctfaug/status.h"
#include "ctfaug/util.h"
#include "json.hpp"

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace ctfaug {
namespace {

struct CommonFlags {
  std::vector<std::string> datasets;
  std::string data_root = "data";
  std::string run_dir;
  std::string runs_root = "runs";
  std::string embeddings;
  std::string lexicon;
  std::uint64_t seed = 0;
  double l2_c = 1.0;
  int min_df = 1;
  double coef_threshold = 0.0;  // 0: dataset default
  double match_threshold = 0.95;
  std::size_t max_pairs = 5000;
  int max_iterations = 1000;
  bool keep_vocab = false;
  int jobs = 1;
};

void AddCommon(CLI::App* cmd, CommonFlags* f, bool many_datasets = false) {
  if (many_datasets) {
    cmd->add_option("--dataset", f->datasets,
                    "Dataset directory or name under --data-root (repeatable)")
        ->required();
  } else {
    cmd->add_option("--dataset", f->datasets,
                    "Dataset directory or name under --data-root")
        ->required()
        ->expected(1);
  }
  cmd->add_option("--data-root", f->data_root, "Where dataset names are looked up")
      ->capture_default_str();
  cmd->add_option("--run-dir", f->run_dir, "Output directory (default: runs/<time>-<hash>)");
  cmd->add_option("--runs-root", f->runs_root, "Parent of generated run directories")
      ->capture_default_str();
  cmd->add_option("--embeddings", f->embeddings,
                  "Embedder: words:<file>, precomputed:<file> or a word-vector file")
      ->envname("CTF_EMBEDDINGS");
  cmd->add_option("--lexicon", f->lexicon, "Antonym lexicon TSV");
  cmd->add_option("--seed", f->seed, "Random seed")->capture_default_str();
  cmd->add_option("--l2-c", f->l2_c, "Inverse L2 strength")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--min-df", f->min_df, "Minimum document frequency")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--coef-threshold", f->coef_threshold,
                  "Top-term |coefficient| cutoff (default: per dataset)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--threshold,--match-threshold", f->match_threshold,
                  "Causal similarity threshold")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  cmd->add_option("--max-pairs", f->max_pairs, "Pair budget per term")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--max-iterations", f->max_iterations, "Optimizer iteration cap")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_flag("--keep-vocab", f->keep_vocab,
                "Reuse the baseline vocabulary when retraining on augmented data");
  cmd->add_option("--jobs,-j", f->jobs, "Worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

ExperimentConfig ConfigFrom(const CommonFlags& f) {
  ExperimentConfig c;
  c.seed = f.seed;
  c.l2_c = f.l2_c;
  c.min_df = f.min_df;
  if (f.coef_threshold > 0) c.coef_threshold = f.coef_threshold;
  c.match_threshold = f.match_threshold;
  c.max_pairs = f.max_pairs;
  c.rebuild_vocab = !f.keep_vocab;
  c.max_iterations = f.max_iterations;
  c.jobs = f.jobs;
  return c;
}

std::string ResolveDatasetDir(const CommonFlags& f, const std::string& name) {
  if (fs::is_directory(name)) return name;
  fs::path under = fs::path(f.data_root) / name;
  if (fs::is_directory(under)) return under.string();
  throw NotFound("no dataset '" + name + "' (looked in . and " + f.data_root + ")");
}

std::vector<Dataset> LoadDatasets(const CommonFlags& f) {
  std::vector<Dataset> out;
  for (const auto& name : f.datasets) {
    out.push_back(LoadDataset(ResolveDatasetDir(f, name), f.embeddings, f.lexicon));
  }
  return out;
}

std::string EmbedderId(const std::vector<Dataset>& datasets) {
  std::vector<std::string> ids;
  for (const auto& d : datasets) ids.push_back(d.embedder ? d.embedder->id() : "none");
  return Join(ids, ",");
}

// Creates the run directory and writes config.json.
fs::path OpenRunDir(const CommonFlags& f, const std::string& command,
                    const std::vector<Dataset>& datasets,
                    const ExperimentConfig& config, const ojson& extra = ojson::object()) {
  std::vector<std::string> names;
  for (const auto& d : datasets) names.push_back(d.name);
  const std::string hash = config.Hash(Join(names, ","), EmbedderId(datasets));
  fs::path dir;
  if (!f.run_dir.empty()) {
    dir = f.run_dir;
  } else {
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream stamp;
    stamp << std::put_time(&tm, "%Y%m%dT%H%M%SZ");
    dir = fs::path(f.runs_root) / (stamp.str() + "-" + hash.substr(0, 12));
  }
  fs::create_directories(dir);
  ojson snapshot;
  snapshot["command"] = command;
  snapshot["datasets"] = names;
  snapshot["embedder"] = EmbedderId(datasets);
  snapshot["lexicon"] = f.lexicon;
  snapshot["config"] = config.ToJson();
  snapshot["config_hash"] = hash;
  for (const auto& [k, v] : extra.items()) snapshot[k] = v;
  WriteFileAtomic((dir / "config.json").string(), snapshot.dump(2) + "\n");
  return dir;
}

void Write(const fs::path& dir, const std::string& name, const std::string& text) {
  WriteFileAtomic((dir / name).string(), text);
}

const ContextEmbedder& RequireEmbedder(const Dataset& d) {
  if (!d.embedder) {
    throw InvalidArgument("dataset '" + d.name +
                          "' has no embedder; pass --embeddings or set CTF_EMBEDDINGS");
  }
  return *d.embedder;
}

const AntonymLexicon& RequireLexicon(const Dataset& d) {
  if (!d.lexicon) {
    throw InvalidArgument("dataset '" + d.name + "' has no lexicon; pass --lexicon");
  }
  return *d.lexicon;
}

std::map<std::string, Match> RunMatcher(const Dataset& d, const Baseline& baseline,
                                        const ExperimentConfig& config,
                                        const LabeledCorpus& train) {
  MatchOptions options;
  options.max_pairs = config.max_pairs;
  options.seed = config.seed;
  Matcher matcher(train, baseline.top_terms, RequireEmbedder(d), options);
  return matcher.MatchAll(config.jobs);
}

std::string BaselineMetrics(const Dataset& d, const Baseline& b) {
  ojson m;
  m["dataset"] = d.name;
  m["n_train"] = LeakageFilteredTrain(d, d.train).size();
  m["vocab_size"] = b.vocab.size();
  m["converged"] = b.converged;
  m["orig_accuracy"] = Accuracy(b.model, d.test, b.vocab);
  m["ctf_accuracy"] =
      d.ctf_test ? ojson(Accuracy(b.model, *d.ctf_test, b.vocab)) : ojson(nullptr);
  m["n_top_terms"] = b.top_terms.entries.size();
  m["coef_threshold"] = b.top_terms.threshold;
  return m.dump(2) + "\n";
}

void Announce(const fs::path& dir) { std::cerr << "run directory: " << dir.string() << "\n"; }

// ---- subcommands ----

struct IngestFlags {
  std::string input;
  std::string format = "jsonl";
  std::string split = "train";
  std::string output;
  std::string keywords;
};

int RunIngest(const IngestFlags& f) {
  LoadStats stats;
  Split split = f.split == "test" ? Split::kTest : Split::kTrain;
  if (f.split != "test" && f.split != "train") {
    throw InvalidArgument("--split must be train or test");
  }
  LabeledCorpus corpus = LoadCorpus(f.input, ParseCorpusFormat(f.format), split, &stats);
  if (!f.keywords.empty()) {
    auto list = LoadTermList(f.keywords);
    corpus = SegmentSentences(corpus, std::set<std::string>(list.begin(), list.end()));
  }
  SaveCorpusJsonl(corpus, f.output);
  ojson summary;
  summary["records"] = stats.records;
  summary["loaded"] = stats.loaded;
  summary["skipped"] = stats.skipped;
  summary["written"] = corpus.size();
  summary["positive"] = corpus.CountLabel(Label::kPositive);
  summary["negative"] = corpus.CountLabel(Label::kNegative);
  std::cout << summary.dump(2) << "\n";
  return 0;
}

int RunTrain(const CommonFlags& f) {
  auto datasets = LoadDatasets(f);
  const Dataset& d = datasets.front();
  ExperimentConfig config = ConfigFrom(f);
  Baseline b = TrainBaseline(d, config);
  fs::path dir = OpenRunDir(f, "train", datasets, config);
  Write(dir, "model.json", ModelToJson(b.model, b.vocab));
  Write(dir, "vocab.tsv", b.vocab.ToTsv());
  std::string metrics = BaselineMetrics(d, b);
  Write(dir, "report.json", metrics);
  std::cout << metrics;
  Announce(dir);
  if (!b.converged) std::cerr << "warning: optimizer did not converge\n";
  return 0;
}

int RunMatch(const CommonFlags& f, bool causal_only) {
  auto datasets = LoadDatasets(f);
  const Dataset& d = datasets.front();
  ExperimentConfig config = ConfigFrom(f);
  Baseline b = TrainBaseline(d, config);
  auto matches = RunMatcher(d, b, config, LeakageFilteredTrain(d, d.train));
  fs::path dir = OpenRunDir(f, causal_only ? "causal-terms" : "match", datasets, config);
  Write(dir, "model.json", ModelToJson(b.model, b.vocab));
  Write(dir, "matches.json", MatchesToJson(matches));
  CausalTermSet causal = IdentifyCausalTerms(matches, config.match_threshold);
  Write(dir, "causal_terms.json", CausalTermSetToJson(causal));
  if (causal_only) {
    std::cout << CausalTermSetToJson(causal);
  } else {
    std::cout << MatchesToJson(matches);
  }
  if (d.annotated_causal && !d.annotated_causal->empty()) {
    std::set<std::string> annotated(d.annotated_causal->begin(), d.annotated_causal->end());
    auto curve = PrecisionRecallCurve(matches, annotated, {config.match_threshold});
    const auto& p = curve.front();
    std::cerr << "precision@" << p.threshold << ": "
              << (p.precision ? std::to_string(*p.precision) : std::string("none"))
              << " recall: " << p.recall << "\n";
  }
  Announce(dir);
  return 0;
}

struct GenFlags {
  std::string terms_file;
  std::string level;
};

int RunGenCtf(const CommonFlags& f, const GenFlags& g) {
  auto datasets = LoadDatasets(f);
  const Dataset& d = datasets.front();
  ExperimentConfig config = ConfigFrom(f);
  Baseline b = TrainBaseline(d, config);
  LabeledCorpus train = LeakageFilteredTrain(d, d.train);
  fs::path dir;
  std::vector<std::string> terms;
  ojson extra;
  if (!g.terms_file.empty()) {
    terms = LoadTermList(g.terms_file);
    extra["terms_file"] = g.terms_file;
  } else if (!g.level.empty()) {
    SupervisionLevel level = ParseLevel(g.level);
    terms = AnnotatedTerms(d, level, b);
    extra["level"] = g.level;
  }
  std::map<std::string, Match> matches;
  if (terms.empty() && g.terms_file.empty() && g.level.empty()) {
    matches = RunMatcher(d, b, config, train);
    for (const auto& [t, m] : IdentifyCausalTerms(matches, config.match_threshold).terms) {
      terms.push_back(t);
    }
  }
  terms = OrderByCoefficient(terms, b);
  CausalAntonyms antonyms = SelectAntonyms(terms, b.model, b.vocab, RequireLexicon(d));
  AugmentResult aug = Augment(train, antonyms, config.seed, config.jobs);

  dir = OpenRunDir(f, "gen-ctf", datasets, config, extra);
  Write(dir, "model.json", ModelToJson(b.model, b.vocab));
  if (!matches.empty()) {
    Write(dir, "matches.json", MatchesToJson(matches));
    Write(dir, "causal_terms.json",
          CausalTermSetToJson(IdentifyCausalTerms(matches, config.match_threshold)));
  }
  Write(dir, "antonyms.json", CandidatesToJson(antonyms));
  LabeledCorpus generated;
  generated.name = train.name + "~ctf";
  generated.split = Split::kTrain;
  for (const auto& s : aug.samples) generated.documents.push_back(s.document);
  Write(dir, "counterfactuals.jsonl", CorpusToJsonl(generated));
  Write(dir, "substitutions.jsonl", SubstitutionsToJsonl(aug.samples));
  Write(dir, "augmented.jsonl", CorpusToJsonl(aug.corpus));
  ojson summary;
  summary["terms"] = terms;
  summary["terms_with_antonyms"] = antonyms.size();
  summary["originals"] = aug.stats.originals;
  summary["generated"] = aug.stats.generated;
  std::cout << summary.dump(2) << "\n";
  Announce(dir);
  return 0;
}

struct GridFlags {
  std::vector<std::string> levels;
  bool size_control = false;
};

int RunGrid(const CommonFlags& f, const GridFlags& g) {
  auto datasets = LoadDatasets(f);
  ExperimentConfig config = ConfigFrom(f);
  std::vector<SupervisionLevel> levels;
  for (const auto& name : g.levels) levels.push_back(ParseLevel(name));
  if (levels.empty()) levels = AllLevels();
  std::vector<const Dataset*> ptrs;
  for (const auto& d : datasets) ptrs.push_back(&d);
  ExperimentReport report = RunSupervisionGrid(ptrs, config, levels);
  fs::path dir = OpenRunDir(f, "grid", datasets, config);
  Write(dir, "report.json", report.ToJson());
  Write(dir, "report.md", report.ToMarkdown());
  if (g.size_control) {
    ojson rows = ojson::array();
    for (const auto& d : datasets) {
      for (auto level : levels) {
        if (level == SupervisionLevel::kOriginalOnly) continue;
        try {
          rows.push_back(SizeControlledAugment(d, level, config).ToJson());
        } catch (const InvalidArgument& e) {
          std::cerr << "size control skipped for " << d.name << "/" << LevelName(level)
                    << ": " << e.what() << "\n";
        }
      }
    }
    Write(dir, "size_control.json", rows.dump(2) + "\n");
  }
  std::cout << report.ToMarkdown();
  Announce(dir);
  return 0;
}

std::vector<double> ParseDoubles(const std::string& csv) {
  std::vector<double> out;
  std::stringstream in(csv);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    double v = std::stod(item, &used);
    if (used != item.size()) throw InvalidArgument("bad number '" + item + "'");
    out.push_back(v);
  }
  return out;
}

struct SweepFlags {
  std::string terms_file;
  std::string level = "auto_annotated_top_terms";
  std::string counts;
  std::string l2_values;
};

int RunSweep(const CommonFlags& f, const SweepFlags& s) {
  auto datasets = LoadDatasets(f);
  const Dataset& d = datasets.front();
  ExperimentConfig config = ConfigFrom(f);
  if (!s.l2_values.empty()) {
    auto values = ParseDoubles(s.l2_values);
    auto rows = RegularizationSweep(d, values, config);
    fs::path dir = OpenRunDir(f, "sweep", datasets, config, {{"l2_values", values}});
    std::string csv = RegularizationToCsv(rows);
    Write(dir, "regularization.csv", csv);
    std::cout << csv;
    Announce(dir);
    return 0;
  }
  std::vector<std::string> terms;
  if (!s.terms_file.empty()) {
    terms = LoadTermList(s.terms_file);
  } else {
    Baseline b = TrainBaseline(d, config);
    terms = AnnotatedTerms(d, ParseLevel(s.level), b);
  }
  std::vector<std::size_t> counts;
  if (s.counts.empty()) {
    for (std::size_t n = 0; n <= terms.size(); ++n) counts.push_back(n);
  } else {
    for (double v : ParseDoubles(s.counts)) {
      if (v < 0 || v != static_cast<double>(static_cast<std::size_t>(v))) {
        throw InvalidArgument("--counts takes non-negative integers");
      }
      counts.push_back(static_cast<std::size_t>(v));
    }
  }
  auto curve = SweepTermCount(d, terms, counts, config);
  fs::path dir = OpenRunDir(f, "sweep", datasets, config, {{"counts", counts}});
  std::string csv = CurveToCsv(curve);
  Write(dir, "curve.csv", csv);
  std::cout << csv;
  Announce(dir);
  return 0;
}

struct CoefFlags {
  std::string level = "auto_annotated_top_terms";
  std::size_t max_terms = 50;
};

int RunCoefReport(const CommonFlags& f, const CoefFlags& c) {
  auto datasets = LoadDatasets(f);
  const Dataset& d = datasets.front();
  ExperimentConfig config = ConfigFrom(f);
  Baseline b = TrainBaseline(d, config);
  SupervisionLevel level = ParseLevel(c.level);
  TrainedLevel robust = TrainLevel(d, level, config, b);
  if (!robust.available) throw InvalidArgument(robust.note);
  const LabeledCorpus& test = d.ctf_test ? *d.ctf_test : d.test;
  std::set<std::string> causal(robust.causal_terms.begin(), robust.causal_terms.end());
  auto report = MakeCoefficientChangeReport(b.model, b.vocab, robust.model, robust.vocab,
                                            test, causal);
  fs::path dir = OpenRunDir(f, "coef-report", datasets, config, {{"level", c.level}});
  Write(dir, "model.json", ModelToJson(robust.model, robust.vocab));
  std::string json = report.ToJson(c.max_terms);
  Write(dir, "coef_report.json", json);
  std::cout << json;
  Announce(dir);
  return 0;
}

struct ServeFlags {
  std::string host = "127.0.0.1";
  int port = 0;
  std::string static_dir;
  std::string state_dir = "sessions";
  int budget_seconds = 120;
};

HttpServer* g_server = nullptr;

void HandleSignal(int) {
  if (g_server) g_server->Stop();
}

int RunServe(const CommonFlags& f, const ServeFlags& s) {
  auto datasets = LoadDatasets(f);
  ExperimentConfig config = ConfigFrom(f);
  auto workspace = Workspace::Build(std::move(datasets.front()), config);
  AnnotationService::Options options;
  options.state_dir = s.state_dir;
  options.retrain_budget = std::chrono::seconds(s.budget_seconds);
  AnnotationService service(workspace, options);
  HttpServer server(&service, s.static_dir);
  int port = server.Bind(s.host, ResolvePort(s.port));
  std::cerr << "serving " << workspace->dataset.name << " on http://" << s.host << ":"
            << port << "\n";
  g_server = &server;
  std::signal(SIGINT, HandleSignal);
  std::signal(SIGTERM, HandleSignal);
  server.Serve();
  g_server = nullptr;
  return 0;
}

}  // namespace
}  // namespace ctfaug

int main(int argc, char** argv) {
  using namespace ctfaug;
  CLI::App app{"Counterfactual augmentation for bag-of-words text classifiers"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "ctfaug 0.1.0");

  IngestFlags ingest;
  auto* ingest_cmd = app.add_subcommand("ingest", "Load a raw corpus and write canonical JSONL");
  ingest_cmd->add_option("--input", ingest.input, "Input file")->required()->check(CLI::ExistingFile);
  ingest_cmd->add_option("--format", ingest.format, "jsonl or csv")
      ->check(CLI::IsMember({"jsonl", "csv"}))
      ->capture_default_str();
  ingest_cmd->add_option("--split", ingest.split, "train or test")->capture_default_str();
  ingest_cmd->add_option("--output", ingest.output, "Output JSONL")->required();
  ingest_cmd->add_option("--segment-keywords", ingest.keywords,
                         "Split into sentences and keep those with a keyword from this file");

  CommonFlags train_flags, match_flags, causal_flags, gen_flags, grid_flags, sweep_flags,
      coef_flags, serve_flags;
  auto* train_cmd = app.add_subcommand("train", "Fit the baseline classifier");
  AddCommon(train_cmd, &train_flags);

  auto* match_cmd = app.add_subcommand("match", "Closest opposite match for every top term");
  AddCommon(match_cmd, &match_flags);

  auto* causal_cmd = app.add_subcommand("causal-terms", "Terms whose match score passes --threshold");
  AddCommon(causal_cmd, &causal_flags);

  GenFlags gen;
  auto* gen_cmd = app.add_subcommand("gen-ctf", "Generate counterfactual training samples");
  AddCommon(gen_cmd, &gen_flags);
  auto* gen_terms = gen_cmd->add_option("--terms", gen.terms_file,
                                        "Causal term list (default: predicted by matching)");
  gen_cmd->add_option("--level", gen.level, "Take terms from an annotated level")
      ->excludes(gen_terms);

  GridFlags grid;
  auto* grid_cmd = app.add_subcommand("grid", "Train and evaluate every supervision level");
  AddCommon(grid_cmd, &grid_flags, /*many_datasets=*/true);
  grid_cmd->add_option("--levels", grid.levels, "Subset of levels")->delimiter(',');
  grid_cmd->add_flag("--size-control", grid.size_control,
                     "Also evaluate augmented levels downsampled to the original size");

  SweepFlags sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Accuracy versus number of causal terms, or versus C");
  AddCommon(sweep_cmd, &sweep_flags);
  auto* sweep_terms = sweep_cmd->add_option("--terms", sweep.terms_file, "Causal term list");
  sweep_cmd->add_option("--level", sweep.level, "Annotated level supplying the terms")
      ->capture_default_str();
  auto* sweep_counts =
      sweep_cmd->add_option("--counts", sweep.counts, "Comma-separated term counts");
  sweep_cmd
      ->add_option("--l2-values", sweep.l2_values,
                   "Comma-separated C values; sweeps regularization instead")
      ->excludes(sweep_terms)
      ->excludes(sweep_counts);

  CoefFlags coef;
  auto* coef_cmd = app.add_subcommand("coef-report", "Coefficient changes after augmentation");
  AddCommon(coef_cmd, &coef_flags);
  coef_cmd->add_option("--level", coef.level, "Robust model's supervision level")
      ->capture_default_str();
  coef_cmd->add_option("--max-terms", coef.max_terms, "Terms listed (0: all)")
      ->capture_default_str();

  ServeFlags serve;
  auto* serve_cmd = app.add_subcommand("serve", "Run the annotation HTTP service");
  AddCommon(serve_cmd, &serve_flags);
  serve_cmd->add_option("--host", serve.host, "Bind address")->capture_default_str();
  serve_cmd->add_option("--port", serve.port, "Port (default: CTF_PORT or 8080)");
  serve_cmd->add_option("--static-dir", serve.static_dir, "UI bundle directory");
  serve_cmd->add_option("--state-dir", serve.state_dir, "Session files")->capture_default_str();
  serve_cmd->add_option("--retrain-budget", serve.budget_seconds, "Seconds")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*ingest_cmd) return RunIngest(ingest);
    if (*train_cmd) return RunTrain(train_flags);
    if (*match_cmd) return RunMatch(match_flags, false);
    if (*causal_cmd) return RunMatch(causal_flags, true);
    if (*gen_cmd) return RunGenCtf(gen_flags, gen);
    if (*grid_cmd) return RunGrid(grid_flags, grid);
    if (*sweep_cmd) return RunSweep(sweep_flags, sweep);
    if (*coef_cmd) return RunCoefReport(coef_flags, coef);
    if (*serve_cmd) return RunServe(serve_flags, serve);
  } catch (const std::exception& e) {
    std::cerr << "ctfaug: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
