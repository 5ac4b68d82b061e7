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

#include "ctfaug/annotation_service.h"

#include <algorithm>
#include <filesystem>
#include <set>

#include "ctfaug/status.h"
#include "ctfaug/util.h"

namespace ctfaug {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace {

bool ValidSessionId(const std::string& id) {
  if (id.empty() || id.size() > 64) return false;
  return std::all_of(id.begin(), id.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_';
  });
}

ojson TermChangeJson(const TermChange& t) {
  ojson obj;
  obj["term"] = t.term;
  obj["original"] = t.original;
  obj["robust"] = t.robust;
  obj["delta"] = t.robust - t.original;
  return obj;
}

}  // namespace

std::shared_ptr<const Workspace> Workspace::Build(Dataset dataset,
                                                  ExperimentConfig config) {
  auto ws = std::make_shared<Workspace>();
  ws->dataset = std::move(dataset);
  ws->config = config;
  ws->baseline = TrainBaseline(ws->dataset, config);
  ws->train = LeakageFilteredTrain(ws->dataset, ws->dataset.train);
  if (ws->dataset.embedder) {
    MatchOptions options;
    options.max_pairs = config.max_pairs;
    options.seed = config.seed;
    Matcher matcher(ws->train, ws->baseline.top_terms, *ws->dataset.embedder,
                    options);
    ws->matches = matcher.MatchAll(config.jobs);
  }
  return ws;
}

const Document* Workspace::FindTrainDocument(const std::string& id) const {
  for (const auto& doc : train.documents) {
    if (doc.id == id) return &doc;
  }
  return nullptr;
}

std::string DecisionStateName(DecisionState state) {
  switch (state) {
    case DecisionState::kUndecided:
      return "undecided";
    case DecisionState::kCausal:
      return "causal";
    case DecisionState::kNotCausal:
      return "not_causal";
  }
  return "undecided";
}

ojson RetrainReport::ToJson() const {
  ojson obj;
  obj["row"] = row.ToJson();
  ojson changes = ojson::array();
  for (const auto& c : top_changes) changes.push_back(TermChangeJson(c));
  obj["top_changes"] = std::move(changes);
  return obj;
}

ojson AnnotationSession::ToJson() const {
  ojson obj;
  obj["session_id"] = session_id;
  obj["dataset"] = dataset;
  obj["revision"] = revision;
  obj["content_hash"] = ContentHash();
  ojson d = ojson::object();
  for (const auto& [term, decision] : decisions) {
    d[term] = {{"causal", decision.causal},
               {"chosen_antonyms", decision.chosen_antonyms}};
  }
  obj["decisions"] = std::move(d);
  obj["last_report"] = last_report ? *last_report : ojson(nullptr);
  return obj;
}

AnnotationSession AnnotationSession::FromJson(const nlohmann::json& obj) {
  AnnotationSession s;
  s.session_id = obj.at("session_id").get<std::string>();
  s.dataset = obj.value("dataset", std::string());
  s.revision = obj.value("revision", std::uint64_t{0});
  if (obj.contains("decisions")) {
    for (const auto& [term, d] : obj["decisions"].items()) {
      Decision decision;
      decision.causal = d.value("causal", false);
      decision.chosen_antonyms =
          d.value("chosen_antonyms", std::vector<std::string>{});
      s.decisions.emplace(term, std::move(decision));
    }
  }
  if (obj.contains("last_report") && !obj["last_report"].is_null()) {
    s.last_report = ojson::parse(obj["last_report"].dump());
  }
  return s;
}

std::string AnnotationSession::ContentHash() const {
  ojson d = ojson::object();
  for (const auto& [term, decision] : decisions) {
    d[term] = {{"causal", decision.causal},
               {"chosen_antonyms", decision.chosen_antonyms}};
  }
  return Sha256Hex(d.dump()).substr(0, 16);
}

AnnotationService::AnnotationService(std::shared_ptr<const Workspace> workspace,
                                     Options options)
    : workspace_(std::move(workspace)), options_(std::move(options)) {
  if (!options_.state_dir.empty()) {
    fs::create_directories(options_.state_dir);
    LoadPersisted();
  }
}

AnnotationService::~AnnotationService() {
  std::vector<std::shared_future<void>> jobs;
  {
    std::lock_guard<std::mutex> lock(sessions_mutex_);
    for (auto& [id, entry] : sessions_) {
      std::lock_guard<std::mutex> entry_lock(entry->mutex);
      if (entry->job.valid()) jobs.push_back(entry->job);
    }
  }
  for (auto& job : jobs) job.wait();
}

void AnnotationService::LoadPersisted() {
  for (const auto& file : fs::directory_iterator(options_.state_dir)) {
    if (file.path().extension() != ".json") continue;
    auto obj = nlohmann::json::parse(ReadFile(file.path().string()));
    auto entry = std::make_shared<Entry>();
    entry->session = AnnotationSession::FromJson(obj);
    const std::string& id = entry->session.session_id;
    if (id.rfind("s", 0) == 0 && id.size() > 1 &&
        std::all_of(id.begin() + 1, id.end(), ::isdigit)) {
      next_id_ = std::max<std::uint64_t>(next_id_, std::stoull(id.substr(1)) + 1);
    }
    sessions_.emplace(id, std::move(entry));
  }
}

void AnnotationService::Persist(const AnnotationSession& session) const {
  if (options_.state_dir.empty()) return;
  WriteFileAtomic((fs::path(options_.state_dir) / (session.session_id + ".json")).string(),
                  session.ToJson().dump(1) + "\n");
}

std::shared_ptr<AnnotationService::Entry> AnnotationService::Find(
    const std::string& id) const {
  std::lock_guard<std::mutex> lock(sessions_mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw NotFound("unknown session '" + id + "'");
  return it->second;
}

ojson AnnotationService::CreateSession(const std::string& requested_id) {
  std::lock_guard<std::mutex> lock(sessions_mutex_);
  std::string id = requested_id;
  if (id.empty()) {
    do {
      id = "s" + std::to_string(next_id_++);
    } while (sessions_.count(id));
  } else if (!ValidSessionId(id)) {
    throw InvalidArgument("session ids use letters, digits, '-' and '_' only");
  } else if (sessions_.count(id)) {
    std::lock_guard<std::mutex> entry_lock(sessions_.at(id)->mutex);
    return sessions_.at(id)->session.ToJson();
  }
  auto entry = std::make_shared<Entry>();
  entry->session.session_id = id;
  entry->session.dataset = workspace_->dataset.name;
  Persist(entry->session);
  sessions_.emplace(id, entry);
  return entry->session.ToJson();
}

std::vector<std::string> AnnotationService::SessionIds() const {
  std::lock_guard<std::mutex> lock(sessions_mutex_);
  std::vector<std::string> ids;
  for (const auto& [id, entry] : sessions_) ids.push_back(id);
  return ids;
}

ojson AnnotationService::Session(const std::string& id) const {
  auto entry = Find(id);
  std::lock_guard<std::mutex> lock(entry->mutex);
  return entry->session.ToJson();
}

std::optional<AntonymCandidates> AnnotationService::Offered(
    const std::string& term) const {
  const auto& ws = *workspace_;
  if (!ws.dataset.lexicon) return std::nullopt;
  return AntonymsFor(term, ws.baseline.model, ws.baseline.vocab, *ws.dataset.lexicon);
}

ojson AnnotationService::ListCandidates(const std::string& id) const {
  auto entry = Find(id);
  std::map<std::string, Decision> decisions;
  std::uint64_t revision;
  {
    std::lock_guard<std::mutex> lock(entry->mutex);
    decisions = entry->session.decisions;
    revision = entry->session.revision;
  }
  const auto& ws = *workspace_;
  ojson list = ojson::array();
  for (const auto& [term, coef] : ws.baseline.top_terms.entries) {
    ojson item;
    item["term"] = term;
    item["coefficient"] = coef;
    auto m = ws.matches.find(term);
    if (m != ws.matches.end()) {
      const Match& match = m->second;
      const Document* doc = ws.FindTrainDocument(match.doc_id);
      const Document* other = ws.FindTrainDocument(match.matched_doc_id);
      item["best_match"] = {{"doc_id", match.doc_id},
                            {"doc_text", doc ? doc->raw_text : ""},
                            {"matched_doc_id", match.matched_doc_id},
                            {"matched_text", other ? other->raw_text : ""},
                            {"matched_term", match.matched_term},
                            {"score", match.score}};
      item["predicted_causal"] = match.score >= ws.config.match_threshold;
    } else {
      item["best_match"] = nullptr;
      item["predicted_causal"] = false;
    }
    auto d = decisions.find(term);
    DecisionState state = DecisionState::kUndecided;
    std::vector<std::string> chosen;
    if (d != decisions.end()) {
      state = d->second.causal ? DecisionState::kCausal : DecisionState::kNotCausal;
      chosen = d->second.chosen_antonyms;
    }
    item["decision"] = {{"state", DecisionStateName(state)}, {"antonyms", chosen}};
    list.push_back(std::move(item));
  }
  ojson out;
  out["session_id"] = id;
  out["revision"] = revision;
  out["match_threshold"] = ws.config.match_threshold;
  out["coef_threshold"] = ws.baseline.top_terms.threshold;
  out["candidates"] = std::move(list);
  return out;
}

ojson AnnotationService::Antonyms(const std::string& id,
                                  const std::string& term) const {
  Find(id);
  const auto& ws = *workspace_;
  if (!ws.baseline.top_terms.Contains(term)) {
    throw NotFound("'" + term + "' is not a candidate term");
  }
  ojson out;
  out["term"] = term;
  out["coefficient"] = ws.baseline.model.Coefficient(ws.baseline.vocab, term);
  ojson cands = ojson::array();
  bool from_synonyms = false;
  if (auto offered = Offered(term)) {
    from_synonyms = offered->from_synonyms;
    for (const auto& [a, c] : offered->candidates) {
      cands.push_back({{"term", a}, {"coefficient", c}});
    }
  }
  out["candidates"] = std::move(cands);
  out["from_synonyms"] = from_synonyms;
  return out;
}

ojson AnnotationService::SubmitAnnotation(
    const std::string& id, const std::string& term, bool causal,
    const std::optional<std::vector<std::string>>& antonyms) {
  auto entry = Find(id);
  const auto& ws = *workspace_;
  if (!ws.baseline.top_terms.Contains(term)) {
    throw NotFound("'" + term + "' is not a candidate term");
  }
  std::vector<std::string> offered;
  if (auto o = Offered(term)) offered = o->Terms();

  Decision decision;
  decision.causal = causal;
  if (antonyms) {
    for (const auto& a : *antonyms) {
      if (std::find(offered.begin(), offered.end(), a) == offered.end()) {
        throw InvalidArgument("antonym '" + a + "' was not offered for '" + term + "'");
      }
    }
  }
  if (causal) {
    decision.chosen_antonyms = antonyms ? *antonyms : offered;
    std::sort(decision.chosen_antonyms.begin(), decision.chosen_antonyms.end());
    decision.chosen_antonyms.erase(
        std::unique(decision.chosen_antonyms.begin(), decision.chosen_antonyms.end()),
        decision.chosen_antonyms.end());
  }

  std::lock_guard<std::mutex> lock(entry->mutex);
  if (entry->retraining) throw Busy("session '" + id + "' is retraining");
  auto& session = entry->session;
  auto it = session.decisions.find(term);
  if (it == session.decisions.end() || !(it->second == decision)) {
    AnnotationSession updated = session;
    updated.decisions[term] = decision;
    ++updated.revision;
    Persist(updated);
    session = std::move(updated);
  }
  return session.ToJson();
}

RetrainReport AnnotationService::RunRetrain(
    const std::map<std::string, Decision>& decisions, std::uint64_t seed) const {
  const auto& ws = *workspace_;
  CausalAntonyms causal;
  for (const auto& [term, decision] : decisions) {
    if (!decision.causal || decision.chosen_antonyms.empty()) continue;
    AntonymCandidates c;
    c.term = term;
    c.term_coef = ws.baseline.model.Coefficient(ws.baseline.vocab, term);
    for (const auto& a : decision.chosen_antonyms) {
      c.candidates.emplace_back(a, ws.baseline.model.Coefficient(ws.baseline.vocab, a));
    }
    causal.emplace(term, std::move(c));
  }
  ExperimentConfig config = ws.config;
  config.seed = seed;

  TrainedLevel trained;
  trained.level = SupervisionLevel::kAutoAnnotatedTopTerms;
  AugmentResult augmented = Augment(ws.train, causal, seed, config.jobs);
  trained.training = std::move(augmented.corpus);
  trained.n_counterfactuals = augmented.stats.generated;
  trained.antonyms = causal;
  trained.vocab = config.rebuild_vocab
                      ? BuildVocabulary(trained.training, config.min_df)
                      : ws.baseline.vocab;
  FitOptions fit_options;
  fit_options.l2_c = config.l2_c;
  fit_options.seed = seed;
  fit_options.max_iterations = config.max_iterations;
  FitResult fit = Fit(trained.training, trained.vocab, fit_options);
  trained.model = std::move(fit.model);
  trained.converged = fit.converged;

  RetrainReport report;
  report.row = EvaluateLevel(ws.dataset, trained, config);
  report.row.note = "interactive retrain";
  std::set<std::string> causal_terms;
  for (const auto& [term, c] : causal) causal_terms.insert(term);
  auto changes = MakeCoefficientChangeReport(ws.baseline.model, ws.baseline.vocab,
                                             trained.model, trained.vocab,
                                             ws.dataset.test, causal_terms);
  for (std::size_t i = 0; i < changes.terms.size() && i < 10; ++i) {
    report.top_changes.push_back(changes.terms[i]);
  }
  return report;
}

ojson AnnotationService::Retrain(const std::string& id, std::uint64_t seed) {
  auto entry = Find(id);
  std::shared_future<void> job;
  {
    std::lock_guard<std::mutex> lock(entry->mutex);
    if (entry->retraining) throw Busy("session '" + id + "' is already retraining");
    const auto& decisions = entry->session.decisions;
    const bool any = std::any_of(decisions.begin(), decisions.end(), [](const auto& d) {
      return d.second.causal && !d.second.chosen_antonyms.empty();
    });
    if (!any) {
      throw InvalidArgument("no term is annotated causal with an antonym");
    }
    entry->retraining = true;
    auto decisions_copy = decisions;
    job = std::async(std::launch::async,
                     [this, entry, decisions_copy, seed] {
                       try {
                         RetrainReport report = RunRetrain(decisions_copy, seed);
                         std::lock_guard<std::mutex> lock(entry->mutex);
                         AnnotationSession updated = entry->session;
                         updated.last_report = report.ToJson();
                         ++updated.revision;
                         Persist(updated);
                         entry->session = std::move(updated);
                         entry->retraining = false;
                       } catch (...) {
                         std::lock_guard<std::mutex> lock(entry->mutex);
                         entry->retraining = false;
                         throw;
                       }
                     })
              .share();
    entry->job = job;
  }
  if (job.wait_for(options_.retrain_budget) != std::future_status::ready) {
    ojson out;
    out["status"] = "running";
    out["session_id"] = id;
    return out;
  }
  job.get();  // rethrows failures
  std::lock_guard<std::mutex> lock(entry->mutex);
  ojson out;
  out["status"] = "done";
  out["session_id"] = id;
  out["revision"] = entry->session.revision;
  out["report"] = *entry->session.last_report;
  return out;
}

ojson AnnotationService::Report(const std::string& id) const {
  auto entry = Find(id);
  std::lock_guard<std::mutex> lock(entry->mutex);
  ojson out;
  out["status"] = entry->retraining ? "running" : "idle";
  out["session_id"] = id;
  out["revision"] = entry->session.revision;
  out["report"] = entry->session.last_report ? *entry->session.last_report
                                             : ojson(nullptr);
  return out;
}

ojson AnnotationService::Counterfactuals(const std::string& id,
                                         const std::string& term,
                                         std::size_t limit) const {
  auto entry = Find(id);
  const auto& ws = *workspace_;
  if (!ws.baseline.top_terms.Contains(term)) {
    throw NotFound("'" + term + "' is not a candidate term");
  }
  std::vector<std::string> antonyms;
  {
    std::lock_guard<std::mutex> lock(entry->mutex);
    auto it = entry->session.decisions.find(term);
    if (it != entry->session.decisions.end() && it->second.causal) {
      antonyms = it->second.chosen_antonyms;
    }
  }
  if (antonyms.empty()) {
    if (auto offered = Offered(term)) antonyms = offered->Terms();
  }
  ojson list = ojson::array();
  if (!antonyms.empty()) {
    CausalAntonyms causal;
    AntonymCandidates c;
    c.term = term;
    c.term_coef = ws.baseline.model.Coefficient(ws.baseline.vocab, term);
    for (const auto& a : antonyms) {
      c.candidates.emplace_back(a, ws.baseline.model.Coefficient(ws.baseline.vocab, a));
    }
    causal.emplace(term, std::move(c));
    for (const auto& doc : ws.train.documents) {
      if (list.size() >= limit) break;
      auto sample = Generate(doc, causal, DeriveSeed(ws.config.seed, doc.id));
      if (!sample) continue;
      ojson subs = ojson::array();
      for (const auto& s : sample->substitutions) {
        subs.push_back({s.position, s.original, s.antonym});
      }
      list.push_back({{"source_id", doc.id},
                      {"source_text", doc.raw_text},
                      {"source_label", LabelName(doc.label)},
                      {"text", sample->document.raw_text},
                      {"label", LabelName(sample->document.label)},
                      {"substitutions", std::move(subs)}});
    }
  }
  ojson out;
  out["term"] = term;
  out["antonyms"] = antonyms;
  out["counterfactuals"] = std::move(list);
  return out;
}

}  // namespace ctfaug
