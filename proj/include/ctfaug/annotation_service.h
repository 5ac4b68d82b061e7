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
// Human-in-the-loop annotation sessions. A session walks the top terms of
// the baseline classifier, records which ones the annotator considers causal
// (and which antonyms to use), and retrains with the generated
// counterfactuals. Session state lives in one JSON file per session and is
// written before any mutating call returns.

#ifndef CTFAUG_ANNOTATION_SERVICE_H_
#define CTFAUG_ANNOTATION_SERVICE_H_

#include <chrono>
#include <cstdint>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "ctfaug/dataset.h"
#include "ctfaug/experiments.h"
#include "json.hpp"

namespace ctfaug {

// Immutable snapshot shared by every session: dataset, baseline model, top
// terms and their closest opposite matches.
struct Workspace {
  Dataset dataset;
  ExperimentConfig config;
  Baseline baseline;
  LabeledCorpus train;  // leakage-filtered original training data
  std::map<std::string, Match> matches;

  static std::shared_ptr<const Workspace> Build(Dataset dataset,
                                                ExperimentConfig config);
  const Document* FindTrainDocument(const std::string& id) const;
};

enum class DecisionState { kUndecided, kCausal, kNotCausal };
std::string DecisionStateName(DecisionState state);

struct Decision {
  bool causal = false;
  std::vector<std::string> chosen_antonyms;

  bool operator==(const Decision&) const = default;
};

struct RetrainReport {
  ReportRow row;
  std::vector<TermChange> top_changes;  // at most 10, by |delta|

  nlohmann::ordered_json ToJson() const;
};

struct AnnotationSession {
  std::string session_id;
  std::string dataset;
  std::map<std::string, Decision> decisions;
  std::optional<nlohmann::ordered_json> last_report;  // RetrainReport JSON
  std::uint64_t revision = 0;

  nlohmann::ordered_json ToJson() const;
  static AnnotationSession FromJson(const nlohmann::json& obj);
  // Hash of the decision map only.
  std::string ContentHash() const;
};

class AnnotationService {
 public:
  struct Options {
    std::string state_dir;  // empty: keep sessions in memory only
    std::chrono::milliseconds retrain_budget{120000};
  };

  AnnotationService(std::shared_ptr<const Workspace> workspace, Options options);
  ~AnnotationService();

  AnnotationService(const AnnotationService&) = delete;
  AnnotationService& operator=(const AnnotationService&) = delete;

  // Creates a session; an empty id picks one. Returns the session state.
  nlohmann::ordered_json CreateSession(const std::string& requested_id = "");
  std::vector<std::string> SessionIds() const;

  // All operations below throw NotFound for unknown sessions.
  nlohmann::ordered_json Session(const std::string& id) const;

  // Top terms by descending |coefficient| with match evidence, predicted flag
  // and decision state.
  nlohmann::ordered_json ListCandidates(const std::string& id) const;

  // Antonym candidates offered for a top term.
  nlohmann::ordered_json Antonyms(const std::string& id, const std::string& term) const;

  // Records a decision. `antonyms` must be a subset of the offered
  // candidates; when omitted for a causal term, all offered candidates are
  // used. Identical resubmissions leave the revision unchanged. Throws
  // NotFound for non-candidate terms, InvalidArgument for antonyms that were
  // not offered and Busy while a retrain runs.
  nlohmann::ordered_json SubmitAnnotation(
      const std::string& id, const std::string& term, bool causal,
      const std::optional<std::vector<std::string>>& antonyms);

  // Regenerates counterfactuals from the causal decisions, retrains and
  // evaluates. Waits up to the retrain budget; if the job is still running
  // the returned object has status "running". Throws Busy if a retrain for
  // this session is already in progress and InvalidArgument when no term is
  // annotated causal with an antonym.
  nlohmann::ordered_json Retrain(const std::string& id, std::uint64_t seed);

  // {"status": "idle" | "running", "revision", "report": ... | null}
  nlohmann::ordered_json Report(const std::string& id) const;

  // Preview of generated counterfactuals for training documents containing
  // `term`, using the session's chosen antonyms (or all offered ones).
  nlohmann::ordered_json Counterfactuals(const std::string& id,
                                         const std::string& term,
                                         std::size_t limit) const;

  const Workspace& workspace() const { return *workspace_; }

 private:
  struct Entry {
    mutable std::mutex mutex;
    AnnotationSession session;
    bool retraining = false;
    std::shared_future<void> job;
  };

  std::shared_ptr<Entry> Find(const std::string& id) const;
  void Persist(const AnnotationSession& session) const;
  std::optional<AntonymCandidates> Offered(const std::string& term) const;
  RetrainReport RunRetrain(const std::map<std::string, Decision>& decisions,
                           std::uint64_t seed) const;
  void LoadPersisted();

  std::shared_ptr<const Workspace> workspace_;
  Options options_;
  mutable std::mutex sessions_mutex_;
  std::map<std::string, std::shared_ptr<Entry>> sessions_;
  std::uint64_t next_id_ = 1;
};

}  // namespace ctfaug

#endif  // CTFAUG_ANNOTATION_SERVICE_H_
