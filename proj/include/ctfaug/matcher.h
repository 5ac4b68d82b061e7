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
// Closest-opposite-match search for likely causal terms.
//
// For a top term t and a document d containing t, the context d[^t] is d with
// every occurrence of t removed. A candidate match is a document d* with the
// opposite label that does not contain t but does contain another top term
// t*. The score of (d, d*, t*) is the cosine similarity between the
// embeddings of d[^t] and d*[^t*]; the closest opposite match of t is the
// highest scoring triple. Terms whose closest match scores at least a
// threshold are reported as likely causal.

#ifndef CTFAUG_MATCHER_H_
#define CTFAUG_MATCHER_H_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "ctfaug/corpus.h"
#include "ctfaug/linear_model.h"

namespace ctfaug {

using Embedding = std::vector<double>;

// Maps a context string to a fixed-dimension vector. Implementations must be
// deterministic, safe to call concurrently, and never return the all-zero
// vector.
class ContextEmbedder {
 public:
  virtual ~ContextEmbedder() = default;
  virtual std::size_t dimension() const = 0;
  virtual Embedding Embed(const std::string& context) const = 0;
  // Identifies the embedder and its data in run configs.
  virtual std::string id() const = 0;
};

// Thread-safe memo of context -> embedding.
class EmbeddingCache {
 public:
  std::shared_ptr<const Embedding> Get(const ContextEmbedder& embedder,
                                       const std::string& context);
  std::size_t size() const;

 private:
  mutable std::shared_mutex mutex_;
  std::unordered_map<std::string, std::shared_ptr<const Embedding>> entries_;
};

// Computed as dot / sqrt(|u|^2 |v|^2) so that u == v gives exactly 1.
double Cosine(const Embedding& u, const Embedding& v);

// d with every occurrence of `term` removed, single-space joined. Throws
// InvalidArgument when the term does not occur.
std::string ContextOf(const Document& doc, const std::string& term);

struct Match {
  std::string term;
  std::string doc_id;
  std::string matched_doc_id;
  std::string matched_term;
  double score = 0.0;

  bool operator==(const Match&) const = default;
};

struct MatchOptions {
  // Upper bound on (d, d*) pairs scored per term; beyond it a seeded uniform
  // sample of pairs is used.
  std::size_t max_pairs = 5000;
  std::uint64_t seed = 0;
};

class Matcher {
 public:
  // `corpus`, `top_terms` and `embedder` must outlive the matcher. A private
  // cache is used when `cache` is null.
  Matcher(const LabeledCorpus& corpus, const TopTermSet& top_terms,
          const ContextEmbedder& embedder, MatchOptions options = {},
          std::shared_ptr<EmbeddingCache> cache = nullptr);

  // Best match for one term, or nullopt when there is no candidate pair.
  std::optional<Match> ClosestOppositeMatch(const std::string& term) const;

  // Runs the search for every top term. The result does not depend on `jobs`.
  std::map<std::string, Match> MatchAll(int jobs = 1) const;

  const EmbeddingCache& cache() const { return *cache_; }

 private:
  const LabeledCorpus& corpus_;
  const ContextEmbedder& embedder_;
  MatchOptions options_;
  std::shared_ptr<EmbeddingCache> cache_;
  std::vector<std::string> top_terms_;
  std::vector<std::set<std::string>> doc_terms_;       // distinct tokens
  std::vector<std::vector<std::string>> doc_top_terms_;  // sorted
};

std::optional<Match> ClosestOppositeMatch(const std::string& term,
                                          const LabeledCorpus& corpus,
                                          const TopTermSet& top_terms,
                                          const ContextEmbedder& embedder,
                                          const MatchOptions& options = {});

struct CausalTermSet {
  double threshold = 0.0;
  std::map<std::string, Match> terms;
};

// Keeps terms whose best-match score is >= threshold; 0 < threshold <= 1.
CausalTermSet IdentifyCausalTerms(const std::map<std::string, Match>& matches,
                                  double threshold);

struct PrecisionRecallPoint {
  double threshold = 0.0;
  std::optional<double> precision;  // none when nothing is predicted
  double recall = 0.0;
  std::size_t predicted = 0;
  std::size_t true_positives = 0;
};

std::vector<PrecisionRecallPoint> PrecisionRecallCurve(
    const std::map<std::string, Match>& matches,
    const std::set<std::string>& annotated_causal,
    const std::vector<double>& thresholds);

std::string MatchesToJson(const std::map<std::string, Match>& matches);
std::map<std::string, Match> MatchesFromJson(std::string_view text);
std::string CausalTermSetToJson(const CausalTermSet& set);
CausalTermSet CausalTermSetFromJson(std::string_view text);

}  // namespace ctfaug

#endif  // CTFAUG_MATCHER_H_
