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

#include "ctfaug/matcher.h"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <tuple>

#include "ctfaug/status.h"
#include "ctfaug/util.h"
#include "json.hpp"

namespace ctfaug {

using json = nlohmann::ordered_json;

std::shared_ptr<const Embedding> EmbeddingCache::Get(
    const ContextEmbedder& embedder, const std::string& context) {
  {
    std::shared_lock lock(mutex_);
    auto it = entries_.find(context);
    if (it != entries_.end()) return it->second;
  }
  auto value = std::make_shared<const Embedding>(embedder.Embed(context));
  std::unique_lock lock(mutex_);
  // Another worker may have inserted meanwhile; keep the first value.
  auto [it, inserted] = entries_.emplace(context, std::move(value));
  return it->second;
}

std::size_t EmbeddingCache::size() const {
  std::shared_lock lock(mutex_);
  return entries_.size();
}

double Cosine(const Embedding& u, const Embedding& v) {
  if (u.size() != v.size()) throw InvalidArgument("embedding dimension mismatch");
  double dot = 0.0, nu = 0.0, nv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    dot += u[i] * v[i];
    nu += u[i] * u[i];
    nv += v[i] * v[i];
  }
  if (nu == 0.0 || nv == 0.0) throw InvalidArgument("cosine of a zero vector");
  return std::clamp(dot / std::sqrt(nu * nv), -1.0, 1.0);
}

std::string ContextOf(const Document& doc, const std::string& term) {
  std::string out;
  bool found = false;
  for (const auto& token : doc.tokens) {
    if (token == term) {
      found = true;
      continue;
    }
    if (!out.empty()) out.push_back(' ');
    out += token;
  }
  if (!found) {
    throw InvalidArgument("term '" + term + "' does not occur in document '" +
                          doc.id + "'");
  }
  return out;
}

Matcher::Matcher(const LabeledCorpus& corpus, const TopTermSet& top_terms,
                 const ContextEmbedder& embedder, MatchOptions options,
                 std::shared_ptr<EmbeddingCache> cache)
    : corpus_(corpus),
      embedder_(embedder),
      options_(options),
      cache_(cache ? std::move(cache) : std::make_shared<EmbeddingCache>()) {
  if (corpus.empty()) throw InvalidArgument("matcher needs a nonempty corpus");
  std::set<std::string> top;
  for (const auto& [term, coef] : top_terms.entries) {
    top_terms_.push_back(term);
    top.insert(term);
  }
  doc_terms_.reserve(corpus.size());
  doc_top_terms_.reserve(corpus.size());
  for (const auto& doc : corpus.documents) {
    std::set<std::string> distinct(doc.tokens.begin(), doc.tokens.end());
    std::vector<std::string> present;
    for (const auto& t : distinct) {
      if (top.count(t)) present.push_back(t);
    }
    doc_terms_.push_back(std::move(distinct));
    doc_top_terms_.push_back(std::move(present));
  }
}

std::optional<Match> Matcher::ClosestOppositeMatch(const std::string& term) const {
  const auto& docs = corpus_.documents;
  std::vector<std::size_t> holders;
  // Candidates per label: index 0 -> negative, 1 -> positive.
  std::vector<std::size_t> candidates[2];
  for (std::size_t i = 0; i < docs.size(); ++i) {
    if (doc_terms_[i].count(term)) {
      holders.push_back(i);
    } else if (!doc_top_terms_[i].empty()) {
      candidates[docs[i].label == Label::kPositive ? 1 : 0].push_back(i);
    }
  }
  // Pair space is the concatenation of one block per holder, each block being
  // the opposite-label candidate list.
  std::vector<std::size_t> block_start;
  std::size_t total = 0;
  for (std::size_t h : holders) {
    block_start.push_back(total);
    const int opposite = docs[h].label == Label::kPositive ? 0 : 1;
    total += candidates[opposite].size();
  }
  if (total == 0) return std::nullopt;

  std::vector<std::size_t> chosen;
  const bool sampled = total > options_.max_pairs;
  if (sampled) {
    chosen = SampleIndices(total, options_.max_pairs,
                           DeriveSeed(options_.seed, term));
  }

  std::optional<Match> best;
  auto consider = [&](std::size_t holder, std::size_t other) {
    const Document& d = docs[holder];
    const Document& d_star = docs[other];
    auto context = cache_->Get(embedder_, ContextOf(d, term));
    for (const auto& t_star : doc_top_terms_[other]) {
      auto matched = cache_->Get(embedder_, ContextOf(d_star, t_star));
      const double score = Cosine(*context, *matched);
      const bool better =
          !best || score > best->score ||
          (score == best->score &&
           std::tie(d.id, d_star.id, t_star) <
               std::tie(best->doc_id, best->matched_doc_id, best->matched_term));
      if (better) best = Match{term, d.id, d_star.id, t_star, score};
    }
  };

  auto pair_at = [&](std::size_t index) {
    auto it = std::upper_bound(block_start.begin(), block_start.end(), index);
    const std::size_t h = static_cast<std::size_t>(it - block_start.begin()) - 1;
    const std::size_t holder = holders[h];
    const int opposite = docs[holder].label == Label::kPositive ? 0 : 1;
    return std::make_pair(holder, candidates[opposite][index - block_start[h]]);
  };

  if (sampled) {
    for (std::size_t index : chosen) {
      auto [holder, other] = pair_at(index);
      consider(holder, other);
    }
  } else {
    for (std::size_t index = 0; index < total; ++index) {
      auto [holder, other] = pair_at(index);
      consider(holder, other);
    }
  }
  return best;
}

std::map<std::string, Match> Matcher::MatchAll(int jobs) const {
  std::vector<std::optional<Match>> results(top_terms_.size());
  ParallelFor(top_terms_.size(), jobs, [&](std::size_t i) {
    results[i] = ClosestOppositeMatch(top_terms_[i]);
  });
  std::map<std::string, Match> out;
  for (auto& r : results) {
    if (r) out.emplace(r->term, std::move(*r));
  }
  return out;
}

std::optional<Match> ClosestOppositeMatch(const std::string& term,
                                          const LabeledCorpus& corpus,
                                          const TopTermSet& top_terms,
                                          const ContextEmbedder& embedder,
                                          const MatchOptions& options) {
  if (!top_terms.Contains(term)) {
    throw InvalidArgument("'" + term + "' is not a top term");
  }
  return Matcher(corpus, top_terms, embedder, options).ClosestOppositeMatch(term);
}

CausalTermSet IdentifyCausalTerms(const std::map<std::string, Match>& matches,
                                  double threshold) {
  if (!(threshold > 0.0) || threshold > 1.0) {
    throw InvalidArgument("match threshold must be in (0, 1]");
  }
  CausalTermSet out;
  out.threshold = threshold;
  for (const auto& [term, match] : matches) {
    if (match.score >= threshold) out.terms.emplace(term, match);
  }
  return out;
}

std::vector<PrecisionRecallPoint> PrecisionRecallCurve(
    const std::map<std::string, Match>& matches,
    const std::set<std::string>& annotated_causal,
    const std::vector<double>& thresholds) {
  if (annotated_causal.empty()) {
    throw InvalidArgument("annotated causal term set is empty");
  }
  std::vector<PrecisionRecallPoint> curve;
  for (double threshold : thresholds) {
    PrecisionRecallPoint point;
    point.threshold = threshold;
    for (const auto& [term, match] : matches) {
      if (match.score < threshold) continue;
      ++point.predicted;
      if (annotated_causal.count(term)) ++point.true_positives;
    }
    if (point.predicted > 0) {
      point.precision = static_cast<double>(point.true_positives) /
                        static_cast<double>(point.predicted);
    }
    point.recall = static_cast<double>(point.true_positives) /
                   static_cast<double>(annotated_causal.size());
    curve.push_back(point);
  }
  return curve;
}

namespace {

json MatchToJson(const Match& m) {
  json obj;
  obj["term"] = m.term;
  obj["doc_id"] = m.doc_id;
  obj["matched_doc_id"] = m.matched_doc_id;
  obj["matched_term"] = m.matched_term;
  obj["score"] = m.score;
  return obj;
}

Match MatchFromJson(const nlohmann::json& obj) {
  Match m;
  m.term = obj.at("term").get<std::string>();
  m.doc_id = obj.at("doc_id").get<std::string>();
  m.matched_doc_id = obj.at("matched_doc_id").get<std::string>();
  m.matched_term = obj.at("matched_term").get<std::string>();
  m.score = obj.at("score").get<double>();
  return m;
}

nlohmann::json ParseOrThrow(std::string_view text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw IoError(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace

std::string MatchesToJson(const std::map<std::string, Match>& matches) {
  json list = json::array();
  for (const auto& [term, match] : matches) list.push_back(MatchToJson(match));
  return list.dump(1) + "\n";
}

std::map<std::string, Match> MatchesFromJson(std::string_view text) {
  std::map<std::string, Match> out;
  for (const auto& item : ParseOrThrow(text)) {
    Match m = MatchFromJson(item);
    out.emplace(m.term, std::move(m));
  }
  return out;
}

std::string CausalTermSetToJson(const CausalTermSet& set) {
  json obj;
  obj["threshold"] = set.threshold;
  json terms = json::array();
  for (const auto& [term, match] : set.terms) terms.push_back(MatchToJson(match));
  obj["terms"] = std::move(terms);
  return obj.dump(1) + "\n";
}

CausalTermSet CausalTermSetFromJson(std::string_view text) {
  auto obj = ParseOrThrow(text);
  CausalTermSet set;
  set.threshold = obj.at("threshold").get<double>();
  for (const auto& item : obj.at("terms")) {
    Match m = MatchFromJson(item);
    set.terms.emplace(m.term, std::move(m));
  }
  return set;
}

}  // namespace ctfaug
