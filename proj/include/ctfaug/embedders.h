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

#ifndef CTFAUG_EMBEDDERS_H_
#define CTFAUG_EMBEDDERS_H_

#include <memory>
#include <string>
#include <unordered_map>

#include "ctfaug/matcher.h"

namespace ctfaug {

// Context text as the embedders see it: tokenized and single-space joined.
std::string NormalizeContext(const std::string& context);

// Mean of per-token vectors. Out-of-vocabulary tokens are skipped; a context
// with no known token maps to the fallback vector (all components 1/sqrt(D)).
class AveragedWordVectors : public ContextEmbedder {
 public:
  AveragedWordVectors(std::unordered_map<std::string, Embedding> vectors,
                      std::string id);

  // Text file, one `token v1 ... vD` per line. A leading `count dim` header
  // line (word2vec text format) is accepted.
  static std::unique_ptr<AveragedWordVectors> Load(const std::string& path);

  std::size_t dimension() const override { return dimension_; }
  Embedding Embed(const std::string& context) const override;
  std::string id() const override { return id_; }
  bool Knows(const std::string& token) const { return vectors_.count(token) > 0; }

 private:
  std::unordered_map<std::string, Embedding> vectors_;
  std::size_t dimension_ = 0;
  std::string id_;
};

// Exact lookup of externally computed context embeddings, keyed by the
// SHA-256 of the normalized context. Unknown contexts throw NotFound.
class PrecomputedLookup : public ContextEmbedder {
 public:
  PrecomputedLookup(std::unordered_map<std::string, Embedding> by_digest,
                    std::string id);

  // TSV file: `sha256hex \t v1 ... vD` per line.
  static std::unique_ptr<PrecomputedLookup> Load(const std::string& path);

  std::size_t dimension() const override { return dimension_; }
  Embedding Embed(const std::string& context) const override;
  std::string id() const override { return id_; }

 private:
  std::unordered_map<std::string, Embedding> by_digest_;
  std::size_t dimension_ = 0;
  std::string id_;
};

// "words:<path>" or "precomputed:<path>"; a bare path means "words:".
std::unique_ptr<ContextEmbedder> LoadEmbedder(const std::string& spec);

}  // namespace ctfaug

#endif  // CTFAUG_EMBEDDERS_H_
