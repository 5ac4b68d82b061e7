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

#ifndef CTFAUG_FEATURES_H_
#define CTFAUG_FEATURES_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ctfaug/corpus.h"

namespace ctfaug {

// Term <-> index bijection over 0..size()-1, indices in lexicographic term
// order. Immutable once built.
class Vocabulary {
 public:
  Vocabulary() = default;
  // `terms` must be unique; they are sorted.
  explicit Vocabulary(std::vector<std::string> terms);

  std::size_t size() const { return terms_.size(); }
  std::optional<std::uint32_t> IndexOf(std::string_view term) const;
  bool Contains(std::string_view term) const { return IndexOf(term).has_value(); }
  const std::string& Term(std::uint32_t index) const { return terms_.at(index); }
  const std::vector<std::string>& terms() const { return terms_; }

  // `term \t index` per line.
  std::string ToTsv() const;
  static Vocabulary FromTsv(std::string_view tsv);
  void Save(const std::string& path) const;
  static Vocabulary Load(const std::string& path);

  // Short content hash used to tie models to the vocabulary they index.
  std::string Hash() const;

 private:
  std::vector<std::string> terms_;
  std::unordered_map<std::string, std::uint32_t> index_;
};

// Terms present in at least `min_df` documents of `corpus`.
Vocabulary BuildVocabulary(const LabeledCorpus& corpus, int min_df = 1);

// Sparse binary presence vector: sorted, duplicate-free active indices.
struct FeatureVector {
  std::vector<std::uint32_t> indices;

  bool operator==(const FeatureVector&) const = default;
};

// Index i is active iff term i occurs in the document; OOV tokens ignored.
FeatureVector Vectorize(const Document& doc, const Vocabulary& vocab);
FeatureVector Vectorize(const std::vector<std::string>& tokens,
                        const Vocabulary& vocab);

}  // namespace ctfaug

#endif  // CTFAUG_FEATURES_H_
