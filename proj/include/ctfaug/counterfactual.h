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

#ifndef CTFAUG_COUNTERFACTUAL_H_
#define CTFAUG_COUNTERFACTUAL_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ctfaug/corpus.h"
#include "ctfaug/lexicon.h"

namespace ctfaug {

struct Substitution {
  std::size_t position = 0;  // token index
  std::string original;
  std::string antonym;

  bool operator==(const Substitution&) const = default;
};

struct CounterfactualSample {
  Document document;  // origin = auto_counterfactual, label flipped
  std::vector<Substitution> substitutions;
  std::string source_id;
};

// Replaces every occurrence of every causal term that has candidates, drawing
// one antonym uniformly per occurrence from a generator seeded with `seed`.
// Returns nullopt when no substitution was made.
std::optional<CounterfactualSample> Generate(const Document& doc,
                                             const CausalAntonyms& causal,
                                             std::uint64_t seed);

struct AugmentStats {
  std::size_t originals = 0;
  std::size_t generated = 0;
};

struct AugmentResult {
  LabeledCorpus corpus;  // originals first, then one sample per eligible doc
  std::vector<CounterfactualSample> samples;
  AugmentStats stats;
};

// Per-document seeds are derived from `seed` and the document id, so the
// output is independent of `jobs`.
AugmentResult Augment(const LabeledCorpus& corpus, const CausalAntonyms& causal,
                      std::uint64_t seed, int jobs = 1);

// Sidecar lines: {"source_id": str, "substitutions": [[pos, orig, antonym]]}
std::string SubstitutionsToJsonl(const std::vector<CounterfactualSample>& samples);

}  // namespace ctfaug

#endif  // CTFAUG_COUNTERFACTUAL_H_
