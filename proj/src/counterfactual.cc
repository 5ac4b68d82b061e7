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

#include "ctfaug/counterfactual.h"

#include <random>

#include "ctfaug/status.h"
#include "ctfaug/util.h"
#include "json.hpp"

namespace ctfaug {

std::optional<CounterfactualSample> Generate(const Document& doc,
                                             const CausalAntonyms& causal,
                                             std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::string> tokens = doc.tokens;
  std::vector<Substitution> substitutions;
  for (std::size_t pos = 0; pos < tokens.size(); ++pos) {
    auto it = causal.find(tokens[pos]);
    if (it == causal.end() || it->second.candidates.empty()) continue;
    const auto& candidates = it->second.candidates;
    const std::string& antonym =
        candidates[UniformIndex(rng, candidates.size())].first;
    substitutions.push_back({pos, tokens[pos], antonym});
    tokens[pos] = antonym;
  }
  if (substitutions.empty()) return std::nullopt;

  CounterfactualSample sample;
  sample.source_id = doc.id;
  sample.substitutions = std::move(substitutions);
  // Tokens are already normalized, so re-joining keeps tokens == tokenize(text).
  sample.document = MakeDocument(doc.id + "~ctf", Join(tokens, " "),
                                 Flip(doc.label), Origin::kAutoCounterfactual,
                                 doc.id);
  return sample;
}

AugmentResult Augment(const LabeledCorpus& corpus, const CausalAntonyms& causal,
                      std::uint64_t seed, int jobs) {
  std::vector<std::optional<CounterfactualSample>> generated(corpus.size());
  ParallelFor(corpus.size(), jobs, [&](std::size_t i) {
    const Document& doc = corpus.documents[i];
    generated[i] = Generate(doc, causal, DeriveSeed(seed, doc.id));
  });

  AugmentResult result;
  result.corpus.name = corpus.name + "+ctf";
  result.corpus.split = corpus.split;
  result.corpus.documents = corpus.documents;
  result.stats.originals = corpus.size();
  for (auto& sample : generated) {
    if (!sample) continue;
    result.corpus.documents.push_back(sample->document);
    result.samples.push_back(std::move(*sample));
  }
  result.stats.generated = result.samples.size();
  result.corpus.CheckUniqueIds();
  return result;
}

std::string SubstitutionsToJsonl(const std::vector<CounterfactualSample>& samples) {
  std::string out;
  for (const auto& s : samples) {
    nlohmann::ordered_json obj;
    obj["source_id"] = s.source_id;
    auto subs = nlohmann::ordered_json::array();
    for (const auto& sub : s.substitutions) {
      subs.push_back({sub.position, sub.original, sub.antonym});
    }
    obj["substitutions"] = std::move(subs);
    out += obj.dump();
    out += '\n';
  }
  return out;
}

}  // namespace ctfaug
