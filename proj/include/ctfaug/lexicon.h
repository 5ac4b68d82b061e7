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

#ifndef CTFAUG_LEXICON_H_
#define CTFAUG_LEXICON_H_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ctfaug/features.h"
#include "ctfaug/linear_model.h"

namespace ctfaug {

// Offline antonym / synonym relations. Both relations are symmetric.
class AntonymLexicon {
 public:
  void AddAntonyms(const std::string& a, const std::string& b);
  void AddSynonyms(const std::string& a, const std::string& b);

  const std::set<std::string>& Antonyms(const std::string& term) const;
  const std::set<std::string>& Synonyms(const std::string& term) const;

  std::size_t num_antonym_pairs() const;
  bool empty() const { return antonyms_.empty() && synonyms_.empty(); }

 private:
  std::map<std::string, std::set<std::string>> antonyms_;
  std::map<std::string, std::set<std::string>> synonyms_;
};

// TSV rows `term \t ant|syn \t other_term`; '#' starts a comment line. All
// malformed rows are reported together, with line numbers.
AntonymLexicon LoadLexicon(const std::string& path);
AntonymLexicon ParseLexicon(const std::string& tsv,
                            const std::string& source = "<lexicon>");

struct AntonymCandidates {
  std::string term;
  double term_coef = 0.0;
  // Descending |coefficient|, then term. Every coefficient has the opposite
  // sign of term_coef.
  std::vector<std::pair<std::string, double>> candidates;
  bool from_synonyms = false;  // true when the direct antonyms gave nothing

  std::vector<std::string> Terms() const;
};

// Direct antonyms of `term` that are in the vocabulary with a strictly
// opposite-sign coefficient; if there are none, the antonyms of each synonym
// under the same filter. nullopt when both steps come up empty. Throws
// InvalidArgument if the term is out of vocabulary or has a zero coefficient.
std::optional<AntonymCandidates> AntonymsFor(const std::string& term,
                                             const LinearModel& model,
                                             const Vocabulary& vocab,
                                             const AntonymLexicon& lexicon);

using CausalAntonyms = std::map<std::string, AntonymCandidates>;

// Runs AntonymsFor over `terms`, skipping terms that are out of vocabulary,
// have a zero coefficient, or get no candidates.
CausalAntonyms SelectAntonyms(const std::vector<std::string>& terms,
                              const LinearModel& model,
                              const Vocabulary& vocab,
                              const AntonymLexicon& lexicon);

std::string CandidatesToJson(const CausalAntonyms& candidates);

}  // namespace ctfaug

#endif  // CTFAUG_LEXICON_H_
