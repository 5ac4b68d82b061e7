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

#include "ctfaug/lexicon.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ctfaug/corpus.h"
#include "ctfaug/status.h"
#include "ctfaug/util.h"
#include "json.hpp"

namespace ctfaug {

namespace {

const std::set<std::string>& Lookup(
    const std::map<std::string, std::set<std::string>>& table,
    const std::string& term) {
  static const std::set<std::string> kEmpty;
  auto it = table.find(term);
  return it == table.end() ? kEmpty : it->second;
}

std::vector<std::string> SplitTabs(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  for (;;) {
    auto tab = line.find('\t', start);
    fields.push_back(line.substr(start, tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return fields;
}

// A lexicon entry must be exactly one normalized token.
std::optional<std::string> NormalizeEntry(const std::string& raw) {
  auto tokens = Tokenize(raw);
  if (tokens.size() != 1) return std::nullopt;
  return tokens.front();
}

int Sign(double x) { return (x > 0) - (x < 0); }

}  // namespace

void AntonymLexicon::AddAntonyms(const std::string& a, const std::string& b) {
  if (a == b) return;
  antonyms_[a].insert(b);
  antonyms_[b].insert(a);
}

void AntonymLexicon::AddSynonyms(const std::string& a, const std::string& b) {
  if (a == b) return;
  synonyms_[a].insert(b);
  synonyms_[b].insert(a);
}

const std::set<std::string>& AntonymLexicon::Antonyms(const std::string& term) const {
  return Lookup(antonyms_, term);
}

const std::set<std::string>& AntonymLexicon::Synonyms(const std::string& term) const {
  return Lookup(synonyms_, term);
}

std::size_t AntonymLexicon::num_antonym_pairs() const {
  std::size_t n = 0;
  for (const auto& [term, others] : antonyms_) n += others.size();
  return n / 2;
}

AntonymLexicon ParseLexicon(const std::string& tsv, const std::string& source) {
  AntonymLexicon lexicon;
  std::istringstream in(tsv);
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> bad;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    auto fields = SplitTabs(line);
    if (fields.size() != 3) {
      bad.push_back(std::to_string(line_no));
      continue;
    }
    auto a = NormalizeEntry(fields[0]);
    auto b = NormalizeEntry(fields[2]);
    const std::string& relation = fields[1];
    if (!a || !b || (relation != "ant" && relation != "syn")) {
      bad.push_back(std::to_string(line_no));
      continue;
    }
    if (relation == "ant") {
      lexicon.AddAntonyms(*a, *b);
    } else {
      lexicon.AddSynonyms(*a, *b);
    }
  }
  if (!bad.empty()) {
    throw IoError(source + ": malformed lexicon rows at lines " + Join(bad, ", "));
  }
  if (lexicon.empty()) throw IoError(source + ": lexicon is empty");
  return lexicon;
}

AntonymLexicon LoadLexicon(const std::string& path) {
  return ParseLexicon(ReadFile(path), path);
}

std::vector<std::string> AntonymCandidates::Terms() const {
  std::vector<std::string> out;
  for (const auto& [t, c] : candidates) out.push_back(t);
  return out;
}

std::optional<AntonymCandidates> AntonymsFor(const std::string& term,
                                             const LinearModel& model,
                                             const Vocabulary& vocab,
                                             const AntonymLexicon& lexicon) {
  if (!vocab.Contains(term)) {
    throw InvalidArgument("'" + term + "' is not in the vocabulary");
  }
  const double coef = model.Coefficient(vocab, term);
  if (coef == 0.0) {
    throw InvalidArgument("'" + term + "' has a zero coefficient");
  }
  auto collect = [&](const std::set<std::string>& antonyms,
                     std::map<std::string, double>* out) {
    for (const auto& a : antonyms) {
      if (!vocab.Contains(a)) continue;
      const double c = model.Coefficient(vocab, a);
      if (Sign(c) == -Sign(coef)) out->emplace(a, c);
    }
  };

  std::map<std::string, double> found;
  collect(lexicon.Antonyms(term), &found);
  bool from_synonyms = false;
  if (found.empty()) {
    for (const auto& synonym : lexicon.Synonyms(term)) {
      collect(lexicon.Antonyms(synonym), &found);
    }
    from_synonyms = true;
  }
  found.erase(term);
  if (found.empty()) return std::nullopt;

  AntonymCandidates out;
  out.term = term;
  out.term_coef = coef;
  out.from_synonyms = from_synonyms;
  out.candidates.assign(found.begin(), found.end());
  std::stable_sort(out.candidates.begin(), out.candidates.end(),
                   [](const auto& a, const auto& b) {
                     return std::abs(a.second) > std::abs(b.second);
                   });
  return out;
}

CausalAntonyms SelectAntonyms(const std::vector<std::string>& terms,
                              const LinearModel& model,
                              const Vocabulary& vocab,
                              const AntonymLexicon& lexicon) {
  CausalAntonyms out;
  for (const auto& term : terms) {
    if (!vocab.Contains(term) || model.Coefficient(vocab, term) == 0.0) continue;
    if (auto candidates = AntonymsFor(term, model, vocab, lexicon)) {
      out.emplace(term, std::move(*candidates));
    }
  }
  return out;
}

std::string CandidatesToJson(const CausalAntonyms& candidates) {
  nlohmann::ordered_json list = nlohmann::ordered_json::array();
  for (const auto& [term, c] : candidates) {
    nlohmann::ordered_json obj;
    obj["term"] = term;
    obj["term_coef"] = c.term_coef;
    obj["from_synonyms"] = c.from_synonyms;
    auto cands = nlohmann::ordered_json::array();
    for (const auto& [a, coef] : c.candidates) cands.push_back({a, coef});
    obj["candidates"] = std::move(cands);
    list.push_back(std::move(obj));
  }
  return list.dump(1) + "\n";
}

}  // namespace ctfaug
