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

#include "ctfaug/features.h"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "ctfaug/status.h"
#include "ctfaug/util.h"

namespace ctfaug {

Vocabulary::Vocabulary(std::vector<std::string> terms) : terms_(std::move(terms)) {
  std::sort(terms_.begin(), terms_.end());
  if (std::adjacent_find(terms_.begin(), terms_.end()) != terms_.end()) {
    throw InvalidArgument("vocabulary terms must be unique");
  }
  index_.reserve(terms_.size());
  for (std::uint32_t i = 0; i < terms_.size(); ++i) index_.emplace(terms_[i], i);
}

std::optional<std::uint32_t> Vocabulary::IndexOf(std::string_view term) const {
  auto it = index_.find(std::string(term));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::string Vocabulary::ToTsv() const {
  std::string out;
  for (std::uint32_t i = 0; i < terms_.size(); ++i) {
    out += terms_[i];
    out += '\t';
    out += std::to_string(i);
    out += '\n';
  }
  return out;
}

Vocabulary Vocabulary::FromTsv(std::string_view tsv) {
  std::map<std::uint32_t, std::string> by_index;
  std::istringstream in{std::string(tsv)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw IoError("vocabulary line " + std::to_string(line_no) +
                    ": expected 'term<TAB>index'");
    }
    std::uint32_t index = 0;
    try {
      index = static_cast<std::uint32_t>(std::stoul(line.substr(tab + 1)));
    } catch (const std::exception&) {
      throw IoError("vocabulary line " + std::to_string(line_no) +
                    ": bad index");
    }
    if (!by_index.emplace(index, line.substr(0, tab)).second) {
      throw IoError("vocabulary line " + std::to_string(line_no) +
                    ": duplicate index");
    }
  }
  std::vector<std::string> terms;
  terms.reserve(by_index.size());
  for (auto& [index, term] : by_index) {
    if (index != terms.size()) throw IoError("vocabulary indices not contiguous");
    terms.push_back(term);
  }
  Vocabulary vocab(terms);
  // Lexicographic ordering is part of the format.
  if (vocab.terms() != terms) throw IoError("vocabulary is not in term order");
  return vocab;
}

void Vocabulary::Save(const std::string& path) const {
  WriteFileAtomic(path, ToTsv());
}

Vocabulary Vocabulary::Load(const std::string& path) {
  return FromTsv(ReadFile(path));
}

std::string Vocabulary::Hash() const { return Sha256Hex(ToTsv()).substr(0, 16); }

Vocabulary BuildVocabulary(const LabeledCorpus& corpus, int min_df) {
  if (corpus.empty()) throw InvalidArgument("cannot build vocabulary: empty corpus");
  std::map<std::string, int> doc_freq;
  for (const auto& doc : corpus.documents) {
    std::set<std::string_view> distinct(doc.tokens.begin(), doc.tokens.end());
    for (auto term : distinct) ++doc_freq[std::string(term)];
  }
  std::vector<std::string> terms;
  for (auto& [term, df] : doc_freq) {
    if (df >= min_df) terms.push_back(term);
  }
  return Vocabulary(std::move(terms));
}

FeatureVector Vectorize(const std::vector<std::string>& tokens,
                        const Vocabulary& vocab) {
  FeatureVector fv;
  fv.indices.reserve(tokens.size());
  for (const auto& token : tokens) {
    if (auto index = vocab.IndexOf(token)) fv.indices.push_back(*index);
  }
  std::sort(fv.indices.begin(), fv.indices.end());
  fv.indices.erase(std::unique(fv.indices.begin(), fv.indices.end()),
                   fv.indices.end());
  return fv;
}

FeatureVector Vectorize(const Document& doc, const Vocabulary& vocab) {
  return Vectorize(doc.tokens, vocab);
}

}  // namespace ctfaug
