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

#include "ctfaug/embedders.h"

#include <cmath>
#include <sstream>

#include "ctfaug/corpus.h"
#include "ctfaug/status.h"
#include "ctfaug/util.h"

namespace ctfaug {

namespace {

bool AllZero(const Embedding& v) {
  for (double x : v) {
    if (x != 0.0) return false;
  }
  return true;
}

// Splits a line into a key and numeric fields. Returns false when a field is
// not a number.
bool ParseVectorLine(const std::string& line, std::string* key, Embedding* out) {
  std::istringstream in(line);
  if (!(in >> *key)) return false;
  out->clear();
  std::string field;
  while (in >> field) {
    try {
      std::size_t used = 0;
      double v = std::stod(field, &used);
      if (used != field.size()) return false;
      out->push_back(v);
    } catch (const std::exception&) {
      return false;
    }
  }
  return true;
}

}  // namespace

std::string NormalizeContext(const std::string& context) {
  return Join(Tokenize(context), " ");
}

AveragedWordVectors::AveragedWordVectors(
    std::unordered_map<std::string, Embedding> vectors, std::string id)
    : vectors_(std::move(vectors)), id_(std::move(id)) {
  if (vectors_.empty()) throw InvalidArgument("word-vector table is empty");
  dimension_ = vectors_.begin()->second.size();
  if (dimension_ == 0) throw InvalidArgument("word vectors have dimension 0");
  for (const auto& [token, v] : vectors_) {
    if (v.size() != dimension_) {
      throw InvalidArgument("word vector for '" + token +
                            "' has inconsistent dimension");
    }
  }
}

std::unique_ptr<AveragedWordVectors> AveragedWordVectors::Load(
    const std::string& path) {
  const std::string contents = ReadFile(path);
  std::istringstream in(contents);
  std::unordered_map<std::string, Embedding> vectors;
  std::string line, token;
  Embedding v;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (!ParseVectorLine(line, &token, &v)) {
      throw IoError(path + ":" + std::to_string(line_no) + ": malformed vector");
    }
    // word2vec text header: "<count> <dim>"
    if (line_no == 1 && v.size() == 1 &&
        token.find_first_not_of("0123456789") == std::string::npos) {
      continue;
    }
    vectors[token] = v;
  }
  return std::make_unique<AveragedWordVectors>(
      std::move(vectors), "words:" + Sha256Hex(contents).substr(0, 16));
}

Embedding AveragedWordVectors::Embed(const std::string& context) const {
  Embedding sum(dimension_, 0.0);
  std::size_t known = 0;
  for (const auto& token : Tokenize(context)) {
    auto it = vectors_.find(token);
    if (it == vectors_.end()) continue;
    for (std::size_t i = 0; i < dimension_; ++i) sum[i] += it->second[i];
    ++known;
  }
  if (known == 0 || AllZero(sum)) {
    return Embedding(dimension_, 1.0 / std::sqrt(static_cast<double>(dimension_)));
  }
  for (double& x : sum) x /= static_cast<double>(known);
  return sum;
}

PrecomputedLookup::PrecomputedLookup(
    std::unordered_map<std::string, Embedding> by_digest, std::string id)
    : by_digest_(std::move(by_digest)), id_(std::move(id)) {
  if (by_digest_.empty()) throw InvalidArgument("precomputed table is empty");
  dimension_ = by_digest_.begin()->second.size();
  for (const auto& [digest, v] : by_digest_) {
    if (digest.size() != 64 ||
        digest.find_first_not_of("0123456789abcdef") != std::string::npos) {
      throw InvalidArgument("precomputed key '" + digest + "' is not a sha256 hex digest");
    }
    if (v.size() != dimension_ || dimension_ == 0) {
      throw InvalidArgument("precomputed vector " + digest +
                            " has inconsistent dimension");
    }
    if (AllZero(v)) {
      throw InvalidArgument("precomputed vector " + digest + " is all zero");
    }
  }
}

std::unique_ptr<PrecomputedLookup> PrecomputedLookup::Load(
    const std::string& path) {
  const std::string contents = ReadFile(path);
  std::istringstream in(contents);
  std::unordered_map<std::string, Embedding> table;
  std::string line, digest;
  Embedding v;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (!ParseVectorLine(line, &digest, &v) || digest.size() != 64) {
      throw IoError(path + ":" + std::to_string(line_no) +
                    ": expected 'sha256<TAB>v1 ... vD'");
    }
    table[digest] = v;
  }
  return std::make_unique<PrecomputedLookup>(
      std::move(table), "precomputed:" + Sha256Hex(contents).substr(0, 16));
}

Embedding PrecomputedLookup::Embed(const std::string& context) const {
  const std::string normalized = NormalizeContext(context);
  auto it = by_digest_.find(Sha256Hex(normalized));
  if (it == by_digest_.end()) {
    throw NotFound("no precomputed embedding for context \"" + normalized + "\"");
  }
  return it->second;
}

std::unique_ptr<ContextEmbedder> LoadEmbedder(const std::string& spec) {
  constexpr std::string_view kWords = "words:";
  constexpr std::string_view kPrecomputed = "precomputed:";
  if (spec.rfind(kPrecomputed, 0) == 0) {
    return PrecomputedLookup::Load(spec.substr(kPrecomputed.size()));
  }
  if (spec.rfind(kWords, 0) == 0) {
    return AveragedWordVectors::Load(spec.substr(kWords.size()));
  }
  return AveragedWordVectors::Load(spec);
}

}  // namespace ctfaug
