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
// Labeled review corpora: loading, labeling, tokenization and sentence
// segmentation. Everything here is a pure function over its inputs.

#ifndef CTFAUG_CORPUS_H_
#define CTFAUG_CORPUS_H_

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace ctfaug {

// Binary class label. Stored as -1 / +1 so that y * score arithmetic works.
enum class Label : int { kNegative = -1, kPositive = 1 };

inline int ToInt(Label label) { return static_cast<int>(label); }
inline Label Flip(Label label) {
  return label == Label::kPositive ? Label::kNegative : Label::kPositive;
}
std::string LabelName(Label label);  // "pos" / "neg"
std::optional<Label> ParseLabel(std::string_view name);

enum class Origin { kOriginal, kAutoCounterfactual, kHumanCounterfactual };

std::string OriginName(Origin origin);
Origin ParseOrigin(std::string_view name);

enum class Split { kTrain, kTest };

struct Document {
  std::string id;
  std::string raw_text;
  // Always tokenize(raw_text); use MakeDocument to keep that true.
  std::vector<std::string> tokens;
  Label label = Label::kPositive;
  Origin origin = Origin::kOriginal;
  std::optional<std::string> source_id;

  bool Contains(std::string_view term) const;
};

Document MakeDocument(std::string id, std::string raw_text, Label label,
                      Origin origin = Origin::kOriginal,
                      std::optional<std::string> source_id = std::nullopt);

struct LabeledCorpus {
  std::string name;
  Split split = Split::kTrain;
  std::vector<Document> documents;

  std::size_t size() const { return documents.size(); }
  bool empty() const { return documents.empty(); }
  std::size_t CountLabel(Label label) const;
  // Throws InvalidArgument on duplicate ids.
  void CheckUniqueIds() const;
  // Throws InvalidArgument unless both labels are present.
  void CheckTrainable() const;
};

// Lowercased ASCII-alphabetic runs; everything else separates tokens.
std::vector<std::string> Tokenize(std::string_view text);

// 4,5 -> positive; 1,2 -> negative; 3 -> none. Throws outside 1..5.
std::optional<Label> LabelFromRating(int rating);

enum class CorpusFormat { kJsonl, kCsv };

CorpusFormat ParseCorpusFormat(std::string_view name);

struct LoadStats {
  std::size_t records = 0;
  std::size_t loaded = 0;
  std::size_t skipped = 0;
};

// Reads a corpus file. An explicit label wins over a rating; records with
// neither usable label nor rating are skipped and counted in `stats`.
// Throws IoError for unreadable files and InvalidArgument when no usable
// record remains or ids collide.
LabeledCorpus LoadCorpus(const std::string& path, CorpusFormat format,
                         Split split = Split::kTrain,
                         LoadStats* stats = nullptr);

// One JSON object per line, fixed key order; LoadCorpus reads it back.
std::string CorpusToJsonl(const LabeledCorpus& corpus);
void SaveCorpusJsonl(const LabeledCorpus& corpus, const std::string& path);

// Splits on '.', '!' or '?' followed by whitespace (or end of text).
std::vector<std::string> SplitSentences(std::string_view text);

// Keeps single sentences that contain at least one keyword. Sentence
// documents inherit the parent label and get source_id = parent id.
LabeledCorpus SegmentSentences(const LabeledCorpus& corpus,
                               const std::set<std::string>& keywords);

}  // namespace ctfaug

#endif  // CTFAUG_CORPUS_H_
