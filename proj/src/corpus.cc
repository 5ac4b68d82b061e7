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

#include "ctfaug/corpus.h"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <unordered_set>

#include "ctfaug/status.h"
#include "ctfaug/util.h"
#include "json.hpp"

namespace ctfaug {

using json = nlohmann::json;

namespace {

bool IsAsciiAlpha(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

std::string Lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::string Trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

// One raw record before label resolution.
struct RawRecord {
  std::optional<std::string> id;
  std::string text;
  std::optional<std::string> label;
  std::optional<int> rating;
  std::optional<std::string> origin;
  std::optional<std::string> source_id;
};

std::optional<int> ParseInt(std::string_view s) {
  const std::string t = Trim(s);
  if (t.empty()) return std::nullopt;
  int value = 0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc() || ptr != t.data() + t.size()) return std::nullopt;
  return value;
}

std::vector<RawRecord> ReadJsonl(const std::string& contents,
                                 const std::string& path) {
  std::vector<RawRecord> records;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < contents.size()) {
    std::size_t end = contents.find('\n', start);
    if (end == std::string::npos) end = contents.size();
    std::string_view line(contents.data() + start, end - start);
    start = end + 1;
    ++line_no;
    if (Trim(line).empty()) continue;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      throw IoError(path + ":" + std::to_string(line_no) +
                    ": invalid JSON: " + e.what());
    }
    if (!obj.is_object()) {
      throw IoError(path + ":" + std::to_string(line_no) +
                    ": expected a JSON object");
    }
    RawRecord r;
    if (obj.contains("id") && !obj["id"].is_null()) {
      r.id = obj["id"].is_string() ? obj["id"].get<std::string>()
                                   : obj["id"].dump();
    }
    if (obj.contains("text") && obj["text"].is_string()) {
      r.text = obj["text"].get<std::string>();
    }
    if (obj.contains("label") && obj["label"].is_string()) {
      r.label = obj["label"].get<std::string>();
    }
    if (obj.contains("rating")) {
      const auto& v = obj["rating"];
      if (v.is_number_integer()) {
        r.rating = v.get<int>();
      } else if (v.is_string()) {
        r.rating = ParseInt(v.get<std::string>());
      }
    }
    if (obj.contains("origin") && obj["origin"].is_string()) {
      r.origin = obj["origin"].get<std::string>();
    }
    if (obj.contains("source_id") && obj["source_id"].is_string()) {
      r.source_id = obj["source_id"].get<std::string>();
    }
    records.push_back(std::move(r));
  }
  return records;
}

// RFC 4180 style: quoted fields may contain commas, newlines and "" escapes.
std::vector<std::vector<std::string>> ParseCsv(const std::string& contents) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool field_started = false;
  for (std::size_t i = 0; i < contents.size(); ++i) {
    char c = contents[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < contents.size() && contents[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field.push_back(c);
      }
      continue;
    }
    if (c == '"' && !field_started) {
      quoted = true;
      field_started = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
      field_started = false;
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < contents.size() && contents[i + 1] == '\n') ++i;
      row.push_back(std::move(field));
      field.clear();
      field_started = false;
      if (!(row.size() == 1 && row[0].empty())) rows.push_back(std::move(row));
      row.clear();
    } else {
      field.push_back(c);
      field_started = true;
    }
  }
  if (field_started || !field.empty() || !row.empty()) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<RawRecord> ReadCsv(const std::string& contents,
                               const std::string& path) {
  auto rows = ParseCsv(contents);
  std::vector<RawRecord> records;
  if (rows.empty()) return records;
  const auto& header = rows.front();
  auto column = [&](std::string_view name) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (Lower(Trim(header[i])) == name) return i;
    }
    return std::nullopt;
  };
  const auto id_col = column("id");
  const auto text_col = column("text");
  const auto label_col = column("label");
  const auto rating_col = column("rating");
  if (!text_col) throw IoError(path + ": CSV header lacks a 'text' column");
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    auto cell = [&](std::optional<std::size_t> col) -> std::optional<std::string> {
      if (!col || *col >= row.size()) return std::nullopt;
      return row[*col];
    };
    RawRecord rec;
    rec.id = cell(id_col);
    if (rec.id && rec.id->empty()) rec.id.reset();
    rec.text = cell(text_col).value_or("");
    rec.label = cell(label_col);
    if (rec.label && Trim(*rec.label).empty()) rec.label.reset();
    if (auto rating = cell(rating_col)) rec.rating = ParseInt(*rating);
    records.push_back(std::move(rec));
  }
  return records;
}

}  // namespace

std::string LabelName(Label label) {
  return label == Label::kPositive ? "pos" : "neg";
}

std::optional<Label> ParseLabel(std::string_view name) {
  const std::string lowered = Lower(Trim(name));
  if (lowered == "pos" || lowered == "positive") return Label::kPositive;
  if (lowered == "neg" || lowered == "negative") return Label::kNegative;
  return std::nullopt;
}

std::string OriginName(Origin origin) {
  switch (origin) {
    case Origin::kOriginal:
      return "original";
    case Origin::kAutoCounterfactual:
      return "auto_counterfactual";
    case Origin::kHumanCounterfactual:
      return "human_counterfactual";
  }
  return "original";
}

Origin ParseOrigin(std::string_view name) {
  if (name == "original") return Origin::kOriginal;
  if (name == "auto_counterfactual") return Origin::kAutoCounterfactual;
  if (name == "human_counterfactual") return Origin::kHumanCounterfactual;
  throw InvalidArgument("unknown document origin: " + std::string(name));
}

bool Document::Contains(std::string_view term) const {
  return std::find(tokens.begin(), tokens.end(), term) != tokens.end();
}

Document MakeDocument(std::string id, std::string raw_text, Label label,
                      Origin origin, std::optional<std::string> source_id) {
  if (origin == Origin::kAutoCounterfactual && !source_id) {
    throw InvalidArgument("auto counterfactual document '" + id +
                          "' needs a source_id");
  }
  Document doc;
  doc.id = std::move(id);
  doc.tokens = Tokenize(raw_text);
  doc.raw_text = std::move(raw_text);
  doc.label = label;
  doc.origin = origin;
  doc.source_id = std::move(source_id);
  return doc;
}

std::size_t LabeledCorpus::CountLabel(Label label) const {
  return static_cast<std::size_t>(
      std::count_if(documents.begin(), documents.end(),
                    [label](const Document& d) { return d.label == label; }));
}

void LabeledCorpus::CheckUniqueIds() const {
  std::unordered_set<std::string> seen;
  for (const auto& doc : documents) {
    if (!seen.insert(doc.id).second) {
      throw InvalidArgument("duplicate document id '" + doc.id +
                            "' in corpus '" + name + "'");
    }
  }
}

void LabeledCorpus::CheckTrainable() const {
  if (CountLabel(Label::kPositive) == 0 || CountLabel(Label::kNegative) == 0) {
    throw InvalidArgument("corpus '" + name +
                          "' must contain documents of both labels");
  }
}

std::vector<std::string> Tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (unsigned char c : text) {
    if (IsAsciiAlpha(c)) {
      current.push_back(static_cast<char>(c >= 'A' && c <= 'Z' ? c - 'A' + 'a' : c));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

std::optional<Label> LabelFromRating(int rating) {
  if (rating < 1 || rating > 5) {
    throw InvalidArgument("rating must be in 1..5, got " +
                          std::to_string(rating));
  }
  if (rating >= 4) return Label::kPositive;
  if (rating <= 2) return Label::kNegative;
  return std::nullopt;
}

CorpusFormat ParseCorpusFormat(std::string_view name) {
  const std::string lowered = Lower(name);
  if (lowered == "jsonl") return CorpusFormat::kJsonl;
  if (lowered == "csv") return CorpusFormat::kCsv;
  throw InvalidArgument("unknown corpus format: " + std::string(name));
}

LabeledCorpus LoadCorpus(const std::string& path, CorpusFormat format,
                         Split split, LoadStats* stats) {
  const std::string contents = ReadFile(path);
  std::vector<RawRecord> records = format == CorpusFormat::kJsonl
                                       ? ReadJsonl(contents, path)
                                       : ReadCsv(contents, path);
  LabeledCorpus corpus;
  corpus.name = std::filesystem::path(path).stem().string();
  corpus.split = split;
  LoadStats local;
  local.records = records.size();
  for (std::size_t i = 0; i < records.size(); ++i) {
    auto& rec = records[i];
    std::optional<Label> label;
    if (rec.label) {
      label = ParseLabel(*rec.label);
    } else if (rec.rating && *rec.rating >= 1 && *rec.rating <= 5) {
      label = LabelFromRating(*rec.rating);
    }
    if (!label) {
      ++local.skipped;
      continue;
    }
    Origin origin = rec.origin ? ParseOrigin(*rec.origin) : Origin::kOriginal;
    if (origin == Origin::kAutoCounterfactual && !rec.source_id) {
      ++local.skipped;
      continue;
    }
    std::string id = rec.id ? *rec.id : std::to_string(i);
    corpus.documents.push_back(MakeDocument(std::move(id), std::move(rec.text),
                                            *label, origin,
                                            std::move(rec.source_id)));
  }
  local.loaded = corpus.documents.size();
  if (stats) *stats = local;
  if (corpus.empty()) {
    throw InvalidArgument(path + ": no usable records (" +
                          std::to_string(local.skipped) + " skipped)");
  }
  corpus.CheckUniqueIds();
  return corpus;
}

std::string CorpusToJsonl(const LabeledCorpus& corpus) {
  std::string out;
  for (const auto& doc : corpus.documents) {
    // ordered_json keeps the documented key order on output.
    nlohmann::ordered_json obj;
    obj["id"] = doc.id;
    obj["text"] = doc.raw_text;
    obj["label"] = LabelName(doc.label);
    obj["origin"] = OriginName(doc.origin);
    if (doc.source_id) obj["source_id"] = *doc.source_id;
    out += obj.dump();
    out += '\n';
  }
  return out;
}

void SaveCorpusJsonl(const LabeledCorpus& corpus, const std::string& path) {
  WriteFileAtomic(path, CorpusToJsonl(corpus));
}

std::vector<std::string> SplitSentences(std::string_view text) {
  std::vector<std::string> sentences;
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c != '.' && c != '!' && c != '?') continue;
    const bool at_end = i + 1 == text.size();
    if (!at_end && !std::isspace(static_cast<unsigned char>(text[i + 1]))) {
      continue;
    }
    std::string sentence = Trim(text.substr(start, i + 1 - start));
    if (!sentence.empty()) sentences.push_back(std::move(sentence));
    start = i + 1;
  }
  std::string tail = Trim(text.substr(std::min(start, text.size())));
  if (!tail.empty()) sentences.push_back(std::move(tail));
  return sentences;
}

LabeledCorpus SegmentSentences(const LabeledCorpus& corpus,
                               const std::set<std::string>& keywords) {
  if (keywords.empty()) throw InvalidArgument("keyword set is empty");
  LabeledCorpus out;
  out.name = corpus.name + "-sentences";
  out.split = corpus.split;
  for (const auto& doc : corpus.documents) {
    const auto sentences = SplitSentences(doc.raw_text);
    for (std::size_t s = 0; s < sentences.size(); ++s) {
      Document sentence =
          MakeDocument(doc.id + "#s" + std::to_string(s), sentences[s],
                       doc.label, doc.origin, doc.id);
      const bool keep = std::any_of(
          sentence.tokens.begin(), sentence.tokens.end(),
          [&](const std::string& t) { return keywords.count(t) > 0; });
      if (keep) out.documents.push_back(std::move(sentence));
    }
  }
  return out;
}

}  // namespace ctfaug
