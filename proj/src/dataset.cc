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

#include "ctfaug/dataset.h"

#include <filesystem>
#include <sstream>

#include "ctfaug/embedders.h"
#include "ctfaug/status.h"
#include "ctfaug/util.h"
#include "json.hpp"

namespace ctfaug {

namespace fs = std::filesystem;

std::vector<std::string> LoadTermList(const std::string& path) {
  std::istringstream in(ReadFile(path));
  std::vector<std::string> terms;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    auto tokens = Tokenize(line);
    if (tokens.size() == 1) terms.push_back(tokens.front());
  }
  return terms;
}

Dataset LoadDataset(const std::string& directory,
                    const std::string& embedder_spec,
                    const std::string& lexicon_path) {
  const fs::path dir(directory);
  if (!fs::is_directory(dir)) throw IoError("not a dataset directory: " + directory);
  auto file = [&](const char* name) { return (dir / name).string(); };
  auto exists = [&](const char* name) { return fs::exists(dir / name); };

  Dataset ds;
  ds.directory = directory;
  ds.name = dir.filename().string();
  if (ds.name.empty()) ds.name = dir.parent_path().filename().string();
  if (exists("dataset.json")) {
    auto meta = nlohmann::json::parse(ReadFile(file("dataset.json")));
    ds.name = meta.value("name", ds.name);
    ds.coef_threshold = meta.value("coef_threshold", ds.coef_threshold);
  }

  ds.train = LoadCorpus(file("train.jsonl"), CorpusFormat::kJsonl, Split::kTrain);
  ds.test = LoadCorpus(file("test.jsonl"), CorpusFormat::kJsonl, Split::kTest);
  if (exists("ctf_test.jsonl")) {
    ds.ctf_test = LoadCorpus(file("ctf_test.jsonl"), CorpusFormat::kJsonl, Split::kTest);
  }
  if (exists("ctf_train.jsonl")) {
    ds.ctf_train =
        LoadCorpus(file("ctf_train.jsonl"), CorpusFormat::kJsonl, Split::kTrain);
  }
  if (exists("annotated_causal.txt")) {
    ds.annotated_causal = LoadTermList(file("annotated_causal.txt"));
  }
  if (exists("annotated_top_causal.txt")) {
    ds.annotated_top_causal = LoadTermList(file("annotated_top_causal.txt"));
  }
  if (!lexicon_path.empty()) {
    ds.lexicon = LoadLexicon(lexicon_path);
  } else if (exists("lexicon.tsv")) {
    ds.lexicon = LoadLexicon(file("lexicon.tsv"));
  }
  if (!embedder_spec.empty()) {
    ds.embedder = LoadEmbedder(embedder_spec);
  } else if (exists("contexts.tsv")) {
    ds.embedder = PrecomputedLookup::Load(file("contexts.tsv"));
  } else if (exists("word_vectors.txt")) {
    ds.embedder = AveragedWordVectors::Load(file("word_vectors.txt"));
  }
  return ds;
}

}  // namespace ctfaug
