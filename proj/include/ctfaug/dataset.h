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
// A dataset directory bundles everything one experiment row needs:
//
//   dataset.json             optional {"name": str, "coef_threshold": float}
//   train.jsonl              original training documents (required)
//   test.jsonl               original test documents (required)
//   ctf_test.jsonl           human counterfactual test documents
//   ctf_train.jsonl          human counterfactual training documents
//   annotated_causal.txt     causal terms annotated over the vocabulary
//   annotated_top_causal.txt causal terms annotated among the top terms
//   lexicon.tsv              antonym / synonym lexicon
//   word_vectors.txt         word vectors for the averaged embedder
//   contexts.tsv             precomputed context embeddings

#ifndef CTFAUG_DATASET_H_
#define CTFAUG_DATASET_H_

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ctfaug/corpus.h"
#include "ctfaug/lexicon.h"
#include "ctfaug/matcher.h"

namespace ctfaug {

struct Dataset {
  std::string name;
  std::string directory;
  // Top-term cutoff; 0.4 suits long documents, 1.0 single sentences.
  double coef_threshold = 1.0;
  LabeledCorpus train;
  LabeledCorpus test;
  std::optional<LabeledCorpus> ctf_test;
  std::optional<LabeledCorpus> ctf_train;
  std::optional<std::vector<std::string>> annotated_causal;
  std::optional<std::vector<std::string>> annotated_top_causal;
  std::optional<AntonymLexicon> lexicon;
  std::shared_ptr<const ContextEmbedder> embedder;
};

// One term per line; blank lines and '#' comments ignored; order preserved.
std::vector<std::string> LoadTermList(const std::string& path);

// Loads a dataset directory. `embedder_spec` / `lexicon_path`, when
// nonempty, override the files inside the directory.
Dataset LoadDataset(const std::string& directory,
                    const std::string& embedder_spec = "",
                    const std::string& lexicon_path = "");

}  // namespace ctfaug

#endif  // CTFAUG_DATASET_H_
