# Copyright 2026 The ctfaug Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Counterfactual data augmentation for bag-of-words text classifiers."""

import json

from ._core import (  # noqa: F401
    Corpus,
    Dataset,
    Document,
    ExperimentConfig,
    FitResult,
    Model,
    Vocabulary,
    accuracy,
    augment,
    build_vocabulary,
    fit,
    load_corpus,
    load_dataset,
    match_terms,
    predict_proba,
    regularization_sweep,
    tokenize,
    top_terms,
)

from ._core import run_grid_json as _run_grid_json

LEVELS = (
    "original_only",
    "auto_predicted_terms",
    "auto_annotated_top_terms",
    "auto_annotated_vocab_terms",
    "human_counterfactuals",
)


def run_grid(datasets, config=None, levels=()):
    """Runs the supervision grid; returns (report dict, markdown table)."""
    if config is None:
        config = ExperimentConfig()
    text, markdown = _run_grid_json(list(datasets), config, list(levels))
    return json.loads(text), markdown
