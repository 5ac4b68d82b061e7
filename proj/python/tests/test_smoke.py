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

import os
import pathlib

import pytest

import ctfaug

ROOT = pathlib.Path(__file__).resolve().parents[2]
FIXTURE = os.environ.get("CTFAUG_FIXTURE", str(ROOT / "data" / "fixtures" / "synth-s"))


def small_corpus():
    return ctfaug.Corpus.from_records(
        [
            ("a", "good film", 1),
            ("b", "bad film", -1),
            ("c", "good plot", 1),
            ("d", "bad plot", -1),
        ],
        name="toy",
    )


def test_tokenize():
    assert ctfaug.tokenize("Great film, isn't it?") == ["great", "film", "isn", "t", "it"]


def test_fit_and_predict():
    corpus = small_corpus()
    vocab = ctfaug.build_vocabulary(corpus)
    assert vocab.terms == ["bad", "film", "good", "plot"]
    result = ctfaug.fit(corpus, vocab, l2_c=10.0)
    assert result.converged
    model = result.model
    assert model.coefficient(vocab, "good") > 0 > model.coefficient(vocab, "bad")
    assert ctfaug.predict_proba(model, vocab, "good") > 0.5
    assert ctfaug.accuracy(model, corpus, vocab) == 1.0
    terms = [t for t, _ in ctfaug.top_terms(model, vocab, 0.5)]
    assert set(terms) == {"good", "bad"}


def test_errors_map_to_python_exceptions():
    with pytest.raises(ValueError):
        ctfaug.Corpus.from_records([("a", "x", 2)])
    with pytest.raises(ValueError):
        ctfaug.fit(ctfaug.Corpus.from_records([("a", "x", 1)]), ctfaug.Vocabulary(["x"]))
    with pytest.raises(OSError):
        ctfaug.load_corpus("/nonexistent/file.jsonl")


def test_augment_flips_labels():
    corpus = small_corpus()
    out = ctfaug.augment(corpus, {"good": ["bad"]}, seed=3)
    assert len(out) == 6
    generated = [d for d in out.documents if d.origin == "auto_counterfactual"]
    assert [d.text for d in generated] == ["bad film", "bad plot"]
    assert all(d.label == -1 for d in generated)
    assert generated[0].source_id == "a"


def test_grid_on_fixture_is_deterministic():
    ds = ctfaug.load_dataset(FIXTURE)
    assert ds.name == "synth-s"
    config = ctfaug.ExperimentConfig(seed=0)
    levels = ["original_only", "auto_annotated_vocab_terms"]
    report, markdown = ctfaug.run_grid([ds], config, levels)
    again, _ = ctfaug.run_grid([ds], config, levels)
    assert report == again
    rows = report["rows"]
    assert [r["level"] for r in rows] == levels
    assert rows[1]["ctf_accuracy"] > rows[0]["ctf_accuracy"]
    assert "| synth-s Orig | synth-s CTF |" in markdown


def test_match_terms_and_sweep():
    ds = ctfaug.load_dataset(FIXTURE)
    config = ctfaug.ExperimentConfig()
    scores = dict(ctfaug.match_terms(ds, config))
    assert scores and all(-1.0 <= s <= 1.0 for s in scores.values())
    rows = ctfaug.regularization_sweep(ds, [0.1, 1.0], config)
    assert [c for c, _, _ in rows] == [0.1, 1.0]
