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

"""Converts the public IMDB counterfactual sentiment data into a dataset dir.

Expects the `sentiment` directory of the counterfactually augmented data
release, which holds `orig/{train,dev,test}.tsv` and `new/{train,dev,test}.tsv`
with columns Sentiment, Text and batch_id. Rows in `new/` are human-edited
copies of the `orig/` rows with the same batch_id and the opposite label.

Writes train/test/ctf_train/ctf_test JSONL files, dataset.json (coefficient
threshold 0.4 for long reviews) and, when given, the annotated causal-term
list, lexicon and word vectors.

  python tools/prepare_imdb.py --source /path/to/sentiment --output data/imdb-l \
      --annotated terms.txt --lexicon data/lexicon/sentiment_starter.tsv
"""

import argparse
import csv
import json
import pathlib
import shutil
import sys

csv.field_size_limit(sys.maxsize)

LABELS = {"positive": "pos", "negative": "neg"}


def read_tsv(path):
    with open(path, newline="", encoding="utf-8") as f:
        rows = list(csv.DictReader(f, delimiter="\t"))
    out = []
    for i, row in enumerate(rows):
        label = LABELS.get(row.get("Sentiment", "").strip().lower())
        text = (row.get("Text") or "").replace("<br />", " ").strip()
        if label is None or not text:
            raise SystemExit(f"{path}: bad row {i + 2}")
        out.append({"batch_id": row.get("batch_id", str(i)).strip(), "text": text, "label": label})
    return out


def write_jsonl(path, records):
    with open(path, "w", encoding="utf-8") as f:
        for r in records:
            f.write(json.dumps(r, ensure_ascii=False) + "\n")


def convert(source, split, prefix):
    orig = read_tsv(source / "orig" / f"{split}.tsv")
    new = read_tsv(source / "new" / f"{split}.tsv")
    originals = [
        {"id": f"{prefix}{r['batch_id']}", "text": r["text"], "label": r["label"]} for r in orig
    ]
    ids = {r["id"] for r in originals}
    if len(ids) != len(originals):
        raise SystemExit(f"duplicate batch_id in orig/{split}.tsv")
    counterfactuals = []
    for r in new:
        source_id = f"{prefix}{r['batch_id']}"
        if source_id not in ids:
            raise SystemExit(f"new/{split}.tsv: batch_id {r['batch_id']} has no original")
        counterfactuals.append(
            {
                "id": source_id + "~h",
                "text": r["text"],
                "label": r["label"],
                "origin": "human_counterfactual",
                "source_id": source_id,
            }
        )
    return originals, counterfactuals


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--source", required=True, type=pathlib.Path,
                        help="the release's sentiment/ directory")
    parser.add_argument("--output", default="data/imdb-l", type=pathlib.Path)
    parser.add_argument("--name", default="imdb-l")
    parser.add_argument("--coef-threshold", type=float, default=0.4)
    parser.add_argument("--merge-dev", action="store_true",
                        help="append dev rows to the training split")
    parser.add_argument("--annotated", type=pathlib.Path,
                        help="causal-term list, one term per line")
    parser.add_argument("--lexicon", type=pathlib.Path, help="antonym lexicon TSV")
    parser.add_argument("--word-vectors", type=pathlib.Path,
                        help="word2vec/GloVe text vectors for the matcher")
    args = parser.parse_args(argv)

    out = args.output
    out.mkdir(parents=True, exist_ok=True)
    train, ctf_train = convert(args.source, "train", "tr")
    if args.merge_dev:
        dev, ctf_dev = convert(args.source, "dev", "dv")
        train += dev
        ctf_train += ctf_dev
    test, ctf_test = convert(args.source, "test", "te")
    write_jsonl(out / "train.jsonl", train)
    write_jsonl(out / "test.jsonl", test)
    write_jsonl(out / "ctf_train.jsonl", ctf_train)
    write_jsonl(out / "ctf_test.jsonl", ctf_test)
    meta = {"name": args.name, "coef_threshold": args.coef_threshold}
    (out / "dataset.json").write_text(json.dumps(meta, indent=1) + "\n")
    for src, name in ((args.annotated, "annotated_causal.txt"),
                      (args.lexicon, "lexicon.tsv"),
                      (args.word_vectors, "word_vectors.txt")):
        if src is not None:
            shutil.copyfile(src, out / name)
    print(f"{out}: {len(train)} train, {len(test)} test, "
          f"{len(ctf_train)} ctf_train, {len(ctf_test)} ctf_test")


if __name__ == "__main__":
    main()
