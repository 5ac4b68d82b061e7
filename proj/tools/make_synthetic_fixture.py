#!/usr/bin/env python3
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
"""Writes the synthetic sentence-level review fixture.

Sentences come from a handful of templates. Sentiment adjectives decide the
label; "film", "movie" and "free" are correlated with the label without
deciding it. Some sentences carry no adjective at all, so the classifier has
a reason to lean on the correlated tokens. The human counterfactual sets swap
each adjective for an antonym and flip the label.

Usage: make_synthetic_fixture.py OUT_DIR [--seed N] [--long]
"""

import argparse
import json
import math
import os
import random

POSITIVE = {
    # frequent
    "great": 40, "good": 40, "fantastic": 12, "awesome": 12, "wonderful": 10,
    "excellent": 10, "enjoyable": 8, "pleasant": 6, "interesting": 8,
    "lively": 4, "brilliant": 6, "superb": 3, "charming": 3, "clever": 3,
    "colorful": 2, "gripping": 2, "moving": 3, "delightful": 2,
}
NEGATIVE = {
    "bad": 40, "terrible": 30, "boring": 14, "awful": 12, "dull": 10,
    "poor": 10, "unpleasant": 5, "unimpressive": 4, "inferior": 3,
    "horrible": 8, "weak": 6, "bland": 3, "clumsy": 3, "tedious": 4,
    "forgettable": 3, "lifeless": 2, "annoying": 4, "uninteresting": 2,
}
ANTONYMS = [
    ("great", "terrible"), ("great", "awful"), ("good", "bad"), ("good", "poor"),
    ("fantastic", "unimpressive"), ("fantastic", "inferior"),
    ("awesome", "unimpressive"), ("wonderful", "horrible"),
    ("excellent", "poor"), ("excellent", "inferior"), ("enjoyable", "tedious"),
    ("enjoyable", "unpleasant"), ("pleasant", "unpleasant"),
    ("interesting", "boring"), ("interesting", "uninteresting"),
    ("lively", "dull"), ("colorful", "dull"), ("brilliant", "weak"),
    ("superb", "bad"), ("charming", "annoying"), ("clever", "clumsy"),
    ("gripping", "tedious"), ("moving", "lifeless"), ("delightful", "bland"),
    ("delightful", "forgettable"),
]
SYNONYMS = [
    ("fantastic", "awesome"), ("great", "superb"), ("terrible", "horrible"),
    ("boring", "tedious"), ("dull", "bland"), ("bad", "poor"),
]
NOUNS = ["acting", "plot", "story", "soundtrack", "dialogue", "cast", "ending",
         "script", "pacing", "cinematography", "characters", "score", "humor",
         "direction", "casting"]
FILLERS = ["", "", "", "honestly", "really", "overall", "frankly"]
NEUTRAL = [
    "i saw the {s} with my family last weekend",
    "we watched the {s} on a rainy sunday",
    "the {s} runs a little over two hours",
    "my brother picked this {s} for our evening",
    "the {s} is based on a novel",
    "i rented the {s} after reading about it",
]
TEMPLATES = [
    "the {n} was {a}",
    "the {n} was {a} in this {s}",
    "{f} the {n} was {a}",
    "what a {a} {s}",
    "i thought the {n} was {a}",
    "this {s} has {a} {n}",
    "{a} {n} and {a2} {n2}",
    "the {n} felt {a} {f}",
    "a {a} {s} with {a2} {n}",
]
FUNCTION = ["the", "was", "in", "this", "i", "thought", "what", "a", "has",
            "and", "felt", "with", "on", "for", "it", "my", "we", "of", "is",
            "after", "about", "little", "over", "two", "hours", "saw", "family",
            "last", "weekend", "watched", "rainy", "sunday", "runs", "brother",
            "picked", "our", "evening", "based", "novel", "rented", "reading",
            "got", "online", "streamed"]


def weighted(rng, table):
    words = sorted(table)
    return rng.choices(words, weights=[table[w] for w in words])[0]


def spurious(rng, label):
    # film leans positive, movie leans negative
    p_film = 0.9 if label > 0 else 0.12
    return "film" if rng.random() < p_film else "movie"


def free_suffix(rng, label):
    p = 0.02 if label > 0 else 0.3
    if rng.random() < p:
        return rng.choice([" and i got it for free", " which we streamed for free"])
    return ""


def sentence(rng, label, noise):
    s = spurious(rng, label)
    if rng.random() < 0.3:
        return rng.choice(NEUTRAL).format(s=s) + free_suffix(rng, label), []
    polarity = label if rng.random() >= noise else -label
    table = POSITIVE if polarity > 0 else NEGATIVE
    a, a2 = weighted(rng, table), weighted(rng, table)
    n, n2 = rng.sample(NOUNS, 2)
    text = rng.choice(TEMPLATES).format(a=a, a2=a2, n=n, n2=n2, s=s,
                                        f=rng.choice(FILLERS))
    text = " ".join(text.split()) + free_suffix(rng, label)
    return text, [w for w in text.split() if w in POSITIVE or w in NEGATIVE]


def antonym_map():
    out = {}
    for a, b in ANTONYMS:
        out.setdefault(a, []).append(b)
        out.setdefault(b, []).append(a)
    return {k: sorted(v) for k, v in out.items()}


def flip(rng, doc, ants):
    words = doc["text"].split()
    changed = False
    for i, w in enumerate(words):
        w = w.rstrip(".")
        if w in ants:
            words[i] = words[i].replace(w, rng.choice(ants[w]))
            changed = True
    if not changed:
        return None
    return {"id": doc["id"] + "~h", "text": " ".join(words),
            "label": "neg" if doc["label"] == "pos" else "pos",
            "origin": "human_counterfactual", "source_id": doc["id"]}


def review(rng, label, noise, sentences):
    parts = [sentence(rng, label, noise)[0] for _ in range(rng.randint(*sentences))]
    return ". ".join(parts) + "."


def corpus(rng, prefix, n, noise, sentences=None):
    docs = []
    for i in range(n):
        label = 1 if i % 2 == 0 else -1
        if sentences:
            text = review(rng, label, noise, sentences)
        else:
            text, _ = sentence(rng, label, noise)
        docs.append({"id": "%s%05d" % (prefix, i), "text": text,
                     "label": "pos" if label > 0 else "neg",
                     "origin": "original"})
    return docs


def unit(v):
    norm = math.sqrt(sum(x * x for x in v))
    return [x / norm for x in v]


def word_vectors(rng, dim):
    def gauss():
        return [rng.gauss(0, 1) for _ in range(dim)]

    adjective = gauss()
    pos_c, neg_c, noun_c = gauss(), gauss(), gauss()
    vecs = {}
    for w in FUNCTION + ["honestly", "really", "overall", "frankly", "which",
                         "free", "film", "movie"]:
        vecs[w] = [0.6 * x for x in unit(gauss())]
    # film and movie are near-synonyms
    base = gauss()
    vecs["film"] = [0.6 * x for x in unit([b + 0.2 * g for b, g in zip(base, gauss())])]
    vecs["movie"] = [0.6 * x for x in unit([b + 0.2 * g for b, g in zip(base, gauss())])]
    for w in NOUNS:
        vecs[w] = unit([c + 0.7 * g for c, g in zip(noun_c, gauss())])
    for table, centre in ((POSITIVE, pos_c), (NEGATIVE, neg_c)):
        for w in table:
            vecs[w] = [1.4 * x for x in unit(
                [a + c + 0.6 * g for a, c, g in zip(adjective, centre, gauss())])]
    return vecs


def write_jsonl(path, docs):
    with open(path, "w") as f:
        for d in docs:
            f.write(json.dumps(d, sort_keys=False) + "\n")


def main():
    parser = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    parser.add_argument("out")
    parser.add_argument("--seed", type=int, default=20260101)
    parser.add_argument("--train", type=int, default=1600)
    parser.add_argument("--test", type=int, default=600)
    parser.add_argument("--noise", type=float, default=0.04)
    parser.add_argument("--dim", type=int, default=48)
    parser.add_argument("--long", action="store_true",
                        help="multi-sentence reviews instead of single sentences")
    parser.add_argument("--name", default=None)
    args = parser.parse_args()

    rng = random.Random(args.seed)
    os.makedirs(args.out, exist_ok=True)
    sentences = (3, 7) if args.long else None
    train = corpus(rng, "tr", args.train, args.noise, sentences)
    test = corpus(rng, "te", args.test, args.noise, sentences)
    ants = antonym_map()
    ctf_test = [c for c in (flip(rng, d, ants) for d in test) if c]
    ctf_train = [c for c in (flip(rng, d, ants) for d in train[: args.train // 4]) if c]

    write_jsonl(os.path.join(args.out, "train.jsonl"), train)
    write_jsonl(os.path.join(args.out, "test.jsonl"), test)
    write_jsonl(os.path.join(args.out, "ctf_test.jsonl"), ctf_test)
    write_jsonl(os.path.join(args.out, "ctf_train.jsonl"), ctf_train)
    with open(os.path.join(args.out, "dataset.json"), "w") as f:
        name = args.name or ("synth-l" if args.long else "synth-s")
        json.dump({"name": name, "coef_threshold": 0.4 if args.long else 1.0,
                   "generator_seed": args.seed}, f, indent=2)
        f.write("\n")
    with open(os.path.join(args.out, "annotated_causal.txt"), "w") as f:
        for w in sorted(set(POSITIVE) | set(NEGATIVE)):
            f.write(w + "\n")
    with open(os.path.join(args.out, "lexicon.tsv"), "w") as f:
        f.write("# synthetic fixture lexicon\n")
        for a, b in ANTONYMS:
            f.write("%s\tant\t%s\n" % (a, b))
        for a, b in SYNONYMS:
            f.write("%s\tsyn\t%s\n" % (a, b))
    vecs = word_vectors(rng, args.dim)
    with open(os.path.join(args.out, "word_vectors.txt"), "w") as f:
        f.write("%d %d\n" % (len(vecs), args.dim))
        for w in sorted(vecs):
            f.write(w + " " + " ".join("%.6f" % x for x in vecs[w]) + "\n")


if __name__ == "__main__":
    main()
