#!/usr/bin/env python3
"""Regenerate the bundled surrogate corpora from the lexicons.

Run from the repository root after ``tools/make_lexicons.py``:
    python tools/build_corpora.py
"""

import os
import sys

HERE = os.path.dirname(os.path.abspath(__file__))
sys.path.insert(0, os.path.join(HERE, "..", "src"))

from keylab.synth import generate, load_lexicon  # noqa: E402

DATA = os.path.join(HERE, "..", "src", "keylab", "data")

RECIPES = [
    # (lexicon, corpus, total chars, seed, comma_every, sentence_words)
    ("latvian.tsv", "latvian.txt", 1_600_000, 19093, 15.0, (6, 16)),
    ("english.tsv", "english.txt", 420_000, 1876, 11.0, (7, 18)),
]


def main() -> None:
    for lex_name, out_name, n_chars, seed, comma_every, span in RECIPES:
        with open(os.path.join(DATA, "lexicons", lex_name), encoding="utf-8") as fh:
            lexicon = load_lexicon(fh.read())
        text = generate(lexicon, n_chars, seed, comma_every=comma_every,
                        sentence_words=span)
        path = os.path.join(DATA, "corpora", out_name)
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"wrote {path} ({len(text)} chars)")


if __name__ == "__main__":
    main()
