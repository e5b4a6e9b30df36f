"""Deterministic surrogate-corpus generator.

Builds running text by sampling real word forms from a weighted lexicon
(TSV: ``word<TAB>weight``). The output is a stand-in for large public
domain texts in environments where those cannot be shipped; letter and
word statistics follow the lexicon, punctuation density follows the
generator knobs, and identical seeds give identical output.
"""

from __future__ import annotations

import random

from .errors import FormatError


def load_lexicon(text: str) -> list[tuple[str, float]]:
    entries: list[tuple[str, float]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 2:
            raise FormatError("lexicon line must be '<word>\\t<weight>'", lineno)
        try:
            weight = float(fields[1])
        except ValueError:
            raise FormatError(f"bad weight {fields[1]!r}", lineno) from None
        if weight > 0:
            entries.append((fields[0], weight))
    if not entries:
        raise FormatError("empty lexicon")
    return entries


def generate(lexicon: list[tuple[str, float]], n_chars: int, seed: int,
             comma_every: float = 11.0, sentence_words: tuple[int, int] = (6, 16),
             line_width: int = 72) -> str:
    """About ``n_chars`` characters of sentence-shaped text."""
    rng = random.Random(seed)
    words = [w for w, _ in lexicon]
    weights = [wt for _, wt in lexicon]
    out: list[str] = []
    line_len = 0
    total = 0
    while total < n_chars:
        length = rng.randint(*sentence_words)
        sentence = rng.choices(words, weights, k=length)
        pieces = []
        for i, word in enumerate(sentence):
            if i == 0:
                word = word[0].upper() + word[1:]
            if i < length - 1 and rng.random() < 1.0 / comma_every:
                word += ","
            pieces.append(word)
        text = " ".join(pieces) + "."
        total += len(text) + 1
        for word in text.split(" "):
            if line_len and line_len + 1 + len(word) > line_width:
                out.append("\n")
                line_len = 0
            elif line_len:
                out.append(" ")
                line_len += 1
            out.append(word)
            line_len += len(word)
    out.append("\n")
    return "".join(out)
