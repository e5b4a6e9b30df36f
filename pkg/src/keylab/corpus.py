"""Text ingestion: normalization, character counts, keystroke triads.

Text is case-folded and reduced to a stream of alphabet symbols; anything
outside the alphabet becomes a break marker (runs collapse to one). Break
markers separate words/sentences and reset the triad window, so typing
statistics never straddle them.
"""

from __future__ import annotations

import hashlib
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .errors import FormatError, KeylabError
from .layout import Layout, expand_symbol

BREAK = "\x00"

ALPHABETS: dict[str, frozenset[str]] = {
    "en": frozenset("abcdefghijklmnopqrstuvwxyz.,'"),
    "lv": frozenset("abcdefghijklmnoprstuvz" "āčēģīķļņšūž" ".,"),
}


@dataclass(frozen=True)
class CorpusStats:
    alphabet: frozenset[str]
    char_counts: dict[str, int]
    total_chars: int
    source_ids: tuple[str, ...] = ()

    def frequency(self, symbol: str) -> float:
        return self.char_counts.get(symbol, 0) / self.total_chars if self.total_chars else 0.0

    def top(self, n: int | None = None, letters_only: bool = False) -> list[tuple[str, int]]:
        items = [(s, c) for s, c in self.char_counts.items()
                 if not letters_only or s.isalpha()]
        items.sort(key=lambda it: (-it[1], it[0]))
        return items if n is None else items[:n]


@dataclass(frozen=True)
class TriadTable:
    layout_name: str
    triad_counts: dict[tuple[str, str, str], int]
    keystroke_counts: dict[str, int]
    total_keystrokes: int
    total_chars: int = 0

    def total_triads(self) -> int:
        return sum(self.triad_counts.values())


def normalize(text: Iterable[str], alphabet: frozenset[str] | set[str]) -> Iterator[str]:
    """Case-folded symbol stream; out-of-alphabet runs collapse to one BREAK."""
    pending_break = False
    for chunk in text:
        for ch in chunk.casefold():
            if ch in alphabet:
                if pending_break:
                    yield BREAK
                    pending_break = False
                yield ch
            else:
                pending_break = True
    if pending_break:
        yield BREAK


def decode_stream(data: bytes) -> str:
    """Decode UTF-8 with a positioned error on malformed input."""
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise KeylabError(
            f"malformed UTF-8 at byte {exc.start}: {exc.reason}") from exc


def count_chars(stream: Iterable[str], alphabet: frozenset[str] | set[str] | None = None,
                source_ids: Iterable[str] = ()) -> CorpusStats:
    counts: Counter[str] = Counter()
    for sym in stream:
        if sym != BREAK:
            counts[sym] += 1
    alpha = frozenset(alphabet) if alphabet is not None else frozenset(counts)
    return CorpusStats(alpha, dict(counts), sum(counts.values()), tuple(source_ids))


def merge_stats(a: CorpusStats, b: CorpusStats) -> CorpusStats:
    counts = Counter(a.char_counts)
    counts.update(b.char_counts)
    return CorpusStats(a.alphabet | b.alphabet, dict(counts),
                       a.total_chars + b.total_chars, a.source_ids + b.source_ids)


def keystroke_stream(stream: Iterable[str], layout: Layout) -> Iterator[str]:
    """Expand symbols to key ids; BREAK passes through and resets the reader."""
    cache: dict[str, tuple[str, ...]] = {}
    for sym in stream:
        if sym == BREAK:
            yield BREAK
            continue
        ids = cache.get(sym)
        if ids is None:
            ids = expand_symbol(layout, sym).key_ids()
            cache[sym] = ids
        yield from ids


def build_triads(stream: Iterable[str], layout: Layout) -> TriadTable:
    """Keystroke triads over a symbol stream.

    Every symbol is expanded to its physical strokes (dead-key presses
    included); a sliding window of three runs over the stroke stream and
    resets at break markers.
    """
    triads: Counter[tuple[str, str, str]] = Counter()
    strokes: Counter[str] = Counter()
    expand_cache: dict[str, tuple[str, ...]] = {}
    window: list[str] = []
    total_strokes = 0
    total_chars = 0
    for sym in stream:
        if sym == BREAK:
            window.clear()
            continue
        ids = expand_cache.get(sym)
        if ids is None:
            ids = expand_symbol(layout, sym).key_ids()
            expand_cache[sym] = ids
        total_chars += 1
        for key_id in ids:
            strokes[key_id] += 1
            total_strokes += 1
            window.append(key_id)
            if len(window) > 3:
                window.pop(0)
            if len(window) == 3:
                triads[(window[0], window[1], window[2])] += 1
    return TriadTable(layout.name, dict(triads), dict(strokes), total_strokes, total_chars)


def extract_lexicon(stream: Iterable[str], min_len: int = 2, min_freq: int = 5) -> list[str]:
    """Words (maximal runs of letter symbols between breaks) above thresholds."""
    words: Counter[str] = Counter()
    current: list[str] = []
    def flush():
        if len(current) >= min_len:
            words["".join(current)] += 1
        current.clear()
    for sym in stream:
        if sym != BREAK and sym.isalpha():
            current.append(sym)
        else:
            flush()
    flush()
    return sorted(w for w, c in words.items() if c >= min_freq)


_STATS_VERSION = "keylab-stats v1"


def _checksum(lines: list[str]) -> str:
    digest = hashlib.sha256("\n".join(lines).encode("utf-8")).hexdigest()
    return digest[:16]


def save_stats(stats: CorpusStats) -> str:
    lines = [_STATS_VERSION, "kind chars",
             "alphabet " + "".join(sorted(stats.alphabet)),
             f"total {stats.total_chars}"]
    for source in stats.source_ids:
        lines.append(f"source {source}")
    for sym in sorted(stats.char_counts):
        lines.append(f"char {sym} {stats.char_counts[sym]}")
    lines.append("checksum " + _checksum(lines))
    return "\n".join(lines) + "\n"


def save_triads(table: TriadTable) -> str:
    lines = [_STATS_VERSION, "kind triads",
             f"layout {table.layout_name}",
             f"total {table.total_keystrokes}",
             f"chars {table.total_chars}"]
    for key_id in sorted(table.keystroke_counts):
        lines.append(f"key {key_id} {table.keystroke_counts[key_id]}")
    for triple in sorted(table.triad_counts):
        lines.append(f"triad {triple[0]} {triple[1]} {triple[2]} {table.triad_counts[triple]}")
    lines.append("checksum " + _checksum(lines))
    return "\n".join(lines) + "\n"


def _verify_envelope(document: str, kind: str) -> list[list[str]]:
    lines = document.splitlines()
    if not lines or lines[0] != _STATS_VERSION:
        raise FormatError(f"version mismatch: expected {_STATS_VERSION!r}", 1)
    if not lines[-1].startswith("checksum "):
        raise FormatError("missing checksum line (file truncated?)", len(lines))
    expected = lines[-1].split()[1]
    if _checksum(lines[:-1]) != expected:
        raise FormatError("checksum failure", len(lines))
    if lines[1] != f"kind {kind}":
        raise FormatError(f"expected a '{kind}' cache", 2)
    return [line.split() for line in lines[2:-1]]


def load_stats(document: str) -> CorpusStats:
    counts: dict[str, int] = {}
    alphabet: frozenset[str] = frozenset()
    total = 0
    sources: list[str] = []
    for fields in _verify_envelope(document, "chars"):
        if fields[0] == "alphabet":
            alphabet = frozenset(fields[1])
        elif fields[0] == "total":
            total = int(fields[1])
        elif fields[0] == "source":
            sources.append(fields[1])
        elif fields[0] == "char":
            counts[fields[1]] = int(fields[2])
        else:
            raise FormatError(f"unknown record {fields[0]!r} in stats cache")
    stats = CorpusStats(alphabet, counts, total, tuple(sources))
    if sum(counts.values()) != total:
        raise FormatError("total does not match char counts")
    return stats


def load_triads(document: str, expect_layout: str | None = None) -> TriadTable:
    triads: dict[tuple[str, str, str], int] = {}
    strokes: dict[str, int] = {}
    layout_name = ""
    total = chars = 0
    for fields in _verify_envelope(document, "triads"):
        if fields[0] == "layout":
            layout_name = fields[1]
        elif fields[0] == "total":
            total = int(fields[1])
        elif fields[0] == "chars":
            chars = int(fields[1])
        elif fields[0] == "key":
            strokes[fields[1]] = int(fields[2])
        elif fields[0] == "triad":
            triads[(fields[1], fields[2], fields[3])] = int(fields[4])
        else:
            raise FormatError(f"unknown record {fields[0]!r} in triad cache")
    if expect_layout is not None and layout_name != expect_layout:
        raise KeylabError(
            f"layout name mismatch: cache is for {layout_name!r}, expected {expect_layout!r}")
    if sum(strokes.values()) != total:
        raise FormatError("total does not match keystroke counts")
    return TriadTable(layout_name, triads, strokes, total, chars)
