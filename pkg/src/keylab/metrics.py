"""Ergonomic side metrics: travel, load shares, alternation, press economy,
home-position words, and the four-level qualitative layout audit."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .corpus import BREAK, CorpusStats, TriadTable, keystroke_stream
from .effort import key_base_effort
from .errors import KeylabError
from .geometry import Geometry, Key
from .layout import Layout, expand_symbol


@dataclass(frozen=True)
class MetricReport:
    travel_per_char: float
    row_share: dict[str, float]
    hand_share: dict[str, float]
    finger_share: dict[tuple[str, str], float]
    alternation_rate: float
    same_finger_rate: float
    presses_per_char: float
    single_press_fraction: float
    home_words: int


def _keys_of(geometry: Geometry) -> dict[str, Key]:
    keys = {k.id: k for k in geometry.keys}
    if geometry.space is not None:
        keys[geometry.space.id] = geometry.space
    return keys


def finger_travel(triads: TriadTable, geometry: Geometry) -> float:
    """Key units of finger travel per character.

    Each stroke costs the distance from its finger's home key: fingers
    rehome between strokes, so travel is a per-key property summed over
    the keystroke counts.
    """
    if triads.total_keystrokes == 0:
        raise KeylabError("empty triad table")
    keys = _keys_of(geometry)
    total = sum(count * key_base_effort(keys[key_id], geometry)
                for key_id, count in sorted(triads.keystroke_counts.items()))
    chars = triads.total_chars or triads.total_keystrokes
    return total / chars


def load_distribution(triads: TriadTable, geometry: Geometry):
    """Keystroke-count shares by hand, finger and row."""
    if triads.total_keystrokes == 0:
        raise KeylabError("empty triad table")
    keys = _keys_of(geometry)
    hand: dict[str, float] = {}
    finger: dict[tuple[str, str], float] = {}
    row: dict[str, float] = {}
    n = triads.total_keystrokes
    for key_id, count in triads.keystroke_counts.items():
        k = keys[key_id]
        hand[k.hand] = hand.get(k.hand, 0.0) + count / n
        finger[(k.hand, k.finger)] = finger.get((k.hand, k.finger), 0.0) + count / n
        row[k.row] = row.get(k.row, 0.0) + count / n
    return hand, finger, row


def alternation_and_repeats(triads: TriadTable, geometry: Geometry) -> tuple[float, float]:
    """Hand-alternation and same-finger rates over consecutive stroke pairs.

    Pairs are read from the triad table, which double-weights interior
    pairs of a run; ``pair_rates_exact`` recomputes from a raw stream.
    """
    if not triads.triad_counts:
        raise KeylabError("empty triad table")
    keys = _keys_of(geometry)
    pairs = 0
    alternating = 0
    same_finger = 0
    for (a, b, c), count in triads.triad_counts.items():
        for first, second in ((a, b), (b, c)):
            k1, k2 = keys[first], keys[second]
            pairs += count
            if k1.hand != k2.hand:
                alternating += count
            elif k1.finger == k2.finger:
                same_finger += count
    return alternating / pairs, same_finger / pairs


def pair_rates_exact(stream: Iterable[str], layout: Layout,
                     geometry: Geometry) -> tuple[float, float]:
    """Exact-pair mode: rates over adjacent strokes of the raw keystream."""
    keys = _keys_of(geometry)
    prev: Key | None = None
    pairs = alternating = same_finger = 0
    for key_id in keystroke_stream(stream, layout):
        if key_id == BREAK:
            prev = None
            continue
        k = keys[key_id]
        if prev is not None:
            pairs += 1
            if prev.hand != k.hand:
                alternating += 1
            elif prev.finger == k.finger:
                same_finger += 1
        prev = k
    if pairs == 0:
        raise KeylabError("stream has no keystroke pairs")
    return alternating / pairs, same_finger / pairs


def press_economy(stats: CorpusStats, layout: Layout) -> tuple[float, float]:
    """(presses per character, single-press fraction of letters)."""
    if stats.total_chars == 0:
        raise KeylabError("empty corpus stats")
    presses = 0
    letters = 0
    single_letters = 0
    for sym, count in stats.char_counts.items():
        seq = expand_symbol(layout, sym)
        presses += count * seq.press_count
        if sym.isalpha():
            letters += count
            if seq.press_count == 1:
                single_letters += count
    per_char = presses / stats.total_chars
    single = single_letters / letters if letters else 1.0
    return per_char, single


def home_words(lexicon: Iterable[str], layout: Layout, geometry: Geometry) -> int:
    """Lexicon words typed entirely on home-position keys, one press each."""
    home_ids = {k.id for k in geometry.home_keys()}
    cache: dict[str, bool] = {}
    def on_home(sym: str) -> bool:
        hit = cache.get(sym)
        if hit is None:
            try:
                seq = expand_symbol(layout, sym)
            except KeylabError:
                hit = False
            else:
                hit = seq.press_count == 1 and seq.strokes[0].key_id in home_ids
            cache[sym] = hit
        return hit
    return sum(1 for word in lexicon if word and all(on_home(s) for s in word))


def audit_layout(layout: Layout, stats: CorpusStats, geometry: Geometry) -> int:
    """Qualitative ergonomy level 1-4 from letter frequencies.

    1: the two most frequent letters are off the home-position keys.
    2: they are on home keys, but at least one under an index finger
       (or otherwise not both under middle fingers).
    3: both sit under the middle fingers.
    4: additionally the eight most frequent letters occupy exactly the
       eight home keys.
    """
    if stats.total_chars == 0:
        raise KeylabError("empty corpus stats")
    letters = [sym for sym, _ in stats.top(letters_only=True)]
    if len(letters) < 2:
        raise KeylabError("need at least two letters in the stats")
    home = {k.id: k for k in geometry.home_keys()}
    base_inverse = {sym: key for key, sym in layout.base().items()}

    def home_key_of(sym: str) -> Key | None:
        key_id = base_inverse.get(sym)
        return home.get(key_id) if key_id is not None else None

    top2 = [home_key_of(s) for s in letters[:2]]
    if any(k is None for k in top2):
        return 1
    if not all(k.finger == "middle" for k in top2):
        return 2
    top8 = set(letters[:8])
    home_symbols = {layout.base().get(key_id) for key_id in home}
    if top8 == home_symbols:
        return 4
    return 3


def metric_report(layout: Layout, geometry: Geometry, stats: CorpusStats,
                  triads: TriadTable, lexicon: Iterable[str] = ()) -> MetricReport:
    hand, finger, row = load_distribution(triads, geometry)
    alternation, same_finger = alternation_and_repeats(triads, geometry)
    per_char, single = press_economy(stats, layout)
    return MetricReport(
        travel_per_char=finger_travel(triads, geometry),
        row_share=row,
        hand_share=hand,
        finger_share=finger,
        alternation_rate=alternation,
        same_finger_rate=same_finger,
        presses_per_char=per_char,
        single_press_fraction=single,
        home_words=home_words(lexicon, layout, geometry),
    )
