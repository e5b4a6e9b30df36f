"""Triad typing-effort model.

Effort of a three-keystroke triad combines three weighted components:

* base — finger travel, the Euclidean distance of each key from its
  finger's home key, aggregated over the triad with a nested product;
* penalty — additive per-key costs for weak fingers, off-home rows and
  hand bias, aggregated with the same nesting;
* stroke — the shape of the triad path: hand alternation pattern,
  same-finger and same-key repeats, and row jumps.

``nested(c1, c2, c3) = nest1*c1*(1 + nest2*c2*(1 + nest3*c3))``
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

from .errors import FormatError, KeylabError, ValidationError
from .geometry import Geometry, Key, ROW_INDEX, key_distance
from .layout import Layout

ALTERNATING = "alternating"
PARTIAL = "partial"
SAME_HAND = "same_hand"


@dataclass(frozen=True)
class StrokeCosts:
    alternating: float = 0.0
    partial: float = 0.5
    same_hand: float = 1.0
    same_key_repeat: float = 1.0
    same_finger_diff_key: float = 2.5
    row_jump_per_row: float = 0.5

    def hand_pattern(self, pattern: str) -> float:
        return {ALTERNATING: self.alternating, PARTIAL: self.partial,
                SAME_HAND: self.same_hand}[pattern]


@dataclass(frozen=True)
class EffortParams:
    k_base: float = 0.355
    k_penalty: float = 0.642
    k_stroke: float = 0.427
    nest1: float = 1.0
    nest2: float = 0.367
    nest3: float = 0.235
    row_weight: dict[str, float] = field(
        default_factory=lambda: {"home": 0.0, "top": 0.5, "bottom": 0.7, "number": 1.2})
    finger_weight: dict[str, float] = field(
        default_factory=lambda: {"index": 0.0, "middle": 0.2, "ring": 0.5,
                                 "little": 1.0, "thumb": 0.0})
    hand_weight: dict[str, float] = field(default_factory=lambda: {"L": 0.0, "R": 0.0})
    stroke_table: StrokeCosts = field(default_factory=StrokeCosts)

    def validate(self) -> None:
        fw = self.finger_weight
        if not (fw["little"] > fw["ring"] > fw["middle"] > fw["index"]):
            raise ValidationError("finger weights must order little > ring > middle > index")
        if self.row_weight["home"] != 0.0:
            raise ValidationError("row weight for home must be 0 (the minimum)")
        for table in (self.row_weight, self.finger_weight, self.hand_weight):
            for name, w in table.items():
                if not math.isfinite(w) or w < 0:
                    raise ValidationError(f"weight {name!r} must be finite and >= 0")
        st = self.stroke_table
        if not (st.alternating == 0.0 <= st.partial <= st.same_hand):
            raise ValidationError("stroke costs must order alternating = 0 <= partial <= same_hand")
        if not (st.same_finger_diff_key > st.same_key_repeat > 0):
            raise ValidationError("stroke costs must order same_finger_diff_key > same_key_repeat > 0")


@dataclass(frozen=True)
class EffortBreakdown:
    base: float
    penalty: float
    stroke: float
    total: float
    triad_count: int


@dataclass(frozen=True)
class PairClass:
    same_hand: bool
    same_finger: bool
    same_key: bool
    row_jump: int


@dataclass(frozen=True)
class StrokeClass:
    hand_pattern: str
    pairs: tuple[PairClass, PairClass]


def key_base_effort(key: Key, geometry: Geometry) -> float:
    """Distance in key units from a key to its finger's home key."""
    home = geometry.home_key(key.hand, key.finger)
    return key_distance(key, home)


def key_penalty(key: Key, params: EffortParams) -> float:
    return (params.hand_weight[key.hand]
            + params.row_weight.get(key.row, 0.0)
            + params.finger_weight[key.finger])


def _pair(a: Key, b: Key) -> PairClass:
    same_hand = a.hand == b.hand
    return PairClass(
        same_hand=same_hand,
        same_finger=same_hand and a.finger == b.finger,
        same_key=a.id == b.id,
        row_jump=abs(ROW_INDEX[a.row] - ROW_INDEX[b.row]) if same_hand else 0,
    )


def classify_stroke(k1: Key, k2: Key, k3: Key) -> StrokeClass:
    if k1.hand == k2.hand == k3.hand:
        pattern = SAME_HAND
    elif k1.hand != k2.hand and k2.hand != k3.hand:
        pattern = ALTERNATING
    else:
        pattern = PARTIAL
    return StrokeClass(pattern, (_pair(k1, k2), _pair(k2, k3)))


def nested(c1: float, c2: float, c3: float, params: EffortParams) -> float:
    return params.nest1 * c1 * (1.0 + params.nest2 * c2 * (1.0 + params.nest3 * c3))


def triad_effort(k1: Key, k2: Key, k3: Key, geometry: Geometry,
                 params: EffortParams) -> EffortBreakdown:
    base = nested(key_base_effort(k1, geometry), key_base_effort(k2, geometry),
                  key_base_effort(k3, geometry), params)
    penalty = nested(key_penalty(k1, params), key_penalty(k2, params),
                     key_penalty(k3, params), params)
    cls = classify_stroke(k1, k2, k3)
    st = params.stroke_table
    stroke = st.hand_pattern(cls.hand_pattern)
    for pair in cls.pairs:
        if pair.same_hand:
            if pair.same_key:
                stroke += st.same_key_repeat
            elif pair.same_finger:
                stroke += st.same_finger_diff_key
            stroke += st.row_jump_per_row * pair.row_jump
    total = params.k_base * base + params.k_penalty * penalty + params.k_stroke * stroke
    return EffortBreakdown(base, penalty, stroke, total, 1)


def total_effort(triads, layout: Layout, geometry: Geometry,
                 params: EffortParams) -> EffortBreakdown:
    """Count-weighted mean triad effort over a triad table."""
    if triads.layout_name and layout is not None and triads.layout_name != layout.name:
        raise ValidationError(
            f"triad table was built for layout {triads.layout_name!r}, not {layout.name!r}")
    if not triads.triad_counts:
        raise KeylabError("no triads")
    keys = {k.id: k for k in geometry.keys}
    if geometry.space is not None:
        keys[geometry.space.id] = geometry.space
    sum_base = sum_pen = sum_stroke = sum_total = 0.0
    n = 0
    # Fixed summation order keeps the reduction reproducible.
    for triple in sorted(triads.triad_counts):
        count = triads.triad_counts[triple]
        e = triad_effort(keys[triple[0]], keys[triple[1]], keys[triple[2]], geometry, params)
        sum_base += count * e.base
        sum_pen += count * e.penalty
        sum_stroke += count * e.stroke
        sum_total += count * e.total
        n += count
    return EffortBreakdown(sum_base / n, sum_pen / n, sum_stroke / n, sum_total / n, n)


_PARAM_SCALARS = ("k_base", "k_penalty", "k_stroke", "nest1", "nest2", "nest3")
_PARAM_TABLES = {
    "row": ("row_weight", ("home", "top", "bottom", "number")),
    "finger": ("finger_weight", ("index", "middle", "ring", "little", "thumb")),
    "hand": ("hand_weight", ("L", "R")),
    "stroke": ("stroke_table", ("alternating", "partial", "same_hand",
                                "same_key_repeat", "same_finger_diff_key",
                                "row_jump_per_row")),
}


def parse_params(document: str) -> EffortParams:
    """Parse ``param <name> <value>`` lines; unknown names are rejected."""
    params = EffortParams()
    row = dict(params.row_weight)
    finger = dict(params.finger_weight)
    hand = dict(params.hand_weight)
    stroke = {f: getattr(params.stroke_table, f) for f in StrokeCosts.__dataclass_fields__}
    scalars: dict[str, float] = {}
    for lineno, raw in enumerate(document.splitlines(), start=1):
        line = raw.strip()
        if line.startswith("#"):
            continue
        if not line:
            continue
        fields = line.split()
        if fields[0] != "param" or len(fields) != 3:
            raise FormatError("expected 'param <name> <value>'", lineno)
        name = fields[1]
        try:
            value = float(fields[2])
        except ValueError:
            raise FormatError(f"value for {name!r} must be a number", lineno) from None
        if name in _PARAM_SCALARS:
            scalars[name] = value
            continue
        prefix, _, rest = name.partition("_")
        if prefix == "row" and rest in _PARAM_TABLES["row"][1]:
            row[rest] = value
        elif prefix == "finger" and rest in _PARAM_TABLES["finger"][1]:
            finger[rest] = value
        elif prefix == "hand" and rest in _PARAM_TABLES["hand"][1]:
            hand[rest] = value
        elif prefix == "stroke" and rest in _PARAM_TABLES["stroke"][1]:
            stroke[rest] = value
        else:
            raise FormatError(f"unknown parameter name {name!r}", lineno)
    params = replace(EffortParams(**scalars), row_weight=row, finger_weight=finger,
                     hand_weight=hand, stroke_table=StrokeCosts(**stroke))
    params.validate()
    return params


def serialize_params(params: EffortParams) -> str:
    lines = [f"param {name} {getattr(params, name):g}" for name in _PARAM_SCALARS]
    for prefix, (attr, names) in _PARAM_TABLES.items():
        table = getattr(params, attr)
        for name in names:
            value = table[name] if isinstance(table, dict) else getattr(table, name)
            lines.append(f"param {prefix}_{name} {value:g}")
    return "\n".join(lines) + "\n"
