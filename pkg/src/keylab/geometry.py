"""Physical keyboard model: keys, rows, fingers, and the geometry file format.

A geometry is a set of keys with positions in key-width units. Each key is
assigned to one hand and one finger; every finger has exactly one home key.
An optional space-bar record gives dead-key escape sequences a landing key
(pressed by a thumb, zero travel) without entering the 47-key symbol grid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import FormatError, ValidationError

ROWS = ("number", "top", "home", "bottom")
ROW_INDEX = {"number": 0, "top": 1, "home": 2, "bottom": 3}
HANDS = ("L", "R")
FINGERS = ("little", "ring", "middle", "index")
THUMB = "thumb"


@dataclass(frozen=True)
class Key:
    id: str
    row: str
    x: float
    y: float
    hand: str
    finger: str
    home: bool = False


@dataclass(frozen=True)
class Geometry:
    id: str
    keys: tuple[Key, ...]
    space: Key | None = None
    unit: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "_by_id", {k.id: k for k in self.keys})
        homes = {}
        for k in self.keys:
            if k.home:
                homes[(k.hand, k.finger)] = k
        if self.space is not None:
            homes[(self.space.hand, THUMB)] = self.space
        object.__setattr__(self, "_homes", homes)

    def key(self, key_id: str) -> Key:
        try:
            return self._by_id[key_id]
        except KeyError:
            raise ValidationError(f"unknown key id {key_id!r} in geometry '{self.id}'") from None

    def __contains__(self, key_id: str) -> bool:
        return key_id in self._by_id or (self.space is not None and self.space.id == key_id)

    def key_or_space(self, key_id: str) -> Key:
        if self.space is not None and key_id == self.space.id:
            return self.space
        return self.key(key_id)

    def home_key(self, hand: str, finger: str) -> Key:
        return self._homes[(hand, finger)]

    def home_keys(self) -> tuple[Key, ...]:
        return tuple(k for k in self.keys if k.home)

    def key_ids(self) -> tuple[str, ...]:
        return tuple(k.id for k in self.keys)


def key_distance(a: Key, b: Key) -> float:
    return math.hypot(a.x - b.x, a.y - b.y)


def _validate(geom: Geometry) -> None:
    if not geom.keys:
        raise ValidationError("no keys")
    seen = set()
    for k in geom.keys:
        if k.id in seen:
            raise ValidationError(f"duplicate key id {k.id!r}")
        seen.add(k.id)
        if k.row not in ROWS:
            raise ValidationError(f"unknown row name {k.row!r} for key {k.id!r}")
        if k.hand not in HANDS:
            raise ValidationError(f"unknown hand {k.hand!r} for key {k.id!r}")
        if k.finger not in FINGERS:
            raise ValidationError(f"unknown finger {k.finger!r} for key {k.id!r}")
        if not (math.isfinite(k.x) and math.isfinite(k.y)):
            raise ValidationError(f"non-finite coordinates for key {k.id!r}")
        if k.home and k.row != "home":
            raise ValidationError(f"home key {k.id!r} must sit in the home row")
    homes: dict[tuple[str, str], str] = {}
    for k in geom.keys:
        if k.home:
            slot = (k.hand, k.finger)
            if slot in homes:
                raise ValidationError(
                    f"duplicate home for {k.hand}-{k.finger}: {homes[slot]!r} and {k.id!r}"
                )
            homes[slot] = k.id
    for hand in HANDS:
        for finger in FINGERS:
            if (hand, finger) not in homes:
                raise ValidationError(f"finger without home key: {hand}-{finger}")


def parse_geometry(document: str) -> Geometry:
    """Parse the line-oriented geometry format.

    Records: ``geometry <id>``, ``key <id> row=<name> x=<f> y=<f>
    hand=<L|R> finger=<name> [home]``, and at most one
    ``space <id> x=<f> y=<f>``. ``#`` starts a comment.
    """
    geom_id = ""
    keys: list[Key] = []
    space: Key | None = None
    seen_ids: set[str] = set()
    for lineno, raw in enumerate(document.splitlines(), start=1):
        line = raw.strip()
        if line.startswith("#"):
            continue
        if not line:
            continue
        fields = line.split()
        kind = fields[0]
        if kind == "geometry":
            if len(fields) != 2:
                raise FormatError("geometry record needs exactly one id", lineno)
            geom_id = fields[1]
        elif kind == "key":
            if len(fields) < 6:
                raise FormatError("key record too short", lineno)
            key_id = fields[1]
            if key_id in seen_ids:
                raise FormatError(f"duplicate key id {key_id!r}", lineno)
            attrs = {}
            home = False
            for field in fields[2:]:
                if field == "home":
                    home = True
                    continue
                if "=" not in field:
                    raise FormatError(f"malformed attribute {field!r}", lineno)
                name, value = field.split("=", 1)
                attrs[name] = value
            for required in ("row", "x", "y", "hand", "finger"):
                if required not in attrs:
                    raise FormatError(f"key {key_id!r} missing attribute {required!r}", lineno)
            if attrs["row"] not in ROWS:
                raise FormatError(f"unknown row name {attrs['row']!r}", lineno)
            if attrs["hand"] not in HANDS:
                raise FormatError(f"unknown hand {attrs['hand']!r}", lineno)
            if attrs["finger"] not in FINGERS:
                raise FormatError(f"unknown finger {attrs['finger']!r}", lineno)
            try:
                x, y = float(attrs["x"]), float(attrs["y"])
            except ValueError:
                raise FormatError("coordinates must be numbers", lineno) from None
            key = Key(key_id, attrs["row"], x, y, attrs["hand"], attrs["finger"], home)
            if home and any(k.home and k.hand == key.hand and k.finger == key.finger for k in keys):
                raise FormatError(f"duplicate home for {key.hand}-{key.finger}", lineno)
            seen_ids.add(key_id)
            keys.append(key)
        elif kind == "space":
            if space is not None:
                raise FormatError("more than one space record", lineno)
            if len(fields) != 4:
                raise FormatError("space record needs id, x=, y=", lineno)
            attrs = dict(f.split("=", 1) for f in fields[2:] if "=" in f)
            try:
                x, y = float(attrs["x"]), float(attrs["y"])
            except (KeyError, ValueError):
                raise FormatError("space record needs x=<f> y=<f>", lineno) from None
            if fields[1] in seen_ids:
                raise FormatError(f"duplicate key id {fields[1]!r}", lineno)
            seen_ids.add(fields[1])
            # Thumbs rest on the space bar: home row semantics, zero travel.
            space = Key(fields[1], "home", x, y, "R", THUMB, False)
        else:
            raise FormatError(f"unknown record type {kind!r}", lineno)
    if not keys:
        raise FormatError("no keys")
    geom = Geometry(geom_id or "unnamed", tuple(keys), space)
    _validate(geom)
    return geom


def serialize_geometry(geom: Geometry) -> str:
    lines = [f"geometry {geom.id}"]
    for k in geom.keys:
        home = " home" if k.home else ""
        lines.append(
            f"key {k.id} row={k.row} x={k.x:g} y={k.y:g} hand={k.hand} finger={k.finger}{home}"
        )
    if geom.space is not None:
        lines.append(f"space {geom.space.id} x={geom.space.x:g} y={geom.space.y:g}")
    return "\n".join(lines) + "\n"
