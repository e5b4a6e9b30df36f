"""Logical layouts: layered symbol assignments, dead keys, and expansion.

A layout assigns one symbol per key per layer (base, optionally shift and
alt). Dead keys are base-layer trigger symbols with a composition table
mapping a following plain symbol to the composed character; the escape
entry for the space bar is written ``␣`` in layout files. Expansion turns
a character into the physical keystroke sequence that produces it.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import FormatError, UnreachableSymbolError, ValidationError
from .geometry import Geometry

# Placeholder for the space bar inside dead-key composition tables.
SPACE_GLYPH = "␣"

LAYER_ORDER = ("base", "shift", "alt")

PLAIN = "plain"
ALT = "alt"


@dataclass(frozen=True)
class Stroke:
    key_id: str
    chord: str = PLAIN  # "plain" or "alt"


@dataclass(frozen=True)
class KeystrokeSeq:
    strokes: tuple[Stroke, ...]
    press_count: int

    def key_ids(self) -> tuple[str, ...]:
        return tuple(s.key_id for s in self.strokes)


@dataclass(frozen=True)
class Finding:
    severity: str  # "error" or "note"
    symbol: str
    message: str


@dataclass(frozen=True)
class Layout:
    name: str
    geometry_id: str
    layers: dict[str, dict[str, str]]  # layer name -> key id -> symbol
    deadkeys: dict[str, dict[str, str]] = field(default_factory=dict)

    def base(self) -> dict[str, str]:
        return self.layers["base"]

    def symbol_at(self, layer: str, key_id: str) -> str | None:
        return self.layers.get(layer, {}).get(key_id)

    def key_of(self, layer: str, symbol: str) -> str | None:
        for key_id, sym in self.layers.get(layer, {}).items():
            if sym == symbol:
                return key_id
        return None


def _check_layers(layout: Layout, geometry: Geometry) -> None:
    if "base" not in layout.layers:
        raise ValidationError(f"layout '{layout.name}' has no base layer")
    for layer, mapping in layout.layers.items():
        seen: dict[str, str] = {}
        for key_id, symbol in mapping.items():
            if key_id not in geometry:
                raise ValidationError(
                    f"layout '{layout.name}' layer '{layer}': symbol {symbol!r} "
                    f"on unknown key {key_id!r}"
                )
            if symbol in seen:
                raise ValidationError(
                    f"layout '{layout.name}' layer '{layer}': duplicate symbol {symbol!r} "
                    f"on keys {seen[symbol]!r} and {key_id!r}"
                )
            seen[symbol] = key_id
    base_symbols = set(layout.base().values())
    for trigger in layout.deadkeys:
        if trigger not in base_symbols:
            raise ValidationError(
                f"layout '{layout.name}': dead-key trigger {trigger!r} absent from base layer"
            )


def parse_layout(document: str, geometry: Geometry) -> Layout:
    """Parse the layout file format and validate it against a geometry."""
    name = ""
    geometry_id = ""
    layers: dict[str, dict[str, str]] = {}
    deadkeys: dict[str, dict[str, str]] = {}
    section: tuple[str, str] | None = None  # ("layer", name) or ("deadkey", trigger)
    for lineno, raw in enumerate(document.splitlines(), start=1):
        line = raw.strip()
        if line.startswith("#"):
            continue
        if not line:
            continue
        fields = line.split()
        if fields[0] == "layout":
            if len(fields) != 4 or fields[2] != "geometry":
                raise FormatError("header must be 'layout <name> geometry <id>'", lineno)
            name, geometry_id = fields[1], fields[3]
            if geometry_id != geometry.id:
                raise FormatError(
                    f"layout targets geometry {geometry_id!r}, got {geometry.id!r}", lineno
                )
        elif fields[0] == "layer":
            if len(fields) != 2:
                raise FormatError("layer record needs a name", lineno)
            section = ("layer", fields[1])
            layers.setdefault(fields[1], {})
        elif fields[0] == "deadkey":
            if len(fields) != 2:
                raise FormatError("deadkey record needs a trigger symbol", lineno)
            section = ("deadkey", fields[1])
            deadkeys.setdefault(fields[1], {})
        elif section is None:
            raise FormatError(f"record outside any section: {line!r}", lineno)
        elif section[0] == "layer":
            if len(fields) != 2:
                raise FormatError("layer entry must be '<key id> <symbol>'", lineno)
            key_id, symbol = fields
            if len(symbol) != 1 and symbol != SPACE_GLYPH:
                raise FormatError(f"symbol must be a single code point, got {symbol!r}", lineno)
            if key_id not in geometry:
                raise FormatError(f"symbol {symbol!r} on unknown key {key_id!r}", lineno)
            if symbol in layers[section[1]].values():
                raise FormatError(
                    f"duplicate symbol {symbol!r} in layer '{section[1]}'", lineno
                )
            layers[section[1]][key_id] = symbol
        else:
            if len(fields) != 2:
                raise FormatError("deadkey entry must be '<base symbol> <composed>'", lineno)
            base_sym, composed = fields
            if len(composed) != 1:
                raise FormatError("composed symbol must be a single code point", lineno)
            deadkeys[section[1]][base_sym] = composed
    if not name:
        raise FormatError("missing 'layout' header")
    layout = Layout(name, geometry_id, layers, deadkeys)
    _check_layers(layout, geometry)
    return layout


def serialize_layout(layout: Layout) -> str:
    """Canonical text form; parse(serialize(x)) round-trips byte-exactly."""
    lines = [f"layout {layout.name} geometry {layout.geometry_id}"]
    named = [n for n in LAYER_ORDER if n in layout.layers]
    named += sorted(n for n in layout.layers if n not in LAYER_ORDER)
    for layer in named:
        mapping = layout.layers[layer]
        if not mapping:
            continue
        lines.append(f"layer {layer}")
        for key_id in sorted(mapping):
            lines.append(f"{key_id} {mapping[key_id]}")
    for trigger in sorted(layout.deadkeys):
        lines.append(f"deadkey {trigger}")
        for base_sym in sorted(layout.deadkeys[trigger]):
            lines.append(f"{base_sym} {layout.deadkeys[trigger][base_sym]}")
    return "\n".join(lines) + "\n"


def _routes(layout: Layout, symbol: str) -> list[tuple[int, int, str, KeystrokeSeq]]:
    """All keystroke sequences producing `symbol`, tagged for tie-breaking.

    Tag = (press_count, route class, first key id); class 0 base < 1 dead < 2 alt.
    """
    routes = []
    triggers = set(layout.deadkeys)
    base_inverse = {sym: key for key, sym in layout.base().items()}
    if symbol in base_inverse and symbol not in triggers:
        key_id = base_inverse[symbol]
        routes.append((1, 0, key_id, KeystrokeSeq((Stroke(key_id),), 1)))
    for trigger, table in layout.deadkeys.items():
        trigger_key = base_inverse.get(trigger)
        if trigger_key is None:
            continue
        for base_sym, composed in table.items():
            if composed != symbol:
                continue
            if base_sym == SPACE_GLYPH:
                second = "SPCE"
            elif base_sym in base_inverse and base_sym not in triggers:
                second = base_inverse[base_sym]
            else:
                continue
            seq = KeystrokeSeq((Stroke(trigger_key), Stroke(second)), 2)
            routes.append((2, 1, trigger_key, seq))
    for key_id, sym in layout.layers.get("alt", {}).items():
        if sym == symbol:
            routes.append((2, 2, key_id, KeystrokeSeq((Stroke(key_id, ALT),), 2)))
    return routes


def expand_symbol(layout: Layout, symbol: str) -> KeystrokeSeq:
    """Cheapest keystroke sequence for a symbol.

    Fewest presses wins; ties prefer base over dead key over alt chord,
    then the lexicographically smallest key id.
    """
    routes = _routes(layout, symbol)
    if not routes:
        raise UnreachableSymbolError(symbol, layout.name)
    routes.sort(key=lambda r: (r[0], r[1], r[2]))
    return routes[0][3]


def reachable_symbols(layout: Layout) -> set[str]:
    symbols = set()
    triggers = set(layout.deadkeys)
    symbols.update(s for s in layout.base().values() if s not in triggers)
    for trigger, table in layout.deadkeys.items():
        base_inverse = {sym: key for key, sym in layout.base().items()}
        if trigger not in base_inverse:
            continue
        for base_sym, composed in table.items():
            if base_sym == SPACE_GLYPH or (base_sym in base_inverse and base_sym not in triggers):
                symbols.add(composed)
    symbols.update(layout.layers.get("alt", {}).values())
    return symbols


def validate_layout(layout: Layout, alphabet: set[str]) -> list[Finding]:
    """Reachability and conflict findings for a layout against an alphabet.

    Empty result means every alphabet symbol is reachable and no layer
    conflicts exist. Symbols reachable only through a dead key or alt
    chord yield notes, not errors.
    """
    findings: list[Finding] = []
    _check_layers_as_findings(layout, findings)
    triggers = set(layout.deadkeys)
    base_direct = {s for s in layout.base().values() if s not in triggers}
    reach = reachable_symbols(layout)
    for symbol in sorted(alphabet):
        if symbol not in reach:
            findings.append(Finding("error", symbol, f"symbol {symbol!r} is unreachable"))
        elif symbol not in base_direct:
            findings.append(
                Finding("note", symbol, f"symbol {symbol!r} reachable only via dead key or alt chord")
            )
    return findings


def _check_layers_as_findings(layout: Layout, findings: list[Finding]) -> None:
    for layer, mapping in layout.layers.items():
        seen: dict[str, str] = {}
        for key_id, symbol in mapping.items():
            if symbol in seen:
                findings.append(
                    Finding("error", symbol, f"duplicate symbol {symbol!r} in layer '{layer}'")
                )
            seen[symbol] = key_id
    base_symbols = set(layout.base().values())
    for trigger in layout.deadkeys:
        if trigger not in base_symbols:
            findings.append(
                Finding("error", trigger, f"dead-key trigger {trigger!r} absent from base layer")
            )


def swap_keys(layout: Layout, key_a: str, key_b: str, geometry: Geometry) -> Layout:
    """New layout with the two keys' symbols exchanged across all layers.

    Shift and alt symbols travel with their base symbol, and dead-key
    composition tables reference symbols, so they follow automatically.
    """
    geometry.key(key_a)
    geometry.key(key_b)
    if key_a == key_b:
        return layout
    new_layers = {}
    for layer, mapping in layout.layers.items():
        m = dict(mapping)
        a, b = m.get(key_a), m.get(key_b)
        for key_id, sym in ((key_a, b), (key_b, a)):
            if sym is None:
                m.pop(key_id, None)
            else:
                m[key_id] = sym
        new_layers[layer] = m
    return Layout(layout.name, layout.geometry_id, new_layers, layout.deadkeys)
