"""Comparison tables, per-key wearing heatmaps, and driver-file emitters."""

from __future__ import annotations

from dataclasses import dataclass

from .corpus import TriadTable
from .effort import EffortBreakdown
from .errors import KeylabError
from .geometry import Geometry
from .layout import SPACE_GLYPH, Layout
from .metrics import MetricReport


@dataclass(frozen=True)
class Heatmap:
    layout_name: str
    intensities: dict[str, float]
    rendering: str


def build_heatmap(layout: Layout, geometry: Geometry, triads: TriadTable) -> Heatmap:
    """Keystroke share per key (dead-key presses included), rendered as SVG."""
    if triads.total_keystrokes == 0:
        raise KeylabError("empty triad table")
    intensities = {k.id: 0.0 for k in geometry.keys}
    if geometry.space is not None:
        intensities[geometry.space.id] = 0.0
    for key_id, count in triads.keystroke_counts.items():
        intensities[key_id] = count / triads.total_keystrokes
    return Heatmap(layout.name, intensities, _render_svg(layout, geometry, intensities))


def _render_svg(layout: Layout, geometry: Geometry, intensities: dict[str, float]) -> str:
    unit = 44
    pad = 3
    peak = max(intensities.values()) or 1.0
    keys = list(geometry.keys)
    if geometry.space is not None:
        keys.append(geometry.space)
    width = (max(k.x for k in keys) + 2.2) * unit
    height = (max(k.y for k in keys) + 1.6) * unit
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0f}" height="{height:.0f}">',
        f'<title>{layout.name} wearing</title>',
        '<style>text{font-family:monospace;font-size:12px}</style>',
    ]
    for k in keys:
        wide = 5.0 if geometry.space is not None and k.id == geometry.space.id else 1.0
        share = intensities.get(k.id, 0.0)
        # Linear gray ramp: unused keys white, the hottest key near-black.
        level = int(round(255 * (1.0 - 0.9 * share / peak)))
        fill = f"rgb({level},{level},{level})"
        stroke = "black" if k.home else "gray"
        stroke_w = 3 if k.home else 1
        x = k.x * unit + pad
        y = (k.y + 0.25) * unit + pad
        parts.append(
            f'<rect x="{x:.1f}" y="{y:.1f}" width="{wide * unit - 2 * pad:.1f}" '
            f'height="{unit - 2 * pad:.1f}" fill="{fill}" stroke="{stroke}" '
            f'stroke-width="{stroke_w}" rx="4"/>')
        label = layout.base().get(k.id, "")
        if label:
            tcol = "white" if level < 110 else "black"
            parts.append(
                f'<text x="{x + 6:.1f}" y="{y + 17:.1f}" fill="{tcol}">{_xml(label)}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _xml(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


# ---------------------------------------------------------------------------
# comparison tables


@dataclass(frozen=True)
class CompareRow:
    layout: str
    corpus: str
    effort: EffortBreakdown
    metrics: MetricReport


_COLUMNS = ("layout", "corpus", "effort", "base", "penalty", "stroke",
            "travel", "alt_rate", "same_finger", "presses", "single",
            "home_row", "home_words")


def _row_values(row: CompareRow) -> list[str]:
    m = row.metrics
    return [
        row.layout, row.corpus,
        f"{row.effort.total:.4f}", f"{row.effort.base:.4f}",
        f"{row.effort.penalty:.4f}", f"{row.effort.stroke:.4f}",
        f"{m.travel_per_char:.4f}", f"{m.alternation_rate:.4f}",
        f"{m.same_finger_rate:.4f}", f"{m.presses_per_char:.4f}",
        f"{m.single_press_fraction:.4f}", f"{m.row_share.get('home', 0.0):.4f}",
        str(m.home_words),
    ]


def compare_table(rows: list[CompareRow]) -> str:
    """Aligned plain-text table, rows sorted by (layout, corpus)."""
    ordered = sorted(rows, key=lambda r: (r.layout, r.corpus))
    cells = [list(_COLUMNS)] + [_row_values(r) for r in ordered]
    widths = [max(len(line[i]) for line in cells) for i in range(len(_COLUMNS))]
    out = []
    for line in cells:
        out.append("  ".join(val.ljust(w) for val, w in zip(line, widths)).rstrip())
    return "\n".join(out) + "\n"


def compare_csv(rows: list[CompareRow]) -> str:
    ordered = sorted(rows, key=lambda r: (r.layout, r.corpus))
    out = [",".join(_COLUMNS)]
    for r in ordered:
        out.append(",".join(_row_values(r)))
    return "\n".join(out) + "\n"


def metrics_csv(rows: list[CompareRow]) -> str:
    """Long-format CSV: one row per (layout, corpus, metric)."""
    out = ["layout,corpus,metric,value"]
    for r in sorted(rows, key=lambda r: (r.layout, r.corpus)):
        m = r.metrics
        items = [
            ("effort_total", r.effort.total), ("effort_base", r.effort.base),
            ("effort_penalty", r.effort.penalty), ("effort_stroke", r.effort.stroke),
            ("travel_per_char", m.travel_per_char),
            ("alternation_rate", m.alternation_rate),
            ("same_finger_rate", m.same_finger_rate),
            ("presses_per_char", m.presses_per_char),
            ("single_press_fraction", m.single_press_fraction),
            ("home_words", m.home_words),
        ]
        items += [(f"row_share_{row}", share) for row, share in sorted(m.row_share.items())]
        items += [(f"hand_share_{hand}", share) for hand, share in sorted(m.hand_share.items())]
        items += [(f"finger_share_{hand}_{finger}", share)
                  for (hand, finger), share in sorted(m.finger_share.items())]
        for metric, value in items:
            out.append(f"{r.layout},{r.corpus},{metric},{value}")
    return "\n".join(out) + "\n"


def scatter_csv(points: list[tuple[str, float, float]]) -> str:
    """(layout, English effort, Latvian effort) points for Pareto plots."""
    out = ["layout,effort_en,effort_lv"]
    for name, e_en, e_lv in sorted(points):
        out.append(f"{name},{e_en:.6f},{e_lv:.6f}")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# driver emitters

_KEYSYM = {
    "`": "grave", "~": "asciitilde", "!": "exclam", "@": "at", "#": "numbersign",
    "$": "dollar", "%": "percent", "^": "asciicircum", "&": "ampersand",
    "*": "asterisk", "(": "parenleft", ")": "parenright", "-": "minus",
    "_": "underscore", "=": "equal", "+": "plus", "[": "bracketleft",
    "]": "bracketright", "{": "braceleft", "}": "braceright", "\\": "backslash",
    "|": "bar", ";": "semicolon", ":": "colon", "'": "apostrophe",
    '"': "quotedbl", ",": "comma", "<": "less", ".": "period", ">": "greater",
    "/": "slash", "?": "question", " ": "space",
    "ā": "amacron", "Ā": "Amacron", "ē": "emacron", "Ē": "Emacron",
    "ī": "imacron", "Ī": "Imacron", "ū": "umacron", "Ū": "Umacron",
    "ō": "omacron", "Ō": "Omacron", "č": "ccaron", "Č": "Ccaron",
    "š": "scaron", "Š": "Scaron", "ž": "zcaron", "Ž": "Zcaron",
    "ģ": "gcedilla", "Ģ": "Gcedilla", "ķ": "kcedilla", "Ķ": "Kcedilla",
    "ļ": "lcedilla", "Ļ": "Lcedilla", "ņ": "ncedilla", "Ņ": "Ncedilla",
    "ŗ": "rcedilla", "Ŗ": "Rcedilla", "«": "guillemotleft", "»": "guillemotright",
    "©": "copyright", "“": "leftdoublequotemark", "”": "rightdoublequotemark",
}

_DEAD_KEYSYM = {"'": "dead_acute", "`": "dead_grave", "~": "dead_tilde",
                "^": "dead_circumflex", '"': "dead_diaeresis"}


def _keysym(symbol: str) -> str:
    if symbol in _KEYSYM:
        return _KEYSYM[symbol]
    if len(symbol) == 1 and (symbol.isalnum() and symbol.isascii()):
        return symbol
    return "U%04X" % ord(symbol)


def emit_xkb(layout: Layout, geometry: Geometry) -> str:
    """xkb symbols block: one key entry per mapped key, dead keys marked."""
    lines = [
        "// generated by keylab",
        "default partial alphanumeric_keys",
        'xkb_symbols "basic" {',
        f'    name[Group1]= "{layout.name}";',
        "",
    ]
    base = layout.base()
    shift = layout.layers.get("shift", {})
    alt = layout.layers.get("alt", {})
    mapped = sorted(set(base) | set(shift) | set(alt))
    for key_id in mapped:
        syms = []
        base_sym = base.get(key_id)
        if base_sym in layout.deadkeys:
            name = _DEAD_KEYSYM.get(base_sym, "dead_acute")
            syms.append(name)
            syms.append(name)
        else:
            syms.append(_keysym(base_sym) if base_sym else "NoSymbol")
            syms.append(_keysym(shift[key_id]) if key_id in shift else "NoSymbol")
        if key_id in alt:
            syms.append(_keysym(alt[key_id]))
        body = ", ".join(syms)
        lines.append(f"    key <{key_id}> {{ [ {body} ] }};")
    for trigger in sorted(layout.deadkeys):
        lines.append("")
        lines.append(f"    // dead key {_keysym(trigger)} compositions:")
        for base_sym in sorted(layout.deadkeys[trigger]):
            composed = layout.deadkeys[trigger][base_sym]
            shown = "space" if base_sym == SPACE_GLYPH else base_sym
            lines.append(f"    //   {_keysym(trigger)} + {shown} -> {composed}")
    if alt:
        lines.append("")
        lines.append('    include "level3(ralt_switch)"')
    lines.append("};")
    return "\n".join(lines) + "\n"


_SCANCODE = {
    "TLDE": "29", "AE01": "02", "AE02": "03", "AE03": "04", "AE04": "05",
    "AE05": "06", "AE06": "07", "AE07": "08", "AE08": "09", "AE09": "0a",
    "AE10": "0b", "AE11": "0c", "AE12": "0d",
    "AD01": "10", "AD02": "11", "AD03": "12", "AD04": "13", "AD05": "14",
    "AD06": "15", "AD07": "16", "AD08": "17", "AD09": "18", "AD10": "19",
    "AD11": "1a", "AD12": "1b", "BKSL": "2b",
    "AC01": "1e", "AC02": "1f", "AC03": "20", "AC04": "21", "AC05": "22",
    "AC06": "23", "AC07": "24", "AC08": "25", "AC09": "26", "AC10": "27",
    "AC11": "28",
    "AB01": "2c", "AB02": "2d", "AB03": "2e", "AB04": "2f", "AB05": "30",
    "AB06": "31", "AB07": "32", "AB08": "33", "AB09": "34", "AB10": "35",
    "SPCE": "39",
}

_VK_OF_POSITION = {
    "TLDE": "OEM_3", "AE01": "1", "AE02": "2", "AE03": "3", "AE04": "4",
    "AE05": "5", "AE06": "6", "AE07": "7", "AE08": "8", "AE09": "9",
    "AE10": "0", "AE11": "OEM_MINUS", "AE12": "OEM_PLUS",
    "AD01": "Q", "AD02": "W", "AD03": "E", "AD04": "R", "AD05": "T",
    "AD06": "Y", "AD07": "U", "AD08": "I", "AD09": "O", "AD10": "P",
    "AD11": "OEM_4", "AD12": "OEM_6", "BKSL": "OEM_5",
    "AC01": "A", "AC02": "S", "AC03": "D", "AC04": "F", "AC05": "G",
    "AC06": "H", "AC07": "J", "AC08": "K", "AC09": "L", "AC10": "OEM_1",
    "AC11": "OEM_7",
    "AB01": "Z", "AB02": "X", "AB03": "C", "AB04": "V", "AB05": "B",
    "AB06": "N", "AB07": "M", "AB08": "OEM_COMMA", "AB09": "OEM_PERIOD",
    "AB10": "OEM_2",
}


def _klc_code(symbol: str | None, dead: bool = False) -> str:
    if symbol is None:
        return "-1"
    cp = ord(symbol)
    if cp > 0xFFFF:
        raise KeylabError(f"symbol {symbol!r} not expressible in klc")
    code = f"{cp:04x}"
    return code + "@" if dead else code


def emit_klc(layout: Layout, geometry: Geometry) -> str:
    """Windows keyboard-layout-creator source text (format only)."""
    base = layout.base()
    shift = layout.layers.get("shift", {})
    alt = layout.layers.get("alt", {})
    bad = sorted({s for s in list(base.values()) + list(shift.values()) + list(alt.values())
                  if ord(s) > 0xFFFF})
    if bad:
        raise KeylabError("symbols not expressible in klc: " + " ".join(repr(s) for s in bad))
    short = "".join(ch for ch in layout.name if ch.isalnum())[:8] or "layout"
    lines = [
        f'KBD\t{short}\t"{layout.name}"',
        "",
        'COPYRIGHT\t"(c) layout authors"',
        'COMPANY\t"keylab"',
        'LOCALENAME\t"lv-LV"',
        'LOCALEID\t"00000426"',
        "VERSION\t1.0",
        "",
        "SHIFTSTATE",
        "",
        "0\t// Column 4",
        "1\t// Column 5 : Shft",
        "6\t// Column 6 : AltGr",
        "",
        "LAYOUT\t\t// SC VK Cap Base Shift AltGr",
        "",
    ]
    for key_id in sorted(_SCANCODE):
        if key_id == "SPCE" or key_id not in geometry:
            continue
        if key_id not in base and key_id not in shift and key_id not in alt:
            continue
        base_sym = base.get(key_id)
        dead = base_sym in layout.deadkeys
        cap = "1" if base_sym and base_sym.isalpha() else "0"
        cells = [
            _SCANCODE[key_id],
            _VK_OF_POSITION.get(key_id, "OEM_8"),
            cap,
            _klc_code(base_sym, dead),
            _klc_code(shift.get(key_id), dead),
            _klc_code(alt.get(key_id)),
        ]
        lines.append("\t".join(cells))
    lines.append("39\tSPACE\t0\t0020\t0020\t0020")
    for trigger in sorted(layout.deadkeys):
        lines.append("")
        lines.append(f"DEADKEY\t{ord(trigger):04x}")
        lines.append("")
        for base_sym in sorted(layout.deadkeys[trigger]):
            composed = layout.deadkeys[trigger][base_sym]
            src = " " if base_sym == SPACE_GLYPH else base_sym
            lines.append(f"{ord(src):04x}\t{ord(composed):04x}\t// {src} -> {composed}")
    lines += ["", "ENDKBD", ""]
    return "\n".join(lines)
