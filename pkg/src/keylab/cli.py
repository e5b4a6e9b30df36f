"""Command-line interface.

Subcommands: stats, compare, heatmap, optimize, emit, expand.
Exit codes: 0 success, 1 validation error, 2 I/O error.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import bundled
from .corpus import (ALPHABETS, build_triads, count_chars, extract_lexicon,
                     merge_stats, normalize, save_stats, decode_stream)
from .effort import EffortParams, parse_params, total_effort
from .errors import KeylabError
from .geometry import Geometry, parse_geometry
from .layout import Layout, expand_symbol, parse_layout, serialize_layout, validate_layout
from .metrics import metric_report
from .optimizer import (Constraints, CorpusSource, Objective, Schedule, anneal,
                        objective_value)
from .report import (CompareRow, build_heatmap, compare_csv, compare_table,
                     emit_klc, emit_xkb, metrics_csv, scatter_csv)


def _load_geometry(name_or_path: str) -> Geometry:
    if os.path.exists(name_or_path):
        return parse_geometry(_read(name_or_path))
    return bundled.bundled_geometry(name_or_path)


def _load_layout(name_or_path: str, geometry: Geometry | None) -> tuple[Layout, Geometry]:
    if os.path.exists(name_or_path):
        if geometry is None:
            geometry = bundled.bundled_geometry("ansi-47")
        return parse_layout(_read(name_or_path), geometry), geometry
    if geometry is not None:
        return bundled.bundled_layout(name_or_path, geometry), geometry
    layout_geometry = bundled.bundled_geometry(
        bundled._GEOMETRY_OF_LAYOUT.get(name_or_path, "ansi-47"))
    return bundled.bundled_layout(name_or_path, layout_geometry), layout_geometry


def _read(path: str) -> str:
    with open(path, "rb") as fh:
        return decode_stream(fh.read())


def _alphabet(spec: str) -> frozenset[str]:
    if spec in ALPHABETS:
        return ALPHABETS[spec]
    return frozenset(spec)


def _write_out(text: str, out: str | None, default_name: str | None = None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    path = out
    if default_name is not None and (os.path.isdir(out) or out.endswith(os.sep)):
        path = os.path.join(out, default_name)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
        print(f"wrote {path}", file=sys.stderr)


def _corpus_symbols(path: str, alphabet: frozenset[str]) -> tuple[str, ...]:
    if not os.path.exists(path) and os.sep not in path and "." not in path:
        path = str(bundled.bundled_corpus_path(path))
    return tuple(normalize(_read(path), alphabet))


def cmd_stats(args) -> int:
    alphabet = _alphabet(args.alphabet)
    stats = None
    for path in args.corpus:
        stream = _corpus_symbols(path, alphabet)
        one = count_chars(stream, alphabet, source_ids=[os.path.basename(path)])
        stats = one if stats is None else merge_stats(stats, one)
    if stats is None or stats.total_chars == 0:
        print("warning: empty corpus", file=sys.stderr)
    if args.out:
        _write_out(save_stats(stats), args.out, "stats.cache")
    top = stats.top(args.top)
    width = max((len(str(c)) for _, c in top), default=1)
    print(f"total characters: {stats.total_chars}")
    for sym, count in top:
        bar = "#" * int(round(40 * count / top[0][1])) if top[0][1] else ""
        print(f"{sym}  {count:>{width}}  {bar}")
    return 0


def _params(args) -> EffortParams:
    if args.params:
        return parse_params(_read(args.params))
    return parse_params(bundled.read_text("params", "default.params"))


def cmd_compare(args) -> int:
    geometry = _load_geometry(args.geometry) if args.geometry else None
    params = _params(args)
    corpora = []
    for spec in args.corpus:
        name, _, rest = spec.partition("=")
        path, _, alpha = rest.rpartition(":")
        if not path:
            path, alpha = rest, args.alphabet
        corpora.append((name, path, _alphabet(alpha)))
    rows = []
    scatter = []
    for layout_name in args.layout:
        layout, geom = _load_layout(layout_name, geometry)
        efforts = {}
        for corpus_name, path, alphabet in corpora:
            stream = _corpus_symbols(path, alphabet)
            stats = count_chars(stream, alphabet, source_ids=[path])
            findings = [f for f in validate_layout(layout, set(stats.char_counts))
                        if f.severity == "error"]
            if findings:
                raise KeylabError(
                    f"layout {layout.name!r}: " + "; ".join(f.message for f in findings))
            triads = build_triads(stream, layout)
            breakdown = total_effort(triads, layout, geom, params)
            lexicon = extract_lexicon(stream)
            rows.append(CompareRow(layout.name, corpus_name, breakdown,
                                   metric_report(layout, geom, stats, triads, lexicon)))
            efforts[corpus_name] = breakdown.total
        if args.scatter and len(efforts) == 2:
            names = sorted(efforts)
            scatter.append((layout.name, efforts[names[0]], efforts[names[1]]))
    if args.csv_long:
        _write_out(metrics_csv(rows), args.out, "metrics.csv")
    elif args.csv:
        _write_out(compare_csv(rows), args.out, "compare.csv")
    else:
        _write_out(compare_table(rows), args.out, "compare.txt")
    if scatter:
        sys.stdout.write(scatter_csv(scatter))
    return 0


def cmd_heatmap(args) -> int:
    geometry = _load_geometry(args.geometry) if args.geometry else None
    layout, geom = _load_layout(args.layout, geometry)
    alphabet = _alphabet(args.alphabet)
    stream = _corpus_symbols(args.corpus, alphabet)
    triads = build_triads(stream, layout)
    heatmap = build_heatmap(layout, geom, triads)
    _write_out(heatmap.rendering, args.out, f"{layout.name}-heatmap.svg")
    return 0


def cmd_emit(args) -> int:
    geometry = _load_geometry(args.geometry) if args.geometry else None
    layout, geom = _load_layout(args.layout, geometry)
    if args.format == "xkb":
        text = emit_xkb(layout, geom)
        suffix = "xkb"
    elif args.format == "klc":
        text = emit_klc(layout, geom)
        suffix = "klc"
    else:
        text = serialize_layout(layout)
        suffix = "layout"
    _write_out(text, args.out, f"{layout.name}.{suffix}")
    return 0


def cmd_expand(args) -> int:
    geometry = _load_geometry(args.geometry) if args.geometry else None
    layout, _ = _load_layout(args.layout, geometry)
    seq = expand_symbol(layout, args.symbol)
    strokes = " ".join(
        f"{s.key_id}" + ("+alt" if s.chord == "alt" else "") for s in seq.strokes)
    print(f"{args.symbol} -> {strokes} (presses: {seq.press_count})")
    return 0


def _parse_config(text: str) -> dict:
    config = {"pin": [], "group": [], "pair": [], "corpus": []}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line.startswith("#"):
            continue
        if not line:
            continue
        if "=" not in line:
            raise KeylabError(f"config line {lineno}: expected '<key> = <value>'")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if key in ("pin", "group", "pair", "corpus"):
            config[key].append(value)
        else:
            config[key] = value
    return config


def cmd_optimize(args) -> int:
    config = _parse_config(_read(args.config))
    geometry = _load_geometry(config.get("geometry", args.geometry or "ansi-47"))
    start, geometry = _load_layout(config.get("start", "lv-modern"), geometry)
    params = _params(args)
    corpora = []
    for spec in config["corpus"]:
        fields = spec.split()
        if len(fields) != 3:
            raise KeylabError(f"corpus spec must be '<path> <weight> <alphabet>': {spec!r}")
        path, weight, alpha = fields
        corpora.append(CorpusSource(os.path.basename(path),
                                    _corpus_symbols(path, _alphabet(alpha)),
                                    float(weight)))
    objective = Objective(tuple(corpora), params, geometry)
    constraints = Constraints.make(
        pinned=[k for spec in config["pin"] for k in spec.split()],
        groups=[spec.split() for spec in config["group"]],
        pairs=[tuple(spec.split()) for spec in config["pair"]],
    )
    seed = int(config.get("seed", args.seed or 0))
    schedule = Schedule(
        iterations=int(config.get("iterations", 1000)),
        restarts=int(config.get("restarts", 1)),
        t0=float(config["t0"]) if "t0" in config else None,
        cooling=float(config["cooling"]) if "cooling" in config else None,
    )
    pareto = config.get("pareto", "no").lower() in ("yes", "true", "1")
    result = anneal(start, objective, constraints, schedule, seed, pareto=pareto)
    out_dir = args.out or "."
    os.makedirs(out_dir, exist_ok=True)
    layout_path = os.path.join(out_dir, f"{start.name}-best.layout")
    with open(layout_path, "w", encoding="utf-8") as fh:
        fh.write(serialize_layout(result.best_layout))
    trace_path = os.path.join(out_dir, "trace.csv")
    with open(trace_path, "w", encoding="utf-8") as fh:
        fh.write("iteration,temperature,current,best\n")
        for it, temp, current, best in result.trace:
            fh.write(f"{it},{temp!r},{current!r},{best!r}\n")
    if pareto and result.pareto_points:
        names = ",".join(c.name for c in objective.corpora)
        with open(os.path.join(out_dir, "pareto.csv"), "w", encoding="utf-8") as fh:
            fh.write(f"{names}\n")
            for point in result.pareto_points:
                fh.write(",".join(repr(v) for v in point) + "\n")
    print(f"best effort: {result.best_effort:.6f} "
          f"(start: {objective_value(start, objective):.6f})")
    print(f"evaluations: {result.evaluations}, accepted worse: {result.accepted_worse}")
    print(f"restart bests: {[round(b, 6) for b in result.restart_bests]}")
    print(f"wrote {layout_path} and {trace_path}")
    return 0


def _add_global_flags(parser: argparse.ArgumentParser, suppress: bool) -> None:
    # The same flags hang off the main parser and every subcommand, so both
    # `keylab --out x stats ...` and `keylab stats ... --out x` work. The
    # subcommand copies must not clobber values parsed earlier, hence SUPPRESS.
    def default(value):
        return argparse.SUPPRESS if suppress else value
    parser.add_argument("--geometry", default=default(None),
                        help="bundled geometry name or file path")
    parser.add_argument("--params", default=default(None), help="effort parameter file")
    parser.add_argument("--alphabet", default=default("en"),
                        help="alphabet name (en, lv) or symbol string")
    parser.add_argument("--seed", type=int, default=default(None), help="random seed")
    parser.add_argument("--out", default=default(None), help="output file or directory")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="keylab",
                                     description="keyboard layout analysis toolkit")
    _add_global_flags(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _add_global_flags(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("stats", parents=[common], help="character statistics for corpora")
    p.add_argument("corpus", nargs="+")
    p.add_argument("--top", type=int, default=20)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("compare", parents=[common],
                       help="effort and metric table for layouts x corpora")
    p.add_argument("layout", nargs="+")
    p.add_argument("--corpus", action="append", required=True,
                   metavar="NAME=PATH[:ALPHABET]")
    p.add_argument("--csv", action="store_true")
    p.add_argument("--csv-long", action="store_true",
                   help="one row per (layout, corpus, metric)")
    p.add_argument("--scatter", action="store_true",
                   help="with two corpora, print per-layout effort pairs")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("heatmap", parents=[common], help="per-key wearing heatmap (SVG)")
    p.add_argument("layout")
    p.add_argument("corpus")
    p.set_defaults(func=cmd_heatmap)

    p = sub.add_parser("optimize", parents=[common], help="simulated-annealing layout search")
    p.add_argument("config")
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("emit", parents=[common], help="emit driver file")
    p.add_argument("layout")
    p.add_argument("--format", choices=("xkb", "klc", "neutral"), default="neutral")
    p.set_defaults(func=cmd_emit)

    p = sub.add_parser("expand", parents=[common],
                       help="print the keystroke sequence for a symbol")
    p.add_argument("layout")
    p.add_argument("symbol")
    p.set_defaults(func=cmd_expand)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except KeylabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
