import os

import pytest

import keylab as kl
from keylab.cli import main
from keylab.layout import parse_layout, serialize_layout
from keylab.metrics import metric_report
from keylab.report import (CompareRow, build_heatmap, compare_csv, compare_table,
                           emit_klc, emit_xkb, scatter_csv)

EN = kl.ALPHABETS["en"]
LV = kl.ALPHABETS["lv"]


# --- heatmap


def test_heatmap_single_key(layouts, geometry):
    table = kl.build_triads(kl.normalize("aaaa", EN), layouts["qwerty"])
    heatmap = build_heatmap(layouts["qwerty"], geometry, table)
    assert heatmap.intensities["AC01"] == 1.0
    assert sum(heatmap.intensities.values()) == pytest.approx(1.0, abs=1e-9)


def test_heatmap_covers_every_key(layouts, geometry, lv_triads):
    heatmap = build_heatmap(layouts["lv-qwerty"], geometry, lv_triads["lv-qwerty"])
    for key in geometry.keys:
        assert key.id in heatmap.intensities
    assert sum(heatmap.intensities.values()) == pytest.approx(1.0, abs=1e-9)


def test_heatmap_apostrophe_hot_on_lv_qwerty(layouts, geometry, lv_triads):
    heatmap = build_heatmap(layouts["lv-qwerty"], geometry, lv_triads["lv-qwerty"])
    top3 = sorted(heatmap.intensities, key=heatmap.intensities.get, reverse=True)[:3]
    assert "AC11" in top3


def test_heatmap_svg_structure(layouts, geometry):
    table = kl.build_triads(kl.normalize("kas tas", LV), layouts["lv-qwerty"])
    heatmap = build_heatmap(layouts["lv-qwerty"], geometry, table)
    svg = heatmap.rendering
    assert svg.startswith("<svg")
    assert svg.count("<rect") == 48  # 47 keys + space bar
    assert "stroke-width=\"3\"" in svg  # home keys outlined


# --- compare tables


def _rows(layouts, geometry, params, en_stats, en_triads):
    rows = []
    for name in ("qwerty", "lv-modern"):
        effort = kl.total_effort(en_triads[name], layouts[name], geometry, params)
        metrics = metric_report(layouts[name], geometry, en_stats, en_triads[name])
        rows.append(CompareRow(name, "english", effort, metrics))
    return rows


def test_compare_table_sorted_and_aligned(layouts, geometry, params, en_stats, en_triads):
    rows = _rows(layouts, geometry, params, en_stats, en_triads)
    text_a = compare_table(rows)
    text_b = compare_table(list(reversed(rows)))
    assert text_a == text_b
    lines = text_a.splitlines()
    assert lines[0].startswith("layout")
    assert lines[1].startswith("lv-modern")
    assert lines[2].startswith("qwerty")


def test_compare_csv_round_trippable(layouts, geometry, params, en_stats, en_triads):
    text = compare_csv(_rows(layouts, geometry, params, en_stats, en_triads))
    lines = text.strip().splitlines()
    assert len(lines) == 3
    assert len(lines[1].split(",")) == len(lines[0].split(","))


def test_scatter_csv():
    text = scatter_csv([("b", 1.25, 0.75), ("a", 1.5, 1.5)])
    assert text.splitlines()[1].startswith("a,")


# --- emitters


def test_xkb_qwerty_key_count(layouts, geometry):
    text = emit_xkb(layouts["qwerty"], geometry)
    assert text.count("key <") == 47


def test_xkb_lv_modern_dead_key(layouts, geometry):
    text = emit_xkb(layouts["lv-modern"], geometry)
    assert "dead_acute" in text
    assert "key <AC06> { [ dead_acute, dead_acute" in text
    assert "emacron" in text
    assert 'include "level3(ralt_switch)"' in text


def test_klc_structure(layouts, geometry):
    text = emit_klc(layouts["lv-modern"], geometry)
    assert text.startswith("KBD")
    assert "DEADKEY\t0027" in text
    assert text.rstrip().endswith("ENDKBD")
    # dead trigger marked with @ on the base column
    line = next(l for l in text.splitlines() if l.startswith("23\tH"))
    assert "0027@" in line


def test_klc_rejects_non_bmp_symbols(geometry):
    doc = """layout astral geometry ansi-47
layer base
AC01 a
layer alt
AC01 😀
"""
    layout = parse_layout(doc, geometry)
    with pytest.raises(Exception, match="😀"):
        emit_klc(layout, geometry)


def test_neutral_round_trip_byte_identical(layouts, geometry):
    for layout in layouts.values():
        emitted = serialize_layout(layout)
        assert serialize_layout(parse_layout(emitted, geometry)) == emitted


# --- CLI


def run_cli(args):
    return main(args)


def test_cli_stats(tmp_path, capsys):
    corpus = tmp_path / "c.txt"
    corpus.write_text("Tee tee tee.", encoding="utf-8")
    out = tmp_path / "stats.cache"
    assert run_cli(["--alphabet", "en", "--out", str(out), "stats", str(corpus)]) == 0
    assert kl.load_stats(out.read_text(encoding="utf-8")).char_counts["e"] == 6
    head = capsys.readouterr().out.splitlines()
    assert head[1].startswith("e")


def test_cli_stats_empty_file_warns(tmp_path, capsys):
    corpus = tmp_path / "empty.txt"
    corpus.write_text("", encoding="utf-8")
    assert run_cli(["stats", str(corpus)]) == 0
    assert "warning" in capsys.readouterr().err


def test_cli_expand(capsys):
    assert run_cli(["expand", "lv-qwerty", "ā"]) == 0
    out = capsys.readouterr().out
    assert "AC11 AC01" in out and "presses: 2" in out


def test_cli_emit_neutral_round_trip(tmp_path, geometry, layouts):
    out = tmp_path / "m.layout"
    assert run_cli(["--out", str(out), "emit", "lv-modern", "--format", "neutral"]) == 0
    assert out.read_text(encoding="utf-8") == serialize_layout(layouts["lv-modern"])


def test_cli_emit_xkb(tmp_path):
    out = tmp_path / "q.xkb"
    assert run_cli(["--out", str(out), "emit", "qwerty", "--format", "xkb"]) == 0
    assert out.read_text(encoding="utf-8").count("key <") == 47


def test_cli_compare(tmp_path, capsys):
    corpus = tmp_path / "en.txt"
    corpus.write_text("the quick brown fox jumps over the lazy dog. " * 40,
                      encoding="utf-8")
    code = run_cli(["compare", "qwerty", "lv-modern",
                    "--corpus", f"en={corpus}:en"])
    assert code == 0
    out = capsys.readouterr().out
    lines = out.splitlines()
    assert lines[0].startswith("layout")
    assert lines[1].startswith("lv-modern") and lines[2].startswith("qwerty")


def test_cli_compare_scatter(tmp_path, capsys):
    en = tmp_path / "en.txt"
    en.write_text("the tin men sent ten tents. " * 30, encoding="utf-8")
    lv = tmp_path / "lv.txt"
    lv.write_text("tas ir labi un tas ir viss. " * 30, encoding="utf-8")
    code = run_cli(["compare", "qwerty", "lv-modern", "--scatter",
                    "--corpus", f"en={en}:en", "--corpus", f"lv={lv}:lv"])
    assert code == 0
    out = capsys.readouterr().out
    assert "layout,effort_en,effort_lv" in out
    scatter_lines = out[out.index("layout,effort_en"):].strip().splitlines()
    assert len(scatter_lines) == 3


def test_cli_compare_unreachable_symbol_names_layout(tmp_path, capsys):
    corpus = tmp_path / "lv.txt"
    corpus.write_text("žogs un māja", encoding="utf-8")
    code = run_cli(["compare", "qwerty", "--corpus", f"lv={corpus}:lv"])
    assert code == 1
    assert "qwerty" in capsys.readouterr().err


def test_cli_missing_file_is_io_error(capsys):
    assert run_cli(["stats", "/nonexistent/corpus.txt"]) == 2


def test_cli_heatmap(tmp_path):
    corpus = tmp_path / "c.txt"
    corpus.write_text("tas ir labi", encoding="utf-8")
    out = tmp_path / "map.svg"
    assert run_cli(["--alphabet", "lv", "--out", str(out),
                    "heatmap", "lv-qwerty", str(corpus)]) == 0
    assert out.read_text(encoding="utf-8").startswith("<svg")


def test_cli_compare_csv_long(tmp_path):
    corpus = tmp_path / "en.txt"
    corpus.write_text("the tin men sent ten tents. " * 20, encoding="utf-8")
    out = tmp_path / "metrics.csv"
    assert run_cli(["--out", str(out), "compare", "qwerty",
                    "--corpus", f"en={corpus}:en", "--csv-long"]) == 0
    lines = out.read_text(encoding="utf-8").strip().splitlines()
    assert lines[0] == "layout,corpus,metric,value"
    metrics = {line.split(",")[2] for line in lines[1:]}
    assert {"effort_total", "travel_per_char", "presses_per_char"} <= metrics
    assert all(line.split(",")[0] == "qwerty" for line in lines[1:])


def test_cli_optimize_toy_config_finds_brute_force_optimum(
        tmp_path, toy, toy_objective, toy_constraints, capsys):
    from keylab.optimizer import brute_force
    from tests.conftest import TOY_GEOMETRY, TOY_LAYOUT

    _, toy_layout, stream = toy
    _, best, _ = brute_force(toy_layout, toy_objective, toy_constraints)

    geom_path = tmp_path / "toy.geom"
    geom_path.write_text(TOY_GEOMETRY, encoding="utf-8")
    layout_path = tmp_path / "toy.layout"
    layout_path.write_text(TOY_LAYOUT, encoding="utf-8")
    corpus = tmp_path / "toy.txt"
    corpus.write_text(" ".join("".join(w) for w in _chunks(stream)), encoding="utf-8")
    config = tmp_path / "toy.conf"
    config.write_text(
        f"""seed = 3
iterations = 500
restarts = 20
start = {layout_path}
geometry = {geom_path}
corpus = {corpus} 1.0 abcdefghij
pin = T1 T2 T3 T4 T5
""", encoding="utf-8")
    out = tmp_path / "run"
    assert run_cli(["--out", str(out), "optimize", str(config)]) == 0
    printed = capsys.readouterr().out
    reported = float(printed.split("best effort: ")[1].split()[0])
    assert reported == pytest.approx(best, abs=5e-7)


def _chunks(stream):
    word = []
    for sym in stream:
        if sym == "\x00":
            if word:
                yield word
            word = []
        else:
            word.append(sym)
    if word:
        yield word


def test_cli_optimize_deterministic(tmp_path, capsys):
    corpus = tmp_path / "c.txt"
    corpus.write_text("tas ir labi un tas ir viss. " * 30, encoding="utf-8")
    config = tmp_path / "search.conf"
    config.write_text(
        f"""seed = 9
iterations = 200
restarts = 2
start = lv-modern
geometry = ansi-47
corpus = {corpus} 1.0 lv
pin = TLDE AE01 AE02 AE03 AE04 AE05 AE06 AE07 AE08 AE09 AE10 AE11 AE12
pin = AC06 AD11 AD12 AC11
group = x z c v
pair = ā a
pair = ē e
pair = ī i
""", encoding="utf-8")
    out1, out2 = tmp_path / "run1", tmp_path / "run2"
    assert run_cli(["--out", str(out1), "optimize", str(config)]) == 0
    assert run_cli(["--out", str(out2), "optimize", str(config)]) == 0
    best1 = (out1 / "lv-modern-best.layout").read_text(encoding="utf-8")
    best2 = (out2 / "lv-modern-best.layout").read_text(encoding="utf-8")
    assert best1 == best2
    assert (out1 / "trace.csv").read_text(encoding="utf-8") == \
        (out2 / "trace.csv").read_text(encoding="utf-8")
