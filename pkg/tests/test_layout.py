import pytest

import keylab as kl
from keylab import FormatError, UnreachableSymbolError
from keylab.layout import parse_layout, serialize_layout


def base_key_of(layout, symbol):
    return next(k for k, s in layout.base().items() if s == symbol)


def test_qwerty_a_on_left_little_home(layouts, geometry):
    key_id = base_key_of(layouts["qwerty"], "a")
    key = geometry.key(key_id)
    assert key.hand == "L" and key.finger == "little" and key.home


def test_lv_modern_top_row(layouts):
    modern = layouts["lv-modern"]
    top = [modern.base()[f"AD{i:02d}"] for i in range(1, 11)]
    assert top == list("ēoāpbjdīlg")


def test_lv_modern_left_home_row(layouts):
    modern = layouts["lv-modern"]
    left = [modern.base()[f"AC{i:02d}"] for i in range(1, 7)]
    assert left == list("euank'")


def test_duplicate_symbol_rejected(geometry):
    doc = """layout bad geometry ansi-47
layer base
AC01 e
AC02 e
"""
    with pytest.raises(FormatError, match="duplicate symbol 'e'"):
        parse_layout(doc, geometry)


def test_symbol_on_unknown_key_rejected(geometry):
    doc = """layout bad geometry ansi-47
layer base
XX99 e
"""
    with pytest.raises(FormatError, match="unknown key"):
        parse_layout(doc, geometry)


def test_dead_trigger_must_be_on_base_layer(geometry):
    doc = """layout bad geometry ansi-47
layer base
AC01 a
deadkey '
a ā
"""
    with pytest.raises(Exception, match="absent from base layer"):
        parse_layout(doc, geometry)


# --- expansion


def test_expand_plain(layouts):
    seq = kl.expand_symbol(layouts["qwerty"], "a")
    assert seq.key_ids() == ("AC01",) and seq.press_count == 1


def test_expand_dead_key(layouts):
    seq = kl.expand_symbol(layouts["lv-qwerty"], "ā")
    assert seq.key_ids() == ("AC11", "AC01") and seq.press_count == 2


def test_expand_apostrophe_via_space(layouts):
    seq = kl.expand_symbol(layouts["lv-modern"], "'")
    assert seq.key_ids() == ("AC06", "SPCE") and seq.press_count == 2


def test_expand_prefers_dedicated_key(layouts):
    # lv-modern has both a dedicated ā key and the dead-key route.
    seq = kl.expand_symbol(layouts["lv-modern"], "ā")
    assert seq.press_count == 1 and seq.key_ids() == ("AD03",)


def test_expand_alt_chord(layouts):
    seq = kl.expand_symbol(layouts["lv-ergonomic"], "q")
    assert seq.press_count == 2 and len(seq.strokes) == 1
    assert seq.strokes[0].chord == "alt"


def test_expand_dead_beats_alt_on_tie():
    compact = kl.bundled_layout("lv-modern-compact")
    seq = kl.expand_symbol(compact, "q")
    assert seq.press_count == 2
    assert seq.key_ids() == ("AC06", "AB01")  # dead trigger + x, not alt+x


def test_expand_tie_breaks_lexicographic(geometry):
    # Two dead triggers compose the same symbol: lower trigger key id wins.
    doc = """layout tie geometry ansi-47
layer base
AC01 a
AC11 '
AD01 `
deadkey '
a ā
deadkey `
a ā
"""
    layout = parse_layout(doc, geometry)
    seq = kl.expand_symbol(layout, "ā")
    assert seq.key_ids()[0] == "AC11"  # AC11 < AD01


def test_expand_unreachable(layouts):
    with pytest.raises(UnreachableSymbolError, match="ð"):
        kl.expand_symbol(layouts["qwerty"], "ð")


def test_press_count_bounds(layouts):
    for name, alphabet in (("qwerty", "en"), ("lv-modern", "lv"), ("lv-qwerty", "lv")):
        layout = layouts[name]
        for symbol in sorted(kl.ALPHABETS[alphabet]):
            seq = kl.expand_symbol(layout, symbol)
            assert 1 <= len(seq.strokes) <= 2
            assert seq.press_count >= len(seq.strokes)
            assert seq.press_count in (1, 2)


# --- validation


def test_validate_qwerty_english_clean(layouts):
    assert kl.validate_layout(layouts["qwerty"], set(kl.ALPHABETS["en"])) == []


def test_validate_lv_modern_notes(layouts):
    findings = kl.validate_layout(layouts["lv-modern"], set(kl.ALPHABETS["lv"]))
    assert [f for f in findings if f.severity == "error"] == []
    notes = sorted(f.symbol for f in findings if f.severity == "note")
    assert notes == sorted("ņūļķžģč")


def test_validate_missing_symbol_is_error(layouts):
    findings = kl.validate_layout(layouts["qwerty"], set(kl.ALPHABETS["en"]) | {"ž"})
    errors = [f for f in findings if f.severity == "error"]
    assert len(errors) == 1 and errors[0].symbol == "ž"


def test_validate_reports_layer_conflicts_on_hand_built_layout():
    layout = kl.Layout("broken", "ansi-47",
                       {"base": {"AC01": "e", "AC02": "e"}})
    findings = kl.validate_layout(layout, {"e"})
    assert any(f.severity == "error" and "duplicate" in f.message for f in findings)


def test_validate_reports_trigger_off_base():
    layout = kl.Layout("broken", "ansi-47", {"base": {"AC01": "a"}},
                       {"'": {"a": "ā"}})
    findings = kl.validate_layout(layout, {"a"})
    assert any("absent from base layer" in f.message for f in findings)


# --- swapping


def test_swap_involution(layouts, geometry):
    q = layouts["qwerty"]
    once = kl.swap_keys(q, "AD01", "AD02", geometry)
    assert once.base()["AD01"] == "w" and once.base()["AD02"] == "q"
    twice = kl.swap_keys(once, "AD01", "AD02", geometry)
    assert twice.layers == q.layers


def test_swap_same_key_identity(layouts, geometry):
    q = layouts["qwerty"]
    assert kl.swap_keys(q, "AC01", "AC01", geometry).layers == q.layers


def test_swap_moves_shift_layer_with_base(layouts, geometry):
    swapped = kl.swap_keys(layouts["qwerty"], "AC01", "AD03", geometry)
    assert swapped.base()["AD03"] == "a"
    assert swapped.layers["shift"]["AD03"] == "A"
    assert swapped.layers["shift"]["AC01"] == "E"


def test_swap_unknown_key(layouts, geometry):
    with pytest.raises(Exception, match="unknown key"):
        kl.swap_keys(layouts["qwerty"], "AC01", "NOPE", geometry)


def test_swap_preserves_symbol_multiset_and_cleanliness(layouts, geometry):
    import random
    rng = random.Random(3)
    layout = layouts["lv-modern"]
    alphabet = set(kl.ALPHABETS["lv"])
    before = sorted(layout.base().values())
    ids = [k.id for k in geometry.keys]
    for _ in range(30):
        a, b = rng.sample(ids, 2)
        layout = kl.swap_keys(layout, a, b, geometry)
    assert sorted(layout.base().values()) == before
    assert [f for f in kl.validate_layout(layout, alphabet) if f.severity == "error"] == []


def test_swap_original_unchanged(layouts, geometry):
    q = layouts["qwerty"]
    before = dict(q.base())
    kl.swap_keys(q, "AC01", "AC02", geometry)
    assert q.base() == before


# --- serialization


def test_round_trip_byte_identical(layouts, geometry):
    for layout in layouts.values():
        text = serialize_layout(layout)
        assert serialize_layout(parse_layout(text, geometry)) == text


def test_round_trip_preserves_expansion(layouts, geometry):
    layout = layouts["lv-modern"]
    again = parse_layout(serialize_layout(layout), geometry)
    for symbol in sorted(kl.ALPHABETS["lv"]):
        assert kl.expand_symbol(layout, symbol) == kl.expand_symbol(again, symbol)
