"""Shared fixtures: bundled data, corpora streams, and a toy search board."""

import random

import pytest

import keylab as kl
from keylab.bundled import read_text
from keylab.optimizer import Constraints, CorpusSource, Objective


@pytest.fixture(scope="session")
def geometry():
    return kl.bundled_geometry("ansi-47")


@pytest.fixture(scope="session")
def params():
    return kl.parse_params(read_text("params", "default.params"))


@pytest.fixture(scope="session")
def layouts():
    names = ("qwerty", "dvorak", "colemak", "lv-qwerty", "lv-ergonomic", "lv-modern")
    return {name: kl.bundled_layout(name) for name in names}


@pytest.fixture(scope="session")
def lv_stream():
    return tuple(kl.normalize(read_text("corpora", "latvian.txt"), kl.ALPHABETS["lv"]))


@pytest.fixture(scope="session")
def en_stream():
    return tuple(kl.normalize(read_text("corpora", "english.txt"), kl.ALPHABETS["en"]))


@pytest.fixture(scope="session")
def lv_stats(lv_stream):
    return kl.count_chars(lv_stream, kl.ALPHABETS["lv"], source_ids=["latvian.txt"])


@pytest.fixture(scope="session")
def en_stats(en_stream):
    return kl.count_chars(en_stream, kl.ALPHABETS["en"], source_ids=["english.txt"])


@pytest.fixture(scope="session")
def lv_triads(lv_stream, layouts):
    return {name: kl.build_triads(lv_stream, layouts[name])
            for name in ("lv-qwerty", "lv-ergonomic", "lv-modern")}


@pytest.fixture(scope="session")
def en_triads(en_stream, layouts):
    return {name: kl.build_triads(en_stream, layouts[name])
            for name in ("qwerty", "lv-qwerty", "lv-modern")}


TOY_GEOMETRY = """geometry toy-10
key T1 row=home x=0 y=1 hand=L finger=little home
key T2 row=home x=1 y=1 hand=L finger=ring home
key T3 row=home x=2 y=1 hand=L finger=middle home
key T4 row=home x=3 y=1 hand=L finger=index home
key T5 row=home x=4 y=1 hand=R finger=index home
key T6 row=home x=5 y=1 hand=R finger=middle home
key T7 row=home x=6 y=1 hand=R finger=ring home
key T8 row=home x=7 y=1 hand=R finger=little home
key U1 row=top x=2.5 y=0 hand=L finger=middle
key U2 row=top x=4.5 y=0 hand=R finger=index
"""

TOY_LAYOUT = """layout toy geometry toy-10
layer base
T1 a
T2 b
T3 c
T4 d
T5 e
T6 f
T7 g
T8 h
U1 i
U2 j
"""


@pytest.fixture(scope="session")
def toy():
    geometry = kl.parse_geometry(TOY_GEOMETRY)
    layout = kl.parse_layout(TOY_LAYOUT, geometry)
    rng = random.Random(7)
    letters = "abcdefghij"
    weights = [30, 25, 20, 15, 12, 9, 6, 4, 2, 1]
    words = ["".join(rng.choices(letters, weights, k=rng.randint(2, 7)))
             for _ in range(300)]
    text = " ".join(rng.choices(words, k=1500))
    stream = tuple(kl.normalize(text, frozenset(letters)))
    return geometry, layout, stream


@pytest.fixture(scope="session")
def toy_objective(toy, params):
    geometry, _, stream = toy
    return Objective((CorpusSource("toy", stream, 1.0),), params, geometry)


@pytest.fixture(scope="session")
def toy_constraints():
    return Constraints.make(pinned=["T1", "T2", "T3", "T4", "T5"])
