import math

import pytest

import keylab as kl
from keylab import KeylabError
from keylab.optimizer import (Constraints, CorpusSource, Objective, Schedule,
                              anneal, brute_force, check_constraints,
                              objective_value, search_space_size)
from keylab.layout import serialize_layout


# --- objective


def test_single_corpus_objective_equals_total_effort(toy, toy_objective, params):
    geometry, layout, stream = toy
    triads = kl.build_triads(stream, layout)
    direct = kl.total_effort(triads, layout, geometry, params).total
    assert objective_value(layout, toy_objective) == pytest.approx(direct, rel=1e-12)


def test_zero_weight_corpus_ignored(toy, params):
    geometry, layout, stream = toy
    other = tuple(reversed(stream))
    mixed = Objective((CorpusSource("a", stream, 1.0), CorpusSource("b", other, 0.0)),
                      params, geometry)
    single = Objective((CorpusSource("a", stream, 1.0),), params, geometry)
    assert objective_value(layout, mixed) == objective_value(layout, single)


def test_weights_must_sum_to_one(toy, params):
    geometry, _, stream = toy
    with pytest.raises(Exception, match="sum to 1"):
        Objective((CorpusSource("a", stream, 0.4),), params, geometry)


# --- brute force


def test_brute_force_three_free(toy, toy_objective):
    _, layout, _ = toy
    constraints = Constraints.make(pinned=["T1", "T2", "T3", "T4", "T5", "U1", "U2"])
    _, _, count = brute_force(layout, toy_objective, constraints)
    assert count == 6


def test_brute_force_one_free(toy, toy_objective):
    _, layout, _ = toy
    constraints = Constraints.make(
        pinned=["T1", "T2", "T3", "T4", "T5", "T6", "T7", "T8", "U1"])
    best_layout, best, count = brute_force(layout, toy_objective, constraints)
    assert count == 1
    assert best == pytest.approx(objective_value(layout, toy_objective))
    assert best_layout.layers == layout.layers


def test_brute_force_group_constraint_prunes(toy, toy_objective):
    _, layout, _ = toy
    constraints = Constraints.make(pinned=["T1", "T2", "T3", "T4", "T5", "U2"],
                                   groups=[["f", "g"]])
    _, _, count = brute_force(layout, toy_objective, constraints)
    assert count < 24


def test_brute_force_too_many_free(toy, toy_objective):
    _, layout, _ = toy
    with pytest.raises(KeylabError, match="too many"):
        brute_force(layout, toy_objective, Constraints.make())


# --- search space accounting


def test_search_space_full_board(layouts, geometry):
    size = search_space_size(layouts["qwerty"], geometry, Constraints.make())
    assert size == math.factorial(47)
    assert 10 ** 59 <= size <= 10 ** 60


def test_search_space_one_free(toy):
    geometry, layout, _ = toy
    constraints = Constraints.make(
        pinned=["T1", "T2", "T3", "T4", "T5", "T6", "T7", "T8", "U1"])
    assert search_space_size(layout, geometry, constraints) == 1


def test_search_space_three_free(toy):
    geometry, layout, _ = toy
    constraints = Constraints.make(pinned=["T1", "T2", "T3", "T4", "T5", "U1", "U2"])
    assert search_space_size(layout, geometry, constraints) == 6


def test_search_space_group_upper_bound(toy, toy_objective):
    geometry, layout, _ = toy
    constraints = Constraints.make(pinned=["T1", "T2", "T3", "T4", "T5", "U2"],
                                   groups=[["f", "g"]])
    bound = search_space_size(layout, geometry, constraints)
    _, _, exact = brute_force(layout, toy_objective, constraints)
    assert bound >= exact


# --- constraints


def test_constraint_violations_reported(layouts, geometry):
    gap = Constraints.make(groups=[["q", "e"]])  # same row, w in between
    problems = check_constraints(layouts["qwerty"], geometry, gap)
    assert problems and "contiguous" in problems[0]
    spread = Constraints.make(groups=[["q", "m"]])  # different rows
    assert any("rows" in p for p in check_constraints(layouts["qwerty"], geometry, spread))


def test_pair_constraint_checks_stacking(layouts, geometry):
    ok = Constraints.make(pairs=[("ā", "a")])
    assert check_constraints(layouts["lv-modern"], geometry, ok) == []
    bad = Constraints.make(pairs=[("ē", "a")])
    assert check_constraints(layouts["lv-modern"], geometry, bad)


def test_anneal_rejects_infeasible_start(toy, toy_objective):
    _, layout, _ = toy
    bad = Constraints.make(groups=[["a", "h"]])  # ends of the home row
    with pytest.raises(KeylabError, match="infeasible"):
        anneal(layout, toy_objective, bad, Schedule(iterations=10), 0)


# --- annealing


def test_anneal_zero_iterations(toy, toy_objective, toy_constraints):
    _, layout, _ = toy
    result = anneal(layout, toy_objective, toy_constraints, Schedule(iterations=0), 1)
    assert result.evaluations == 1
    assert result.best_layout.layers == layout.layers
    assert result.best_effort == pytest.approx(objective_value(layout, toy_objective))


def test_anneal_deterministic(toy, toy_objective, toy_constraints):
    _, layout, _ = toy
    a = anneal(layout, toy_objective, toy_constraints,
               Schedule(iterations=400, restarts=3), 42)
    b = anneal(layout, toy_objective, toy_constraints,
               Schedule(iterations=400, restarts=3), 42)
    assert a.trace == b.trace
    assert a.evaluations == b.evaluations
    assert a.accepted_worse == b.accepted_worse
    assert serialize_layout(a.best_layout) == serialize_layout(b.best_layout)
    c = anneal(layout, toy_objective, toy_constraints,
               Schedule(iterations=400, restarts=3), 43)
    assert serialize_layout(c.best_layout) != serialize_layout(a.best_layout) or \
        c.trace != a.trace


def test_anneal_trace_monotone_best(toy, toy_objective, toy_constraints):
    _, layout, _ = toy
    result = anneal(layout, toy_objective, toy_constraints,
                    Schedule(iterations=600, restarts=2), 9)
    bests = [row[3] for row in result.trace]
    assert all(b2 <= b1 + 1e-12 for b1, b2 in zip(bests, bests[1:]))


def test_anneal_preserves_symbol_multiset(toy, toy_objective, toy_constraints):
    _, layout, _ = toy
    result = anneal(layout, toy_objective, toy_constraints,
                    Schedule(iterations=500, restarts=2), 4)
    assert sorted(result.best_layout.base().values()) == sorted(layout.base().values())


def test_anneal_respects_constraints(toy, toy_objective):
    geometry, layout, _ = toy
    constraints = Constraints.make(pinned=["T1", "T2", "U1", "U2"],
                                   groups=[["e", "f"]])
    result = anneal(layout, toy_objective, constraints,
                    Schedule(iterations=800, restarts=3), 17)
    assert check_constraints(result.best_layout, geometry, constraints) == []
    base = result.best_layout.base()
    assert base["T1"] == "a" and base["T2"] == "b"
    assert base["U1"] == "i" and base["U2"] == "j"


def test_anneal_debug_mode_checks_every_accepted_move(toy, toy_objective):
    geometry, layout, _ = toy
    constraints = Constraints.make(pinned=["T1", "T2", "U1", "U2"],
                                   groups=[["e", "f"]], pairs=[])
    result = anneal(layout, toy_objective, constraints,
                    Schedule(iterations=300, restarts=2), 8, debug=True)
    assert check_constraints(result.best_layout, geometry, constraints) == []


def test_anneal_matches_brute_force_on_small_board(toy, toy_objective, toy_constraints):
    _, layout, _ = toy
    _, best, _ = brute_force(layout, toy_objective, toy_constraints)
    hits = 0
    for seed in range(5):
        result = anneal(layout, toy_objective, toy_constraints,
                        Schedule(iterations=500, restarts=20), seed)
        hits += abs(result.best_effort - best) <= 1e-9 * best
    assert hits >= 4


def test_anneal_improves_or_matches_start(toy, toy_objective, toy_constraints):
    _, layout, _ = toy
    start = objective_value(layout, toy_objective)
    result = anneal(layout, toy_objective, toy_constraints,
                    Schedule(iterations=500, restarts=4), 2)
    assert result.best_effort <= start + 1e-12
    assert result.restart_bests and min(result.restart_bests) == pytest.approx(
        result.best_effort, rel=1e-9)


def test_anneal_result_reevaluates_cleanly(toy, toy_objective, toy_constraints):
    _, layout, _ = toy
    result = anneal(layout, toy_objective, toy_constraints,
                    Schedule(iterations=300, restarts=2), 5)
    assert result.best_effort == pytest.approx(
        objective_value(result.best_layout, toy_objective), rel=1e-9)


def test_pareto_logging_two_corpora(toy, params, toy_constraints):
    geometry, layout, stream = toy
    objective = Objective((CorpusSource("fwd", stream, 0.5),
                           CorpusSource("rev", tuple(reversed(stream)), 0.5)),
                          params, geometry)
    result = anneal(layout, objective, toy_constraints,
                    Schedule(iterations=300, restarts=1), 3, pareto=True)
    assert result.pareto_points
    assert all(len(point) == 2 for point in result.pareto_points)
    # the logged pair of the final accepted state matches the weighted best
    weighted = [0.5 * a + 0.5 * b for a, b in result.pareto_points]
    assert min(weighted) == pytest.approx(result.best_effort, rel=1e-9)


def test_default_bilingual_search_beats_qwerty(layouts, geometry, params,
                                               lv_stream, en_stream):
    # Scaled-down version of the shipped default configuration.
    objective = Objective((CorpusSource("latvian", lv_stream, 0.5),
                           CorpusSource("english", en_stream, 0.5)),
                          params, geometry)
    pins = ["TLDE"] + [f"AE{i:02d}" for i in range(1, 13)] + \
        ["AC06", "AD11", "AD12", "AC11"]
    constraints = Constraints.make(pinned=pins, groups=[["x", "z", "c", "v"]],
                                   pairs=[("ā", "a"), ("ē", "e"), ("ī", "i")])
    result = anneal(layouts["lv-modern"], objective, constraints,
                    Schedule(iterations=3000, restarts=2), 12)
    e_lv = objective_value(result.best_layout,
                           Objective((CorpusSource("lv", lv_stream, 1.0),), params, geometry))
    e_en = objective_value(result.best_layout,
                           Objective((CorpusSource("en", en_stream, 1.0),), params, geometry))
    q_lv = objective_value(layouts["lv-qwerty"],
                           Objective((CorpusSource("lv", lv_stream, 1.0),), params, geometry))
    q_en = objective_value(layouts["qwerty"],
                           Objective((CorpusSource("en", en_stream, 1.0),), params, geometry))
    assert e_lv < q_lv and e_en < q_en


def test_two_corpus_objective_tradeoff(toy, params):
    geometry, layout, stream = toy
    reversed_stream = tuple(reversed(stream))
    objective = Objective((CorpusSource("fwd", stream, 0.5),
                           CorpusSource("rev", reversed_stream, 0.5)),
                          params, geometry)
    value = objective_value(layout, objective)
    fwd = objective_value(layout, Objective((CorpusSource("fwd", stream, 1.0),),
                                            params, geometry))
    rev = objective_value(layout, Objective((CorpusSource("rev", reversed_stream, 1.0),),
                                            params, geometry))
    assert value == pytest.approx(0.5 * fwd + 0.5 * rev, rel=1e-12)
