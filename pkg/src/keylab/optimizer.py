"""Constrained simulated annealing over base-layer key permutations.

The search permutes base-layer symbols among non-pinned keys while
honouring placement constraints: pinned keys, symbol groups that must
stay row-contiguous, and accented/plain symbol pairs that must stay
vertically stacked. Dead-key composition tables are held fixed, so the
keystroke stream of a corpus can be expanded once, in symbol space, and
candidate layouts are scored by a vectorized delta evaluator.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass

import numpy as np

from .corpus import BREAK, build_triads, keystroke_stream
from .effort import EffortParams, total_effort
from .errors import KeylabError, ValidationError
from .geometry import Geometry, Key, ROW_INDEX
from .layout import Layout

_SPACE_SYM = "\x00space"


@dataclass(frozen=True)
class CorpusSource:
    """A normalized symbol stream (with break markers) plus its weight."""
    name: str
    symbols: tuple[str, ...]
    weight: float


@dataclass(frozen=True)
class Objective:
    corpora: tuple[CorpusSource, ...]
    params: EffortParams
    geometry: Geometry

    def __post_init__(self):
        total = sum(c.weight for c in self.corpora)
        if not self.corpora or abs(total - 1.0) > 1e-9:
            raise ValidationError(f"corpus weights must sum to 1, got {total}")
        if any(c.weight < 0 for c in self.corpora):
            raise ValidationError("corpus weights must be >= 0")


@dataclass(frozen=True)
class Constraints:
    pinned: frozenset[str] = frozenset()            # key ids
    groups: tuple[frozenset[str], ...] = ()          # symbol sets, row-contiguous
    pairs: tuple[tuple[str, str], ...] = ()          # (accented, plain), stacked

    @staticmethod
    def make(pinned=(), groups=(), pairs=()) -> "Constraints":
        return Constraints(frozenset(pinned),
                           tuple(frozenset(g) for g in groups),
                           tuple((a, p) for a, p in pairs))


@dataclass(frozen=True)
class Schedule:
    iterations: int
    restarts: int = 1
    t0: float | None = None       # default: 5 * std of sampled move deltas
    cooling: float | None = None  # default: T_N = t0 / 1000
    trace_every: int = 0          # 0 -> iterations // 100


@dataclass(frozen=True)
class SearchResult:
    best_layout: Layout
    best_effort: float
    trace: tuple[tuple[int, float, float, float], ...]
    evaluations: int
    seed: int
    accepted_worse: int
    restart_bests: tuple[float, ...] = ()
    pareto_points: tuple[tuple[float, ...], ...] = ()


def objective_value(layout: Layout, objective: Objective) -> float:
    """Exact objective: rebuild each corpus' triads for this layout."""
    value = 0.0
    for corpus in objective.corpora:
        if corpus.weight == 0.0:
            continue
        triads = build_triads(corpus.symbols, layout)
        breakdown = total_effort(triads, layout, objective.geometry, objective.params)
        value += corpus.weight * breakdown.total
    return value


# ---------------------------------------------------------------------------
# constraint placement checks


def _column_of(geometry: Geometry, upper: Key, lower: Key) -> bool:
    return (ROW_INDEX[upper.row] + 1 == ROW_INDEX[lower.row]
            and abs(upper.x - lower.x) <= 0.5)


def _row_slots(geometry: Geometry) -> dict[str, list[str]]:
    rows: dict[str, list[Key]] = {}
    for k in geometry.keys:
        rows.setdefault(k.row, []).append(k)
    return {row: [k.id for k in sorted(keys, key=lambda k: k.x)]
            for row, keys in rows.items()}


def check_constraints(layout: Layout, geometry: Geometry,
                      constraints: Constraints) -> list[str]:
    """Human-readable violations; empty when the layout satisfies them."""
    problems: list[str] = []
    base_inverse = {sym: key for key, sym in layout.base().items()}
    for key_id in sorted(constraints.pinned):
        if key_id not in geometry:
            problems.append(f"pinned key {key_id!r} not in geometry")
    rows = _row_slots(geometry)
    for group in constraints.groups:
        slots = []
        for sym in sorted(group):
            key_id = base_inverse.get(sym)
            if key_id is None:
                problems.append(f"group symbol {sym!r} missing from base layer")
            else:
                slots.append(key_id)
        if len(slots) != len(group):
            continue
        row_names = {geometry.key(k).row for k in slots}
        if len(row_names) != 1:
            problems.append(f"group {sorted(group)} spans rows {sorted(row_names)}")
            continue
        order = rows[row_names.pop()]
        positions = sorted(order.index(k) for k in slots)
        if positions != list(range(positions[0], positions[0] + len(positions))):
            problems.append(f"group {sorted(group)} is not row-contiguous")
    for accented, plain in constraints.pairs:
        upper_key = base_inverse.get(accented)
        lower_key = base_inverse.get(plain)
        if upper_key is None or lower_key is None:
            problems.append(f"pair ({accented!r}, {plain!r}) missing from base layer")
            continue
        if not _column_of(geometry, geometry.key(upper_key), geometry.key(lower_key)):
            problems.append(
                f"pair ({accented!r}, {plain!r}) is not vertically stacked "
                f"with the accent on top")
    return problems


def _movable_symbols(layout: Layout, geometry: Geometry,
                     constraints: Constraints) -> tuple[list[str], list[str]]:
    """(free symbols, all movable symbols) under the constraint classes."""
    bound = set().union(*constraints.groups) if constraints.groups else set()
    for accented, plain in constraints.pairs:
        bound.add(accented)
        bound.add(plain)
    free: list[str] = []
    movable: list[str] = []
    for key_id, sym in sorted(layout.base().items()):
        if key_id in constraints.pinned:
            continue
        movable.append(sym)
        if sym not in bound:
            free.append(sym)
    return free, movable


# ---------------------------------------------------------------------------
# fast evaluator over symbol-space triads


class _Evaluator:
    def __init__(self, objective: Objective, start: Layout):
        geometry = objective.geometry
        params = objective.params
        self.params = params
        slots = list(geometry.keys)
        self.slot_ids = [k.id for k in slots]
        if geometry.space is not None:
            slots.append(geometry.space)
            self.slot_ids.append(geometry.space.id)
        self.slot_index = {kid: i for i, kid in enumerate(self.slot_ids)}
        from .effort import key_base_effort, key_penalty
        self.base_eff = np.array([key_base_effort(k, geometry) for k in slots])
        self.penalty = np.array([key_penalty(k, params) for k in slots])
        self.hand = np.array([0 if k.hand == "L" else 1 for k in slots], dtype=np.int32)
        fingers = ["little", "ring", "middle", "index", "thumb"]
        self.finger = np.array(
            [(0 if k.hand == "L" else 5) + fingers.index(k.finger) for k in slots],
            dtype=np.int32)
        self.row = np.array([float(ROW_INDEX[k.row]) for k in slots])

        # Symbol universe: every base symbol plus the fixed space stroke.
        base = start.base()
        self.symbols = sorted(base.values()) + [_SPACE_SYM]
        self.sym_index = {s: i for i, s in enumerate(self.symbols)}
        self.sym_slot = np.zeros(len(self.symbols), dtype=np.int32)
        for key_id, sym in base.items():
            self.sym_slot[self.sym_index[sym]] = self.slot_index[key_id]
        if geometry.space is not None:
            self.sym_slot[self.sym_index[_SPACE_SYM]] = self.slot_index[geometry.space.id]

        # Expand each corpus once; triads are keyed by stroke symbols, which
        # permutation-stable expansion ties to base symbols.
        key_to_sym = {key_id: sym for key_id, sym in base.items()}
        if geometry.space is not None:
            key_to_sym[geometry.space.id] = _SPACE_SYM
        self.tables = []
        self.weights = []
        self.inv_totals = []
        for corpus in objective.corpora:
            counts: dict[tuple[int, int, int], int] = {}
            window: list[int] = []
            for key_id in keystroke_stream(corpus.symbols, start):
                if key_id == BREAK:
                    window.clear()
                    continue
                window.append(self.sym_index[key_to_sym[key_id]])
                if len(window) > 3:
                    window.pop(0)
                if len(window) == 3:
                    triple = (window[0], window[1], window[2])
                    counts[triple] = counts.get(triple, 0) + 1
            if not counts:
                raise KeylabError(f"corpus {corpus.name!r} produced no triads")
            triples = sorted(counts)
            s1 = np.array([t[0] for t in triples], dtype=np.int32)
            s2 = np.array([t[1] for t in triples], dtype=np.int32)
            s3 = np.array([t[2] for t in triples], dtype=np.int32)
            cnt = np.array([counts[t] for t in triples], dtype=np.float64)
            touched: dict[int, list[int]] = {}
            for row_idx, triple in enumerate(triples):
                for sym_idx in set(triple):
                    touched.setdefault(sym_idx, []).append(row_idx)
            touched_arr = {s: np.array(v, dtype=np.int64) for s, v in touched.items()}
            self.tables.append((s1, s2, s3, cnt, touched_arr))
            self.weights.append(corpus.weight)
            self.inv_totals.append(1.0 / float(cnt.sum()))
        self.weights_arr = np.array(self.weights)
        self.inv_arr = np.array(self.inv_totals)
        self._pair_cache: dict[tuple[int, int], list[np.ndarray]] = {}

    def _triad_scores(self, table, idx) -> float:
        s1, s2, s3, cnt, _ = table
        if idx is not None:
            s1, s2, s3, cnt = s1[idx], s2[idx], s3[idx], cnt[idx]
        p = self.params
        k1 = self.sym_slot[s1]
        k2 = self.sym_slot[s2]
        k3 = self.sym_slot[s3]
        b1, b2, b3 = self.base_eff[k1], self.base_eff[k2], self.base_eff[k3]
        base = p.nest1 * b1 * (1.0 + p.nest2 * b2 * (1.0 + p.nest3 * b3))
        p1, p2, p3 = self.penalty[k1], self.penalty[k2], self.penalty[k3]
        pen = p.nest1 * p1 * (1.0 + p.nest2 * p2 * (1.0 + p.nest3 * p3))
        h1, h2, h3 = self.hand[k1], self.hand[k2], self.hand[k3]
        same12 = h1 == h2
        same23 = h2 == h3
        st = p.stroke_table
        pattern = np.where(same12 & same23, st.same_hand,
                           np.where(~same12 & ~same23, st.alternating, st.partial))
        f1, f2, f3 = self.finger[k1], self.finger[k2], self.finger[k3]
        pair12 = np.where(same12,
                          np.where(k1 == k2, st.same_key_repeat,
                                   np.where(f1 == f2, st.same_finger_diff_key, 0.0))
                          + st.row_jump_per_row * np.abs(self.row[k1] - self.row[k2]),
                          0.0)
        pair23 = np.where(same23,
                          np.where(k2 == k3, st.same_key_repeat,
                                   np.where(f2 == f3, st.same_finger_diff_key, 0.0))
                          + st.row_jump_per_row * np.abs(self.row[k2] - self.row[k3]),
                          0.0)
        total = p.k_base * base + p.k_penalty * pen + p.k_stroke * (pattern + pair12 + pair23)
        return float(np.dot(cnt, total))

    def full_by_corpus(self) -> np.ndarray:
        """Per-corpus mean triad effort under the current assignment."""
        return np.array([inv * self._triad_scores(t, None)
                         for inv, t in zip(self.inv_totals, self.tables)])

    def full(self) -> float:
        return float(self.weights_arr @ self.full_by_corpus())

    def _affected(self, sym_a: int, sym_b: int) -> list[np.ndarray]:
        key = (sym_a, sym_b) if sym_a < sym_b else (sym_b, sym_a)
        hit = self._pair_cache.get(key)
        if hit is None:
            hit = []
            for table in self.tables:
                touched = table[4]
                ia = touched.get(key[0])
                ib = touched.get(key[1])
                if ia is None and ib is None:
                    hit.append(np.empty(0, dtype=np.int64))
                elif ia is None:
                    hit.append(ib)
                elif ib is None:
                    hit.append(ia)
                else:
                    hit.append(np.union1d(ia, ib))
            self._pair_cache[key] = hit
        return hit

    def affected_for(self, sym_indices: list[int]) -> list[np.ndarray]:
        if len(sym_indices) == 2:
            return self._affected(sym_indices[0], sym_indices[1])
        per_corpus = []
        for table in self.tables:
            touched = table[4]
            parts = [touched[s] for s in sym_indices if s in touched]
            if parts:
                per_corpus.append(np.unique(np.concatenate(parts)))
            else:
                per_corpus.append(np.empty(0, dtype=np.int64))
        return per_corpus

    def subset_by_corpus(self, affected: list[np.ndarray]) -> np.ndarray:
        return np.array([
            inv * self._triad_scores(table, idx) if idx.size else 0.0
            for inv, table, idx in zip(self.inv_totals, self.tables, affected)])

    def subset_score(self, affected: list[np.ndarray]) -> float:
        return float(self.weights_arr @ self.subset_by_corpus(affected))


# ---------------------------------------------------------------------------
# move generation


class _Moves:
    """Constraint-preserving proposal generator over the evaluator state."""

    def __init__(self, evaluator: _Evaluator, layout: Layout, geometry: Geometry,
                 constraints: Constraints):
        self.ev = evaluator
        self.geometry = geometry
        self.constraints = constraints
        free, movable = _movable_symbols(layout, geometry, constraints)
        self.free = sorted(free)
        self.free_set = set(free)
        self.movable = sorted(movable)
        self.groups = [sorted(g) for g in constraints.groups]
        self.pairs = list(constraints.pairs)
        self.rows = _row_slots(geometry)
        self.row_of = {k.id: k.row for k in geometry.keys}
        self.pos_in_row = {kid: i for row in self.rows.values() for i, kid in enumerate(row)}
        # Vertical columns usable by pair constraints.
        keys = {k.id: k for k in geometry.keys}
        self.columns = []
        for upper_id, upper in keys.items():
            for lower_id, lower in keys.items():
                if _column_of(geometry, upper, lower):
                    self.columns.append((upper_id, lower_id))
        self.columns.sort()
        # Inverse slot map: slot index -> symbol index (-1 when fixed/space).
        self.slot_sym = np.full(len(evaluator.slot_ids), -1, dtype=np.int32)
        for sym, idx in evaluator.sym_index.items():
            if sym != _SPACE_SYM:
                self.slot_sym[evaluator.sym_slot[idx]] = idx

    def _sym_at(self, key_id: str) -> str | None:
        idx = self.slot_sym[self.ev.slot_index[key_id]]
        return None if idx < 0 else self.ev.symbols[idx]

    def propose(self, rng: random.Random) -> list[tuple[int, int]] | None:
        """A move as [(symbol index, new slot index), ...], or None."""
        roll = rng.random()
        if roll < 0.8 or (not self.groups and not self.pairs):
            return self._free_swap(rng)
        if roll < 0.9 and self.groups:
            return self._group_move(rng)
        if self.pairs:
            return self._pair_column_swap(rng)
        return self._free_swap(rng)

    def _swap(self, sym_a: str, sym_b: str) -> list[tuple[int, int]]:
        ia, ib = self.ev.sym_index[sym_a], self.ev.sym_index[sym_b]
        return [(ia, int(self.ev.sym_slot[ib])), (ib, int(self.ev.sym_slot[ia]))]

    def _free_swap(self, rng: random.Random) -> list[tuple[int, int]] | None:
        if len(self.free) < 2:
            return None
        sym_a, sym_b = rng.sample(self.free, 2)
        return self._swap(sym_a, sym_b)

    def _group_move(self, rng: random.Random) -> list[tuple[int, int]] | None:
        group = self.groups[rng.randrange(len(self.groups))]
        if rng.random() < 0.5 and len(group) >= 2:
            sym_a, sym_b = rng.sample(group, 2)
            return self._swap(sym_a, sym_b)
        # Translate the whole block one step along its row.
        slots = sorted((self.ev.sym_slot[self.ev.sym_index[s]] for s in group))
        key_ids = [self.ev.slot_ids[s] for s in slots]
        row = self.rows[self.row_of[key_ids[0]]]
        lo = self.pos_in_row[key_ids[0]]
        hi = self.pos_in_row[key_ids[-1]]
        direction = rng.choice((-1, 1))
        target_pos = lo - 1 if direction < 0 else hi + 1
        if not (0 <= target_pos < len(row)):
            return None
        target_key = row[target_pos]
        displaced = self._sym_at(target_key)
        if displaced is None or displaced not in self.free_set:
            return None
        move = []
        # Block shifts toward the target; displaced symbol hops to the far end.
        ordered = [row[i] for i in range(lo, hi + 1)]
        syms = [self._sym_at(k) for k in ordered]
        if direction > 0:
            for sym, new_key in zip(syms, ordered[1:] + [target_key]):
                move.append((self.ev.sym_index[sym], self.ev.slot_index[new_key]))
            move.append((self.ev.sym_index[displaced], self.ev.slot_index[ordered[0]]))
        else:
            for sym, new_key in zip(syms, [target_key] + ordered[:-1]):
                move.append((self.ev.sym_index[sym], self.ev.slot_index[new_key]))
            move.append((self.ev.sym_index[displaced], self.ev.slot_index[ordered[-1]]))
        return move

    def _pair_column_swap(self, rng: random.Random) -> list[tuple[int, int]] | None:
        accented, plain = self.pairs[rng.randrange(len(self.pairs))]
        iu = self.ev.sym_index[accented]
        il = self.ev.sym_index[plain]
        cur_upper = self.ev.slot_ids[self.ev.sym_slot[iu]]
        cur_lower = self.ev.slot_ids[self.ev.sym_slot[il]]
        candidates = []
        for upper_key, lower_key in self.columns:
            if (upper_key, lower_key) == (cur_upper, cur_lower):
                continue
            su, sl = self._sym_at(upper_key), self._sym_at(lower_key)
            if su is None or sl is None:
                continue
            if su in self.free_set and sl in self.free_set:
                candidates.append((upper_key, lower_key, su, sl))
            else:
                for acc2, plain2 in self.pairs:
                    if su == acc2 and sl == plain2:
                        candidates.append((upper_key, lower_key, su, sl))
                        break
        if not candidates:
            return None
        upper_key, lower_key, su, sl = candidates[rng.randrange(len(candidates))]
        return [
            (iu, self.ev.slot_index[upper_key]),
            (il, self.ev.slot_index[lower_key]),
            (self.ev.sym_index[su], self.ev.slot_index[cur_upper]),
            (self.ev.sym_index[sl], self.ev.slot_index[cur_lower]),
        ]

    def apply(self, move: list[tuple[int, int]]) -> list[tuple[int, int]]:
        # Moves permute symbols among their own slots, so writing every
        # (slot -> sym) entry leaves no stale slots behind.
        undo = [(sym, int(self.ev.sym_slot[sym])) for sym, _ in move]
        for sym, slot in move:
            self.ev.sym_slot[sym] = slot
            self.slot_sym[slot] = sym
        return undo


# ---------------------------------------------------------------------------
# annealing


def _materialize(start: Layout, evaluator: _Evaluator) -> Layout:
    """Build the Layout for the evaluator's current symbol assignment."""
    base = start.base()
    old_key_of = {sym: key for key, sym in base.items()}
    new_layers: dict[str, dict[str, str]] = {name: {} for name in start.layers}
    moves = {}
    for sym, old_key in old_key_of.items():
        new_key = evaluator.slot_ids[evaluator.sym_slot[evaluator.sym_index[sym]]]
        moves[old_key] = new_key
    for layer, mapping in start.layers.items():
        for key_id, sym in mapping.items():
            new_layers[layer][moves.get(key_id, key_id)] = sym
    return Layout(start.name, start.geometry_id, new_layers, start.deadkeys)


def anneal(start: Layout, objective: Objective, constraints: Constraints,
           schedule: Schedule, seed: int, pareto: bool = False,
           debug: bool = False) -> SearchResult:
    """Simulated annealing, reproducible from the seed.

    Proposes constraint-preserving moves (free swaps, group translations
    and in-group swaps, pair-column swaps), accepting worse layouts with
    probability exp(-dE/T) under geometric cooling; restart chains run
    from seeded scrambles and merge by (effort, chain index). With
    ``pareto`` the per-corpus effort pair of every accepted layout is
    recorded for trade-off inspection. With ``debug`` every accepted
    move is re-checked against the constraints (always checked at start
    and end).
    """
    geometry = objective.geometry
    problems = check_constraints(start, geometry, constraints)
    if problems:
        raise KeylabError("infeasible constraints: " + "; ".join(problems))
    if schedule.iterations < 0 or schedule.restarts < 1:
        raise KeylabError("schedule needs iterations >= 0 and restarts >= 1")

    evaluator = _Evaluator(objective, start)
    moves = _Moves(evaluator, start, geometry, constraints)
    start_assignment = evaluator.sym_slot.copy()
    n_iter = schedule.iterations

    # Temperature scale from the move-delta distribution at the start.
    t0 = schedule.t0
    if t0 is None:
        rng = random.Random(seed + 1_000_000_007)
        deltas = []
        for _ in range(1000):
            move = moves.propose(rng)
            if move is None:
                continue
            affected = evaluator.affected_for([sym for sym, _ in move])
            before = evaluator.subset_score(affected)
            undo = moves.apply(move)
            after = evaluator.subset_score(affected)
            moves.apply(undo)
            deltas.append(after - before)
        spread = float(np.std(deltas)) if deltas else 0.0
        t0 = 5.0 * spread if spread > 0 else 1e-6
    cooling = schedule.cooling
    if cooling is None:
        cooling = (1.0 / 1000.0) ** (1.0 / n_iter) if n_iter > 0 else 1.0
    trace_every = schedule.trace_every or max(1, n_iter // 100)

    weights = evaluator.weights_arr
    trace: list[tuple[int, float, float, float]] = []
    pareto_points: list[tuple[float, ...]] = []
    evaluations = 0
    accepted_worse = 0
    best_assignment = None
    best_internal = math.inf
    best_chain_index = -1
    restart_bests: list[float] = []
    global_iter = 0

    for chain in range(schedule.restarts):
        rng = random.Random(seed + chain)
        evaluator.sym_slot[:] = start_assignment
        moves.slot_sym[:] = -1
        for sym, idx in evaluator.sym_index.items():
            if sym != _SPACE_SYM:
                moves.slot_sym[evaluator.sym_slot[idx]] = idx
        if chain > 0:
            for _ in range(15 * max(2, len(moves.movable))):
                move = moves.propose(rng)
                if move is not None:
                    moves.apply(move)
        energy_vec = evaluator.full_by_corpus()
        energy = float(weights @ energy_vec)
        evaluations += 1
        if pareto:
            pareto_points.append(tuple(energy_vec))
        chain_best = energy
        chain_best_assignment = evaluator.sym_slot.copy()
        if energy < best_internal:
            best_internal, best_assignment, best_chain_index = energy, chain_best_assignment, chain
        temperature = t0
        for i in range(n_iter):
            if i % trace_every == 0:
                trace.append((global_iter, temperature, energy, best_internal))
            move = moves.propose(rng)
            if move is not None:
                affected = evaluator.affected_for([sym for sym, _ in move])
                before = evaluator.subset_by_corpus(affected)
                undo = moves.apply(move)
                after = evaluator.subset_by_corpus(affected)
                evaluations += 1
                delta_vec = after - before
                delta = float(weights @ delta_vec)
                if delta <= 0 or rng.random() < math.exp(-delta / max(temperature, 1e-300)):
                    energy_vec = energy_vec + delta_vec
                    energy += delta
                    if delta > 0:
                        accepted_worse += 1
                    if pareto:
                        pareto_points.append(tuple(energy_vec))
                    if debug:
                        problems = check_constraints(
                            _materialize(start, evaluator), geometry, constraints)
                        if problems:
                            raise KeylabError(
                                "constraint broken by accepted move: " + "; ".join(problems))
                    if energy < chain_best:
                        chain_best = energy
                        chain_best_assignment = evaluator.sym_slot.copy()
                        if energy < best_internal:
                            best_internal = energy
                            best_assignment = chain_best_assignment
                            best_chain_index = chain
                else:
                    moves.apply(undo)
            temperature *= cooling
            global_iter += 1
            if (i + 1) % 20000 == 0:
                energy_vec = evaluator.full_by_corpus()
                energy = float(weights @ energy_vec)
        # Re-derive the chain end state exactly once per chain.
        energy_vec = evaluator.full_by_corpus()
        energy = float(weights @ energy_vec)
        if energy < chain_best:
            chain_best = energy
            chain_best_assignment = evaluator.sym_slot.copy()
        if (chain_best, chain) < (best_internal, best_chain_index):
            best_internal, best_assignment, best_chain_index = (
                chain_best, chain_best_assignment, chain)
        restart_bests.append(chain_best)
        trace.append((global_iter, temperature, energy, best_internal))

    evaluator.sym_slot[:] = best_assignment
    best_layout = _materialize(start, evaluator)
    end_problems = check_constraints(best_layout, geometry, constraints)
    if end_problems:
        raise KeylabError("search ended in invalid state: " + "; ".join(end_problems))
    best_effort = objective_value(best_layout, objective)
    if best_internal and abs(best_effort - best_internal) > 1e-9 * max(abs(best_effort), 1.0):
        raise KeylabError(
            f"evaluator disagrees with re-evaluation: {best_internal} vs {best_effort}")
    return SearchResult(best_layout, best_effort, tuple(trace), evaluations, seed,
                        accepted_worse, tuple(restart_bests), tuple(pareto_points))


# ---------------------------------------------------------------------------
# exhaustive oracle and search-space accounting


def brute_force(start: Layout, objective: Objective, constraints: Constraints,
                limit: int = 8) -> tuple[Layout, float, int]:
    """Exact enumeration of constraint-satisfying permutations (small boards)."""
    geometry = objective.geometry
    problems = check_constraints(start, geometry, constraints)
    if problems:
        raise KeylabError("infeasible constraints: " + "; ".join(problems))
    _, movable = _movable_symbols(start, geometry, constraints)
    if len(movable) > limit:
        raise KeylabError(f"too many free keys for brute force: {len(movable)} > {limit}")
    evaluator = _Evaluator(objective, start)
    base_inverse = {sym: key for key, sym in start.base().items()}
    slots = [evaluator.slot_index[base_inverse[sym]] for sym in movable]
    sym_idx = [evaluator.sym_index[sym] for sym in movable]
    best = None
    best_perm = None
    enumerated = 0
    for perm in itertools.permutations(slots):
        for s, slot in zip(sym_idx, perm):
            evaluator.sym_slot[s] = slot
        candidate = _materialize(start, evaluator)
        if check_constraints(candidate, geometry, constraints):
            continue
        enumerated += 1
        value = evaluator.full()
        if best is None or value < best:
            best, best_perm = value, perm
    for s, slot in zip(sym_idx, best_perm):
        evaluator.sym_slot[s] = slot
    best_layout = _materialize(start, evaluator)
    return best_layout, objective_value(best_layout, objective), enumerated


def search_space_size(layout: Layout, geometry: Geometry,
                      constraints: Constraints) -> int:
    """Count of constraint-satisfying base-layer permutations.

    Exact for pin-only constraints; with groups or pairs this is the
    documented upper bound free! * group placements (interactions between
    constraint classes are ignored).
    """
    free, movable = _movable_symbols(layout, geometry, constraints)
    loose = len(free)
    size = math.factorial(loose)
    movable_keys = {key for key, sym in layout.base().items()
                    if key not in constraints.pinned}
    rows = _row_slots(geometry)
    for group in constraints.groups:
        n = len(group)
        placements = 0
        for row in rows.values():
            usable = [kid in movable_keys for kid in row]
            for i in range(len(row) - n + 1):
                if all(usable[i:i + n]):
                    placements += 1
        size *= placements * math.factorial(n)
    if constraints.pairs:
        keys = {k.id: k for k in geometry.keys}
        columns = sum(
            1 for upper in keys.values() for lower in keys.values()
            if _column_of(geometry, upper, lower)
            and upper.id in movable_keys and lower.id in movable_keys)
        for _ in constraints.pairs:
            size *= columns
    return size
