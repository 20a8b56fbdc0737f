"""Verification of SG-decreasing games, the zero-Tetris set, and the Tetris property."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from ._validation import check_caps
from .games import GameSpec, NimH
from .hypergraph import Hypergraph, dimension, intersection_condition
from .tables import (
    ValueTable,
    below_words,
    one_hot_words,
    sg_table,
    successor_reduce,
    tetris_table,
    _n_words,
)

__all__ = [
    "Witness",
    "VerificationReport",
    "InternalConsistencyError",
    "is_sg_decreasing",
    "z_set",
    "verify_z_equals_p",
    "TetrisVerdict",
    "is_tetris",
    "moore_p_criterion",
    "find_gap_violation",
]


class InternalConsistencyError(AssertionError):
    """Two computations that must agree did not; always a bug."""


def _jsonable(value):
    if isinstance(value, (tuple, list)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (np.integer,)):
        return int(value)
    return value


@dataclass(frozen=True)
class Witness:
    """A concrete, re-checkable counterexample."""

    position: Any
    quantity: str
    expected: Any
    actual: Any
    move: Any = None
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = {"position": _jsonable(self.position)}
        if self.move is not None:
            out["move"] = _jsonable(self.move)
        out.update(
            quantity=self.quantity,
            expected=_jsonable(self.expected),
            actual=_jsonable(self.actual),
        )
        if self.extra:
            out["extra"] = _jsonable(self.extra)
        return out


@dataclass
class VerificationReport:
    status: str
    witness: Witness | None = None
    stats: dict = field(default_factory=dict)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return self.status == "PASS"

    def __bool__(self):
        return self.passed

    def to_dict(self, include_timing: bool = False) -> dict:
        out: dict = {"status": self.status}
        out["witness"] = None if self.witness is None else self.witness.to_dict()
        out["stats"] = _jsonable(self.stats)
        if include_timing:
            out["elapsed"] = round(self.elapsed, 6)
        return out


def _report(passed: bool, witness, stats, t0) -> VerificationReport:
    return VerificationReport(
        "PASS" if passed else "FAIL", None if passed else witness, stats, time.perf_counter() - t0
    )


def _first_index(mask: np.ndarray):
    hits = np.argwhere(mask)
    return None if len(hits) == 0 else tuple(int(v) for v in hits[0])


def _explicit_checks(spec: GameSpec, sg: ValueTable, t: ValueTable):
    graph = spec.to_graph()
    bad_move = None
    gap_ok = True
    for p in range(graph.num_positions):
        for q in graph.moves[p]:
            if bad_move is None and sg[q] >= sg[p]:
                bad_move = (p, q)
        reach = {t[q] for q in graph.moves[p]}
        if not all(v in reach for v in range(t[p])):
            gap_ok = False
    return bad_move, gap_ok


def _box_checks(spec: NimH, sg: ValueTable, t: ValueTable):
    edges = spec.hypergraph.edges
    succ_max = successor_reduce(sg.values, edges, np.maximum, -1)
    bad = succ_max >= sg.values
    bad_move = None
    x = _first_index(bad)
    if x is not None:
        for y in spec.moves(x):
            if sg[y] >= sg[x]:
                bad_move = (x, y)
                break
    n_words = _n_words(int(t.values.max(initial=0)))
    reach = successor_reduce(
        one_hot_words(t.values, n_words), edges, np.bitwise_or, np.uint64(0)
    )
    need = below_words(t.values, n_words)
    gap_ok = bool(np.all((reach & need) == need))
    return bad_move, gap_ok


def is_sg_decreasing(spec: GameSpec) -> VerificationReport:
    """Check that every move lowers the SG value.

    Three equivalent criteria are evaluated independently: no move keeps or
    raises SG; the SG and Tetris tables coincide; every Tetris value below
    the current one is reachable in one move. Disagreement raises
    :class:`InternalConsistencyError`.
    """
    t0 = time.perf_counter()
    sg = sg_table(spec)
    t = tetris_table(spec)
    if isinstance(spec, NimH):
        bad_move, gap_ok = _box_checks(spec, sg, t)
    else:
        bad_move, gap_ok = _explicit_checks(spec, sg, t)
    decreasing = bad_move is None
    equal = np.array_equal(sg.values, t.values)
    if not decreasing == equal == gap_ok:
        raise InternalConsistencyError(
            f"criteria disagree: moves decrease SG={decreasing}, SG==Tetris={equal}, "
            f"no Tetris gap={gap_ok}"
        )
    witness = None
    if bad_move is not None:
        x, y = bad_move
        witness = Witness(x, "sg of move target (must be below source)", sg[x], sg[y], move=y)
    stats = {"positions": sg.num_positions}
    return _report(decreasing, witness, stats, t0)


def _support_free(x, masks) -> bool:
    supp = 0
    for i, v in enumerate(x):
        if v:
            supp |= 1 << i
    return not any(m & ~supp == 0 for m in masks)


def z_set(h: Hypergraph, caps) -> set[tuple[int, ...]]:
    """Box positions with Tetris value zero, i.e. no edge inside the support."""
    caps = check_caps(caps, h.n)
    return {x for x in np.ndindex(tuple(c + 1 for c in caps)) if _support_free(x, h.masks)}


def verify_z_equals_p(h: Hypergraph, caps) -> VerificationReport:
    """Compare the zero-Tetris positions with the P-positions on a box."""
    t0 = time.perf_counter()
    spec = NimH(h, caps)
    sg = sg_table(spec)
    z = z_set(h, spec.caps)
    p = sg.zeros()
    if not z <= p:
        raise InternalConsistencyError("a position with no moves has nonzero SG value")
    extra = sorted(p - z)
    witness = None
    if extra:
        x = extra[0]
        witness = Witness(x, "tetris value of a P-position", 0, tetris_table(spec)[x])
    stats = {"positions": sg.num_positions, "z_size": len(z), "p_size": len(p)}
    return _report(not extra, witness, stats, t0)


def moore_p_criterion(x, k: int) -> bool:
    """Moore's rule: every binary column of ``x`` sums to a multiple of ``k + 1``."""
    if k < 1:
        raise ValueError("k must be at least 1")
    x = [int(v) for v in x]
    top = max(x, default=0).bit_length()
    return all(sum((v >> b) & 1 for v in x) % (k + 1) == 0 for b in range(top))


def find_gap_violation(
    h: Hypergraph, caps, tetris: ValueTable | None = None
) -> tuple[tuple[int, ...], int] | None:
    """First ``(x, v)`` with ``v < T(x)`` and no move from ``x`` reaching Tetris value ``v``.

    For an edge ``H`` every ``H``-move target lies between the fast and slow
    ``H``-moves, so by monotonicity its value lies in
    ``[T(fast), T(slow)]``; every value in that interval is attained. The
    reachable set is therefore the union of these intervals. Positions are
    scanned in colex order, then ``v`` ascending. Any hit is re-checked
    against the full move list.
    """
    spec = NimH(h, caps)
    t = tetris if tetris is not None else tetris_table(spec)
    vals = t.values
    shape = spec.shape
    ndim = len(shape)
    top = int(vals.max(initial=0))
    if top == 0:
        return None
    intervals = []
    for edge in h.edges:
        ts = np.full(shape, -1, dtype=np.int64)
        dst = tuple(slice(1, None) if i in edge else slice(None) for i in range(ndim))
        src = tuple(slice(None, -1) if i in edge else slice(None) for i in range(ndim))
        ts[dst] = vals[src]
        fast = vals[tuple(slice(0, 1) if i in edge else slice(None) for i in range(ndim))]
        tf = np.broadcast_to(fast, shape)
        intervals.append((ts >= 0, tf, ts))
    first_v = np.full(shape, -1, dtype=np.int64)
    for v in range(top):
        covered = np.zeros(shape, dtype=bool)
        for valid, tf, ts in intervals:
            covered |= valid & (tf <= v) & (ts >= v)
        hit = (v < vals) & ~covered & (first_v < 0)
        first_v[hit] = v
    if not (first_v >= 0).any():
        return None
    colex = np.transpose(first_v >= 0)
    idx = _first_index(colex)
    x = tuple(reversed(idx))
    v = int(first_v[x])
    if any(t[y] == v for y in spec.moves(x)):
        raise InternalConsistencyError(f"interval scan reported a reachable value {v} at {x}")
    return x, v


@dataclass(frozen=True)
class TetrisVerdict:
    status: str
    violating_set: tuple[int, ...] | None = None
    gap: tuple[tuple[int, ...], int] | None = None
    note: str = ""

    def to_dict(self) -> dict:
        out: dict = {"status": self.status}
        out["violating_set"] = None if self.violating_set is None else list(self.violating_set)
        out["gap"] = (
            None if self.gap is None else {"position": list(self.gap[0]), "value": self.gap[1]}
        )
        if self.note:
            out["note"] = self.note
        return out


def is_tetris(h: Hypergraph, caps=None) -> TetrisVerdict:
    """Decide (dimension <= 3) or try to refute (higher dimension) the Tetris property.

    ``caps`` bounds the box searched for a concrete gap witness. For
    dimension 4 or more a passing intersection condition with no gap found
    in the box yields ``UNKNOWN``.
    """
    if not h.masks:
        return TetrisVerdict("TETRIS", note="no edges: every position is terminal")
    cond = intersection_condition(h)
    dim = dimension(h)
    gap = None
    if caps is not None and (dim >= 4 or not cond.passed):
        gap = find_gap_violation(h, caps)
    if not cond.passed:
        return TetrisVerdict("NOT_TETRIS", cond.witness, gap, "intersection condition fails")
    if dim <= 3:
        return TetrisVerdict("TETRIS", note="intersection condition holds, dimension <= 3")
    if gap is not None:
        return TetrisVerdict("NOT_TETRIS", None, gap, "gap found in box")
    note = "no gap in box" if caps is not None else "no box searched"
    return TetrisVerdict("UNKNOWN", note=f"intersection condition holds, dimension {dim}; {note}")
