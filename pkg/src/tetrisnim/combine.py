"""Hypergraph combinations of games: value transfer through ``NIM_H`` and its checks."""

from __future__ import annotations

import time
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .analysis import VerificationReport, Witness, find_gap_violation, is_sg_decreasing, is_tetris
from .games import Explicit, GameGraph, GameSpec, NimH, h_combination, spec_from_dict
from .hypergraph import (
    Hypergraph,
    combine_hypergraphs,
    dimension,
    intersection_condition,
)
from .tables import sg_table, tetris_table

__all__ = [
    "CombinationInstance",
    "sg_via_theorem1",
    "tetris_via_theorem2",
    "verify_theorem1",
    "verify_theorem2",
    "verify_superposition",
    "np_gadget",
]


@dataclass(frozen=True, eq=False)
class CombinationInstance:
    inner: tuple[GameSpec, ...]
    outer: Hypergraph

    def __init__(self, inner: Sequence[GameSpec | GameGraph], outer: Hypergraph):
        inner = tuple(Explicit(g) if isinstance(g, GameGraph) else g for g in inner)
        if outer.n != len(inner):
            raise ValueError(f"outer hypergraph has {outer.n} vertices but {len(inner)} games given")
        object.__setattr__(self, "inner", inner)
        object.__setattr__(self, "outer", outer)

    @cached_property
    def joint(self) -> GameGraph:
        return h_combination(self.inner, self.outer)

    @property
    def counts(self) -> tuple[int, ...]:
        return tuple(g.num_positions for g in self.inner)

    @cached_property
    def inner_sg(self) -> list[np.ndarray]:
        return [sg_table(g).values.ravel() for g in self.inner]

    @cached_property
    def inner_tetris(self) -> list[np.ndarray]:
        return [tetris_table(g).values.ravel() for g in self.inner]

    def joint_position(self, joint_id: int) -> tuple:
        ids = np.unravel_index(joint_id, self.counts)
        return tuple(g.position_at(int(i)) for g, i in zip(self.inner, ids))

    def inner_ids(self, pos) -> tuple[int, ...]:
        if len(pos) != len(self.inner):
            raise ValueError(f"joint position needs {len(self.inner)} components")
        return tuple(g.position_id(p) for g, p in zip(self.inner, pos))

    def to_dict(self) -> dict:
        return {"outer": self.outer.to_dict(), "inner": [g.to_dict() for g in self.inner]}

    @classmethod
    def from_dict(cls, data) -> "CombinationInstance":
        if not isinstance(data, dict) or "outer" not in data or "inner" not in data:
            raise ValueError("instance: expected an object with 'outer' and 'inner'")
        if not isinstance(data["inner"], list):
            raise ValueError("instance: 'inner' must be a list of game specs")
        return cls([spec_from_dict(g) for g in data["inner"]], Hypergraph.from_dict(data["outer"]))


def _outer_table(outer: Hypergraph, component_values: list[np.ndarray], solver) -> np.ndarray:
    caps = [int(v.max(initial=0)) for v in component_values]
    return solver(NimH(outer, caps)).values


def _predicted(inst: CombinationInstance, component_values, solver) -> np.ndarray:
    table = _outer_table(inst.outer, component_values, solver)
    if not component_values:
        return table.reshape(1)
    return table[np.ix_(*component_values)].ravel()


def sg_via_theorem1(inst: CombinationInstance, pos) -> int:
    """SG of the ``NIM_outer`` position formed by the components' SG values."""
    ids = inst.inner_ids(pos)
    g = tuple(int(v[i]) for v, i in zip(inst.inner_sg, ids))
    return sg_table(NimH(inst.outer, g))[g]


def tetris_via_theorem2(inst: CombinationInstance, pos) -> int:
    """Tetris value of ``NIM_outer`` at the components' Tetris values."""
    ids = inst.inner_ids(pos)
    t = tuple(int(v[i]) for v, i in zip(inst.inner_tetris, ids))
    return tetris_table(NimH(inst.outer, t))[t]


def _compare(inst, direct, predicted, quantity, t0) -> VerificationReport:
    mismatch = np.flatnonzero(direct != predicted)
    witness = None
    if len(mismatch):
        j = int(mismatch[0])
        witness = Witness(
            inst.joint_position(j),
            quantity,
            int(predicted[j]),
            int(direct[j]),
            extra={"joint_id": j},
        )
    stats = {"positions": int(direct.size), "mismatches": int(len(mismatch))}
    return VerificationReport(
        "PASS" if witness is None else "FAIL", witness, stats, time.perf_counter() - t0
    )


def verify_theorem1(inst: CombinationInstance, require_sg_decreasing: bool = True) -> VerificationReport:
    """Compare the combined game's SG table with ``NIM_outer`` applied to component SG values.

    ``expected`` in a witness is the transferred value, ``actual`` the direct one.
    """
    t0 = time.perf_counter()
    if require_sg_decreasing:
        for i, g in enumerate(inst.inner):
            if not is_sg_decreasing(g).passed:
                raise ValueError(f"inner game {i} ({g!r}) is not SG decreasing")
    direct = sg_table(Explicit(inst.joint)).values
    predicted = _predicted(inst, inst.inner_sg, sg_table)
    return _compare(inst, direct, predicted, "sg of combined game", t0)


def verify_theorem2(inst: CombinationInstance) -> VerificationReport:
    """Compare the combined game's Tetris table with ``NIM_outer`` applied to component Tetris values."""
    t0 = time.perf_counter()
    direct = tetris_table(Explicit(inst.joint)).values
    predicted = _predicted(inst, inst.inner_tetris, tetris_table)
    return _compare(inst, direct, predicted, "tetris of combined game", t0)


def verify_superposition(
    outer: Hypergraph, inner: Sequence[Hypergraph], caps
) -> VerificationReport:
    """Check that combining Tetris hypergraphs along a Tetris hypergraph stays Tetris.

    The combined hypergraph must show no gap on the box and, at dimension
    3 or less, satisfy the intersection condition. Beyond dimension 3 the
    result only speaks for the box, which ``stats["scope"]`` records.
    """
    t0 = time.perf_counter()
    for name, g in [("outer", outer)] + [(f"inner[{i}]", g) for i, g in enumerate(inner)]:
        verdict = is_tetris(g)
        if verdict.status != "TETRIS":
            raise ValueError(f"{name} hypergraph is not Tetris ({verdict.status})")
    combined = combine_hypergraphs(outer, inner)
    gap = find_gap_violation(combined, caps)
    dim = dimension(combined) if combined.masks else 0
    cond = intersection_condition(combined) if dim <= 3 else None
    witness = None
    if gap is not None:
        witness = Witness(gap[0], "tetris value unreachable in one move", gap[1], None)
    elif cond is not None and not cond.passed:
        witness = Witness(None, "intersection condition", "PASS", "FAIL", extra={"S": cond.witness})
    stats = {
        "combined": combined.to_dict(),
        "dimension": dim,
        "scope": "exact" if cond is not None else "box only (UNKNOWN beyond box)",
    }
    return VerificationReport(
        "PASS" if witness is None else "FAIL", witness, stats, time.perf_counter() - t0
    )


def np_gadget(h: Hypergraph) -> tuple[Hypergraph, tuple[int, ...]]:
    """Add a shared apex vertex to every edge; the packing value at the returned
    position equals the matching number of ``h``."""
    if not h.masks:
        raise ValueError("gadget needs a nonempty hypergraph")
    w = h.n
    hstar = Hypergraph(h.n + 1, (e + (w,) for e in h.edges))
    x = (1,) * h.n + (len(h),)
    return hstar, x
