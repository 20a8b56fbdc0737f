"""Impartial games: explicit DAGs, the boxed ``NIM_H`` family, and H-combinations.

Positions of boxed games are tuples of pile sizes inside ``[0, cap_i]``;
their ids are row-major mixed-radix indices over the box. Positions of an
explicit game are the integers ``0 .. N-1``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

import numpy as np

from ._validation import check_caps, check_nonneg_int, check_position, make_rng
from .hypergraph import (
    Hypergraph,
    exact_hypergraph,
    from_mask,
    moore_hypergraph,
)

__all__ = [
    "GameGraph",
    "GameSpec",
    "NimH",
    "NimPile",
    "NimSum",
    "NimMoore",
    "NimExact",
    "Explicit",
    "iter_moves",
    "enumerate_moves",
    "is_terminal",
    "explicit_from_boxed",
    "h_combination",
    "random_sg_decreasing_game",
    "random_game",
    "spec_from_dict",
]


class CycleError(ValueError):
    pass


@dataclass(frozen=True)
class GameGraph:
    """Finite acyclic game: ``moves[p]`` lists the positions reachable from ``p``."""

    moves: tuple[tuple[int, ...], ...]
    start: int | None = None

    def __post_init__(self):
        moves = tuple(tuple(int(t) for t in row) for row in self.moves)
        object.__setattr__(self, "moves", moves)
        n = len(moves)
        for p, row in enumerate(moves):
            for t in row:
                if not 0 <= t < n:
                    raise ValueError(f"move {p}->{t} targets an unknown position")
        if self.start is not None and not 0 <= self.start < n:
            raise ValueError(f"start position {self.start} out of range")
        _ = self.topological_order

    @property
    def num_positions(self) -> int:
        return len(self.moves)

    @property
    def num_moves(self) -> int:
        return sum(len(row) for row in self.moves)

    @cached_property
    def topological_order(self) -> tuple[int, ...]:
        """Positions ordered so every move goes to an earlier entry (terminals first)."""
        n = len(self.moves)
        remaining = [len(row) for row in self.moves]
        preds: list[list[int]] = [[] for _ in range(n)]
        for p, row in enumerate(self.moves):
            for t in row:
                preds[t].append(p)
        stack = [p for p in range(n) if remaining[p] == 0]
        order = []
        while stack:
            p = stack.pop()
            order.append(p)
            for q in preds[p]:
                remaining[q] -= 1
                if remaining[q] == 0:
                    stack.append(q)
        if len(order) != n:
            raise CycleError("game graph has a directed cycle")
        return tuple(order)

    @cached_property
    def predecessors(self) -> tuple[tuple[int, ...], ...]:
        preds: list[list[int]] = [[] for _ in self.moves]
        for p, row in enumerate(self.moves):
            for t in row:
                preds[t].append(p)
        return tuple(tuple(r) for r in preds)

    def canonical(self) -> "GameGraph":
        """Same game with each move list sorted, for move-for-move comparisons."""
        return GameGraph(tuple(tuple(sorted(row)) for row in self.moves), self.start)

    def to_dict(self) -> dict:
        out = {"positions": self.num_positions, "moves": [list(r) for r in self.moves]}
        if self.start is not None:
            out["start"] = self.start
        return out

    @classmethod
    def from_dict(cls, data) -> "GameGraph":
        if not isinstance(data, dict):
            raise ValueError("game graph: expected an object")
        for key in ("positions", "moves"):
            if key not in data:
                raise ValueError(f"game graph: missing field '{key}'")
        count = data["positions"]
        moves = data["moves"]
        if not isinstance(count, int) or isinstance(count, bool) or count < 0:
            raise ValueError("game graph: 'positions' must be a nonnegative integer")
        if not isinstance(moves, list) or len(moves) != count:
            raise ValueError("game graph: 'moves' must be a list with one entry per position")
        for i, row in enumerate(moves):
            if not isinstance(row, list) or not all(
                isinstance(t, int) and not isinstance(t, bool) for t in row
            ):
                raise ValueError(f"game graph: moves[{i}] must be a list of integers")
        start = data.get("start")
        try:
            return cls(tuple(tuple(r) for r in moves), start)
        except ValueError as exc:
            raise ValueError(f"game graph: {exc}") from None


class GameSpec:
    """Common surface of every game kind."""

    kind: str = ""
    boxed: bool = False

    @property
    def num_positions(self) -> int:
        raise NotImplementedError

    def positions(self) -> Iterator:
        raise NotImplementedError

    def check_position(self, pos):
        raise NotImplementedError

    def position_id(self, pos) -> int:
        raise NotImplementedError

    def position_at(self, pid: int):
        raise NotImplementedError

    def moves(self, pos) -> Iterator:
        raise NotImplementedError

    def to_graph(self) -> GameGraph:
        raise NotImplementedError

    def to_dict(self) -> dict:
        raise NotImplementedError

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    def __eq__(self, other):
        if type(self) is not type(other):
            return NotImplemented
        return self.to_dict() == other.to_dict()

    def __hash__(self):
        return hash(self.to_json())


class NimH(GameSpec):
    """``NIM_H`` restricted to the box ``[0, caps]``.

    A move picks an edge ``H`` inside the support and lowers every pile of
    ``H`` (and only those) by a positive amount. Moves never increase a
    pile, so the box is closed under play.
    """

    kind = "nim_h"
    boxed = True

    def __init__(self, hypergraph: Hypergraph, caps):
        if not isinstance(hypergraph, Hypergraph):
            raise TypeError("hypergraph must be a Hypergraph")
        self.hypergraph = hypergraph
        self.caps = check_caps(caps, hypergraph.n)
        self.shape = tuple(c + 1 for c in self.caps)
        strides = []
        acc = 1
        for s in reversed(self.shape):
            strides.append(acc)
            acc *= s
        self.strides = tuple(reversed(strides))

    @property
    def n(self) -> int:
        return self.hypergraph.n

    @property
    def num_positions(self) -> int:
        return int(np.prod(self.shape, dtype=np.int64))

    def positions(self):
        return itertools.product(*(range(s) for s in self.shape))

    def check_position(self, pos):
        return check_position(pos, self.caps)

    def position_id(self, pos) -> int:
        pos = self.check_position(pos)
        return sum(v * s for v, s in zip(pos, self.strides))

    def position_at(self, pid: int):
        if not 0 <= pid < self.num_positions:
            raise ValueError(f"position id {pid} out of range")
        return tuple(int(v) for v in np.unravel_index(pid, self.shape))

    def moves(self, pos):
        x = self.check_position(pos)
        for mask in self.hypergraph.masks:
            edge = from_mask(mask)
            if any(x[i] == 0 for i in edge):
                continue
            for ys in itertools.product(*(range(x[i]) for i in edge)):
                y = list(x)
                for i, v in zip(edge, ys):
                    y[i] = v
                yield tuple(y)

    def _move_ids(self, x) -> list[int]:
        base = sum(v * s for v, s in zip(x, self.strides))
        out = []
        for mask in self.hypergraph.masks:
            edge = from_mask(mask)
            if any(x[i] == 0 for i in edge):
                continue
            start = base - sum(x[i] * self.strides[i] for i in edge)
            offsets = [0]
            for i in edge:
                st = self.strides[i]
                offsets = [o + y * st for o in offsets for y in range(x[i])]
            out.extend(start + o for o in offsets)
        return out

    def to_graph(self) -> GameGraph:
        moves = tuple(tuple(self._move_ids(x)) for x in self.positions())
        return GameGraph(moves, start=self.num_positions - 1)

    def _params(self) -> dict:
        return {"hypergraph": self.hypergraph.to_dict(), "caps": list(self.caps)}

    def to_dict(self) -> dict:
        return {"kind": self.kind, **self._params()}

    def __repr__(self):
        return f"{type(self).__name__}({self._params()})"


class NimPile(NimH):
    kind = "nim_pile"

    def __init__(self, cap: int):
        self.cap = check_nonneg_int(cap, "cap")
        super().__init__(Hypergraph(1, [[0]]), (self.cap,))

    def _params(self):
        return {"cap": self.cap}


class NimSum(NimH):
    """``n`` independent piles: edges are the singletons."""

    kind = "nim_sum"

    def __init__(self, n: int, caps):
        super().__init__(Hypergraph(n, ([i] for i in range(n))), caps)

    def _params(self):
        return {"caps": list(self.caps)}


class NimMoore(NimH):
    """Moore's NIM: lower between 1 and ``k`` piles at once."""

    kind = "moore"

    def __init__(self, n: int, k: int, caps):
        self.k = k
        super().__init__(moore_hypergraph(n, k), caps)

    def _params(self):
        return {"k": self.k, "caps": list(self.caps)}


class NimExact(NimH):
    """Lower exactly ``k`` piles at once."""

    kind = "exact"

    def __init__(self, n: int, k: int, caps):
        self.k = k
        super().__init__(exact_hypergraph(n, k), caps)

    def _params(self):
        return {"k": self.k, "caps": list(self.caps)}


class Explicit(GameSpec):
    kind = "explicit"
    boxed = False

    def __init__(self, graph: GameGraph):
        if not isinstance(graph, GameGraph):
            graph = GameGraph(tuple(tuple(r) for r in graph))
        self.graph = graph

    @property
    def num_positions(self) -> int:
        return self.graph.num_positions

    def positions(self):
        return iter(range(self.graph.num_positions))

    def check_position(self, pos):
        pos = check_nonneg_int(pos, "position id")
        if pos >= self.graph.num_positions:
            raise ValueError(f"position {pos} out of range")
        return pos

    def position_id(self, pos) -> int:
        return self.check_position(pos)

    def position_at(self, pid: int):
        return self.check_position(pid)

    def moves(self, pos):
        return iter(self.graph.moves[self.check_position(pos)])

    def to_graph(self) -> GameGraph:
        return self.graph

    def to_dict(self) -> dict:
        return {"kind": self.kind, **self.graph.to_dict()}

    def __repr__(self):
        return f"Explicit(positions={self.num_positions}, moves={self.graph.num_moves})"


def iter_moves(spec: GameSpec, pos) -> Iterator:
    """Lazily yield the targets of every move from ``pos``."""
    return spec.moves(pos)


def enumerate_moves(spec: GameSpec, pos) -> list:
    return list(spec.moves(pos))


def is_terminal(spec: GameSpec, pos) -> bool:
    if isinstance(spec, NimH):
        x = spec.check_position(pos)
        supp = 0
        for i, v in enumerate(x):
            if v:
                supp |= 1 << i
        return not any(m & ~supp == 0 for m in spec.hypergraph.masks)
    return next(spec.moves(pos), None) is None


def explicit_from_boxed(spec: GameSpec) -> GameGraph:
    """Materialize a game; boxed positions get row-major ids."""
    if not isinstance(spec, GameSpec):
        raise TypeError("expected a GameSpec")
    return spec.to_graph()


def h_combination(inner: Sequence[GameSpec | GameGraph], outer: Hypergraph) -> GameGraph:
    """Joint game where a move picks an outer edge and moves in each of its games.

    Joint positions are row-major over the inner position counts, with each
    inner game contributing its own position ids.
    """
    graphs = [g if isinstance(g, GameGraph) else g.to_graph() for g in inner]
    if outer.n != len(graphs):
        raise ValueError(f"outer hypergraph has {outer.n} vertices but {len(graphs)} games given")
    counts = [g.num_positions for g in graphs]
    strides = []
    acc = 1
    for c in reversed(counts):
        strides.append(acc)
        acc *= c
    strides.reverse()
    edges = outer.edges
    all_moves = []
    for joint in itertools.product(*(range(c) for c in counts)):
        base = sum(p * s for p, s in zip(joint, strides))
        row = []
        for edge in edges:
            deltas = [
                [(t - joint[i]) * strides[i] for t in graphs[i].moves[joint[i]]] for i in edge
            ]
            if any(not d for d in deltas):
                continue
            for combo in itertools.product(*deltas):
                row.append(base + sum(combo))
        all_moves.append(tuple(row))
    start = None
    if all(g.start is not None for g in graphs):
        start = sum(g.start * s for g, s in zip(graphs, strides))
    return GameGraph(tuple(all_moves), start)


def _relabel(moves, rng) -> tuple[tuple[int, ...], ...]:
    n = len(moves)
    perm = rng.permutation(n)
    new_moves: list[tuple[int, ...]] = [()] * n
    for p, row in enumerate(moves):
        new_moves[int(perm[p])] = tuple(sorted(int(perm[t]) for t in row))
    return tuple(new_moves)


def random_sg_decreasing_game(
    seed, num_positions: int, max_tetris: int, extra_move_prob: float = 0.3
) -> GameGraph:
    """Random game whose SG and Tetris values both equal a hidden level.

    Each position gets a level; a level-``l`` position moves to one chosen
    position of every lower level plus random extra lower-level positions.
    """
    if num_positions < 1:
        raise ValueError("num_positions must be at least 1")
    rng = make_rng(seed)
    top = min(max_tetris, num_positions - 1)
    levels = list(range(top + 1))
    levels += [int(v) for v in rng.integers(0, top + 1, size=num_positions - top - 1)]
    by_level: dict[int, list[int]] = {}
    for p, lvl in enumerate(levels):
        by_level.setdefault(lvl, []).append(p)
    moves = []
    for p, lvl in enumerate(levels):
        targets = set()
        for lower in range(lvl):
            pool = by_level[lower]
            targets.add(pool[int(rng.integers(len(pool)))])
            for q in pool:
                if rng.random() < extra_move_prob:
                    targets.add(q)
        moves.append(tuple(targets))
    return GameGraph(_relabel(moves, rng))


def random_game(seed, num_positions: int, max_out_degree: int = 3) -> GameGraph:
    """Random acyclic game: every position moves to a few random earlier ones."""
    if num_positions < 1:
        raise ValueError("num_positions must be at least 1")
    rng = make_rng(seed)
    moves = []
    for p in range(num_positions):
        if p == 0:
            moves.append(())
            continue
        k = int(rng.integers(0, min(max_out_degree, p) + 1))
        moves.append(tuple(int(t) for t in rng.choice(p, size=k, replace=False)))
    return GameGraph(_relabel(moves, rng))


def spec_from_dict(data) -> GameSpec:
    if not isinstance(data, dict) or "kind" not in data:
        raise ValueError("game spec: expected an object with a 'kind' field")
    kind = data["kind"]

    def need(key):
        if key not in data:
            raise ValueError(f"game spec ({kind}): missing field '{key}'")
        return data[key]

    def caps_list(key="caps"):
        caps = need(key)
        if not isinstance(caps, list):
            raise ValueError(f"game spec ({kind}): '{key}' must be a list of integers")
        return caps

    try:
        if kind == "nim_h":
            return NimH(Hypergraph.from_dict(need("hypergraph")), caps_list())
        if kind == "nim_pile":
            return NimPile(need("cap"))
        if kind == "nim_sum":
            caps = caps_list()
            return NimSum(len(caps), caps)
        if kind == "moore":
            caps = caps_list()
            return NimMoore(len(caps), need("k"), caps)
        if kind == "exact":
            caps = caps_list()
            return NimExact(len(caps), need("k"), caps)
        if kind == "explicit":
            return Explicit(GameGraph.from_dict(data))
    except (TypeError, ValueError) as exc:
        msg = str(exc)
        if not msg.startswith("game spec"):
            msg = f"game spec ({kind}): {msg}"
        raise ValueError(msg) from None
    raise ValueError(f"game spec: unknown kind {kind!r}")
