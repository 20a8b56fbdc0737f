"""Sprague-Grundy and Tetris tables, and the P-position peeling algorithm.

Boxed ``NIM_H`` games are solved with whole-array numpy passes, one pass per
level (coordinate sum). For an edge ``H``, the values reachable by an
``H``-move from ``x`` are those on the sub-box ``y_i < x_i`` for ``i`` in
``H`` with the other piles fixed; a cumulative reduction along each axis of
``H``, shifted by one, aggregates that sub-box for every ``x`` at once.
SG successor sets are carried as multi-word bitsets so ``mex`` stays exact
for any value range.

Explicit games are solved by iterating over a topological order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import reduce
from operator import xor
from typing import Iterable

import numpy as np

from .games import GameSpec, NimH

__all__ = [
    "mex",
    "nim_xor",
    "ValueTable",
    "sg_table",
    "tetris_table",
    "p_positions_recursive",
]

_WORD = 64
_FULL = np.uint64(0xFFFFFFFFFFFFFFFF)


def mex(values: Iterable[int]) -> int:
    """Smallest nonnegative integer not in ``values``.

    >>> mex([0, 1, 3])
    2
    """
    seen = set(values)
    k = 0
    while k in seen:
        k += 1
    return k


def nim_xor(values: Iterable[int]) -> int:
    return reduce(xor, (int(v) for v in values), 0)


@dataclass(frozen=True, eq=False)
class ValueTable:
    """Values of a game at every position.

    ``values`` has the box shape for boxed games and is one-dimensional
    (indexed by position id) for explicit games, in which case ``caps`` is
    ``None``.
    """

    kind: str
    values: np.ndarray
    caps: tuple[int, ...] | None = None

    def __getitem__(self, pos) -> int:
        if self.caps is None:
            return int(self.values[int(pos)])
        if np.isscalar(pos):
            pos = (pos,)
        return int(self.values[tuple(pos)])

    def __eq__(self, other):
        if not isinstance(other, ValueTable):
            return NotImplemented
        return (
            self.kind == other.kind
            and self.caps == other.caps
            and np.array_equal(self.values, other.values)
        )

    @property
    def num_positions(self) -> int:
        return int(self.values.size)

    def positions(self):
        if self.caps is None:
            return iter(range(self.values.size))
        return np.ndindex(self.values.shape)

    def items(self):
        for pos in self.positions():
            yield pos, self[pos]

    def zeros(self) -> set:
        return {p for p, v in self.items() if v == 0}

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "caps": None if self.caps is None else list(self.caps),
            "values": [int(v) for v in self.values.ravel()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, data) -> "ValueTable":
        kind = data.get("kind")
        if kind not in ("sg", "tetris"):
            raise ValueError(f"value table: unknown kind {kind!r}")
        values = np.asarray(data["values"], dtype=np.int64)
        caps = data.get("caps")
        if caps is None:
            return cls(kind, values)
        caps = tuple(int(c) for c in caps)
        return cls(kind, values.reshape(tuple(c + 1 for c in caps)), caps)


def _shift_down(a: np.ndarray, axis: int, fill) -> np.ndarray:
    out = np.empty_like(a)
    dst = [slice(None)] * a.ndim
    src = [slice(None)] * a.ndim
    dst[axis] = slice(1, None)
    src[axis] = slice(None, -1)
    out[tuple(dst)] = a[tuple(src)]
    dst[axis] = 0
    out[tuple(dst)] = fill
    return out


def successor_reduce(values: np.ndarray, edges, ufunc, fill) -> np.ndarray:
    """Reduce ``values`` over all move targets of every box position.

    ``edges`` holds axis tuples; ``fill`` is returned where no move exists.
    Trailing axes of ``values`` beyond the box (bitset words) are carried.
    """
    out = np.full(values.shape, fill, dtype=values.dtype)
    for edge in edges:
        a = values
        for axis in edge:
            a = _shift_down(ufunc.accumulate(a, axis=axis), axis, fill)
        ufunc(out, a, out=out)
    return out


def _levels(shape) -> np.ndarray:
    return np.indices(shape).sum(axis=0) if shape else np.zeros((), dtype=np.int64)


def _n_words(max_value: int) -> int:
    return max_value // _WORD + 1


def one_hot_words(values: np.ndarray, n_words: int) -> np.ndarray:
    bits = np.zeros(values.shape + (n_words,), dtype=np.uint64)
    idx = np.indices(values.shape)
    word = values // _WORD
    bit = np.left_shift(np.uint64(1), (values % _WORD).astype(np.uint64))
    bits[tuple(idx) + (word,)] = bit
    return bits


def below_words(values: np.ndarray, n_words: int) -> np.ndarray:
    """Bitsets of ``{0, ..., v-1}`` for every entry ``v``."""
    out = np.zeros(values.shape + (n_words,), dtype=np.uint64)
    for w in range(n_words):
        k = np.clip(values - w * _WORD, 0, _WORD).astype(np.uint64)
        full = k == _WORD
        part = np.left_shift(np.uint64(1), np.where(full, 0, k).astype(np.uint64)) - np.uint64(1)
        out[..., w] = np.where(full, _FULL, part)
    return out


def mex_words(words: np.ndarray) -> np.ndarray:
    """``mex`` of each bitset in a ``(k, n_words)`` array."""
    notfull = words != _FULL
    first = notfull.argmax(axis=-1)
    w = np.take_along_axis(words, first[..., None], axis=-1)[..., 0]
    inv = ~w
    low = inv & (~inv + np.uint64(1))
    bit = np.log2(low.astype(np.float64)).astype(np.int64)
    return first.astype(np.int64) * _WORD + bit


def _box_sg(spec: NimH) -> np.ndarray:
    shape = spec.shape
    edges = spec.hypergraph.edges
    top = sum(spec.caps)
    n_words = _n_words(top)
    sg = np.zeros(shape, dtype=np.int64)
    bits = np.zeros(shape + (n_words,), dtype=np.uint64)
    bits[(0,) * len(shape) + (0,)] = np.uint64(1)
    levels = _levels(shape)
    for lvl in range(1, top + 1):
        sel = levels == lvl
        agg = successor_reduce(bits, edges, np.bitwise_or, np.uint64(0))
        vals = mex_words(agg[sel])
        sg[sel] = vals
        idx = np.nonzero(sel)
        bits[idx + (vals // _WORD,)] = np.left_shift(
            np.uint64(1), (vals % _WORD).astype(np.uint64)
        )
    return sg


def _box_tetris(spec: NimH) -> np.ndarray:
    shape = spec.shape
    edges = spec.hypergraph.edges
    t = np.zeros(shape, dtype=np.int64)
    levels = _levels(shape)
    for lvl in range(1, sum(spec.caps) + 1):
        sel = levels == lvl
        agg = successor_reduce(t, edges, np.maximum, -1)
        t[sel] = agg[sel] + 1
    return t


def _graph_values(graph, combine) -> np.ndarray:
    vals = np.zeros(graph.num_positions, dtype=np.int64)
    moves = graph.moves
    for p in graph.topological_order:
        vals[p] = combine([int(vals[t]) for t in moves[p]])
    return vals


def _tetris_step(succ: list[int]) -> int:
    return 1 + max(succ) if succ else 0


def sg_table(spec: GameSpec) -> ValueTable:
    """Sprague-Grundy value of every position."""
    if isinstance(spec, NimH):
        return ValueTable("sg", _box_sg(spec), spec.caps)
    return ValueTable("sg", _graph_values(spec.to_graph(), mex))


def tetris_table(spec: GameSpec) -> ValueTable:
    """Length of the longest play from every position."""
    if isinstance(spec, NimH):
        return ValueTable("tetris", _box_tetris(spec), spec.caps)
    return ValueTable("tetris", _graph_values(spec.to_graph(), _tetris_step))


def p_positions_recursive(spec: GameSpec) -> set:
    """P-positions by repeated peeling, without computing SG values.

    Each round labels the terminals of the remaining game P and every
    position with a move into them N, then deletes all labelled positions.
    """
    graph = spec.to_graph()
    n = graph.num_positions
    moves, preds = graph.moves, graph.predecessors
    alive = np.ones(n, dtype=bool)
    out_alive = np.array([len(r) for r in moves], dtype=np.int64)
    p_set = []
    frontier = [p for p in range(n) if out_alive[p] == 0]
    while frontier:
        removed = []
        for p in frontier:
            alive[p] = False
            p_set.append(p)
            removed.append(p)
        for p in frontier:
            for q in preds[p]:
                if alive[q]:
                    alive[q] = False
                    removed.append(q)
        candidates = []
        for r in removed:
            for q in preds[r]:
                if alive[q]:
                    out_alive[q] -= 1
                    if out_alive[q] == 0:
                        candidates.append(q)
        frontier = sorted({q for q in candidates if alive[q]})
    if spec.boxed:
        return {spec.position_at(p) for p in p_set}
    return set(p_set)
