"""Hypergraphs over ``{0, ..., n-1}`` and the packing view of the Tetris function.

Vertex sets are handled internally as integer bitmasks; the public surface
speaks sorted vertex tuples. Edges are always kept in canonical order:
by size, then lexicographically by members.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "Hypergraph",
    "PackingSolver",
    "induced",
    "dimension",
    "is_intersecting",
    "has_transversal_edge",
    "intersection_condition",
    "ConditionResult",
    "dim2_condition",
    "slow_move",
    "fast_move",
    "max_packing",
    "matching_number",
    "x_all",
    "x_pack",
    "moore_hypergraph",
    "exact_hypergraph",
    "combine_hypergraphs",
    "figure1_hypergraph",
    "random_hypergraph",
]


def to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << int(v)
    return mask


def from_mask(mask: int) -> tuple[int, ...]:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


def _canonical_key(mask: int) -> tuple[int, tuple[int, ...]]:
    return (mask.bit_count(), from_mask(mask))


@dataclass(frozen=True, eq=False)
class Hypergraph:
    """A duplicate-free family of nonempty subsets of ``range(n)``.

    >>> Hypergraph(3, [[0, 2], [1], [0, 1]]).edges
    ((1,), (0, 1), (0, 2))
    """

    n: int
    masks: tuple[int, ...] = field(repr=False)

    def __init__(self, n: int, edges: Iterable[Iterable[int]] = ()):
        n = int(n)
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        masks = []
        seen = set()
        for edge in edges:
            members = [int(v) for v in edge]
            if not members:
                raise ValueError("empty hyperedge")
            bad = [v for v in members if not 0 <= v < n]
            if bad:
                raise ValueError(f"vertex {bad[0]} out of range for n={n}")
            mask = to_mask(members)
            if mask.bit_count() != len(members):
                raise ValueError(f"repeated vertex in hyperedge {sorted(members)}")
            if mask in seen:
                raise ValueError(f"duplicate hyperedge {sorted(members)}")
            seen.add(mask)
            masks.append(mask)
        masks.sort(key=_canonical_key)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "masks", tuple(masks))

    @classmethod
    def from_masks(cls, n: int, masks: Iterable[int]) -> "Hypergraph":
        return cls(n, (from_mask(m) for m in set(masks)))

    @property
    def edges(self) -> tuple[tuple[int, ...], ...]:
        return tuple(from_mask(m) for m in self.masks)

    def __len__(self) -> int:
        return len(self.masks)

    def __eq__(self, other):
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return self.n == other.n and self.masks == other.masks

    def __hash__(self):
        return hash((self.n, self.masks))

    def __repr__(self):
        return f"Hypergraph(n={self.n}, edges={list(map(list, self.edges))})"

    def to_dict(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edges]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, data) -> "Hypergraph":
        if not isinstance(data, dict):
            raise ValueError("hypergraph: expected an object with 'n' and 'edges'")
        if "n" not in data or "edges" not in data:
            missing = "n" if "n" not in data else "edges"
            raise ValueError(f"hypergraph: missing field '{missing}'")
        n = data["n"]
        if not isinstance(n, int) or isinstance(n, bool) or n < 0:
            raise ValueError("hypergraph: field 'n' must be a nonnegative integer")
        edges = data["edges"]
        if not isinstance(edges, list):
            raise ValueError("hypergraph: field 'edges' must be a list")
        for i, e in enumerate(edges):
            if not isinstance(e, list) or not all(
                isinstance(v, int) and not isinstance(v, bool) for v in e
            ):
                raise ValueError(f"hypergraph: edges[{i}] must be a list of integers")
        try:
            return cls(n, edges)
        except ValueError as exc:
            raise ValueError(f"hypergraph: {exc}") from None

    @classmethod
    def from_json(cls, text: str) -> "Hypergraph":
        return cls.from_dict(json.loads(text))


def _check_subset(n: int, s: Iterable[int]) -> int:
    s = list(s)
    for v in s:
        if not 0 <= int(v) < n:
            raise ValueError(f"vertex {v} out of range for n={n}")
    return to_mask(s)


def induced(h: Hypergraph, s: Iterable[int]) -> Hypergraph:
    """Edges of ``h`` contained in ``s``, over the same vertex count."""
    smask = _check_subset(h.n, s)
    return Hypergraph.from_masks(h.n, (m for m in h.masks if m & ~smask == 0))


def dimension(h: Hypergraph) -> int:
    if not h.masks:
        raise ValueError("undefined dimension: hypergraph has no edges")
    return max(m.bit_count() for m in h.masks)


def _meet_table(masks: Sequence[int]) -> list[int]:
    # meets[i] has bit j set iff edge i and edge j intersect
    meets = []
    for a in masks:
        row = 0
        for j, b in enumerate(masks):
            if a & b:
                row |= 1 << j
        meets.append(row)
    return meets


def is_intersecting(h: Hypergraph) -> bool:
    return all(a & b for a, b in itertools.combinations(h.masks, 2))


def _transversal_mask(masks: Sequence[int]) -> int | None:
    for a in masks:
        if all(a & b for b in masks):
            return a
    return None


def has_transversal_edge(h: Hypergraph) -> tuple[int, ...] | None:
    """First edge (canonical order) meeting every edge of ``h``, or ``None``."""
    m = _transversal_mask(h.masks)
    return None if m is None else from_mask(m)


@dataclass(frozen=True)
class ConditionResult:
    passed: bool
    witness: tuple[int, ...] | None = None
    candidates: int = 0

    def __bool__(self):
        return self.passed

    @property
    def status(self) -> str:
        return "PASS" if self.passed else "FAIL"


def _union_closure(masks: Sequence[int]) -> set[int]:
    closure = {0}
    for m in masks:
        closure |= {c | m for c in closure}
    closure.discard(0)
    return closure


def intersection_condition(h: Hypergraph) -> ConditionResult:
    """Check that every nonempty induced subfamily has an edge meeting all of it.

    The sweep is exponential. Only unions of edges are tried as ``S``: the
    induced family of any ``S`` equals that of the union of its members, and
    that union is no larger than ``S``, so a smallest violating set is always
    such a union. The witness is the smallest violating ``S``, ties broken by
    bitmask value.
    """
    masks = h.masks
    if not masks:
        return ConditionResult(True)
    meets = _meet_table(masks)
    candidates = sorted(_union_closure(masks), key=lambda s: (s.bit_count(), s))
    seen_families = set()
    for s in candidates:
        family = 0
        for j, m in enumerate(masks):
            if m & ~s == 0:
                family |= 1 << j
        if family in seen_families:
            continue
        seen_families.add(family)
        ok = False
        f = family
        while f:
            low = f & -f
            j = low.bit_length() - 1
            if meets[j] & family == family:
                ok = True
                break
            f ^= low
        if not ok:
            return ConditionResult(False, from_mask(s), len(seen_families))
    return ConditionResult(True, None, len(seen_families))


def dim2_condition(h: Hypergraph) -> bool:
    """Fast check of the intersection condition for graphs (with loops as singletons)."""
    sizes = [m.bit_count() for m in h.masks]
    if not sizes or max(sizes) > 2 or 2 not in sizes:
        raise ValueError("dim2 fast path inapplicable: needs dimension 2 with a 2-edge")
    return _transversal_mask(h.masks) is not None


def _check_move(x: Sequence[int], edge: Iterable[int]) -> tuple[list[int], list[int]]:
    x = [int(v) for v in x]
    edge = list(edge)
    if any(v < 0 for v in x):
        raise ValueError("position entries must be nonnegative")
    for i in edge:
        if not 0 <= i < len(x):
            raise ValueError(f"illegal move: vertex {i} out of range")
        if x[i] <= 0:
            raise ValueError(f"illegal move: pile {i} is empty")
    return x, edge


def slow_move(x: Sequence[int], edge: Iterable[int]) -> tuple[int, ...]:
    x, edge = _check_move(x, edge)
    for i in edge:
        x[i] -= 1
    return tuple(x)


def fast_move(x: Sequence[int], edge: Iterable[int]) -> tuple[int, ...]:
    x, edge = _check_move(x, edge)
    for i in edge:
        x[i] = 0
    return tuple(x)


class PackingSolver:
    """Exact maximum integer packing of the edges of ``h`` under capacities.

    Depth-first over edges in canonical order, branching on each edge's
    multiplicity from its largest feasible value downward. Subproblems are
    memoized on the capacities of the vertices still covered by the
    remaining edges, so one solver can be queried at many positions cheaply.
    """

    def __init__(self, h: Hypergraph):
        self.h = h
        self._edges = [from_mask(m) for m in h.masks]
        k = len(self._edges)
        self._rest_vertices: list[tuple[int, ...]] = []
        self._min_size: list[int] = []
        for i in range(k + 1):
            rest = 0
            for m in h.masks[i:]:
                rest |= m
            self._rest_vertices.append(from_mask(rest))
            self._min_size.append(min((len(e) for e in self._edges[i:]), default=1))
        self._memo: dict[tuple, int] = {}

    def _best(self, i: int, r: tuple[int, ...]) -> int:
        if i == len(self._edges):
            return 0
        key = (i, tuple(r[v] for v in self._rest_vertices[i]))
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        edge = self._edges[i]
        cap = min(r[v] for v in edge)
        rest_next = self._rest_vertices[i + 1]
        best = -1
        for m in range(cap, -1, -1):
            if m:
                r2 = list(r)
                for v in edge:
                    r2[v] -= m
                r2 = tuple(r2)
            else:
                r2 = r
            bound = sum(r2[v] for v in rest_next) // self._min_size[i + 1]
            if m + bound <= best:
                continue
            val = m + self._best(i + 1, r2)
            if val > best:
                best = val
        self._memo[key] = best
        return best

    def value(self, x: Sequence[int]) -> int:
        x = _check_capacity(self.h.n, x)
        return self._best(0, x)

    def solve(self, x: Sequence[int]) -> tuple[int, dict[tuple[int, ...], int]]:
        """Return ``(value, multiplicities)``; only positive multiplicities are listed."""
        x = _check_capacity(self.h.n, x)
        total = self._best(0, x)
        witness = {}
        r = x
        need = total
        for i, edge in enumerate(self._edges):
            cap = min(r[v] for v in edge)
            for m in range(cap, -1, -1):
                r2 = list(r)
                for v in edge:
                    r2[v] -= m
                r2 = tuple(r2)
                if m + self._best(i + 1, r2) == need:
                    if m:
                        witness[edge] = m
                    r, need = r2, need - m
                    break
        return total, witness


def _check_capacity(n: int, x: Sequence[int]) -> tuple[int, ...]:
    x = tuple(int(v) for v in x)
    if len(x) != n:
        raise ValueError(f"position has length {len(x)}, expected {n}")
    if any(v < 0 for v in x):
        raise ValueError("position entries must be nonnegative")
    return x


def max_packing(h: Hypergraph, x: Sequence[int]) -> tuple[int, dict[tuple[int, ...], int]]:
    """Maximum number of edges (with repetition) fitting under ``x``, and a witness."""
    return PackingSolver(h).solve(x)


def matching_number(h: Hypergraph) -> int:
    return PackingSolver(h).value((1,) * h.n)


def _support_mask(x: Sequence[int]) -> int:
    return to_mask(i for i, v in enumerate(x) if v > 0)


def x_all(h: Hypergraph, x: Sequence[int]) -> list[tuple[int, ...]]:
    """Edges inside ``supp(x)`` meeting every other edge inside ``supp(x)``."""
    x = _check_capacity(h.n, x)
    supp = _support_mask(x)
    family = [m for m in h.masks if m & ~supp == 0]
    return [from_mask(a) for a in family if all(a & b for b in family)]


def x_pack(
    h: Hypergraph, x: Sequence[int], solver: PackingSolver | None = None
) -> list[tuple[int, ...]]:
    """Edges used with positive multiplicity by some maximum packing under ``x``.

    Uses per-edge forcing: ``H`` qualifies iff it fits under ``x`` and
    ``1 + pack(x - chi(H)) == pack(x)``.
    """
    x = _check_capacity(h.n, x)
    solver = solver or PackingSolver(h)
    total = solver.value(x)
    out = []
    for edge in h.edges:
        if all(x[v] > 0 for v in edge):
            if 1 + solver.value(slow_move(x, edge)) == total:
                out.append(edge)
    return out


def moore_hypergraph(n: int, k: int) -> Hypergraph:
    """All subsets of size 1..k."""
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got n={n}, k={k}")
    return Hypergraph(
        n, (c for size in range(1, k + 1) for c in itertools.combinations(range(n), size))
    )


def exact_hypergraph(n: int, k: int) -> Hypergraph:
    """All subsets of size exactly k."""
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got n={n}, k={k}")
    return Hypergraph(n, itertools.combinations(range(n), k))


def combine_hypergraphs(outer: Hypergraph, inner: Sequence[Hypergraph]) -> Hypergraph:
    """Hypergraph of the outer-combination of ``NIM`` games over the inner hypergraphs.

    Inner vertex sets are laid side by side in list order.
    """
    if outer.n != len(inner):
        raise ValueError(
            f"outer hypergraph has {outer.n} vertices but {len(inner)} inner hypergraphs given"
        )
    offsets = [0]
    for g in inner:
        offsets.append(offsets[-1] + g.n)
    shifted = [[m << offsets[i] for m in g.masks] for i, g in enumerate(inner)]
    combined = set()
    for edge in outer.edges:
        for choice in itertools.product(*(shifted[i] for i in edge)):
            mask = 0
            for m in choice:
                mask |= m
            combined.add(mask)
    return Hypergraph.from_masks(offsets[-1], combined)


def figure1_hypergraph() -> Hypergraph:
    """Nine vertices on a cycle; triples ``{i, i+1, i+2}`` and quadruples ``{i, i+1, i+4, i+6}``."""
    triples = [{i, (i + 1) % 9, (i + 2) % 9} for i in range(9)]
    quads = [{i, (i + 1) % 9, (i + 4) % 9, (i + 6) % 9} for i in range(9)]
    return Hypergraph(9, triples + quads)


def random_hypergraph(
    rng: np.random.Generator,
    n: int,
    num_edges: int,
    max_dim: int | None = None,
    min_dim: int = 1,
) -> Hypergraph:
    """Up to ``num_edges`` distinct random edges with sizes in ``[min_dim, max_dim]``."""
    max_dim = n if max_dim is None else min(max_dim, n)
    pool = [
        to_mask(c)
        for size in range(min_dim, max_dim + 1)
        for c in itertools.combinations(range(n), size)
    ]
    if not pool:
        return Hypergraph(n)
    k = min(num_edges, len(pool))
    picks = rng.choice(len(pool), size=k, replace=False)
    return Hypergraph.from_masks(n, (pool[int(i)] for i in picks))
