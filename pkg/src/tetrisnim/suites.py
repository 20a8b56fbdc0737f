"""Seeded verification suites over random and exhaustive instance families.

Every suite takes ``(seed, trials, caps)`` and returns a
:class:`VerificationReport`. Instance seeds are drawn from one PCG64 stream
started at ``seed``, so a run is reproducible from its arguments alone.
"""

from __future__ import annotations

import itertools
import time
from typing import Callable

import numpy as np

from ._validation import make_rng
from .analysis import (
    VerificationReport,
    Witness,
    find_gap_violation,
    is_tetris,
    moore_p_criterion,
    verify_z_equals_p,
)
from .combine import (
    CombinationInstance,
    np_gadget,
    verify_superposition,
    verify_theorem1,
    verify_theorem2,
)
from .games import NimH, NimMoore, NimPile, NimSum, random_game, random_sg_decreasing_game
from .hypergraph import (
    Hypergraph,
    PackingSolver,
    dim2_condition,
    fast_move,
    figure1_hypergraph,
    from_mask,
    intersection_condition,
    is_intersecting,
    random_hypergraph,
    slow_move,
    to_mask,
    x_all,
    x_pack,
)
from .tables import nim_xor, p_positions_recursive, sg_table, tetris_table

__all__ = ["SUITES", "run_suite", "figure1_report", "theorem1_counterexample"]

# Joint boxes of random combination instances are kept below this size.
JOINT_BUDGET = 8192


def _seeds(seed: int, count: int) -> list[int]:
    rng = make_rng(seed)
    return [int(s) for s in rng.integers(0, 2**63 - 1, size=count, dtype=np.int64)]


def _finish(ok: bool, witness, stats: dict, t0: float) -> VerificationReport:
    return VerificationReport(
        "PASS" if ok else "FAIL", None if ok else witness, stats, time.perf_counter() - t0
    )


def _random_outer(rng, m: int) -> Hypergraph:
    return random_hypergraph(rng, m, int(rng.integers(1, 2**m)))


def _component_sizes(rng, k: int, max_size: int = 20) -> list[int]:
    sizes = [int(s) for s in rng.integers(1, max_size + 1, size=k)]
    while int(np.prod(sizes)) > JOINT_BUDGET:
        j = int(np.argmax(sizes))
        sizes[j] = max(1, sizes[j] // 2)
    return sizes


def random_combination(seed, sg_decreasing: bool) -> CombinationInstance:
    """At most 4 inner games of at most 20 positions each, random outer hypergraph."""
    rng = make_rng(seed)
    k = int(rng.integers(1, 5))
    sizes = _component_sizes(rng, k)
    inner = []
    for size in sizes:
        if sg_decreasing:
            inner.append(random_sg_decreasing_game(rng, size, int(rng.integers(0, 5))))
        else:
            inner.append(random_game(rng, size, int(rng.integers(1, 4))))
    return CombinationInstance(inner, _random_outer(rng, k))


def theorem1_counterexample() -> CombinationInstance:
    """A single pile combined as a product with two-pile NIM (not SG decreasing)."""
    return CombinationInstance([NimPile(2), NimSum(2, (1, 1))], Hypergraph(2, [[0, 1]]))


def run_theorem1(seed: int = 0, trials: int = 100, caps: int = 3) -> VerificationReport:
    t0 = time.perf_counter()
    positions = 0
    for i, s in enumerate(_seeds(seed, trials)):
        inst = random_combination(s, sg_decreasing=True)
        rep = verify_theorem1(inst, require_sg_decreasing=True)
        positions += rep.stats["positions"]
        if not rep.passed:
            w = rep.witness
            return _finish(False, Witness(w.position, w.quantity, w.expected, w.actual,
                                          extra={"instance": i, "instance_seed": s}),
                           {"instances": i + 1, "positions": positions}, t0)
    counter = verify_theorem1(theorem1_counterexample(), require_sg_decreasing=False)
    stats = {
        "instances": trials,
        "positions": positions,
        "counterexample": counter.to_dict(),
    }
    if counter.passed:
        w = Witness(None, "non-SG-decreasing instance must break the SG transfer", "FAIL", "PASS")
        return _finish(False, w, stats, t0)
    return _finish(True, None, stats, t0)


def run_theorem2(seed: int = 0, trials: int = 100, caps: int = 3) -> VerificationReport:
    t0 = time.perf_counter()
    positions = 0
    for i, s in enumerate(_seeds(seed, trials)):
        inst = random_combination(s, sg_decreasing=False)
        rep = verify_theorem2(inst)
        positions += rep.stats["positions"]
        if not rep.passed:
            w = rep.witness
            return _finish(False, Witness(w.position, w.quantity, w.expected, w.actual,
                                          extra={"instance": i, "instance_seed": s}),
                           {"instances": i + 1, "positions": positions}, t0)
    return _finish(True, None, {"instances": trials, "positions": positions}, t0)


def all_graphs(max_vertices: int = 4):
    """Every nonempty simple graph on ``2..max_vertices`` labelled vertices."""
    for n in range(2, max_vertices + 1):
        pairs = list(itertools.combinations(range(n), 2))
        for r in range(1, len(pairs) + 1):
            for chosen in itertools.combinations(pairs, r):
                yield Hypergraph(n, chosen)


def run_theorem3(seed: int = 0, trials: int = 100, caps: int = 3) -> VerificationReport:
    """Condition holds iff no gap on the box, for random dim<=3 hypergraphs and all small graphs."""
    t0 = time.perf_counter()
    rng = make_rng(seed)
    family = []
    for _ in range(trials):
        n = int(rng.integers(1, 6))
        family.append(random_hypergraph(rng, n, int(rng.integers(1, 9)), max_dim=3))
    family.extend(all_graphs(4))
    counts = {"condition_pass": 0, "condition_fail": 0}
    for i, h in enumerate(family):
        cond = intersection_condition(h)
        gap = find_gap_violation(h, caps)
        counts["condition_pass" if cond.passed else "condition_fail"] += 1
        if cond.passed != (gap is None):
            w = Witness(gap[0] if gap else None, "gap exists iff condition fails",
                        cond.status, "gap" if gap else "no gap",
                        extra={"instance": i, "hypergraph": h.to_dict()})
            return _finish(False, w, counts, t0)
        if not cond.passed:
            zp = verify_z_equals_p(h, 1)
            if zp.passed:
                w = Witness(None, "Z != P witness on the 0/1 box", "FAIL", "PASS",
                            extra={"instance": i, "hypergraph": h.to_dict()})
                return _finish(False, w, counts, t0)
        if h.masks and max(m.bit_count() for m in h.masks) == 2:
            if dim2_condition(h) != cond.passed:
                w = Witness(None, "graph fast path agrees with full sweep", cond.passed,
                            not cond.passed, extra={"hypergraph": h.to_dict()})
                return _finish(False, w, counts, t0)
    counts["instances"] = len(family)
    return _finish(True, None, counts, t0)


def run_bouton(seed: int = 0, trials: int = 100, caps: int = 3) -> VerificationReport:
    t0 = time.perf_counter()
    spec = NimSum(3, caps)
    table = sg_table(spec)
    for x in table.positions():
        if table[x] != nim_xor(x):
            return _finish(False, Witness(x, "sg of NIM_3", nim_xor(x), table[x]),
                           {"positions": table.num_positions}, t0)
    return _finish(True, None, {"positions": table.num_positions}, t0)


def run_moore(seed: int = 0, trials: int = 100, caps: int = 3) -> VerificationReport:
    t0 = time.perf_counter()
    positions = 0
    for n in (3, 4):
        for k in range(1, n):
            spec = NimMoore(n, k, caps)
            peeled = p_positions_recursive(spec)
            positions += spec.num_positions
            for x in spec.positions():
                if (x in peeled) != moore_p_criterion(x, k):
                    w = Witness(x, "P-position membership", moore_p_criterion(x, k), x in peeled,
                                extra={"n": n, "k": k})
                    return _finish(False, w, {"positions": positions}, t0)
    return _finish(True, None, {"positions": positions}, t0)


def run_zp(seed: int = 0, trials: int = 100, caps: int = 3) -> VerificationReport:
    """Zero-Tetris set equals P-set on the box exactly when the condition holds."""
    t0 = time.perf_counter()
    rng = make_rng(seed)
    positions = 0
    for i in range(trials):
        n = int(rng.integers(1, 5))
        h = random_hypergraph(rng, n, int(rng.integers(1, 8)))
        cond = intersection_condition(h)
        zp = verify_z_equals_p(h, caps)
        positions += zp.stats["positions"]
        if zp.passed != cond.passed:
            w = Witness(zp.witness.position if zp.witness else None, "Z == P iff condition",
                        cond.status, zp.status, extra={"instance": i, "hypergraph": h.to_dict()})
            return _finish(False, w, {"instances": i + 1, "positions": positions}, t0)
    return _finish(True, None, {"instances": trials, "positions": positions}, t0)


def random_intersecting(rng, n: int, tries: int = 12) -> Hypergraph:
    pool = [m for m in range(1, 2**n)]
    chosen: list[int] = []
    for j in rng.choice(len(pool), size=min(tries, len(pool)), replace=False):
        m = pool[int(j)]
        if all(m & c for c in chosen):
            chosen.append(m)
    return Hypergraph.from_masks(n, chosen)


def run_intersecting(seed: int = 0, trials: int = 100, caps: int = 3) -> VerificationReport:
    t0 = time.perf_counter()
    rng = make_rng(seed)
    positions = 0
    for i in range(trials):
        h = random_intersecting(rng, int(rng.integers(1, 6)))
        assert is_intersecting(h)
        spec = NimH(h, caps)
        sg, t = sg_table(spec), tetris_table(spec)
        positions += sg.num_positions
        diff = np.argwhere(sg.values != t.values)
        if len(diff):
            x = tuple(int(v) for v in diff[0])
            w = Witness(x, "sg equals tetris", t[x], sg[x], extra={"hypergraph": h.to_dict()})
            return _finish(False, w, {"instances": i + 1, "positions": positions}, t0)
    return _finish(True, None, {"instances": trials, "positions": positions}, t0)


def random_tetris_hypergraph(rng, max_n: int = 3) -> Hypergraph:
    """Rejection-sample a dimension <= 3 hypergraph satisfying the condition."""
    while True:
        n = int(rng.integers(1, max_n + 1))
        h = random_hypergraph(rng, n, int(rng.integers(1, 2**n)), max_dim=3)
        if is_tetris(h).status == "TETRIS":
            return h


def run_superposition(seed: int = 0, trials: int = 30, caps: int = 2) -> VerificationReport:
    t0 = time.perf_counter()
    rng = make_rng(seed)
    scopes = {}
    for i in range(trials):
        outer = random_tetris_hypergraph(rng, max_n=2)
        inner = [random_tetris_hypergraph(rng) for _ in range(outer.n)]
        rep = verify_superposition(outer, inner, caps)
        scopes[rep.stats["scope"]] = scopes.get(rep.stats["scope"], 0) + 1
        if not rep.passed:
            w = rep.witness
            w = Witness(w.position, w.quantity, w.expected, w.actual,
                        extra={"instance": i, "outer": outer.to_dict(),
                               "inner": [g.to_dict() for g in inner]})
            return _finish(False, w, {"instances": i + 1}, t0)
    return _finish(True, None, {"instances": trials, "scopes": scopes}, t0)


def run_packing_oracle(seed: int = 0, trials: int = 100, caps: int = 3) -> VerificationReport:
    """Longest play of ``NIM_H`` equals the maximum edge packing, position by position."""
    t0 = time.perf_counter()
    rng = make_rng(seed)
    positions = 0
    for i in range(trials):
        n = int(rng.integers(1, 7))
        h = random_hypergraph(rng, n, int(rng.integers(1, 9)))
        box = [int(c) for c in rng.integers(1, caps + 1, size=n)]
        table = tetris_table(NimH(h, box))
        solver = PackingSolver(h)
        for x in table.positions():
            positions += 1
            if solver.value(x) != table[x]:
                w = Witness(x, "packing value vs longest play", table[x], solver.value(x),
                            extra={"instance": i, "hypergraph": h.to_dict()})
                return _finish(False, w, {"instances": i + 1, "positions": positions}, t0)
    return _finish(True, None, {"instances": trials, "positions": positions}, t0)


def disjoint_family_number(h: Hypergraph) -> int:
    """Largest set of pairwise disjoint edges, by trying families from large to small."""
    masks = h.masks
    for r in range(len(masks), 0, -1):
        for fam in itertools.combinations(masks, r):
            union = 0
            total = 0
            for m in fam:
                union |= m
                total += m.bit_count()
            if union.bit_count() == total:
                return r
    return 0


def run_gadget(seed: int = 0, trials: int = 50, caps: int = 3) -> VerificationReport:
    t0 = time.perf_counter()
    rng = make_rng(seed)
    for i in range(trials):
        n = int(rng.integers(1, 9))
        h = random_hypergraph(rng, n, int(rng.integers(1, 11)))
        hstar, x = np_gadget(h)
        value = PackingSolver(hstar).value(x)
        mu = disjoint_family_number(h)
        sg = sg_table(NimH(hstar, x))[x]
        checks = {
            "packing equals matching number": (mu, value),
            "gadget is intersecting": (True, is_intersecting(hstar)),
            "sg equals matching number": (mu, sg),
        }
        for name, (want, got) in checks.items():
            if want != got:
                w = Witness(x, name, want, got, extra={"instance": i, "hypergraph": h.to_dict()})
                return _finish(False, w, {"instances": i + 1}, t0)
    return _finish(True, None, {"instances": trials}, t0)


def basic_properties(h: Hypergraph, x, solver: PackingSolver | None = None) -> list[str]:
    """Names of the slow/fast move properties violated at ``(h, x)``; empty when all hold."""
    solver = solver or PackingSolver(h)
    tv = solver.value
    x = tuple(x)
    t = tv(x)
    supp = to_mask(i for i, v in enumerate(x) if v)
    inside = [from_mask(m) for m in h.masks if m & ~supp == 0]
    packs = set(x_pack(h, x, solver))
    alls = set(x_all(h, x))
    failed = []
    for edge in inside:
        ts, tf = tv(slow_move(x, edge)), tv(fast_move(x, edge))
        if not t > ts >= tf >= 0:
            failed.append(f"(i) at {edge}")
        if ts < t - len(edge):
            failed.append(f"(ii) at {edge}")
        if edge in packs and ts != t - 1:
            failed.append(f"(iii) at {edge}")
        if (tf == 0) != (edge in alls):
            failed.append(f"(iv) at {edge}")
    for k in range(len(x)):
        if x[k]:
            y = list(x)
            y[k] -= 1
            if not t >= tv(y) >= t - 1:
                failed.append(f"(v) at pile {k}")
    if t > 0 and intersection_condition(h).passed and not (packs and alls):
        failed.append("nonempty pack/all families")
    return failed


def run_basic(seed: int = 0, trials: int = 100, caps: int = 3) -> VerificationReport:
    t0 = time.perf_counter()
    rng = make_rng(seed)
    for i in range(trials):
        n = int(rng.integers(1, 6))
        h = random_hypergraph(rng, n, int(rng.integers(1, 9)))
        x = tuple(int(v) for v in rng.integers(0, caps + 1, size=n))
        failed = basic_properties(h, x)
        if failed:
            w = Witness(x, "slow/fast move properties", [], failed,
                        extra={"instance": i, "hypergraph": h.to_dict()})
            return _finish(False, w, {"instances": i + 1}, t0)
    return _finish(True, None, {"instances": trials}, t0)


SUITES: dict[str, Callable[..., VerificationReport]] = {
    "theorem1": run_theorem1,
    "theorem2": run_theorem2,
    "theorem3": run_theorem3,
    "bouton": run_bouton,
    "moore": run_moore,
    "zp": run_zp,
    "superposition": run_superposition,
    "packing-oracle": run_packing_oracle,
    "gadget": run_gadget,
    "intersecting": run_intersecting,
    "basic": run_basic,
}


def run_suite(name: str, seed: int = 0, trials: int = 100, caps: int = 3) -> VerificationReport:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return SUITES[name](seed=seed, trials=trials, caps=caps)


def figure1_report() -> dict:
    """Recompute the numbers attached to the nine-vertex example."""
    h = figure1_hypergraph()
    ones = (1,) * 9
    spec = NimH(h, 1)
    t = tetris_table(spec)
    triples = [e for e in h.edges if len(e) == 3]
    quads = [e for e in h.edges if len(e) == 4]
    slow_triples = sorted({t[slow_move(ones, e)] for e in triples})
    slow_quads = sorted({t[slow_move(ones, e)] for e in quads})
    reachable = sorted({t[y] for y in spec.moves(ones)})
    unreachable = [v for v in range(t[ones]) if v not in reachable]
    cond = intersection_condition(h)
    gap = find_gap_violation(h, 1, t)
    ok = (
        cond.passed
        and t[ones] == 3
        and slow_triples == [2]
        and slow_quads == [0]
        and unreachable == [1]
        and gap == (ones, 1)
    )
    return {
        "status": "PASS" if ok else "FAIL",
        "hypergraph": h.to_dict(),
        "condition": cond.status,
        "tetris_all_ones": t[ones],
        "sg_all_ones": sg_table(spec)[ones],
        "slow_move_tetris": {"T_j": slow_triples, "F_j": slow_quads},
        "reachable_values": reachable,
        "unreachable_values": unreachable,
        "gap_witness": None if gap is None else {"position": list(gap[0]), "value": gap[1]},
        "positions": t.num_positions,
    }
