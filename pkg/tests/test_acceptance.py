"""Acceptance criteria, one test each, with their time limits.

Every test prints a single ``PASS``/``FAIL`` line (run with ``-s`` to see
them inline; they are also repeated in the terminal summary).
"""

import itertools
import time

import numpy as np
import pytest

from tetrisnim import (
    NimH,
    NimMoore,
    NimSum,
    figure1_hypergraph,
    find_gap_violation,
    intersection_condition,
    moore_p_criterion,
    nim_xor,
    p_positions_recursive,
    sg_table,
    slow_move,
    tetris_table,
)
from tetrisnim.suites import run_suite

from conftest import ACCEPTANCE_LINES

pytestmark = pytest.mark.acceptance


def record(number, title, ok, elapsed, limit, detail=""):
    verdict = "PASS" if ok and elapsed < limit else "FAIL"
    line = f"{verdict} criterion {number:2d} {title}: {elapsed:.2f}s (limit {limit}s) {detail}".rstrip()
    print(line)
    ACCEPTANCE_LINES.append(line)
    return verdict == "PASS"


def check_suite(number, title, name, limit, **kwargs):
    t0 = time.perf_counter()
    rep = run_suite(name, **kwargs)
    elapsed = time.perf_counter() - t0
    detail = "" if rep.passed else f"witness={rep.witness.to_dict()}"
    assert record(number, title, rep.passed, elapsed, limit, detail), detail
    return rep


def test_01_figure1():
    t0 = time.perf_counter()
    h = figure1_hypergraph()
    ones = (1,) * 9
    spec = NimH(h, 1)
    t = tetris_table(spec)
    triples = [tuple(sorted({j, (j + 1) % 9, (j + 2) % 9})) for j in range(9)]
    quads = [tuple(sorted({j, (j + 1) % 9, (j + 4) % 9, (j + 6) % 9})) for j in range(9)]
    checks = {
        "condition": intersection_condition(h).passed,
        "T(ones)=3": t[ones] == 3,
        "T after T_j is 2": all(t[slow_move(ones, e)] == 2 for e in triples),
        "T after F_j is 0": all(t[slow_move(ones, e)] == 0 for e in quads),
        "no move reaches 1": all(t[y] != 1 for y in spec.moves(ones)),
        "gap scan": find_gap_violation(h, 1, t) == (ones, 1),
    }
    elapsed = time.perf_counter() - t0
    failed = [k for k, v in checks.items() if not v]
    assert record(1, "nine-vertex example", not failed, elapsed, 10, " ".join(failed)), failed


def test_02_bouton():
    t0 = time.perf_counter()
    table = sg_table(NimSum(3, (7, 7, 7)))
    bad = [x for x in itertools.product(range(8), repeat=3) if table[x] != nim_xor(x)]
    arithmetic = [nim_xor((3, 5)), nim_xor((3, 6)), nim_xor((5, 6)), nim_xor((3, 5, 6))]
    elapsed = time.perf_counter() - t0
    ok = not bad and table.num_positions == 512 and arithmetic == [6, 5, 3, 0]
    assert record(2, "three-pile NIM equals XOR on 512 positions", ok, elapsed, 1, str(bad[:1]) if bad else "")


def test_03_moore():
    t0 = time.perf_counter()
    mismatches = []
    for n in (3, 4):
        for k in range(1, n):
            spec = NimMoore(n, k, (5,) * n)
            peeled = p_positions_recursive(spec)
            rule = {x for x in spec.positions() if moore_p_criterion(x, k)}
            if peeled != rule:
                mismatches.append((n, k, sorted(peeled ^ rule)[:1]))
    elapsed = time.perf_counter() - t0
    ok = not mismatches
    assert record(3, "Moore rule vs peeling, n in {3,4}, caps 5", ok, elapsed, 30, str(mismatches) if mismatches else "")


def test_04_longest_play_transfer():
    check_suite(4, "longest-play transfer, 100 instances", "theorem2", 60, seed=0, trials=100)


def test_05_sg_transfer():
    rep = check_suite(5, "SG transfer, 100 instances + counterexample", "theorem1", 60,
                      seed=0, trials=100)
    counter = rep.stats["counterexample"]
    assert counter["status"] == "FAIL" and counter["witness"]["position"] == [[1], [1, 1]]


def test_06_condition_iff_no_gap():
    rep = check_suite(6, "condition iff no gap, 200 random + all graphs on <=4 vertices",
                      "theorem3", 120, seed=0, trials=200, caps=3)
    assert rep.stats["instances"] == 200 + 71
    assert rep.stats["condition_pass"] > 0 and rep.stats["condition_fail"] > 0


def test_07_intersecting():
    check_suite(7, "intersecting hypergraphs have SG = T, caps 3", "intersecting", 60,
                seed=0, trials=100, caps=3)


def test_08_packing_oracle():
    check_suite(8, "longest play equals max packing, 200 instances", "packing-oracle", 60,
                seed=0, trials=200, caps=3)


def test_09_np_gadget():
    check_suite(9, "apex gadget value equals matching number, 50 instances", "gadget", 60,
                seed=0, trials=50)


def test_10_superposition():
    check_suite(10, "superposition of Tetris hypergraphs, 30 pairs, caps 2", "superposition", 60,
                seed=0, trials=30, caps=2)


def test_11_basic_properties():
    check_suite(11, "slow/fast move properties (i)-(v), 100 pairs", "basic", 30,
                seed=0, trials=100, caps=3)


def test_seeds_are_not_special():
    # A second seed for the randomized criteria, with smaller counts.
    for name in ("theorem1", "theorem2", "theorem3", "intersecting", "packing-oracle",
                 "gadget", "superposition", "basic"):
        assert run_suite(name, seed=20261015, trials=10).passed, name
    assert np.all(sg_table(NimSum(2, (4, 4))).values.diagonal() == 0)
