import pytest

from tetrisnim import (
    CombinationInstance,
    Explicit,
    Hypergraph,
    NimH,
    NimPile,
    NimSum,
    exact_hypergraph,
    figure1_hypergraph,
    h_combination,
    is_intersecting,
    matching_number,
    max_packing,
    np_gadget,
    random_game,
    random_sg_decreasing_game,
    sg_table,
    sg_via_theorem1,
    tetris_table,
    tetris_via_theorem2,
    verify_superposition,
    verify_theorem1,
    verify_theorem2,
)
from tetrisnim.suites import disjoint_family_number, theorem1_counterexample

SUM = Hypergraph(2, [[0], [1]])
PROD = Hypergraph(2, [[0, 1]])


def test_sg_transfer_examples():
    assert sg_via_theorem1(CombinationInstance([NimPile(3), NimPile(5)], SUM), ((3,), (5,))) == 6
    prod = CombinationInstance([NimPile(2), NimPile(2)], PROD)
    assert sg_via_theorem1(prod, ((2,), (2,))) == 2
    assert sg_table(Explicit(prod.joint))[prod.joint.num_positions - 1] == 2
    assert sg_via_theorem1(prod, ((0,), (0,))) == 0


def test_tetris_transfer_examples():
    assert tetris_via_theorem2(CombinationInstance([NimPile(3), NimPile(5)], SUM), ((3,), (5,))) == 8
    assert tetris_via_theorem2(CombinationInstance([NimPile(2), NimPile(3)], PROD), ((2,), (3,))) == 2
    inner = [NimH(Hypergraph(2, [[0], [0, 1]]), (2, 1)), NimPile(2)]
    inst = CombinationInstance(inner, Hypergraph(2, [[0], [0, 1]]))
    direct = tetris_table(Explicit(inst.joint))
    for j in range(inst.joint.num_positions):
        assert tetris_via_theorem2(inst, inst.joint_position(j)) == direct[j]


def test_theorem1_examples():
    for seed in range(5):
        inner = [random_sg_decreasing_game(seed * 4 + j, 9, 3) for j in range(3)]
        inst = CombinationInstance(inner, Hypergraph(3, [[0], [1, 2], [0, 1, 2]]))
        assert verify_theorem1(inst).passed
    rep = verify_theorem1(theorem1_counterexample(), require_sg_decreasing=False)
    assert rep.status == "FAIL"
    w = rep.witness
    assert w.position == ((1,), (1, 1)) and (w.expected, w.actual) == (0, 1)
    assert verify_theorem1(CombinationInstance([NimPile(3), NimPile(2)], PROD)).passed


def test_theorem1_precondition():
    with pytest.raises(ValueError, match="inner game 1"):
        verify_theorem1(theorem1_counterexample())


def test_theorem2_examples():
    for seed in range(5):
        inner = [random_game(seed * 3 + j, 10) for j in range(3)]
        assert verify_theorem2(CombinationInstance(inner, Hypergraph(3, [[0, 1], [2]]))).passed
    assert verify_theorem2(theorem1_counterexample()).passed
    assert verify_theorem2(CombinationInstance([random_game(1, 12)], Hypergraph(1, [[0]]))).passed


def test_instance_validation_and_round_trip():
    with pytest.raises(ValueError):
        CombinationInstance([NimPile(1)], PROD)
    inst = theorem1_counterexample()
    back = CombinationInstance.from_dict(inst.to_dict())
    assert back.joint.canonical() == inst.joint.canonical()
    with pytest.raises(ValueError):
        CombinationInstance.from_dict({"outer": PROD.to_dict()})
    joint = h_combination(inst.inner, inst.outer)
    assert joint == inst.joint


def test_superposition_examples():
    pair = Hypergraph(2, [[0, 1]])
    one = Hypergraph(1, [[0]])
    rep = verify_superposition(pair, [pair, pair], 2)
    assert rep.passed and rep.stats["combined"] == {"n": 4, "edges": [[0, 1, 2, 3]]}
    assert rep.stats["scope"] == "box only (UNKNOWN beyond box)"
    e32 = exact_hypergraph(3, 2)
    rep = verify_superposition(e32, [one, one, one], 2)
    assert rep.passed and rep.stats["combined"] == e32.to_dict()
    assert verify_superposition(pair, [e32, one], 2).passed
    with pytest.raises(ValueError, match="inner\\[1\\]"):
        verify_superposition(pair, [one, Hypergraph(2, [[0], [1]])], 2)


def test_np_gadget_examples():
    hstar, x = np_gadget(Hypergraph(4, [[0, 1], [2, 3]]))
    assert x == (1, 1, 1, 1, 2) and max_packing(hstar, x)[0] == 2
    assert is_intersecting(hstar)
    hstar, x = np_gadget(Hypergraph(3, [[0, 1, 2]]))
    assert max_packing(hstar, x)[0] == 1
    fig = figure1_hypergraph()
    hstar, x = np_gadget(fig)
    assert max_packing(hstar, x)[0] == matching_number(fig) == disjoint_family_number(fig) == 3
    with pytest.raises(ValueError):
        np_gadget(Hypergraph(2))


def test_np_gadget_sg_equals_matching_number():
    h = Hypergraph(5, [[0, 1], [2, 3], [1, 2], [4]])
    hstar, x = np_gadget(h)
    assert sg_table(NimH(hstar, x))[x] == disjoint_family_number(h) == 3


def test_sum_instance_matches_nim_sum():
    inst = CombinationInstance([NimPile(2), NimPile(3)], SUM)
    direct = sg_table(Explicit(inst.joint)).values.reshape(3, 4)
    assert (direct == sg_table(NimSum(2, (2, 3))).values).all()
