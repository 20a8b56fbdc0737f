import itertools

import numpy as np
import pytest

from tetrisnim import (
    Explicit,
    GameGraph,
    Hypergraph,
    NimExact,
    NimH,
    NimMoore,
    NimPile,
    NimSum,
    combine_hypergraphs,
    enumerate_moves,
    explicit_from_boxed,
    figure1_hypergraph,
    h_combination,
    is_sg_decreasing,
    is_terminal,
    iter_moves,
    random_game,
    random_sg_decreasing_game,
    sg_table,
    spec_from_dict,
)
from tetrisnim.games import CycleError

from conftest import brute_moves


def test_enumerate_moves_examples():
    assert enumerate_moves(NimH(Hypergraph(2, [[0, 1]]), 1), (1, 1)) == [(0, 0)]
    assert sorted(enumerate_moves(NimH(Hypergraph(2, [[0], [1]]), 1), (1, 1))) == [(0, 1), (1, 0)]
    assert sorted(enumerate_moves(NimH(Hypergraph(2, [[0, 1]]), 2), (2, 1))) == [(0, 0), (1, 0)]


def test_moves_are_lazy_and_agree_with_brute_force():
    h = Hypergraph(3, [[0], [1, 2], [0, 1, 2]])
    spec = NimH(h, (2, 3, 2))
    it = iter_moves(spec, (2, 3, 2))
    assert next(it) == (0, 3, 2)
    for x in spec.positions():
        assert sorted(enumerate_moves(spec, x)) == sorted(brute_moves(h.edges, x))


def test_illegal_positions_raise():
    spec = NimSum(2, (1, 1))
    for bad in [(2, 0), (0,), (-1, 0)]:
        with pytest.raises(ValueError):
            enumerate_moves(spec, bad)
        with pytest.raises(ValueError):
            is_terminal(spec, bad)
    with pytest.raises(ValueError):
        enumerate_moves(Explicit(GameGraph(((),))), 3)


def test_is_terminal():
    assert is_terminal(NimH(Hypergraph(2, [[0, 1]]), 5), (5, 0))
    assert is_terminal(NimSum(2, (1, 1)), (0, 0))
    chi01 = (1, 1) + (0,) * 7
    assert is_terminal(NimH(figure1_hypergraph(), 1), chi01)
    assert not is_terminal(NimH(figure1_hypergraph(), 1), (1,) * 9)
    assert is_terminal(Explicit(GameGraph(((), (0,)))), 0)
    assert not is_terminal(Explicit(GameGraph(((), (0,)))), 1)


def test_explicit_from_boxed():
    g = explicit_from_boxed(NimPile(2))
    assert g.num_positions == 3
    assert sorted(g.moves[2]) == [0, 1] and g.moves[1] == (0,) and g.moves[0] == ()
    g = explicit_from_boxed(NimH(Hypergraph(2, [[0, 1]]), (1, 1)))
    assert g.num_positions == 4 and g.num_moves == 1
    g = explicit_from_boxed(NimSum(2, (1, 1)))
    assert g.num_positions == 4 and g.num_moves == 4
    with pytest.raises(TypeError):
        explicit_from_boxed(Hypergraph(1, [[0]]))


def test_boxed_graph_ids_are_row_major():
    spec = NimMoore(3, 2, (2, 1, 3))
    g = spec.to_graph()
    for x in spec.positions():
        pid = spec.position_id(x)
        assert spec.position_at(pid) == x
        assert sorted(g.moves[pid]) == sorted(spec.position_id(y) for y in spec.moves(x))


def test_game_graph_validation():
    with pytest.raises(CycleError):
        GameGraph(((1,), (0,)))
    with pytest.raises(ValueError, match="unknown position"):
        GameGraph(((5,),))
    with pytest.raises(ValueError, match="start"):
        GameGraph(((),), start=3)
    g = GameGraph(((), (0,), (0, 1)), start=2)
    assert GameGraph.from_dict(g.to_dict()) == g
    order = g.topological_order
    assert all(order.index(t) < order.index(p) for p in range(3) for t in g.moves[p])


def test_sum_combination_is_nim_sum():
    joint = h_combination([NimPile(2), NimPile(2)], Hypergraph(2, [[0], [1]]))
    assert joint.canonical() == explicit_from_boxed(NimSum(2, (2, 2))).canonical()


def test_product_of_unit_piles():
    joint = h_combination([NimPile(1), NimPile(1)], Hypergraph(2, [[0, 1]]))
    assert joint.num_positions == 4 and joint.num_moves == 1
    assert joint.moves[3] == (0,)


@pytest.mark.parametrize(
    "inner_edges, inner_caps, outer",
    [
        ([[[0]], [[0]]], [(1,), (1,)], [[0, 1]]),
        ([[[0, 1]], [[0]]], [(1, 2), (2,)], [[0, 1]]),
        ([[[0], [1]], [[0]], [[0], [0, 1]]], [(1, 1), (2,), (1, 2)], [[0], [1, 2]]),
        ([[[0], [0, 1]], [[0]]], [(2, 1), (1,)], [[0], [1], [0, 1]]),
    ],
)
def test_combination_of_nim_h_games_is_nim_of_combined_hypergraph(inner_edges, inner_caps, outer):
    inners = [Hypergraph(len(c), e) for e, c in zip(inner_edges, inner_caps)]
    outer_h = Hypergraph(len(inners), outer)
    joint = h_combination([NimH(g, c) for g, c in zip(inners, inner_caps)], outer_h)
    flat = tuple(itertools.chain.from_iterable(inner_caps))
    direct = explicit_from_boxed(NimH(combine_hypergraphs(outer_h, inners), flat))
    assert joint.canonical() == direct.canonical()


def test_combination_size_mismatch():
    with pytest.raises(ValueError):
        h_combination([NimPile(1)], Hypergraph(2, [[0, 1]]))


def test_random_sg_decreasing_game():
    one = random_sg_decreasing_game(3, 1, 4)
    assert one.num_positions == 1 and sg_table(Explicit(one)).values.tolist() == [0]
    for seed in range(30):
        g = random_sg_decreasing_game(seed, 15, 5)
        assert is_sg_decreasing(Explicit(g)).passed
    assert random_sg_decreasing_game(7, 12, 4) == random_sg_decreasing_game(7, 12, 4)
    assert random_sg_decreasing_game(7, 12, 4) != random_sg_decreasing_game(8, 12, 4)


def test_random_game_is_deterministic_and_acyclic():
    g = random_game(11, 20)
    assert g == random_game(11, 20)
    assert len(g.topological_order) == 20
    assert random_game(np.random.default_rng(3), 5).num_positions == 5


def test_spec_json_round_trip():
    specs = [
        NimH(Hypergraph(2, [[0, 1]]), (2, 3)),
        NimPile(4),
        NimSum(3, (1, 2, 3)),
        NimMoore(3, 2, (2, 2, 2)),
        NimExact(3, 2, (1, 1, 1)),
        Explicit(GameGraph(((), (0,), (0, 1)))),
    ]
    for s in specs:
        back = spec_from_dict(s.to_dict())
        assert back == s and type(back) is type(s)
        assert back.to_graph().canonical() == s.to_graph().canonical()


@pytest.mark.parametrize(
    "data, message",
    [
        ([], "'kind'"),
        ({"kind": "chess"}, "unknown kind"),
        ({"kind": "nim_h", "caps": [1]}, "missing field 'hypergraph'"),
        ({"kind": "nim_h", "hypergraph": {"n": 1, "edges": [[0]]}, "caps": [1, 2]}, "nim_h"),
        ({"kind": "nim_pile", "cap": -1}, "nim_pile"),
        ({"kind": "nim_sum", "caps": 3}, "must be a list"),
        ({"kind": "moore", "caps": [1, 1]}, "missing field 'k'"),
        ({"kind": "exact", "k": 5, "caps": [1, 1]}, "exact"),
        ({"kind": "explicit", "positions": 2, "moves": [[1], [0]]}, "cycle"),
        ({"kind": "explicit", "positions": 2, "moves": [[]]}, "one entry per position"),
    ],
)
def test_spec_rejections(data, message):
    with pytest.raises(ValueError, match=message):
        spec_from_dict(data)
