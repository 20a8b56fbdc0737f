"""Exact analysis of impartial games combined along hypergraphs."""

from .analysis import (
    InternalConsistencyError,
    TetrisVerdict,
    VerificationReport,
    Witness,
    find_gap_violation,
    is_sg_decreasing,
    is_tetris,
    moore_p_criterion,
    verify_z_equals_p,
    z_set,
)
from .combine import (
    CombinationInstance,
    np_gadget,
    sg_via_theorem1,
    tetris_via_theorem2,
    verify_superposition,
    verify_theorem1,
    verify_theorem2,
)
from .estimators import NimHValues
from .games import (
    Explicit,
    GameGraph,
    GameSpec,
    NimExact,
    NimH,
    NimMoore,
    NimPile,
    NimSum,
    enumerate_moves,
    explicit_from_boxed,
    h_combination,
    is_terminal,
    iter_moves,
    random_game,
    random_sg_decreasing_game,
    spec_from_dict,
)
from .hypergraph import (
    Hypergraph,
    PackingSolver,
    combine_hypergraphs,
    dim2_condition,
    dimension,
    exact_hypergraph,
    fast_move,
    figure1_hypergraph,
    has_transversal_edge,
    induced,
    intersection_condition,
    is_intersecting,
    matching_number,
    max_packing,
    moore_hypergraph,
    slow_move,
    x_all,
    x_pack,
)
from .tables import ValueTable, mex, nim_xor, p_positions_recursive, sg_table, tetris_table

__version__ = "0.1.0"

__all__ = [
    "InternalConsistencyError",
    "NimHValues",
    "TetrisVerdict",
    "VerificationReport",
    "Witness",
    "find_gap_violation",
    "is_sg_decreasing",
    "is_tetris",
    "moore_p_criterion",
    "verify_z_equals_p",
    "z_set",
    "CombinationInstance",
    "np_gadget",
    "sg_via_theorem1",
    "tetris_via_theorem2",
    "verify_superposition",
    "verify_theorem1",
    "verify_theorem2",
    "Explicit",
    "GameGraph",
    "GameSpec",
    "NimExact",
    "NimH",
    "NimMoore",
    "NimPile",
    "NimSum",
    "enumerate_moves",
    "explicit_from_boxed",
    "h_combination",
    "is_terminal",
    "iter_moves",
    "random_game",
    "random_sg_decreasing_game",
    "spec_from_dict",
    "Hypergraph",
    "PackingSolver",
    "combine_hypergraphs",
    "dim2_condition",
    "dimension",
    "exact_hypergraph",
    "fast_move",
    "figure1_hypergraph",
    "has_transversal_edge",
    "induced",
    "intersection_condition",
    "is_intersecting",
    "matching_number",
    "max_packing",
    "moore_hypergraph",
    "slow_move",
    "x_all",
    "x_pack",
    "ValueTable",
    "mex",
    "nim_xor",
    "p_positions_recursive",
    "sg_table",
    "tetris_table",
]
