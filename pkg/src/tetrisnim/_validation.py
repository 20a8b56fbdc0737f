"""Input checks shared by the game, solver and estimator layers."""

from __future__ import annotations

import numbers
from typing import Sequence

import numpy as np
from sklearn.utils import check_array


def make_rng(seed) -> np.random.Generator:
    """All randomness goes through numpy's PCG64 bit generator."""
    if isinstance(seed, np.random.Generator):
        return seed
    if seed is None:
        raise ValueError("a seed is required for reproducible generation")
    return np.random.Generator(np.random.PCG64(int(seed)))


def check_nonneg_int(value, name: str) -> int:
    if isinstance(value, bool) or not isinstance(value, numbers.Integral):
        raise ValueError(f"{name} must be an integer, got {value!r}")
    if value < 0:
        raise ValueError(f"{name} must be nonnegative, got {value}")
    return int(value)


def check_caps(caps, n: int | None = None) -> tuple[int, ...]:
    """Normalize ``caps`` to a tuple; a scalar is broadcast to ``n`` piles."""
    if isinstance(caps, numbers.Integral) and not isinstance(caps, bool):
        if n is None:
            raise ValueError("scalar caps need an explicit pile count")
        caps = (int(caps),) * n
    caps = tuple(check_nonneg_int(c, "cap") for c in caps)
    if n is not None and len(caps) != n:
        raise ValueError(f"expected {n} caps, got {len(caps)}")
    return caps


def check_position(pos, caps: Sequence[int]) -> tuple[int, ...]:
    if isinstance(pos, numbers.Integral) and len(caps) == 1:
        pos = (pos,)
    pos = tuple(check_nonneg_int(v, "pile size") for v in pos)
    if len(pos) != len(caps):
        raise ValueError(f"position {pos} has {len(pos)} piles, expected {len(caps)}")
    for v, c in zip(pos, caps):
        if v > c:
            raise ValueError(f"position {pos} lies outside the box {tuple(caps)}")
    return pos


def check_positions_array(X, n_piles: int | None = None) -> np.ndarray:
    """2-D nonnegative integer array of positions, one per row."""
    X = check_array(X, dtype=np.int64, ensure_min_samples=1)
    if (X < 0).any():
        raise ValueError("pile sizes must be nonnegative")
    if n_piles is not None and X.shape[1] != n_piles:
        raise ValueError(f"X has {X.shape[1]} columns, expected {n_piles} piles")
    return X
