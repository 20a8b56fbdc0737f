"""scikit-learn style wrapper around the ``NIM_H`` value tables.

``fit`` tabulates the box spanned by the training positions (or by explicit
``caps``); ``predict`` and ``transform`` look positions up in that box, so
the solver drops into pipelines and parameter searches like any estimator.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import check_caps, check_positions_array
from .games import NimH
from .hypergraph import Hypergraph
from .tables import sg_table, tetris_table

__all__ = ["NimHValues"]


class NimHValues(TransformerMixin, BaseEstimator):
    """Sprague-Grundy / Tetris values of ``NIM_H`` positions.

    Parameters
    ----------
    hypergraph : Hypergraph or dict
        The move hypergraph; a dict is read as hypergraph JSON.
    kind : {"sg", "tetris"}
        Which value ``predict`` returns.
    caps : int, sequence of int or None
        Box to tabulate. ``None`` uses the componentwise maximum of ``X``.

    Attributes
    ----------
    caps_ : tuple of int
    sg_table_, tetris_table_ : ValueTable
    n_features_in_ : int
    """

    def __init__(self, hypergraph=None, kind="sg", caps=None):
        self.hypergraph = hypergraph
        self.kind = kind
        self.caps = caps

    def _hypergraph(self) -> Hypergraph:
        h = self.hypergraph
        if isinstance(h, dict):
            h = Hypergraph.from_dict(h)
        if not isinstance(h, Hypergraph):
            raise ValueError("hypergraph must be a Hypergraph or hypergraph dict")
        return h

    def fit(self, X=None, y=None):
        if self.kind not in ("sg", "tetris"):
            raise ValueError(f"kind must be 'sg' or 'tetris', got {self.kind!r}")
        h = self._hypergraph()
        if self.caps is not None:
            caps = check_caps(self.caps, h.n)
        elif X is None:
            raise ValueError("either X or caps is needed to fix the box")
        else:
            caps = tuple(int(c) for c in check_positions_array(X, h.n).max(axis=0))
        spec = NimH(h, caps)
        self.caps_ = spec.caps
        self.sg_table_ = sg_table(spec)
        self.tetris_table_ = tetris_table(spec)
        self.n_features_in_ = h.n
        return self

    def _lookup(self, X, table) -> np.ndarray:
        check_is_fitted(self, "caps_")
        X = check_positions_array(X, self.n_features_in_)
        over = X > np.asarray(self.caps_)
        if over.any():
            row = int(np.argwhere(over)[0][0])
            raise ValueError(f"position {tuple(X[row])} lies outside the fitted box {self.caps_}")
        return table.values[tuple(X.T)]

    def predict(self, X) -> np.ndarray:
        check_is_fitted(self, "caps_")
        table = self.sg_table_ if self.kind == "sg" else self.tetris_table_
        return self._lookup(X, table)

    def transform(self, X) -> np.ndarray:
        """Columns: SG value, Tetris value."""
        return np.column_stack(
            [self._lookup(X, self.sg_table_), self._lookup(X, self.tetris_table_)]
        )

    def is_p_position(self, X) -> np.ndarray:
        return self._lookup(X, self.sg_table_) == 0
