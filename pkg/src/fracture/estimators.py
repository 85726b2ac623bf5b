"""scikit-learn style wrappers around the attack and basis routines.

``fit`` takes a graph in any form accepted by :func:`check_graph` and learns
a removal set; ``transform`` returns the remaining graph.
"""

from __future__ import annotations

import os

import numpy as np
import scipy.sparse as sp
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .attack import MODES, greedy_centrality_removal, greedy_spectral_removal, random_removal
from .graph import Graph, components_bfs, read_graph, remove_nodes
from .nullspace import DENSE_CAPACITY, component_basis, matrix_one_norm


def check_graph(X) -> Graph:
    """Coerce ``X`` to a :class:`Graph`.

    Accepts a ``Graph``, a path to a graph file, an ``(m, 2)`` integer edge
    array, a square symmetric 0/1 adjacency matrix (dense or sparse), or any
    object exposing ``nodes`` and ``edges`` (e.g. a networkx graph).
    """
    if isinstance(X, Graph):
        return X
    if isinstance(X, (str, os.PathLike)):
        return read_graph(X)
    if hasattr(X, "nodes") and hasattr(X, "edges"):
        return Graph(X.nodes, X.edges)
    if sp.issparse(X):
        return _from_adjacency(sp.csr_array(X))
    arr = np.asarray(X)
    if arr.ndim == 2 and arr.shape[0] == arr.shape[1] and arr.shape[0] != 2:
        return _from_adjacency(sp.csr_array(arr))
    if arr.ndim == 2 and arr.shape[1] == 2:
        if arr.size and not np.issubdtype(arr.dtype, np.integer):
            raise ValueError("edge array must hold integer node ids")
        return Graph(np.unique(arr).tolist(), arr.tolist())
    raise ValueError(f"cannot interpret object of shape {arr.shape} as a graph")


def _from_adjacency(a: sp.csr_array) -> Graph:
    if a.shape[0] != a.shape[1]:
        raise ValueError("adjacency matrix must be square")
    if (a != a.T).count_nonzero():
        raise ValueError("adjacency matrix must be symmetric")
    if a.diagonal().any():
        raise ValueError("adjacency matrix has self-loops")
    if a.nnz and not np.all(a.data[a.data != 0] == 1):
        raise ValueError("adjacency matrix must be binary")
    coo = sp.triu(a, k=1).tocoo()
    keep = coo.data != 0
    return Graph(range(a.shape[0]), zip(coo.row[keep].tolist(), coo.col[keep].tolist()))


class _AttackBase(TransformerMixin, BaseEstimator):
    def _store(self, g: Graph, trace):
        self.trace_ = trace
        self.removed_nodes_ = trace.removed
        self.lcc_sizes_ = np.array(trace.lcc_sizes, dtype=np.int64)
        self.n_nodes_in_ = g.n
        return self

    def transform(self, X) -> Graph:
        """Graph ``X`` with the learned removal set deleted."""
        check_is_fitted(self, "removed_nodes_")
        return remove_nodes(check_graph(X), self.removed_nodes_)

    def score(self, X, y=None) -> float:
        """Negative largest-component fraction after removal (higher is better)."""
        g = check_graph(X)
        rest = self.transform(g)
        return -len(components_bfs(rest).largest) / g.n if g.n else 0.0


class SpectralCutAttack(_AttackBase):
    """Greedy spectral-cut removal.

    Parameters
    ----------
    n_remove : int
        Removal budget.
    mode : {"fast", "faithful"}
        How candidate removals are scored: breadth-first component sizes, or
        the full null-space basis pipeline.
    tol : float, optional
        Eigensolver residual tolerance.
    """

    def __init__(self, n_remove: int = 10, mode: str = "fast", tol: float | None = None):
        self.n_remove = n_remove
        self.mode = mode
        self.tol = tol

    def fit(self, X, y=None):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        g = check_graph(X)
        return self._store(g, greedy_spectral_removal(g, self.n_remove, mode=self.mode, tol=self.tol))


class CentralityAttack(_AttackBase):
    """Recalculated highest-degree or highest-betweenness removal."""

    def __init__(self, n_remove: int = 10, kind: str = "degree", tol: float | None = None):
        self.n_remove = n_remove
        self.kind = kind
        self.tol = tol

    def fit(self, X, y=None):
        g = check_graph(X)
        return self._store(g, greedy_centrality_removal(g, self.n_remove, self.kind, tol=self.tol))


class RandomAttack(_AttackBase):
    def __init__(self, n_remove: int = 10, random_state: int = 0, tol: float | None = None):
        self.n_remove = n_remove
        self.random_state = random_state
        self.tol = tol

    def fit(self, X, y=None):
        g = check_graph(X)
        return self._store(g, random_removal(g, self.n_remove, seed=self.random_state, tol=self.tol))


class ComponentIndicators(TransformerMixin, BaseEstimator):
    """Binary component-indicator matrix recovered from the Laplacian null space.

    ``transform`` returns the ``(n, k)`` 0/1 matrix for a graph; ``fit``
    records it for the training graph as ``components_`` along with the
    largest component size.
    """

    def __init__(self, tol: float | None = None, capacity: int = DENSE_CAPACITY):
        self.tol = tol
        self.capacity = capacity

    def fit(self, X, y=None):
        g = check_graph(X)
        basis = component_basis(g, self.tol, self.capacity)
        self.components_ = basis.columns
        self.node_sets_ = basis.node_sets(g)
        self.largest_size_ = matrix_one_norm(basis) if g.n else 0
        self.n_nodes_in_ = g.n
        return self

    def transform(self, X) -> np.ndarray:
        check_is_fitted(self, "components_")
        return component_basis(check_graph(X), self.tol, self.capacity).columns
