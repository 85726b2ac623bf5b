"""Degree and shortest-path betweenness centrality."""

from __future__ import annotations

from dataclasses import dataclass

import numba
import numpy as np

from .graph import Graph

#: Scores within this relative distance of the maximum count as tied.
TIE_RTOL = 1e-9


@dataclass(frozen=True)
class CentralityScores:
    values: np.ndarray  # indexed by position in ``node_ids``
    node_ids: tuple[int, ...]
    kind: str

    def __getitem__(self, node_id: int) -> float:
        return self.values[self.node_ids.index(node_id)]

    def as_dict(self) -> dict[int, float]:
        return dict(zip(self.node_ids, self.values.tolist()))

    def argmax(self) -> int:
        """Original id of the top-scoring node; ties go to the smallest id."""
        if not self.node_ids:
            raise ValueError("argmax of an empty score vector")
        top = self.values.max()
        tied = np.flatnonzero(self.values >= top - TIE_RTOL * max(abs(top), 1.0))
        # positions follow sorted id order, so the first tied position is the smallest id
        return self.node_ids[int(tied[0])]


def degrees(g: Graph) -> CentralityScores:
    return CentralityScores(g.degree_array(), g.node_ids, "degree")


def betweenness(g: Graph) -> CentralityScores:
    """Betweenness summed over ordered source/target pairs.

    Brandes' algorithm: one breadth-first search per source counts shortest
    paths, then dependencies are accumulated in reverse BFS order. Pairs in
    different components contribute nothing; endpoints are excluded.
    """
    if g.n < 3 or g.m == 0:
        return CentralityScores(np.zeros(g.n), g.node_ids, "betweenness")
    adj = g.adjacency_matrix
    bc = _brandes(adj.indptr.astype(np.int64), adj.indices.astype(np.int64), g.n)
    return CentralityScores(bc, g.node_ids, "betweenness")


@numba.njit(cache=True)
def _brandes(indptr, indices, n):
    bc = np.zeros(n)
    sigma = np.zeros(n)
    delta = np.zeros(n)
    dist = np.empty(n, dtype=np.int64)
    order = np.empty(n, dtype=np.int64)
    for s in range(n):
        dist[:] = -1
        sigma[:] = 0.0
        delta[:] = 0.0
        dist[s] = 0
        sigma[s] = 1.0
        order[0] = s
        head = 0
        tail = 1
        while head < tail:
            v = order[head]
            head += 1
            for k in range(indptr[v], indptr[v + 1]):
                w = indices[k]
                if dist[w] < 0:
                    dist[w] = dist[v] + 1
                    order[tail] = w
                    tail += 1
                if dist[w] == dist[v] + 1:
                    sigma[w] += sigma[v]
        for i in range(tail - 1, 0, -1):
            w = order[i]
            coef = (1.0 + delta[w]) / sigma[w]
            for k in range(indptr[w], indptr[w + 1]):
                v = indices[k]
                if dist[v] == dist[w] - 1:
                    delta[v] += sigma[v] * coef
            bc[w] += delta[w]
    return bc
