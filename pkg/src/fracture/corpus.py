"""Seeded random graphs for property checks."""

from __future__ import annotations

from typing import Iterator

import numpy as np

from .graph import Graph

DENSITIES = (0.0, 0.02, 0.05, 0.1, 0.2, 0.35, 0.6)


def gnp(n: int, p: float, rng: np.random.Generator | int | None = None, ids=None) -> Graph:
    """Erdos-Renyi ``G(n, p)``; ``ids`` optionally relabels the nodes."""
    rng = np.random.default_rng(rng)
    iu, ju = np.triu_indices(n, 1)
    keep = rng.random(iu.size) < p
    labels = np.arange(n) if ids is None else np.asarray(ids)
    return Graph(labels.tolist(), zip(labels[iu[keep]].tolist(), labels[ju[keep]].tolist()))


def random_graphs(count: int, n_max: int = 50, seed: int = 0, n_min: int = 1) -> Iterator[Graph]:
    """``count`` graphs of random size in ``[n_min, n_max]`` and varied density."""
    rng = np.random.default_rng(seed)
    for _ in range(count):
        n = int(rng.integers(n_min, n_max + 1))
        p = float(rng.choice(DENSITIES))
        yield gnp(n, p, rng)


def random_removal_set(g: Graph, rng: np.random.Generator, max_fraction: float = 0.3) -> list[int]:
    """A random subset of node ids of random size, possibly empty, never all nodes."""
    if g.n <= 1:
        return []
    k = int(rng.integers(0, max(1, int(max_fraction * g.n)) + 1))
    k = min(k, g.n - 1)
    return sorted(rng.choice(np.asarray(g.node_ids), size=k, replace=False).tolist())
