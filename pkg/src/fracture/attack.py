"""Greedy node-removal attacks on the largest connected component."""

from __future__ import annotations

import logging
import os
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Sequence

import numpy as np

from .centrality import betweenness, degrees
from .exceptions import BudgetExceedsNodes, CapacityExceeded
from .graph import Graph, augmented_signless, components_bfs, induced_subgraph, laplacian, remove_nodes
from .nullspace import DENSE_CAPACITY, largest_component_size
from .spectral import SpectralResult, default_tol, edge_upper_bound, fiedler, lambda_max

log = logging.getLogger(__name__)

STRATEGIES = ("spectral", "degree", "betweenness", "random")
MODES = ("fast", "faithful")

#: Top eigenvalues closer than this are tied; node id decides.
LAMBDA_TIE = 1e-6


@dataclass(frozen=True)
class CutPartition:
    node_ids: tuple[int, ...]
    sign_vector: np.ndarray  # +1 / -1 per entry of ``node_ids``
    cut_edges: tuple[tuple[int, int], ...]
    candidates: frozenset[int]
    fiedler: SpectralResult

    @property
    def cut_size(self) -> int:
        return len(self.cut_edges)


class AttackStep(NamedTuple):
    q: int
    removed_node: int
    lcc_nodes: int
    lcc_edges: int
    edge_bound: float
    vcut_size: int | None = None


@dataclass
class AttackTrace:
    strategy: str
    seed: int = 0
    steps: list[AttackStep] = field(default_factory=list)

    @property
    def removed(self) -> list[int]:
        return [s.removed_node for s in self.steps]

    @property
    def lcc_sizes(self) -> list[int]:
        return [s.lcc_nodes for s in self.steps]

    def __len__(self):
        return len(self.steps)


def worker_count() -> int:
    """Worker cap from ``FRACTURE_THREADS`` (0 or unset: one per CPU)."""
    raw = os.environ.get("FRACTURE_THREADS", "0").strip() or "0"
    try:
        k = int(raw)
    except ValueError:
        k = 0
    return k if k > 0 else (os.cpu_count() or 1)


def _map(fn: Callable, items: Sequence, workers: int | None = None) -> list:
    workers = worker_count() if workers is None else workers
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=min(workers, len(items))) as pool:
        return list(pool.map(fn, items))


def _check_budget(g: Graph, q: int) -> None:
    if q < 0:
        raise ValueError(f"budget must be non-negative, got {q}")
    if q >= g.n and q > 0:
        raise BudgetExceedsNodes(f"budget {q} must be smaller than the node count {g.n}")


# ---------------------------------------------------------------------------
# spectral cut


def spectral_cut(g: Graph, tol: float | None = None) -> CutPartition:
    """Sign split of the Fiedler vector and the edges crossing it.

    Entries within ``10 * tol`` of zero count as zero, and zero maps to -1.
    """
    res = fiedler(laplacian(g), tol)
    tol = default_tol(g.n) if tol is None else tol
    signs = np.where(res.eigenvector > 10 * tol, 1, -1).astype(np.int64)
    e = g.edge_array
    crossing = signs[e[:, 0]] != signs[e[:, 1]]
    ids = g.node_ids
    cut = tuple((ids[i], ids[j]) for i, j in e[crossing].tolist())
    candidates = frozenset(v for edge in cut for v in edge)
    return CutPartition(ids, signs, cut, candidates, res)


def cut_size_quadratic(g: Graph, signs: np.ndarray) -> float:
    """``s^T L s / 4``; equals the number of crossing edges for a +-1 vector."""
    s = np.asarray(signs, dtype=float)
    return float(s @ (laplacian(g) @ s)) / 4.0


# ---------------------------------------------------------------------------
# candidate scoring


def _largest_piece_without(g: Graph, skip: int) -> int:
    """Largest component size of ``g`` with position ``skip`` deleted."""
    adj = g.adjacency
    seen = bytearray(g.n)
    seen[skip] = 1
    best = 0
    for start in range(g.n):
        if seen[start]:
            continue
        seen[start] = 1
        size = 1
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if not seen[w]:
                    seen[w] = 1
                    size += 1
                    queue.append(w)
        best = max(best, size)
    return best


def _lcc_after_fast(current: Graph, lcc: Graph, other_max: int, v: int) -> int:
    return max(other_max, _largest_piece_without(lcc, lcc.position(v)))


def _lcc_after_faithful(current: Graph, v: int, tol: float | None, capacity: int) -> int:
    remaining = remove_nodes(current, [v])
    if remaining.n > capacity:
        raise CapacityExceeded(
            f"faithful mode decomposes the full remaining graph; n = {remaining.n} exceeds {capacity}"
        )
    return largest_component_size(remaining, capacity=capacity)


def _top_eigenvalue_after(current: Graph, u: int, tol: float | None) -> float:
    remaining = remove_nodes(current, [u])
    if remaining.m == 0:
        return 0.0
    return lambda_max(augmented_signless(remaining), tol).eigenvalue


def _record(q: int, node: int, remaining: Graph, tol: float | None, vcut: int | None) -> AttackStep:
    comps = components_bfs(remaining)
    return AttackStep(
        q=q,
        removed_node=node,
        lcc_nodes=len(comps.largest),
        lcc_edges=comps.largest_edges,
        edge_bound=edge_upper_bound(remaining, tol),
        vcut_size=vcut,
    )


def select_spectral_node(
    current: Graph,
    mode: str = "fast",
    tol: float | None = None,
    capacity: int = DENSE_CAPACITY,
    workers: int | None = None,
) -> tuple[int, CutPartition, dict[int, int]]:
    """One greedy step: pick the cut node whose removal leaves the smallest LCC.

    Returns ``(node, cut, scores)`` where ``scores`` maps every candidate to
    its post-removal largest-component size.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    comps = components_bfs(current)
    lcc = induced_subgraph(current, comps.largest)
    other_max = len(comps.components[1]) if len(comps) > 1 else 0
    cut = spectral_cut(lcc, tol)
    cands = sorted(cut.candidates)

    if mode == "fast":
        sizes = _map(lambda v: _lcc_after_fast(current, lcc, other_max, v), cands, workers)
    else:
        sizes = _map(lambda v: _lcc_after_faithful(current, v, tol, capacity), cands, workers)
    scores = dict(zip(cands, sizes))

    best = min(sizes)
    tied = [v for v in cands if scores[v] == best]
    if len(tied) == 1:
        return tied[0], cut, scores
    lams = _map(lambda u: _top_eigenvalue_after(current, u, tol), tied, workers)
    low = min(lams)
    chosen = min(u for u, lam in zip(tied, lams) if lam - low <= LAMBDA_TIE)
    return chosen, cut, scores


# ---------------------------------------------------------------------------
# attacks


def greedy_spectral_removal(
    g: Graph,
    q: int,
    mode: str = "fast",
    tol: float | None = None,
    capacity: int = DENSE_CAPACITY,
    workers: int | None = None,
    progress: Callable[[AttackStep], None] | None = None,
) -> AttackTrace:
    """Remove up to ``q`` nodes, each chosen from the current spectral cut.

    Stops early once no edges remain.
    """
    _check_budget(g, q)
    trace = AttackTrace("spectral")
    current = g
    for i in range(1, q + 1):
        if current.m == 0:
            log.info("graph is edgeless after %d removals; stopping", i - 1)
            break
        node, cut, _ = select_spectral_node(current, mode, tol, capacity, workers)
        current = remove_nodes(current, [node])
        step = _record(i, node, current, tol, len(cut.candidates))
        trace.steps.append(step)
        if progress:
            progress(step)
    return trace


_CENTRALITY = {"degree": degrees, "betweenness": betweenness}


def greedy_centrality_removal(
    g: Graph,
    q: int,
    kind: str = "degree",
    tol: float | None = None,
    progress: Callable[[AttackStep], None] | None = None,
) -> AttackTrace:
    """Repeatedly remove the current top node by degree or betweenness."""
    try:
        score = _CENTRALITY[kind]
    except KeyError:
        raise ValueError(f"kind must be 'degree' or 'betweenness', got {kind!r}") from None
    _check_budget(g, q)
    trace = AttackTrace(kind)
    current = g
    for i in range(1, q + 1):
        node = score(current).argmax()
        current = remove_nodes(current, [node])
        step = _record(i, node, current, tol, None)
        trace.steps.append(step)
        if progress:
            progress(step)
    return trace


def random_removal(
    g: Graph,
    q: int,
    seed: int = 0,
    tol: float | None = None,
    progress: Callable[[AttackStep], None] | None = None,
) -> AttackTrace:
    """Remove ``q`` distinct nodes drawn uniformly at random."""
    _check_budget(g, q)
    rng = np.random.default_rng(seed)
    order = rng.permutation(np.asarray(g.node_ids, dtype=np.int64))[:q].tolist()
    trace = AttackTrace("random", seed=seed)
    current = g
    for i, node in enumerate(order, 1):
        current = remove_nodes(current, [node])
        step = _record(i, node, current, tol, None)
        trace.steps.append(step)
        if progress:
            progress(step)
    return trace


def run_strategy(
    g: Graph,
    strategy: str,
    q: int,
    mode: str = "fast",
    seed: int = 0,
    tol: float | None = None,
    progress: Callable[[AttackStep], None] | None = None,
) -> AttackTrace:
    """Dispatch by strategy name; the seed is recorded on every trace."""
    if strategy == "spectral":
        trace = greedy_spectral_removal(g, q, mode=mode, tol=tol, progress=progress)
    elif strategy in _CENTRALITY:
        trace = greedy_centrality_removal(g, q, strategy, tol=tol, progress=progress)
    elif strategy == "random":
        trace = random_removal(g, q, seed=seed, tol=tol, progress=progress)
    else:
        raise ValueError(f"strategy must be one of {STRATEGIES}, got {strategy!r}")
    trace.seed = seed
    return trace
