"""Executable checks of the spectral identities on a concrete graph.

Used by ``fracture verify``: every check runs on the input graph and on a
number of random node-removal perturbations of it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator

import numpy as np

from .attack import spectral_cut
from .exceptions import FractureError
from .graph import Graph, components_bfs, incidence, induced_subgraph, laplacian, nuclear_norm_identity, remove_nodes
from .nullspace import DENSE_CAPACITY, component_basis, matrix_one_norm
from .spectral import edge_upper_bound

SIGN_VECTORS = 100


@dataclass(frozen=True)
class CheckResult:
    name: str
    instance: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.name} [{self.instance}] {self.detail}".rstrip()


def _bfs_ball(g: Graph, start: int, limit: int) -> list[int]:
    seen = {start}
    order = [start]
    i = 0
    while i < len(order) and len(order) < limit:
        for w in g.neighbors(order[i]):
            if w not in seen and len(order) < limit:
                seen.add(w)
                order.append(w)
        i += 1
    return order


def check_laplacian(g: Graph) -> tuple[bool, str]:
    lap = laplacian(g, sparse=True)
    row_zero = not np.any(lap @ np.ones(g.n, dtype=np.int64))
    b = incidence(g, sparse=True)
    bbt = (b @ b.T - lap).count_nonzero() == 0
    total, two_m = nuclear_norm_identity(g)
    trace_ok = abs(total - two_m) <= 1e-8 * max(1.0, two_m)
    return row_zero and bbt and trace_ok, f"L1=0:{row_zero} BBt=L:{bbt} sum(eig)={total:.6g} 2m={two_m:.0f}"


def check_basis(g: Graph, capacity: int, rng: np.random.Generator) -> tuple[bool, str]:
    sub = g
    note = ""
    if g.n > capacity:
        sub = induced_subgraph(g, _bfs_ball(g, int(rng.choice(g.node_ids)), capacity))
        note = f" (subsample n={sub.n})"
    if sub.n == 0:
        return True, "empty graph"
    x = component_basis(sub, capacity=capacity)
    bfs = components_bfs(sub)
    same = sorted(map(sorted, x.node_sets(sub))) == sorted(map(sorted, bfs.components))
    norm = matrix_one_norm(x)
    ok = same and norm == len(bfs.largest)
    return ok, f"||X||_1={norm} lcc={len(bfs.largest)} k={x.columns.shape[1]}{note}"


def check_edge_bound(g: Graph, tol: float | None) -> tuple[bool, str]:
    bound = edge_upper_bound(g, tol)
    lcc_edges = components_bfs(g).largest_edges
    return bound - lcc_edges >= -1e-9, f"bound={bound:.6f} |E_lcc|={lcc_edges}"


def check_cut_identity(g: Graph, rng: np.random.Generator, vectors: int = SIGN_VECTORS) -> tuple[bool, str]:
    lap = laplacian(g, sparse=True)
    e = g.edge_array
    for _ in range(vectors):
        s = rng.choice(np.array([-1, 1], dtype=np.int64), size=g.n)
        quad = int(s @ (lap @ s))
        count = int(np.count_nonzero(s[e[:, 0]] != s[e[:, 1]]))
        if quad != 4 * count:
            return False, f"s^T L s = {quad} but 4*cut = {4 * count}"
    return True, f"{vectors} sign vectors"


def check_spectral_cut(g: Graph, tol: float | None) -> tuple[bool, str]:
    lcc = induced_subgraph(g, components_bfs(g).largest)
    if lcc.n < 2:
        return True, "lcc has a single node"
    cut = spectral_cut(lcc, tol)
    quad = int(cut.sign_vector @ (laplacian(lcc, sparse=True) @ cut.sign_vector))
    ok = quad == 4 * cut.cut_size and (cut.cut_size == 0 or len(cut.candidates) > 0)
    return ok, f"cut={cut.cut_size} |Vcut|={len(cut.candidates)} residual={cut.fiedler.residual:.1e}"


def instances(g: Graph, trials: int, rng: np.random.Generator) -> Iterator[tuple[str, Graph]]:
    yield "input", g
    for t in range(trials):
        if g.n <= 1:
            return
        k = int(rng.integers(1, max(2, g.n // 10 + 1)))
        k = min(k, g.n - 1)
        drop = rng.choice(np.asarray(g.node_ids), size=k, replace=False).tolist()
        yield f"trial {t + 1} (-{k} nodes)", remove_nodes(g, drop)


def run_checks(
    g: Graph,
    trials: int = 0,
    seed: int = 0,
    tol: float | None = None,
    capacity: int = DENSE_CAPACITY,
    report: Callable[[CheckResult], None] | None = None,
) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    results: list[CheckResult] = []
    checks = [
        ("laplacian-identities", lambda h: check_laplacian(h)),
        ("component-basis", lambda h: check_basis(h, capacity, rng)),
        ("edge-bound", lambda h: check_edge_bound(h, tol)),
        ("cut-identity", lambda h: check_cut_identity(h, rng)),
        ("spectral-cut", lambda h: check_spectral_cut(h, tol)),
    ]
    for label, h in instances(g, trials, rng):
        for name, fn in checks:
            try:
                ok, detail = fn(h)
            except FractureError as exc:
                ok, detail = False, f"{type(exc).__name__}: {exc}"
            res = CheckResult(name, label, ok, detail)
            results.append(res)
            if report:
                report(res)
    return results
