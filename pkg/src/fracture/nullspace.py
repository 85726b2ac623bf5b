"""Component indicators recovered from the Laplacian null space.

A connected component is exactly the support of one binary vector in the
null space of the Laplacian. :func:`null_space_basis` produces some
orthonormal basis of that space, and :func:`sparsest_binary_basis` runs the
greedy basis search that turns an arbitrary basis back into the binary,
pairwise disjoint indicator columns. The largest column one-norm is then the
size of the largest component.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from .exceptions import BasisInconsistency, CapacityExceeded, ToleranceAmbiguity
from .graph import Graph, laplacian
from .spectral import EPS, zero_tolerance

#: Largest dimension for which the dense eigendecomposition is attempted.
DENSE_CAPACITY = 2048

#: Entries within ``CLUSTER_FACTOR * eps * max|Y|`` are the same value.
CLUSTER_FACTOR = 1e3


@dataclass(frozen=True)
class NullBasis:
    """Orthonormal basis of the eigenspace below ``zero_tolerance``."""

    columns: np.ndarray  # (n, k)
    zero_tolerance: float

    @property
    def dimension(self) -> int:
        return self.columns.shape[0]

    @property
    def rank_deficiency(self) -> int:
        return self.columns.shape[1]


@dataclass(frozen=True)
class DecompositionStep:
    """One candidate vector produced while decomposing a column of ``Y``."""

    column: int
    vector: tuple[int, ...]
    accepted: bool


@dataclass(frozen=True)
class ComponentBasis:
    """Binary indicator columns, largest support first."""

    columns: np.ndarray  # (n, k), dtype int8
    steps: tuple[DecompositionStep, ...] = field(default=(), compare=False)

    @property
    def supports(self) -> list[frozenset[int]]:
        """Position sets of each column."""
        return [frozenset(np.flatnonzero(c).tolist()) for c in self.columns.T]

    def node_sets(self, g: Graph) -> list[frozenset[int]]:
        """Supports translated to the original ids of ``g``."""
        ids = g.node_ids
        return [frozenset(ids[i] for i in s) for s in self.supports]


def random_rotation(k: int, seed: int | np.random.Generator | None = 0) -> np.ndarray:
    """Haar-distributed ``k x k`` orthogonal matrix."""
    rng = np.random.default_rng(seed)
    q, r = np.linalg.qr(rng.standard_normal((k, k)))
    return q * np.sign(np.diag(r))


def null_space_basis(
    lap,
    tol: float | None = None,
    capacity: int = DENSE_CAPACITY,
    rotation_seed: int | None = 0,
) -> NullBasis:
    """Orthonormal basis of the eigenvectors with eigenvalue ``<= tol``.

    Uses a full dense symmetric eigendecomposition. Raises
    :class:`ToleranceAmbiguity` when an eigenvalue falls in ``(tol, 10*tol)``.

    LAPACK tends to return eigenvectors of a block-diagonal matrix that are
    exactly zero on most blocks, with rounding noise on a few; noise on
    several blocks can then look like one shared value. Mixing the columns
    by a seeded random rotation gives every component a generic, clearly
    nonzero coefficient. Pass ``rotation_seed=None`` for the raw eigenvectors.
    """
    n = lap.shape[0]
    if n > capacity:
        raise CapacityExceeded(f"dense null-space basis limited to n <= {capacity}, got n = {n}")
    if tol is None:
        tol = zero_tolerance(lap)
    mat = lap.toarray() if sp.issparse(lap) else np.asarray(lap)
    w, vecs = np.linalg.eigh(mat.astype(float))
    near = (w > tol) & (w < 10 * tol)
    if near.any():
        raise ToleranceAmbiguity(
            f"eigenvalue {w[near][0]:.3e} lies between tol={tol:.3e} and 10*tol; spectrum is not separated"
        )
    k = int(np.count_nonzero(w <= tol))
    y = vecs[:, :k]
    if rotation_seed is not None and k > 1:
        y = y @ random_rotation(k, rotation_seed)
    return NullBasis(y, float(tol))


def _cluster(values: np.ndarray, thr: float) -> list[np.ndarray]:
    """Group indices of ``values`` whose sorted neighbours differ by ``<= thr``.

    Groups are returned in order of their first index.
    """
    order = np.argsort(values, kind="stable")
    breaks = np.flatnonzero(np.diff(values[order]) > thr) + 1
    groups = [np.sort(g) for g in np.split(order, breaks)]
    groups.sort(key=lambda g: g[0])
    return groups


def column_profile(y: np.ndarray, thr: float) -> tuple[int, int]:
    """``(nonzero count, distinct nonzero count)`` of one column."""
    nz = np.flatnonzero(np.abs(y) > thr)
    if nz.size == 0:
        return 0, 0
    return int(nz.size), len(_cluster(y[nz], thr))


def sparsest_binary_basis(basis: NullBasis | np.ndarray) -> ComponentBasis:
    """Greedy search for the sparsest binary basis of a Laplacian null space.

    Columns of ``Y`` are visited sparsest first (ties: more distinct nonzero
    values first, then lower column index). Each visited column is split
    into one 0/1 vector per distinct nonzero value, and a split vector is
    kept only if its support is disjoint from every column kept so far. The
    search stops once the kept columns reach the rank of ``Y``.
    """
    y = basis.columns if isinstance(basis, NullBasis) else np.asarray(basis, dtype=float)
    n, k = y.shape
    if k == 0:
        return ComponentBasis(np.zeros((n, 0), dtype=np.int8))
    thr = CLUSTER_FACTOR * EPS * float(np.abs(y).max())

    profiles = [column_profile(y[:, j], thr) for j in range(k)]
    visit = sorted(range(k), key=lambda j: (profiles[j][0], -profiles[j][1], j))

    covered = np.zeros(n, dtype=bool)
    kept: list[np.ndarray] = []
    steps: list[DecompositionStep] = []
    for j in visit:
        if len(kept) == k:
            break
        col = y[:, j]
        nz = np.flatnonzero(np.abs(col) > thr)
        if nz.size == 0:
            continue
        for group in _cluster(col[nz], thr):
            e = np.zeros(n, dtype=np.int8)
            e[nz[group]] = 1
            ok = not covered[nz[group]].any()
            steps.append(DecompositionStep(j, tuple(e.tolist()), ok))
            if ok:
                covered[nz[group]] = True
                kept.append(e)
    if len(kept) != k:
        raise BasisInconsistency(f"recovered {len(kept)} binary columns, expected {k}")

    kept.sort(key=lambda e: (-int(e.sum()), int(np.flatnonzero(e)[0])))
    return ComponentBasis(np.column_stack(kept), tuple(steps))


def matrix_one_norm(x: ComponentBasis | np.ndarray) -> int:
    """Maximum absolute column sum."""
    cols = x.columns if isinstance(x, ComponentBasis) else np.asarray(x)
    if cols.size == 0:
        raise ValueError("matrix one-norm of an empty basis")
    return int(np.abs(cols).sum(axis=0).max())


def component_basis(g: Graph, tol: float | None = None, capacity: int = DENSE_CAPACITY) -> ComponentBasis:
    """Laplacian of ``g`` -> null-space basis -> sparsest binary basis."""
    return sparsest_binary_basis(null_space_basis(laplacian(g, sparse=False), tol, capacity))


def largest_component_size(g: Graph, tol: float | None = None, capacity: int = DENSE_CAPACITY) -> int:
    if g.n == 0:
        return 0
    return matrix_one_norm(component_basis(g, tol, capacity))
