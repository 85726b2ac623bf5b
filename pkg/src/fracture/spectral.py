"""Symmetric eigensolvers for the Fiedler pair and the top eigenvalue."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .exceptions import NoConvergence, NotConnected
from .graph import DENSE_LIMIT, Graph, augmented_signless

DENSE_TOL = 1e-10
ITERATIVE_TOL = 1e-8
EPS = np.finfo(float).eps


@dataclass(frozen=True)
class SpectralResult:
    eigenvalue: float
    eigenvector: np.ndarray
    residual: float
    iterations: int = 0


def _as_float(mat):
    if sp.issparse(mat):
        return sp.csr_array(mat, dtype=float)
    return np.asarray(mat, dtype=float)


def default_tol(dim: int) -> float:
    return DENSE_TOL if dim <= DENSE_LIMIT else ITERATIVE_TOL


def iteration_cap(dim: int) -> int:
    return max(1, int(math.ceil(50 * math.sqrt(dim))))


def zero_tolerance(lap) -> float:
    """``n * eps * lambda_max`` with ``lambda_max <= 2 * max degree``."""
    n = lap.shape[0]
    diag = lap.diagonal() if sp.issparse(lap) else np.diag(lap)
    max_deg = float(np.max(diag)) if n else 0.0
    return n * EPS * max(2.0 * max_deg, 1.0)


def normalize_sign(v: np.ndarray, atol: float = 0.0) -> np.ndarray:
    """Flip ``v`` so its first entry with ``|v_i| > atol`` is positive."""
    nz = np.flatnonzero(np.abs(v) > atol)
    if nz.size and v[nz[0]] < 0:
        return -v
    return v


def _residual(mat, lam: float, v: np.ndarray) -> float:
    return float(np.linalg.norm(mat @ v - lam * v))


def _start_vector(n: int) -> np.ndarray:
    # fixed seed: identical Krylov spaces, hence identical output, on every run
    return np.random.default_rng(20_120_517).standard_normal(n)


def dense_spectrum(mat) -> np.ndarray:
    """All eigenvalues, ascending."""
    m = _as_float(mat)
    if sp.issparse(m):
        m = m.toarray()
    return np.linalg.eigvalsh(m)


def fiedler(lap, tol: float | None = None) -> SpectralResult:
    """Second-smallest Laplacian eigenpair of a connected graph.

    The eigenvector is orthogonal to the all-ones vector and sign-normalised
    so its first clearly nonzero entry is positive.
    """
    n = lap.shape[0]
    if n < 2:
        raise NotConnected("a Fiedler vector needs at least two nodes")
    tol = default_tol(n) if tol is None else tol
    mat = _as_float(lap)
    ztol = zero_tolerance(mat)
    ones = np.full(n, 1.0 / math.sqrt(n))
    iterations = 0

    if n <= DENSE_LIMIT:
        dense = mat.toarray() if sp.issparse(mat) else mat
        w, vecs = np.linalg.eigh(dense)
        lam = float(w[1])
        vec = vecs[:, 1]
    else:
        lam, vec, iterations = _fiedler_iterative(mat, tol)

    if lam <= ztol:
        raise NotConnected(f"second eigenvalue {lam:.3e} is numerically zero; graph is disconnected")

    vec = vec - ones * (ones @ vec)
    vec /= np.linalg.norm(vec)
    lam = float(vec @ (mat @ vec))
    vec = normalize_sign(vec, atol=10 * tol)
    res = _residual(mat, lam, vec)
    if res > tol:
        raise NoConvergence(f"Fiedler residual {res:.3e} exceeds tol {tol:.1e}")
    return SpectralResult(lam, vec, res, iterations)


class _Counted(spla.LinearOperator):
    """Wrap a matvec so the number of Krylov steps can be reported."""

    def __init__(self, n, fn):
        super().__init__(dtype=float, shape=(n, n))
        self._fn = fn
        self.calls = 0

    def _matvec(self, x):
        self.calls += 1
        return self._fn(np.ravel(x))


def _fiedler_iterative(mat: sp.csr_array, tol: float):
    n = mat.shape[0]
    # shift-invert about a small negative shift keeps L + sigma*I positive definite
    sigma = -1e-3
    solve = spla.factorized(sp.csc_array(mat - sigma * sp.eye_array(n)))
    op_inv = _Counted(n, solve)
    cap = iteration_cap(n)
    try:
        w, vecs = spla.eigsh(
            mat,
            k=2,
            sigma=sigma,
            which="LM",
            OPinv=op_inv,
            v0=_start_vector(n),
            ncv=min(n, 20),
            tol=tol * 1e-4,
            maxiter=cap,
        )
    except spla.ArpackNoConvergence as exc:
        raise NoConvergence(f"Lanczos did not converge in {cap} iterations") from exc
    order = np.argsort(w)
    w, vecs = w[order], vecs[:, order]
    return float(w[1]), vecs[:, 1], op_inv.calls


def lambda_max(mat, tol: float | None = None) -> SpectralResult:
    """Largest algebraic eigenvalue of a symmetric matrix."""
    n = mat.shape[0]
    tol = default_tol(n) if tol is None else tol
    m = _as_float(mat)
    if n == 0:
        return SpectralResult(0.0, np.zeros(0), 0.0)
    if sp.issparse(m) and m.nnz == 0 or not sp.issparse(m) and not m.any():
        vec = np.zeros(n)
        vec[0] = 1.0
        return SpectralResult(0.0, vec, 0.0)
    iterations = 0
    if n <= DENSE_LIMIT:
        dense = m.toarray() if sp.issparse(m) else m
        w, vecs = np.linalg.eigh(dense)
        lam, vec = float(w[-1]), vecs[:, -1]
    else:
        cap = iteration_cap(n)
        op = _Counted(n, m.__matmul__)
        try:
            w, vecs = spla.eigsh(op, k=1, which="LA", v0=_start_vector(n), tol=tol * 1e-4, maxiter=cap)
        except spla.ArpackNoConvergence as exc:
            raise NoConvergence(f"Lanczos did not converge in {cap} iterations") from exc
        lam, vec, iterations = float(w[0]), vecs[:, 0], op.calls
    vec = normalize_sign(vec / np.linalg.norm(vec), atol=10 * tol)
    res = _residual(m, lam, vec)
    if res > tol:
        raise NoConvergence(f"top-eigenpair residual {res:.3e} exceeds tol {tol:.1e}")
    return SpectralResult(lam, vec, res, iterations)


def edge_upper_bound(g: Graph, tol: float | None = None) -> float:
    """Upper bound on the edge count of the largest component.

    ``(n + 1) / 8 * lambda_max([[Q, d], [d^T, 0]])`` where ``n`` is the node
    count of ``g`` itself (the remaining graph, not the original one).
    """
    if g.m == 0:
        return 0.0
    lam = lambda_max(augmented_signless(g), tol).eigenvalue
    return (g.n + 1) / 8.0 * lam
