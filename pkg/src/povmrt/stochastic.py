"""Column-stochastic matrices: the gremlin's action on a POVM.

Matrices are plain real ``numpy`` arrays with columns indexed by input
outcomes. Outcome indices are 0-based throughout.
"""
from __future__ import annotations

from typing import Sequence

import numpy as np

from .errors import InvalidDistribution, ShapeMismatch
from .povm import Povm
from .tolerances import ToleranceProfile, resolve


def as_stochastic(p, tol: ToleranceProfile | None = None) -> np.ndarray:
    """Validate a column-stochastic matrix.

    Entries above ``-tol.stoch`` are clipped to zero and columns whose sum is
    within ``tol.stoch`` of one are renormalized; anything worse is rejected.
    """
    tol = resolve(tol)
    arr = np.array(p, dtype=float)
    if arr.ndim != 2 or 0 in arr.shape:
        raise ShapeMismatch(f"expected a nonempty 2-d matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvalidDistribution(-1, "non-finite entries")
    for j in range(arr.shape[1]):
        col = arr[:, j]
        if col.min() < -tol.stoch:
            raise InvalidDistribution(j, f"negative entry {col.min():.3e}")
        s = col.sum()
        if abs(s - 1.0) > tol.stoch:
            raise InvalidDistribution(j, f"column sums to {s!r}")
    arr = np.clip(arr, 0.0, None)
    return arr / arr.sum(axis=0, keepdims=True)


def is_stochastic(p, tol: float = 1e-9) -> bool:
    arr = np.asarray(p, dtype=float)
    return bool(arr.ndim == 2 and arr.min() >= -tol and np.all(np.abs(arr.sum(axis=0) - 1.0) <= tol))


def split_matrix(spec: Sequence[Sequence[float]], tol: ToleranceProfile | None = None) -> np.ndarray:
    """Block-diagonal direct sum of the probability vectors in ``spec``.

    Input outcome ``j`` is split into ``len(spec[j])`` consecutive outputs.
    """
    tol = resolve(tol)
    blocks = []
    for j, vec in enumerate(spec):
        v = np.asarray(vec, dtype=float).ravel()
        if v.size == 0:
            raise InvalidDistribution(j, "empty probability vector")
        if v.min() < -tol.stoch or abs(v.sum() - 1.0) > tol.stoch:
            raise InvalidDistribution(j, f"not a probability vector: {v.tolist()}")
        blocks.append(v)
    out = np.zeros((sum(b.size for b in blocks), len(blocks)))
    row = 0
    for j, b in enumerate(blocks):
        out[row : row + b.size, j] = b
        row += b.size
    return out


def reversal_of_split(spec: Sequence[Sequence[float]]) -> np.ndarray:
    """Deterministic matrix ``R`` with ``R @ split_matrix(spec) == I``."""
    lengths = [len(np.ravel(v)) for v in spec]
    out = np.zeros((len(lengths), sum(lengths)))
    col = 0
    for i, ell in enumerate(lengths):
        out[i, col : col + ell] = 1.0
        col += ell
    return out


def confuse_matrix(mapping: Sequence[int], n: int | None = None, m: int | None = None) -> np.ndarray:
    """0/1 matrix sending input outcome ``j`` to output ``mapping[j]``."""
    mapping = [int(k) for k in mapping]
    n = len(mapping) if n is None else n
    if len(mapping) != n:
        raise ShapeMismatch(f"mapping has {len(mapping)} entries, expected {n}")
    m = max(mapping) + 1 if m is None else m
    if min(mapping) < 0 or max(mapping) >= m:
        raise ShapeMismatch(f"mapping targets must lie in [0, {m})")
    out = np.zeros((m, n))
    out[mapping, np.arange(n)] = 1.0
    return out


def decompose(p, tol: ToleranceProfile | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Write ``P`` as ``C @ S`` with ``S`` a split and ``C`` a confusion.

    ``S`` is the direct sum of the columns of ``P`` (``mn x n``) and
    ``C = [I_m | ... | I_m]`` (``m x mn``).
    """
    p = as_stochastic(p, tol)
    m, n = p.shape
    s = split_matrix([p[:, j] for j in range(n)], tol)
    c = np.tile(np.eye(m), (1, n))
    return c, s


def apply(p, povm: Povm) -> Povm:
    """``F_i = sum_j P[i, j] E_j``."""
    p = np.asarray(p, dtype=float)
    if p.ndim != 2 or p.shape[1] != povm.n:
        raise ShapeMismatch(f"matrix of shape {p.shape} cannot act on {povm.n} outcomes")
    return Povm(np.einsum("ij,jab->iab", p, povm.elements), check=False)


def compose(*mats) -> np.ndarray:
    """Product ``P_k ... P_1`` for matrices given in application order."""
    out = np.asarray(mats[0], dtype=float)
    for m in mats[1:]:
        out = np.asarray(m, dtype=float) @ out
    return out


def depolarizing(n: int, p: float) -> np.ndarray:
    return (1.0 - p) * np.eye(n) + p / n * np.ones((n, n))
