"""Small dense Hermitian linear algebra.

Operators are plain ``numpy`` complex arrays of shape ``(d, d)``. The
helpers here add the tolerance-aware predicates the rest of the package
relies on (Hermiticity, positivity, proportionality) plus tensor
products and the partial trace.
"""
from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .errors import DimensionMismatch, NonHermitian
from .tolerances import ToleranceProfile, resolve


class Spectrum(NamedTuple):
    eigenvalues: np.ndarray  # shape (d,), non-increasing
    eigenvectors: np.ndarray  # columns, matching order

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def as_operator(a) -> np.ndarray:
    """Coerce to a finite square complex array."""
    arr = np.asarray(a, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
        raise DimensionMismatch(f"expected a square matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("operator has non-finite entries")
    return arr


def hermiticity_error(a: np.ndarray) -> float:
    return float(np.max(np.abs(a - a.conj().T)))


def hermitian(a, tol: ToleranceProfile | None = None, index: int | None = None) -> np.ndarray:
    """Validate Hermiticity within ``tol.herm`` and return the symmetrized operator."""
    tol = resolve(tol)
    arr = as_operator(a)
    err = hermiticity_error(arr)
    if err > tol.herm:
        raise NonHermitian(err, index)
    return 0.5 * (arr + arr.conj().T)


def identity(d: int) -> np.ndarray:
    return np.eye(d, dtype=complex)


def ket(index: int, d: int) -> np.ndarray:
    v = np.zeros(d, dtype=complex)
    v[index] = 1.0
    return v


def projector(v) -> np.ndarray:
    v = np.asarray(v, dtype=complex).ravel()
    v = v / np.linalg.norm(v)
    return np.outer(v, v.conj())


def eig(a, tol: ToleranceProfile | None = None) -> Spectrum:
    """Eigendecomposition with eigenvalues sorted non-increasing.

    Diagonal inputs return the computational basis, so that downstream
    quantities that depend on the eigenbasis of a degenerate operator
    (the Maccone measure) are reproducible.
    """
    h = hermitian(a, tol)
    d = h.shape[0]
    if np.count_nonzero(h - np.diag(np.diag(h))) == 0:
        vals = np.diag(h).real.copy()
        vecs = np.eye(d, dtype=complex)
    else:
        vals, vecs = np.linalg.eigh(h)
    order = np.argsort(-vals, kind="stable")
    return Spectrum(vals[order], vecs[:, order])


def eigvalsh_desc(a: np.ndarray) -> np.ndarray:
    """Eigenvalues of a Hermitian array, non-increasing, without validation."""
    return np.linalg.eigvalsh(a)[::-1]


def is_psd(a, tol: float = 1e-9) -> bool:
    return bool(eigvalsh_desc(as_operator(a))[-1] >= -tol)


def operator_norm(a) -> float:
    """Largest absolute eigenvalue of a Hermitian operator."""
    vals = np.linalg.eigvalsh(as_operator(a))
    return float(np.max(np.abs(vals)))


def tensor(a, b) -> np.ndarray:
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def partial_trace_b(a, dim_a: int, dim_b: int) -> np.ndarray:
    arr = as_operator(a)
    if arr.shape[0] != dim_a * dim_b:
        raise DimensionMismatch(f"operator of dim {arr.shape[0]} is not {dim_a}x{dim_b}")
    return np.einsum("ikjk->ij", arr.reshape(dim_a, dim_b, dim_a, dim_b))


def max_entry(a) -> float:
    return float(np.max(np.abs(a))) if np.size(a) else 0.0


def proportional(a, b, tol: float = 1e-8) -> float | None:
    """Return ``c >= 0`` with ``||a - c b||_max <= tol``, or ``None``.

    A zero ``a`` is proportional to anything with ``c = 0``; a nonzero
    ``a`` is never proportional to a zero ``b``. Both inputs are assumed PSD,
    so the ratio of traces is the only candidate constant.
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        raise DimensionMismatch(f"shapes {a.shape} and {b.shape} differ")
    if max_entry(a) <= tol:
        return 0.0
    if max_entry(b) <= tol:
        return None
    tb = np.trace(b).real
    if tb <= 0:
        return None
    c = np.trace(a).real / tb
    if c < 0 or max_entry(a - c * b) > tol:
        return None
    return float(c)


def von_neumann_entropy(rho: np.ndarray, negative_tol: float = 1e-8) -> float:
    """Entropy in nats. Eigenvalues are clamped to [0, 1]; values below
    ``-negative_tol`` are rejected instead of clamped."""
    vals = np.linalg.eigvalsh(rho)
    return shannon_entropy(vals, negative_tol)


def shannon_entropy(p, negative_tol: float = 1e-8) -> float:
    p = np.asarray(p, dtype=float)
    if p.size and p.min() < -negative_tol:
        raise ValueError(f"negative probability/eigenvalue {p.min():.3e}")
    p = np.clip(p, 0.0, 1.0)
    nz = p[p > 0]
    return float(-np.sum(nz * np.log(nz)))
