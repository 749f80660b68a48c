"""POVMs and their structural operations.

A :class:`Povm` stores its elements as one read-only complex array of
shape ``(n, d, d)``. Canonical representatives (no zero elements, no two
proportional elements, fixed element order) are :class:`CanonicalPovm`.
"""
from __future__ import annotations

from typing import Iterator, Sequence

import numpy as np

from . import operator as op
from .errors import DimensionMismatch, IncompletenessResidual, NotPsd
from .tolerances import ToleranceProfile, resolve


class Povm:
    """Ordered list of PSD operators summing to the identity.

    ``check=False`` skips validation; only internal code that has already
    established the invariants should use it.
    """

    __slots__ = ("_elements",)

    def __init__(self, elements, *, check: bool = True, tol: ToleranceProfile | None = None):
        if check:
            arr = _validated(elements, resolve(tol))
        else:
            arr = np.array(elements, dtype=complex)
        arr.setflags(write=False)
        self._elements = arr

    @property
    def elements(self) -> np.ndarray:
        return self._elements

    @property
    def dim(self) -> int:
        return self._elements.shape[1]

    @property
    def n(self) -> int:
        return self._elements.shape[0]

    def __len__(self) -> int:
        return self.n

    def __iter__(self) -> Iterator[np.ndarray]:
        return iter(self._elements)

    def __getitem__(self, i) -> np.ndarray:
        return self._elements[i]

    def __repr__(self) -> str:
        return f"{type(self).__name__}(dim={self.dim}, n={self.n})"

    def completeness_residual(self) -> float:
        return op.max_entry(self._elements.sum(axis=0) - np.eye(self.dim))

    def allclose(self, other: "Povm", atol: float = 1e-10) -> bool:
        return self._elements.shape == other.elements.shape and bool(
            np.allclose(self._elements, other.elements, rtol=0.0, atol=atol)
        )


class CanonicalPovm(Povm):
    __slots__ = ()


def _validated(elements, tol: ToleranceProfile) -> np.ndarray:
    if isinstance(elements, Povm):
        return elements.elements.copy()
    if isinstance(elements, np.ndarray) and elements.ndim != 3:
        raise DimensionMismatch(f"expected an (n, d, d) array, got shape {elements.shape}")
    mats = [op.as_operator(e) for e in elements]
    if not mats:
        raise ValueError("a POVM needs at least one element")
    d = mats[0].shape[0]
    for i, m in enumerate(mats):
        if m.shape != (d, d):
            raise DimensionMismatch(f"element {i} has shape {m.shape}, expected {(d, d)}")
    herm = np.array([op.hermitian(m, tol, index=i) for i, m in enumerate(mats)])
    for i, m in enumerate(herm):
        vals = np.linalg.eigvalsh(m)
        scale = max(1.0, float(np.max(np.abs(vals))))
        if vals[0] < -tol.psd * scale:
            raise NotPsd(i, float(vals[0]))
    residual = op.max_entry(herm.sum(axis=0) - np.eye(d))
    if residual > tol.comp:
        raise IncompletenessResidual(residual)
    return herm


def validate(candidate, tol: ToleranceProfile | None = None) -> Povm:
    """Check a raw element list and return it as a :class:`Povm`.

    Raises :class:`NotPsd`, :class:`IncompletenessResidual`,
    :class:`DimensionMismatch` or :class:`NonHermitian`.
    """
    return Povm(candidate, tol=tol)


def trivial(d: int) -> Povm:
    return Povm(np.eye(d, dtype=complex)[None], check=False)


def from_basis(vectors) -> Povm:
    """Projective POVM from the columns of a unitary."""
    u = np.asarray(vectors, dtype=complex)
    return Povm(np.einsum("ik,jk->kij", u, u.conj()))


def computational_basis(d: int) -> Povm:
    return from_basis(np.eye(d))


def x_basis() -> Povm:
    return from_basis(np.array([[1, 1], [1, -1]]) / np.sqrt(2))


# -- canonical representatives ------------------------------------------------


def _canonical_key(e: np.ndarray, tol: float) -> tuple:
    # trace quantized at tol granularity, then entries row-major
    return (
        -round(float(np.trace(e).real) / tol),
        tuple(np.round(e.real.ravel() / tol).astype(np.int64)),
        tuple(np.round(e.imag.ravel() / tol).astype(np.int64)),
    )


def canonicalize(povm: Povm, tol: ToleranceProfile | None = None) -> CanonicalPovm:
    """Drop zero elements, sum each group of mutually proportional
    elements and sort by the canonical key."""
    tol = resolve(tol)
    if isinstance(povm, CanonicalPovm):
        return povm
    groups: list[np.ndarray] = []
    for e in povm:
        if op.max_entry(e) <= tol.prop:
            continue
        for g, total in enumerate(groups):
            # compare against the normalized group sum so the check does not
            # drift as the group grows
            if op.proportional(e / np.trace(e).real, total / np.trace(total).real, tol.prop) is not None:
                groups[g] = total + e
                break
        else:
            groups.append(e.copy())
    groups.sort(key=lambda e: _canonical_key(e, tol.prop))
    return CanonicalPovm(np.array(groups), check=False)


def same_elements(a: Sequence[np.ndarray], b: Sequence[np.ndarray], atol: float) -> bool:
    """True iff ``a`` and ``b`` are equal as multisets, entrywise within ``atol``."""
    if len(a) != len(b):
        return False
    unused = list(range(len(b)))
    for x in a:
        for pos, j in enumerate(unused):
            if op.max_entry(x - b[j]) <= atol:
                del unused[pos]
                break
        else:
            return False
    return True


# -- composite systems --------------------------------------------------------


def tensor_povm(e: Povm, f: Povm) -> Povm:
    """Elements ``E_i (x) F_j`` in row-major ``(i, j)`` order."""
    elems = np.einsum("iab,jcd->ijacbd", e.elements, f.elements)
    d = e.dim * f.dim
    return Povm(elems.reshape(e.n * f.n, d, d), check=False)


def reduce_a(povm: Povm, dim_a: int, dim_b: int) -> Povm:
    """Reduced measurement ``(1/d_B) Tr_B E_i`` on the first factor."""
    if povm.dim != dim_a * dim_b:
        raise DimensionMismatch(f"POVM of dim {povm.dim} is not {dim_a}x{dim_b}")
    red = np.array([op.partial_trace_b(e, dim_a, dim_b) for e in povm]) / dim_b
    return Povm(red, check=False)


def swap_unitary(dim_a: int, dim_b: int) -> np.ndarray:
    """Unitary mapping ``|a>|b>`` to ``|b>|a>``."""
    d = dim_a * dim_b
    u = np.zeros((d, d))
    for a in range(dim_a):
        for b in range(dim_b):
            u[b * dim_a + a, a * dim_b + b] = 1.0
    return u


def conjugate(povm: Povm, u: np.ndarray) -> Povm:
    u = np.asarray(u, dtype=complex)
    return Povm(np.einsum("ab,ibc,dc->iad", u, povm.elements, u.conj()), check=False)


# -- extremality --------------------------------------------------------------


def element_rank(e: np.ndarray, rel_tol: float) -> int:
    vals = op.eigvalsh_desc(e)
    norm = np.max(np.abs(vals))
    if norm == 0:
        return 0
    return int(np.count_nonzero(vals > rel_tol * norm))


def is_extremal(povm: Povm, tol: ToleranceProfile | None = None) -> bool:
    tol = resolve(tol)
    return all(element_rank(e, tol.rank) == 1 for e in canonicalize(povm, tol))


def rank1_refinement(povm: Povm, tol: ToleranceProfile | None = None) -> Povm:
    """Split every element into its weighted eigenprojections.

    Eigenvalues at or below ``tol.rank * ||E_i||`` are dropped.
    """
    tol = resolve(tol)
    parts = []
    for e in povm:
        spec = op.eig(e, tol)
        norm = float(np.max(np.abs(spec.eigenvalues)))
        for lam, v in zip(spec.eigenvalues, spec.eigenvectors.T):
            if norm > 0 and lam > tol.rank * norm:
                parts.append(lam * np.outer(v, v.conj()))
    return Povm(np.array(parts), check=False)
