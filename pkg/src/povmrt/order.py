"""The free-transformation preorder on POVMs.

``precedes(E, F)`` decides whether some column-stochastic ``P`` gives
``F_i = sum_j P[i, j] E_j``. It is posed as a phase-1 style linear
program: the matrix equalities are split into ``d**2`` real equations
per output, each gets a pair of nonnegative slacks, and the total slack
(L1 violation) is minimized over stochastic ``P``. A zero optimum means
the transformation exists and ``P`` is a witness; otherwise the optimum
measures how far ``F`` is from every mixture of ``E``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linprog

from . import operator as op
from .errors import DimensionMismatch, SolverStall
from .povm import Povm, canonicalize, same_elements
from .stochastic import apply
from .tolerances import ToleranceProfile, resolve

ITERATION_CAP = 100_000


@dataclass(frozen=True)
class OrderVerdict:
    feasible: bool
    witness: np.ndarray | None
    residual: float
    diagnostic: str = ""

    @property
    def marginal(self) -> bool:
        return "marginal" in self.diagnostic

    def __bool__(self) -> bool:
        return self.feasible


def hermitian_coords(mats: np.ndarray) -> np.ndarray:
    """Real coordinates of a stack of Hermitian matrices, shape ``(..., d*d)``.

    Diagonal reals first, then real and imaginary parts of the strict
    upper triangle.
    """
    mats = np.asarray(mats)
    d = mats.shape[-1]
    iu = np.triu_indices(d, k=1)
    diag = np.diagonal(mats, axis1=-2, axis2=-1).real
    upper = mats[..., iu[0], iu[1]]
    return np.concatenate([diag, upper.real, upper.imag], axis=-1)


def feasibility_lp(e: Povm, f: Povm) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Equality-form LP data ``(c, A_eq, b_eq)`` for ``E >= F``.

    Variables are ``x`` (``m*n``, row-major ``x[i*n + j] = P[i, j]``) then
    ``m*d*d`` positive and ``m*d*d`` negative slacks. Rows: ``n`` column
    sums followed by ``m*d*d`` operator coordinates.
    """
    n, m, d = e.n, f.n, e.dim
    k = d * d
    ce = hermitian_coords(e.elements)  # (n, k)
    cf = hermitian_coords(f.elements)  # (m, k)
    nx, ns = m * n, m * k
    a = np.zeros((n + m * k, nx + 2 * ns))
    for j in range(n):
        a[j, j : nx : n] = 1.0
    for i in range(m):
        rows = slice(n + i * k, n + (i + 1) * k)
        a[rows, i * n : (i + 1) * n] = ce.T
        a[rows, nx + i * k : nx + (i + 1) * k] = np.eye(k)
        a[rows, nx + ns + i * k : nx + ns + (i + 1) * k] = -np.eye(k)
    b = np.concatenate([np.ones(n), cf.ravel()])
    c = np.concatenate([np.zeros(nx), np.ones(2 * ns)])
    return c, a, b


def l1_violation(p: np.ndarray, e: Povm, f: Povm) -> float:
    return float(np.abs(hermitian_coords(apply(p, e).elements) - hermitian_coords(f.elements)).sum())


def precedes(e: Povm, f: Povm, tol: ToleranceProfile | None = None) -> OrderVerdict:
    """Decide ``E >= F`` (``F`` is a stochastic mixture of ``E``)."""
    tol = resolve(tol)
    if e.dim != f.dim:
        raise DimensionMismatch(f"POVMs act on dimensions {e.dim} and {f.dim}")
    c, a, b = feasibility_lp(e, f)
    res = linprog(c, A_eq=a, b_eq=b, bounds=(0, None), method="highs", options={"maxiter": ITERATION_CAP})
    if res.status == 1:
        raise SolverStall(f"LP hit the iteration cap ({ITERATION_CAP}): {res.message}")
    if res.status != 0:
        raise SolverStall(f"LP solver failed with status {res.status}: {res.message}")
    p = np.clip(res.x[: e.n * f.n].reshape(f.n, e.n), 0.0, None)
    p /= p.sum(axis=0, keepdims=True)
    residual = l1_violation(p, e, f)
    feasible = residual <= tol.feas
    diagnostic = f"LP optimum {res.fun:.3e}"
    if tol.feas / 10 <= residual <= tol.feas * 10:
        diagnostic += "; marginal: residual within a decade of the feasibility threshold"
    return OrderVerdict(feasible, p if feasible else None, residual, diagnostic)


def equivalent(e: Povm, f: Povm, tol: ToleranceProfile | None = None) -> bool:
    return precedes(e, f, tol).feasible and precedes(f, e, tol).feasible


def class_equal(e: Povm, f: Povm, tol: ToleranceProfile | None = None) -> bool:
    """Compare canonical representatives element by element."""
    tol = resolve(tol)
    if e.dim != f.dim:
        return False
    ce, cf = canonicalize(e, tol), canonicalize(f, tol)
    return same_elements(list(ce), list(cf), tol.prop)


def spectral_sum(povm: Povm) -> np.ndarray:
    """Sum over elements of their non-increasing eigenvalue vectors."""
    return sum(op.eigvalsh_desc(x) for x in povm)


def majorizes(x, y, slack: float = 0.0) -> bool:
    """Partial sums of the non-increasing rearrangement of ``x`` dominate those of ``y``."""
    px = np.cumsum(np.sort(np.asarray(x, dtype=float))[::-1])
    py = np.cumsum(np.sort(np.asarray(y, dtype=float))[::-1])
    return bool(np.all(px >= py - slack))


def majorization_condition(e: Povm, f: Povm, tol: ToleranceProfile | None = None) -> bool:
    """Necessary condition for ``E >= F`` on summed element spectra."""
    tol = resolve(tol)
    if e.dim != f.dim:
        raise DimensionMismatch(f"POVMs act on dimensions {e.dim} and {f.dim}")
    return majorizes(spectral_sum(e), spectral_sum(f), tol.maj)


def reduced_witness(witness: np.ndarray, b: Povm, m_c: int, m_d: int) -> np.ndarray:
    """Witness for ``A >= C`` built from a witness for ``A(x)B >= C(x)D``.

    ``witness`` has rows indexed by ``(mu, nu)`` and columns by ``(i, j)``,
    both row-major. Each ``B_j`` is replaced by ``Tr(B_j)/d_B`` and the
    ``D`` label ``nu`` is then discarded.
    """
    n_b = b.n
    w = np.asarray(witness, dtype=float)
    n_a = w.shape[1] // n_b
    weights = np.trace(b.elements, axis1=1, axis2=2).real / b.dim
    q = w.reshape(m_c * m_d, n_a, n_b) @ weights  # (m_c*m_d, n_a)
    return q.reshape(m_c, m_d, n_a).sum(axis=1)
