"""Information-gain resource monotones.

All entropies are in nats; :func:`report` converts to bits on request.
The two state-dependent measures evaluate against the spectral
decomposition of ``rho`` returned by :func:`povmrt.operator.eig`.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from . import operator as op
from .errors import DimensionMismatch, InvalidState
from .povm import Povm
from .tolerances import ToleranceProfile, resolve


@dataclass(frozen=True)
class MonotoneReport:
    maccone: float
    buscemi: float
    banaszek: float
    skrzypczyk: float
    unit: str = "nats"

    def to_dict(self) -> dict:
        return asdict(self)


def check_state(rho, tol: ToleranceProfile | None = None) -> np.ndarray:
    tol = resolve(tol)
    try:
        h = op.hermitian(rho, tol)
    except Exception as exc:
        raise InvalidState(str(exc)) from exc
    tr = np.trace(h).real
    if abs(tr - 1.0) > tol.herm:
        raise InvalidState(f"trace is {tr!r}, expected 1")
    vals = np.linalg.eigvalsh(h)
    if vals[0] < -tol.psd:
        raise InvalidState(f"state is not positive semi-definite: min eigenvalue {vals[0]:.3e}")
    return h


def maximally_mixed(d: int) -> np.ndarray:
    return np.eye(d, dtype=complex) / d


def _prepare(rho, povm: Povm, tol: ToleranceProfile):
    rho = check_state(rho, tol)
    if rho.shape[0] != povm.dim:
        raise DimensionMismatch(f"state of dim {rho.shape[0]} vs POVM of dim {povm.dim}")
    spec = op.eig(rho, tol)
    lam = np.clip(spec.eigenvalues, 0.0, None)
    # element matrices in the eigenbasis of rho: M_i[k, l] = <psi_k|E_i|psi_l>
    v = spec.eigenvectors
    in_basis = np.einsum("ak,iab,bl->ikl", v.conj(), povm.elements, v)
    probs = np.einsum("k,ikk->i", lam, in_basis).real
    return lam, in_basis, probs


def maccone(rho, povm: Povm, tol: ToleranceProfile | None = None) -> float:
    """Mutual information between the eigenbasis of ``rho`` and the outcomes."""
    tol = resolve(tol)
    lam, in_basis, probs = _prepare(rho, povm, tol)
    total = op.shannon_entropy(lam)
    for i, p in enumerate(probs):
        if p <= tol.prob:
            continue
        q = lam * np.diagonal(in_basis[i]).real / p
        total -= p * op.shannon_entropy(q)
    return float(total)


def buscemi(rho, povm: Povm, tol: ToleranceProfile | None = None) -> float:
    """Quantum mutual information between reference and apparatus."""
    tol = resolve(tol)
    lam, in_basis, probs = _prepare(rho, povm, tol)
    root = np.sqrt(lam)
    total = op.shannon_entropy(lam)
    for i, p in enumerate(probs):
        if p <= tol.prob:
            continue
        # Tr(F |psi_k><psi_l|) = <psi_l|F|psi_k>
        rho_r = np.outer(root, root) * in_basis[i].T / p
        total -= p * op.von_neumann_entropy(0.5 * (rho_r + rho_r.conj().T))
    return float(total)


def skrzypczyk(povm: Povm) -> float:
    """Robustness of measurement: sum of element operator norms minus one."""
    return float(sum(op.operator_norm(e) for e in povm) - 1.0)


def banaszek(povm: Povm) -> float:
    """Mean fidelity measure; the optimal state per element is its top eigenvector."""
    d = povm.dim
    top = 0.0
    for e in povm:
        spec = op.eig(e)
        psi = spec.eigenvectors[:, 0]
        top += float(np.vdot(psi, e @ psi).real)
    return (d + top) / (d * (d + 1))


def report(povm: Povm, rho=None, bits: bool = False, tol: ToleranceProfile | None = None) -> MonotoneReport:
    """All four monotones; ``rho`` defaults to the maximally mixed state."""
    rho = maximally_mixed(povm.dim) if rho is None else rho
    scale = 1.0 / math.log(2.0) if bits else 1.0
    return MonotoneReport(
        maccone=maccone(rho, povm, tol) * scale,
        buscemi=buscemi(rho, povm, tol) * scale,
        banaszek=banaszek(povm),
        skrzypczyk=skrzypczyk(povm),
        unit="bits" if bits else "nats",
    )
