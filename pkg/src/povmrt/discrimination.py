"""Bayesian state-discrimination games.

Bob measures a state drawn from an ensemble and guesses the state with
the highest posterior probability. The resulting success probability is
non-increasing under free transformations of the measurement, and the
family of all such games separates any pair ``E`` not-``>=`` ``F``;
:func:`witness_search` looks for a separating game numerically.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, InvalidState, PreconditionViolated, ShapeMismatch
from .povm import Povm
from .stochastic import apply
from .tolerances import ToleranceProfile, resolve

log = logging.getLogger(__name__)


class Ensemble:
    """Prior-weighted list of density matrices of a common dimension."""

    __slots__ = ("priors", "states")

    def __init__(self, priors, states, tol: ToleranceProfile | None = None):
        tol = resolve(tol)
        q = np.array(priors, dtype=float).ravel()
        rhos = np.array(states, dtype=complex)
        if rhos.ndim != 3 or rhos.shape[1] != rhos.shape[2] or rhos.shape[0] != q.size or q.size == 0:
            raise ShapeMismatch(f"{q.size} priors for states of shape {rhos.shape}")
        if q.min() < -tol.stoch or abs(q.sum() - 1.0) > tol.stoch:
            raise InvalidState(f"priors must be a probability vector, got {q.tolist()}")
        for i, rho in enumerate(rhos):
            if np.max(np.abs(rho - rho.conj().T)) > tol.herm:
                raise InvalidState(f"state {i} is not Hermitian")
            if abs(np.trace(rho).real - 1.0) > tol.herm:
                raise InvalidState(f"state {i} has trace {np.trace(rho).real!r}")
            if np.linalg.eigvalsh(rho)[0] < -tol.psd:
                raise InvalidState(f"state {i} is not positive semi-definite")
        q = np.clip(q, 0.0, None)
        self.priors = q / q.sum()
        self.states = 0.5 * (rhos + rhos.conj().transpose(0, 2, 1))
        self.priors.setflags(write=False)
        self.states.setflags(write=False)

    @property
    def k(self) -> int:
        return self.priors.size

    @property
    def dim(self) -> int:
        return self.states.shape[1]

    def weighted(self) -> np.ndarray:
        """Operators ``q_i rho_i``."""
        return self.priors[:, None, None] * self.states

    @classmethod
    def from_weighted(cls, ops: np.ndarray, tol: ToleranceProfile | None = None) -> "Ensemble":
        ops = np.asarray(ops, dtype=complex)
        q = np.trace(ops, axis1=1, axis2=2).real
        d = ops.shape[1]
        states = np.array(
            [o / w if w > 0 else np.eye(d) / d for o, w in zip(ops, q)]
        )
        return cls(q / q.sum(), states, tol)

    def __repr__(self) -> str:
        return f"Ensemble(k={self.k}, dim={self.dim})"


@dataclass(frozen=True)
class GameResult:
    success: float
    decision: np.ndarray  # (k, n) 0/1 column-stochastic
    posteriors: np.ndarray  # (k, n) Pr(rho_i | E_j)


def joint_probabilities(povm: Povm, ens: Ensemble) -> np.ndarray:
    """``J[i, j] = q_i Tr(rho_i E_j)``."""
    if povm.dim != ens.dim:
        raise DimensionMismatch(f"POVM of dim {povm.dim} vs ensemble of dim {ens.dim}")
    return np.einsum("iab,jba->ij", ens.weighted(), povm.elements).real


def _game(joint: np.ndarray, prob_tol: float) -> GameResult:
    k, n = joint.shape
    p_out = joint.sum(axis=0)
    live = p_out > prob_tol
    # argmax returns the lowest index among ties
    best = np.where(live, np.argmax(joint, axis=0), 0)
    decision = np.zeros((k, n))
    decision[best, np.arange(n)] = 1.0
    posteriors = np.zeros((k, n))
    posteriors[:, live] = joint[:, live] / p_out[live]
    success = float(joint[best, np.arange(n)][live].sum())
    return GameResult(success, decision, posteriors)


def posterior_success(povm: Povm, ens: Ensemble, tol: ToleranceProfile | None = None) -> GameResult:
    """Success probability of the maximum-a-posteriori guess."""
    return _game(joint_probabilities(povm, ens), resolve(tol).prob)


def canonical_success(povm: Povm, ens: Ensemble) -> float:
    """``sum_i q_i Tr(rho_i E_i)``: outcome ``i`` is read as state ``i``."""
    if povm.n != ens.k:
        raise ShapeMismatch(f"{povm.n} outcomes for {ens.k} states")
    return float(np.trace(joint_probabilities(povm, ens)))


def success_monotone_check(povm: Povm, p, ens: Ensemble, tol: ToleranceProfile | None = None) -> bool:
    before = posterior_success(povm, ens, tol).success
    after = posterior_success(apply(p, povm), ens, tol).success
    return after <= before + 1e-9


def helstrom_povm(ens: Ensemble) -> Povm:
    """Optimal two-outcome projective measurement for a two-state ensemble."""
    if ens.k != 2:
        raise ShapeMismatch("the Helstrom measurement needs exactly two states")
    w = ens.weighted()
    vals, vecs = np.linalg.eigh(w[0] - w[1])
    pos = vecs[:, vals > 0]
    p0 = pos @ pos.conj().T
    return Povm(np.array([p0, np.eye(ens.dim) - p0]))


def helstrom_success(ens: Ensemble) -> float:
    """``(1 + ||q_0 rho_0 - q_1 rho_1||_1) / 2``."""
    if ens.k != 2:
        raise ShapeMismatch("the Helstrom bound needs exactly two states")
    w = ens.weighted()
    return 0.5 * (1.0 + float(np.abs(np.linalg.eigvalsh(w[0] - w[1])).sum()))


# -- witness search -----------------------------------------------------------


@dataclass(frozen=True)
class WitnessResult:
    ensemble: Ensemble | None
    gap: float
    rounds: int


def _success(povm: Povm, weighted: np.ndarray, prob_tol: float) -> tuple[float, np.ndarray]:
    joint = np.einsum("iab,jba->ij", weighted, povm.elements).real
    res = _game(joint, prob_tol)
    return res.success, res.decision


def _gap(e: Povm, f: Povm, weighted: np.ndarray, prob_tol: float) -> float:
    return _success(f, weighted, prob_tol)[0] - _success(e, weighted, prob_tol)[0]


def witness_search(
    e: Povm,
    f: Povm,
    m: int | None = None,
    max_rounds: int = 200,
    eta: float = 0.5,
    patience: int = 25,
    tol: ToleranceProfile | None = None,
    check_precondition: bool = True,
) -> WitnessResult:
    """Search for an ensemble on which ``F`` beats ``E``.

    The ensemble has ``m >= len(F)`` states; ``F`` is padded with zero
    outcomes up to ``m``. Each round takes the MAP decision ``S`` of ``E``
    for the current ensemble, forms ``Delta_i = sum_j S[i, j] E_j - F_i``
    and moves the ensemble toward a pure state on the most negative
    eigenvector of the most negative ``Delta_i``. Gaps are always measured
    with the MAP decisions of both POVMs. The mixing step starts at ``eta`` and is
    halved while that improves the gap. Once a gap above ``tol.gap`` is
    seen, rounds continue until the best gap has not improved for
    ``patience`` rounds; the best ensemble is returned.

    ``ensemble is None`` means nothing was found, which is not evidence
    that ``E >= F``.
    """
    tol = resolve(tol)
    if e.dim != f.dim:
        raise DimensionMismatch(f"POVMs act on dimensions {e.dim} and {f.dim}")
    if check_precondition:
        from .order import precedes

        if precedes(e, f, tol).feasible:
            raise PreconditionViolated("E >= F holds, so no ensemble can separate them")
    m = f.n if m is None else m
    if m < f.n:
        raise ShapeMismatch(f"ensemble size {m} is smaller than the {f.n} outcomes of F")
    d = e.dim
    f_padded = np.concatenate([f.elements, np.zeros((m - f.n, d, d), dtype=complex)])
    q = np.repeat(np.eye(d, dtype=complex)[None] / (d * m), m, axis=0)
    best_gap, best_q, best_round, stale = -np.inf, q, 0, 0
    steps = eta * 0.5 ** np.arange(8)
    rounds = 0
    for rounds in range(1, max_rounds + 1):
        _, s_e = _success(e, q, tol.prob)
        delta = np.einsum("ij,jab->iab", s_e, e.elements) - f_padded
        vals, vecs = np.linalg.eigh(delta)
        i_star = int(np.argmin(vals[:, 0]))
        if vals[i_star, 0] >= -1e-14:
            break
        v = vecs[i_star, :, 0]
        target = np.zeros_like(q)
        target[i_star] = np.outer(v, v.conj())
        cands = [(1 - t) * q + t * target for t in steps]
        gaps = [_gap(e, f, c, tol.prob) for c in cands]
        pick = int(np.argmax(gaps))  # first maximum = largest step
        q = cands[pick]
        if gaps[pick] > best_gap + 1e-12:
            best_gap, best_q, best_round, stale = gaps[pick], q, rounds, 0
        else:
            stale += 1
        if best_gap > tol.gap and stale >= patience:
            break
    if best_gap > tol.gap:
        log.debug("witness found: gap %.3e after %d rounds", best_gap, best_round)
        return WitnessResult(Ensemble.from_weighted(best_q, tol), float(best_gap), rounds)
    log.info("no witness ensemble after %d rounds (best gap %.3e)", rounds, best_gap)
    return WitnessResult(None, float(best_gap), rounds)
