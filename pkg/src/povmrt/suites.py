"""Seeded property trials.

Each trial function takes a generator, the sampling ranges and a
tolerance profile, and returns a flat record: ``passed``, ``violation``
(the largest amount by which a checked inequality was broken, 0 when
none was) and whatever values are worth keeping. ``run_sweep`` and the
acceptance tests share these functions.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import discrimination as disc
from . import monotones as mono
from . import order
from . import povm as pv
from . import randgen as rg
from . import stochastic as st
from .operator import shannon_entropy
from .tolerances import ToleranceProfile

MONOTONE_SLACK = 1e-8
CONSTANCY_SLACK = 1e-9
BANASZEK_SLACK = 1e-10
DECOMPOSITION_SLACK = 1e-12
SUCCESS_SLACK = 1e-9


@dataclass(frozen=True)
class Ranges:
    dims: tuple[int, int] = (2, 3)
    outcomes: tuple[int, int] = (2, 4)

    def dim(self, g: np.random.Generator, cap: int | None = None) -> int:
        lo, hi = self.dims
        hi = hi if cap is None else min(hi, cap)
        return int(g.integers(min(lo, hi), hi + 1))

    def count(self, g: np.random.Generator, cap: int | None = None) -> int:
        lo, hi = self.outcomes
        hi = hi if cap is None else min(hi, cap)
        return int(g.integers(min(lo, hi), hi + 1))


def _excess(value: float, bound: float) -> float:
    return max(0.0, float(value - bound))


def trial_decomposition(g, ranges: Ranges, tol: ToleranceProfile) -> dict:
    m, n = int(g.integers(1, 7)), int(g.integers(1, 7))
    p = rg.random_stochastic(m, n, g)
    c, s = st.decompose(p, tol)
    err = float(np.max(np.abs(c @ s - p)))
    return {"m": m, "n": n, "error": err, "violation": _excess(err, DECOMPOSITION_SLACK),
            "passed": err <= DECOMPOSITION_SLACK}


def trial_order_soundness(g, ranges: Ranges, tol: ToleranceProfile) -> dict:
    d, n, m = ranges.dim(g), ranges.count(g), ranges.count(g)
    e = rg.random_povm(d, n, g)
    f = st.apply(rg.random_stochastic(m, n, g), e)
    v = order.precedes(e, f, tol)
    err = float(np.max(np.abs(st.apply(v.witness, e).elements - f.elements))) if v.feasible else None
    worst = v.residual if err is None else max(v.residual, err)
    return {"d": d, "n": n, "m": m, "residual": v.residual, "reproduction_error": err,
            "violation": _excess(worst, tol.feas), "passed": v.feasible and worst <= tol.feas}


def trial_terminal(g, ranges: Ranges, tol: ToleranceProfile) -> dict:
    d, n = ranges.dim(g), ranges.count(g)
    e = rg.random_povm(d, n, g)
    v = order.precedes(e, pv.trivial(d), tol)
    ones = v.feasible and np.allclose(v.witness, 1.0, atol=tol.feas)
    return {"d": d, "n": n, "residual": v.residual, "violation": _excess(v.residual, tol.feas),
            "passed": bool(v.feasible and ones)}


def trial_irreversibility(g, ranges: Ranges, tol: ToleranceProfile) -> dict:
    """Confuse outcomes 0 and 1 of a random POVM and try to undo it."""
    d, n = ranges.dim(g), max(2, ranges.count(g))
    e = rg.random_povm(d, n, g)
    mapping = [0] + list(range(n - 1))
    confused = st.apply(st.confuse_matrix(mapping), e)
    v = order.precedes(confused, e, tol)
    return {"d": d, "n": n, "proportional": False, "residual": v.residual,
            "violation": _excess(tol.feas, v.residual), "passed": not v.feasible}


def trial_irreversibility_proportional(g, ranges: Ranges, tol: ToleranceProfile) -> dict:
    """Split one element of a random POVM, confuse the halves, undo it."""
    d, n = ranges.dim(g), max(2, ranges.count(g))
    base = rg.random_povm(d, n - 1, g)
    t = float(g.uniform(0.05, 0.95))
    e = st.apply(st.split_matrix([[t, 1 - t]] + [[1.0]] * (n - 2)), base)
    confused = st.apply(st.confuse_matrix([0] + list(range(n - 1))), e)
    v = order.precedes(confused, e, tol)
    return {"d": d, "n": n, "proportional": True, "residual": v.residual,
            "violation": _excess(v.residual, tol.feas), "passed": v.feasible}


def trial_monotones(g, ranges: Ranges, tol: ToleranceProfile) -> dict:
    d, n, m = ranges.dim(g), ranges.count(g), ranges.count(g)
    e = rg.random_povm(d, n, g)
    p = rg.random_stochastic(m, n, g)
    f = st.apply(p, e)
    rho = rg.random_mixed_state(d, g)
    before = mono.report(e, rho, tol=tol)
    after = mono.report(f, rho, tol=tol)
    names = ("maccone", "buscemi", "banaszek", "skrzypczyk")
    rec: dict = {"d": d, "n": n, "m": m}
    worst = 0.0
    for name in names:
        rec[f"{name}_before"] = getattr(before, name)
        rec[f"{name}_after"] = getattr(after, name)
        worst = max(worst, _excess(getattr(after, name), getattr(before, name) + MONOTONE_SLACK))
    # class constancy on a redundant representative: split one outcome, append a zero
    t = float(g.uniform(0.1, 0.9))
    redundant = st.apply(st.split_matrix([[t, 1 - t]] + [[1.0]] * (n - 1)), e)
    redundant = pv.Povm(np.concatenate([redundant.elements, np.zeros((1, d, d))]), check=False)
    canon = pv.canonicalize(redundant, tol)
    r1, r2 = mono.report(redundant, rho, tol=tol), mono.report(canon, rho, tol=tol)
    constancy = max(abs(getattr(r1, k) - getattr(r2, k)) for k in names)
    constancy = max(constancy, max(abs(getattr(r2, k) - getattr(before, k)) for k in names))
    worst = max(worst, _excess(constancy, CONSTANCY_SLACK))
    h = shannon_entropy(np.linalg.eigvalsh(rho))
    bounds = [
        _excess(-before.skrzypczyk, 1e-12), _excess(before.skrzypczyk, d - 1 + 1e-12),
        _excess(-before.maccone, 1e-12), _excess(before.maccone, h + 1e-12),
        _excess(-before.buscemi, 1e-12), _excess(before.buscemi, h + 1e-12),
        abs(before.banaszek - (d + 1 + before.skrzypczyk) / (d * (d + 1))) - BANASZEK_SLACK,
    ]
    worst = max(worst, max(0.0, *bounds))
    rec.update(constancy_error=constancy, violation=worst, passed=worst == 0.0)
    return rec


def trial_majorization(g, ranges: Ranges, tol: ToleranceProfile) -> dict:
    d, n, m = ranges.dim(g), ranges.count(g), ranges.count(g)
    e = rg.random_povm(d, n, g)
    f = st.apply(rg.random_stochastic(m, n, g), e)
    ok = order.majorization_condition(e, f, tol)
    gap = np.cumsum(order.spectral_sum(e)) - np.cumsum(order.spectral_sum(f))
    return {"d": d, "n": n, "m": m, "min_partial_sum_gap": float(gap.min()),
            "violation": _excess(-gap.min(), tol.maj), "passed": ok}


def trial_no_catalysis(g, ranges: Ranges, tol: ToleranceProfile, index: int = 0) -> dict:
    """``E (x) C >= E' (x) C`` must imply ``E >= E'``.

    Even trials build ``E'`` as a mixture of ``E`` (premise holds); odd
    trials draw ``E'`` independently (premise usually fails, and then the
    implication is vacuous but the tensor LP is still exercised).
    """
    d = 2
    n, n2, nc = ranges.count(g, cap=3), ranges.count(g, cap=3), ranges.count(g, cap=3)
    e = rg.random_povm(d, n, g)
    if index % 2 == 0:
        e2 = st.apply(rg.random_stochastic(n2, n, g), e)
    else:
        e2 = rg.random_povm(d, n2, g)
    c = rg.random_povm(d, nc, g)
    big = order.precedes(pv.tensor_povm(e, c), pv.tensor_povm(e2, c), tol)
    small = order.precedes(e, e2, tol)
    rec = {"n": n, "n_prime": n2, "n_catalyst": nc, "premise": big.feasible,
           "tensor_residual": big.residual, "reduced_residual": small.residual}
    violation = 0.0
    if big.feasible:
        q = order.reduced_witness(big.witness, c, n2, nc)
        err = float(np.max(np.abs(st.apply(q, e).elements - e2.elements)))
        rec["reduced_witness_error"] = err
        violation = max(_excess(small.residual, tol.feas), _excess(err, tol.feas))
    elif small.feasible:
        # tensoring with a common factor preserves the order
        violation = _excess(big.residual, tol.feas)
    rec.update(violation=violation, passed=violation == 0.0 and big.feasible == small.feasible)
    return rec


def trial_discrimination(g, ranges: Ranges, tol: ToleranceProfile) -> dict:
    d, n, m = ranges.dim(g, cap=3), ranges.count(g), ranges.count(g)
    k = int(g.integers(1, 5))
    e = rg.random_povm(d, n, g)
    p = rg.random_stochastic(m, n, g)
    ens = rg.random_ensemble(d, k, bool(g.integers(0, 2)), g)
    before = disc.posterior_success(e, ens, tol).success
    after = disc.posterior_success(st.apply(p, e), ens, tol).success
    floor = float(ens.priors.max())
    violation = max(_excess(after, before + SUCCESS_SLACK), _excess(floor, before + SUCCESS_SLACK))
    return {"d": d, "n": n, "m": m, "k": k, "success_before": before, "success_after": after,
            "violation": violation, "passed": violation == 0.0}


def trial_witness(g, ranges: Ranges, tol: ToleranceProfile, max_rounds: int = 200) -> dict:
    """Best effort: a miss is recorded as ``found=False`` but does not fail."""
    d = 2
    for _ in range(100):
        e, f = rg.random_povm(d, ranges.count(g), g), rg.random_povm(d, ranges.count(g), g)
        if not order.precedes(e, f, tol).feasible:
            break
    else:
        return {"found": False, "gap": 0.0, "violation": 0.0, "passed": True, "skipped": True}
    res = disc.witness_search(e, f, max_rounds=max_rounds, tol=tol, check_precondition=False)
    verified = True
    if res.ensemble is not None:
        s_e = disc.posterior_success(e, res.ensemble, tol).success
        s_f = disc.posterior_success(f, res.ensemble, tol).success
        verified = s_f > s_e + tol.gap
    return {"n": e.n, "m": f.n, "found": res.ensemble is not None, "gap": res.gap, "rounds": res.rounds,
            "violation": 0.0 if verified else 1.0, "passed": verified}


Trial = Callable[..., dict]

SUITES: dict[str, Trial] = {
    "decomposition": trial_decomposition,
    "order_soundness": trial_order_soundness,
    "terminal": trial_terminal,
    "irreversibility": trial_irreversibility,
    "irreversibility_proportional": trial_irreversibility_proportional,
    "monotones": trial_monotones,
    "majorization": trial_majorization,
    "no_catalysis": trial_no_catalysis,
    "discrimination": trial_discrimination,
    "witness": trial_witness,
}

INDEXED = {"no_catalysis"}


def run_trial(suite: str, master_seed: int, index: int, ranges: Ranges, tol: ToleranceProfile) -> dict:
    g = rg.substream(master_seed, suite, index)
    fn = SUITES[suite]
    rec = fn(g, ranges, tol, index) if suite in INDEXED else fn(g, ranges, tol)
    return {"suite": suite, "trial": index, "seed": [master_seed, suite, index], **rec}
