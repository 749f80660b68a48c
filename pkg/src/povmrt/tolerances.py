"""Numerical tolerance profile shared by every module.

All comparisons in the package go through one :class:`ToleranceProfile`.
The command line builds it from ``POVMRT_*`` environment variables (and
the sweep config); library calls fall back to :data:`DEFAULT`.
"""
from __future__ import annotations

import dataclasses
import os
from dataclasses import dataclass, fields

ENV_PREFIX = "POVMRT_"


@dataclass(frozen=True)
class ToleranceProfile:
    herm: float = 1e-9  # |A_ij - conj(A_ji)|
    psd: float = 1e-9  # min eigenvalue >= -psd * max(1, ||A||)
    prop: float = 1e-8  # proportionality / zero detection, max-entry norm
    comp: float = 1e-8  # ||sum_i E_i - 1||_max
    stoch: float = 1e-9  # column sums of stochastic matrices
    feas: float = 1e-7  # LP residual threshold for the order relation
    rank: float = 1e-8  # eigenvalue threshold relative to operator norm
    prob: float = 1e-12  # outcome probabilities treated as zero
    maj: float = 1e-9  # slack on majorization partial sums
    gap: float = 1e-6  # success gap a witness ensemble must exceed

    def replace(self, **changes: float) -> "ToleranceProfile":
        return dataclasses.replace(self, **changes)

    def to_dict(self) -> dict[str, float]:
        return dataclasses.asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "ToleranceProfile":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown tolerance names: {sorted(unknown)}")
        return cls(**{k: float(v) for k, v in data.items()})

    @classmethod
    def from_env(cls, environ=None, base: "ToleranceProfile | None" = None) -> "ToleranceProfile":
        """Override ``base`` with ``POVMRT_EPS_<NAME>`` variables, e.g. ``POVMRT_EPS_FEAS=1e-6``."""
        environ = os.environ if environ is None else environ
        base = base or cls()
        changes = {}
        for f in fields(cls):
            key = f"{ENV_PREFIX}EPS_{f.name.upper()}"
            if key in environ:
                try:
                    changes[f.name] = float(environ[key])
                except ValueError as exc:
                    raise ValueError(f"{key} is not a number: {environ[key]!r}") from exc
        return dataclasses.replace(base, **changes)


DEFAULT = ToleranceProfile()


def resolve(tol: ToleranceProfile | None) -> ToleranceProfile:
    return DEFAULT if tol is None else tol
