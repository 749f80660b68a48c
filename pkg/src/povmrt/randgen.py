"""Seeded generators for POVMs, stochastic matrices and ensembles.

Every function takes ``seed`` as either an integer (a fresh PCG64
stream) or an existing ``numpy.random.Generator``. Sub-streams for
trials are derived with :func:`substream`.
"""
from __future__ import annotations

import zlib

import numpy as np

from .discrimination import Ensemble
from .errors import SingularNormalizer
from .povm import Povm, from_basis

MAX_NORMALIZER_RETRIES = 10


def rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(np.uint64(seed))


def substream(master: int, label: str, index: int) -> np.random.Generator:
    """Independent-looking stream for ``(master seed, label, trial index)``.

    The label is hashed with CRC32 so streams are stable across runs and
    processes.
    """
    ss = np.random.SeedSequence([int(master), zlib.crc32(label.encode()), int(index)])
    return np.random.default_rng(ss)


def ginibre(d: int, k: int, seed) -> np.ndarray:
    g = rng(seed)
    return (g.standard_normal((d, k)) + 1j * g.standard_normal((d, k))) / np.sqrt(2)


def haar_unitary(d: int, seed) -> np.ndarray:
    """QR of a complex Gaussian matrix with the phases of ``diag(R)`` removed."""
    z = ginibre(d, d, seed)
    q, r = np.linalg.qr(z)
    phases = np.diagonal(r) / np.abs(np.diagonal(r))
    return q * phases


def random_projective(d: int, seed) -> Povm:
    return from_basis(haar_unitary(d, seed))


def random_povm(d: int, n: int, seed, rank: int | None = None) -> Povm:
    """``E_i = S^{-1/2} G_i S^{-1/2}`` with ``G_i`` Wishart and ``S = sum G_i``.

    ``rank`` sets the number of Gaussian columns per ``G_i`` (default ``d``).
    """
    g = rng(seed)
    rank = d if rank is None else rank
    for _ in range(MAX_NORMALIZER_RETRIES):
        a = np.array([ginibre(d, rank, g) for _ in range(n)])
        gs = a @ a.conj().transpose(0, 2, 1)
        s = gs.sum(axis=0)
        vals, vecs = np.linalg.eigh(s)
        if vals[0] < 1e-10:
            continue
        inv_root = (vecs / np.sqrt(vals)) @ vecs.conj().T
        elems = inv_root @ gs @ inv_root
        elems = 0.5 * (elems + elems.conj().transpose(0, 2, 1))
        return Povm(elems)
    raise SingularNormalizer(f"normalizer singular after {MAX_NORMALIZER_RETRIES} draws (d={d}, n={n})")


def random_stochastic(m: int, n: int, seed) -> np.ndarray:
    """Columns drawn from a flat Dirichlet."""
    g = rng(seed)
    return g.dirichlet(np.ones(m), size=n).T


def random_pure_state(d: int, seed) -> np.ndarray:
    v = haar_unitary(d, seed)[:, 0]
    return np.outer(v, v.conj())


def random_mixed_state(d: int, seed) -> np.ndarray:
    a = ginibre(d, d, seed)
    w = a @ a.conj().T
    return w / np.trace(w).real


def random_state(d: int, seed, pure: bool = False) -> np.ndarray:
    return random_pure_state(d, seed) if pure else random_mixed_state(d, seed)


def random_ensemble(d: int, k: int, pure: bool, seed) -> Ensemble:
    g = rng(seed)
    priors = g.dirichlet(np.ones(k))
    states = [random_state(d, g, pure) for _ in range(k)]
    return Ensemble(priors, states)
