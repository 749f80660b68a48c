import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from povmrt import discrimination as disc
from povmrt import operator as op
from povmrt import povm as pv
from povmrt import randgen as rg
from povmrt import stochastic as sto
from povmrt.errors import InvalidState, PreconditionViolated, ShapeMismatch

from conftest import seeds

KET0 = op.projector([1, 0])
KET1 = op.projector([0, 1])
PLUS = op.projector(np.array([1, 1]) / np.sqrt(2))


def angle_scan(ens, steps=200001):
    # brute force over real projective pairs {|t><t|, 1 - |t><t|}
    best = 0.0
    for t in np.linspace(0, np.pi, steps):
        p0 = op.projector([np.cos(t), np.sin(t)])
        s = sum(q * np.trace(r @ e).real for q, r, e in zip(ens.priors, ens.states, (p0, np.eye(2) - p0)))
        best = max(best, s)
    return best


def test_perfectly_distinguishable(z):
    ens = disc.Ensemble([0.5, 0.5], [KET0, KET1])
    res = disc.posterior_success(z, ens)
    assert res.success == pytest.approx(1.0)
    np.testing.assert_array_equal(res.decision, np.eye(2))


def test_trivial_guesses_prior_mode(trivial2):
    ens = disc.Ensemble([0.5, 0.5], [KET0, KET1])
    assert disc.posterior_success(trivial2, ens).success == pytest.approx(0.5)
    ens = disc.Ensemble([0.3, 0.7], [KET0, KET1])
    res = disc.posterior_success(trivial2, ens)
    assert res.success == pytest.approx(0.7)
    np.testing.assert_array_equal(res.decision, [[0], [1]])


def test_ties_break_to_lowest_index(trivial2):
    ens = disc.Ensemble([0.5, 0.5], [KET0, KET1])
    np.testing.assert_array_equal(disc.posterior_success(trivial2, ens).decision, [[1], [0]])


def test_helstrom_matches_angle_scan():
    ens = disc.Ensemble([0.5, 0.5], [KET0, PLUS])
    oracle = angle_scan(ens)
    expected = 0.5 * (1 + 1 / np.sqrt(2))
    assert oracle == pytest.approx(expected, abs=1e-6)
    assert disc.helstrom_success(ens) == pytest.approx(oracle, abs=1e-6)
    h = disc.helstrom_povm(ens)
    assert disc.posterior_success(h, ens).success == pytest.approx(oracle, abs=1e-6)
    assert disc.canonical_success(h, ens) == pytest.approx(oracle, abs=1e-6)


@given(seeds)
def test_helstrom_is_an_upper_bound(seed):
    g = np.random.default_rng(seed)
    ens = rg.random_ensemble(2, 2, False, g)
    e = rg.random_povm(2, int(g.integers(1, 5)), g)
    assert disc.posterior_success(e, ens).success <= disc.helstrom_success(ens) + 1e-9


def test_canonical_success_basic(z):
    ens = disc.Ensemble([0.5, 0.5], [KET0, KET1])
    assert disc.canonical_success(z, ens) == pytest.approx(1.0)
    halves = pv.Povm([np.eye(2) / 2, np.eye(2) / 2])
    assert disc.canonical_success(halves, ens) == pytest.approx(0.5)
    with pytest.raises(ShapeMismatch):
        disc.canonical_success(pv.trivial(2), ens)


def test_split_raises_canonical_but_not_posterior_success():
    ens = disc.Ensemble([0.2, 0.3, 0.5], [KET0, KET1, KET0])
    padded = pv.Povm([KET0, KET1, np.zeros((2, 2))])
    # half of outcome 0 moves into the zero slot
    split = sto.apply(np.array([[0.5, 0, 0], [0, 1, 0], [0.5, 0, 1]]), padded)
    # hand values: 0.2 + 0.3 before, 0.2 * 0.5 + 0.3 + 0.5 * 0.5 after
    assert disc.canonical_success(padded, ens) == pytest.approx(0.5)
    assert disc.canonical_success(split, ens) == pytest.approx(0.65)
    assert disc.posterior_success(padded, ens).success == pytest.approx(0.8)
    assert disc.posterior_success(split, ens).success == pytest.approx(0.8)


def test_zero_probability_outcomes(z):
    ens = disc.Ensemble([1.0], [KET0])
    res = disc.posterior_success(z, ens)
    assert res.success == pytest.approx(1.0)
    np.testing.assert_array_equal(res.posteriors[:, 1], [0.0])


@given(seeds, st.integers(2, 3), st.integers(1, 4), st.integers(1, 4), st.integers(1, 4))
def test_success_is_monotone(seed, d, n, m, k):
    g = np.random.default_rng(seed)
    e = rg.random_povm(d, n, g)
    ens = rg.random_ensemble(d, k, bool(g.integers(0, 2)), g)
    assert disc.success_monotone_check(e, rg.random_stochastic(m, n, g), ens)
    assert disc.posterior_success(e, ens).success >= ens.priors.max() - 1e-12


def test_monotone_check_extremes(z):
    ens = disc.Ensemble([0.4, 0.6], [KET0, PLUS])
    before = disc.posterior_success(z, ens).success
    assert disc.success_monotone_check(z, np.eye(2), ens)
    assert disc.posterior_success(sto.apply(np.eye(2), z), ens).success == before
    confused = disc.posterior_success(sto.apply(np.ones((1, 2)), z), ens).success
    assert confused == pytest.approx(0.6)


def test_ensemble_validation():
    with pytest.raises(InvalidState):
        disc.Ensemble([0.5, 0.6], [KET0, KET1])
    with pytest.raises(InvalidState):
        disc.Ensemble([1.0], [np.eye(2)])
    with pytest.raises(ShapeMismatch):
        disc.Ensemble([0.5, 0.5], [KET0])


def test_from_weighted_roundtrip():
    ens = disc.Ensemble([0.25, 0.75], [KET0, PLUS])
    again = disc.Ensemble.from_weighted(ens.weighted())
    np.testing.assert_allclose(again.priors, ens.priors)
    np.testing.assert_allclose(again.states, ens.states)


class TestWitness:
    def _check(self, e, f, res):
        assert res.ensemble is not None
        s_e = disc.posterior_success(e, res.ensemble).success
        s_f = disc.posterior_success(f, res.ensemble).success
        assert s_f - s_e == pytest.approx(res.gap, abs=1e-9)
        return res.gap

    def test_trivial_vs_basis(self, trivial2, z):
        gap = self._check(trivial2, z, disc.witness_search(trivial2, z, max_rounds=200))
        assert 0.4 <= gap <= 0.5 + 1e-9

    def test_basis_vs_conjugate_basis(self, z, x):
        gap = self._check(z, x, disc.witness_search(z, x, max_rounds=200))
        assert gap >= 0.4

    def test_precondition(self, z):
        with pytest.raises(PreconditionViolated):
            disc.witness_search(z, z)
        with pytest.raises(PreconditionViolated):
            disc.witness_search(z, pv.trivial(2))

    def test_size_too_small(self, trivial2, z):
        with pytest.raises(ShapeMismatch):
            disc.witness_search(trivial2, z, m=1)

    def test_larger_ensemble(self, trivial2, z):
        self._check(trivial2, z, disc.witness_search(trivial2, z, m=3))
