import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from povmrt import monotones as mono
from povmrt import povm as pv
from povmrt import randgen as rg
from povmrt import stochastic as sto
from povmrt.errors import DimensionMismatch, InvalidState

from conftest import seeds, small_dims

LOG2 = np.log(2.0)
HALF = np.eye(2) / 2


@pytest.mark.parametrize("fn", [mono.maccone, mono.buscemi])
def test_state_measures_on_basis(fn, z):
    assert fn(HALF, z) == pytest.approx(LOG2, abs=1e-12)


@pytest.mark.parametrize("fn", [mono.maccone, mono.buscemi])
@given(seed=seeds, d=small_dims)
def test_state_measures_vanish_on_trivial(fn, seed, d):
    rho = rg.random_mixed_state(d, seed)
    assert fn(rho, pv.trivial(d)) == pytest.approx(0.0, abs=1e-10)


@pytest.mark.parametrize("fn", [mono.maccone, mono.buscemi])
@given(seed=seeds, d=small_dims, n=st.integers(1, 4))
def test_state_measures_vanish_on_pure(fn, seed, d, n):
    g = np.random.default_rng(seed)
    assert fn(rg.random_pure_state(d, g), rg.random_povm(d, n, g)) == pytest.approx(0.0, abs=1e-7)


def test_maccone_uses_eigenbasis(x):
    # X measures nothing about a state diagonal in the computational basis
    rho = np.diag([0.7, 0.3])
    assert mono.maccone(rho, x) == pytest.approx(0.0, abs=1e-12)


def test_robustness_and_banaszek_anchors():
    for d in (1, 2, 3, 4):
        assert mono.skrzypczyk(pv.trivial(d)) == pytest.approx(0.0)
        assert mono.banaszek(pv.trivial(d)) == pytest.approx(1 / d)
        basis = pv.computational_basis(d)
        assert mono.skrzypczyk(basis) == pytest.approx(d - 1)
        assert mono.banaszek(basis) == pytest.approx(2 / (d + 1))


@given(seeds, small_dims, st.integers(1, 5))
def test_banaszek_affine_in_robustness(seed, d, n):
    e = rg.random_povm(d, n, seed)
    skr = mono.skrzypczyk(e)
    assert -1e-12 <= skr <= d - 1 + 1e-12
    assert mono.banaszek(e) == pytest.approx((d + 1 + skr) / (d * (d + 1)), abs=1e-10)


@given(seeds, small_dims, st.integers(1, 4), st.integers(1, 4))
def test_monotone_under_post_processing(seed, d, n, m):
    g = np.random.default_rng(seed)
    e = rg.random_povm(d, n, g)
    f = sto.apply(rg.random_stochastic(m, n, g), e)
    rho = rg.random_mixed_state(d, g)
    a, b = mono.report(e, rho), mono.report(f, rho)
    for name in ("maccone", "buscemi", "banaszek", "skrzypczyk"):
        assert getattr(b, name) <= getattr(a, name) + 1e-8


@given(seeds, small_dims, st.integers(1, 4))
def test_constant_on_classes(seed, d, n):
    g = np.random.default_rng(seed)
    e = rg.random_povm(d, n, g)
    rho = rg.random_mixed_state(d, g)
    split = sto.apply(sto.split_matrix([[0.3, 0.7]] + [[1.0]] * (n - 1)), e)
    a, b = mono.report(split, rho), mono.report(pv.canonicalize(split), rho)
    for name in ("maccone", "buscemi", "banaszek", "skrzypczyk"):
        assert getattr(a, name) == pytest.approx(getattr(b, name), abs=1e-9)


@given(seeds, small_dims, st.integers(1, 4))
def test_entropy_bounds(seed, d, n):
    g = np.random.default_rng(seed)
    rho = rg.random_mixed_state(d, g)
    e = rg.random_povm(d, n, g)
    h = -sum(l * np.log(l) for l in np.linalg.eigvalsh(rho) if l > 0)
    for fn in (mono.maccone, mono.buscemi):
        assert -1e-12 <= fn(rho, e) <= h + 1e-12


def test_report_units(z):
    nats = mono.report(z)
    bits = mono.report(z, bits=True)
    assert bits.unit == "bits" and nats.unit == "nats"
    assert bits.maccone == pytest.approx(1.0)
    assert bits.buscemi == pytest.approx(1.0)
    assert bits.banaszek == nats.banaszek == pytest.approx(2 / 3)
    assert type(bits.maccone) is float and type(nats.buscemi) is float


def test_invalid_states(z):
    with pytest.raises(InvalidState):
        mono.maccone(np.eye(2), z)
    with pytest.raises(InvalidState):
        mono.buscemi(np.diag([1.5, -0.5]), z)
    with pytest.raises(DimensionMismatch):
        mono.maccone(np.eye(3) / 3, z)
