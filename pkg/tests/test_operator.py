import numpy as np
import pytest
from hypothesis import given

from povmrt import operator as op
from povmrt.errors import NonHermitian

from conftest import dims, random_hermitian, seeds


def closed_form_2x2(a):
    # eigenvalues of [[a, b], [b*, c]]
    tr = (a[0, 0] + a[1, 1]).real
    det = (a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0]).real
    disc = np.sqrt(max(tr * tr / 4 - det, 0.0))
    return np.array([tr / 2 + disc, tr / 2 - disc])


def test_eig_identity():
    s = op.eig(np.eye(2))
    np.testing.assert_allclose(s.eigenvalues, [1, 1])


def test_eig_projector_top_vector():
    s = op.eig(op.projector(op.ket(0, 2)))
    np.testing.assert_allclose(s.eigenvalues, [1, 0], atol=1e-15)
    assert abs(abs(s.eigenvectors[0, 0]) - 1) < 1e-12


def test_eig_all_halves():
    s = op.eig(np.full((2, 2), 0.5))
    np.testing.assert_allclose(s.eigenvalues, [1, 0], atol=1e-14)


@given(seeds)
def test_eig_matches_closed_form(seed):
    a = random_hermitian(2, np.random.default_rng(seed))
    np.testing.assert_allclose(op.eig(a).eigenvalues, closed_form_2x2(a), atol=1e-10)


@given(seeds, dims)
def test_eig_reconstructs_and_sorts(seed, d):
    a = random_hermitian(d, np.random.default_rng(seed))
    s = op.eig(a)
    assert np.all(np.diff(s.eigenvalues) <= 1e-12)
    np.testing.assert_allclose(s.reconstruct(), a, atol=1e-10)
    np.testing.assert_allclose(s.eigenvectors.conj().T @ s.eigenvectors, np.eye(d), atol=1e-10)


def test_eig_rejects_non_hermitian():
    with pytest.raises(NonHermitian):
        op.eig(np.array([[0, 1], [0, 0]]))


@pytest.mark.parametrize(
    "a, expected",
    [
        (np.eye(2), True),
        (np.diag([1.0, -0.1]), False),
        (np.zeros((3, 3)), True),
        (np.diag([1.0, -1e-12]), True),
    ],
)
def test_is_psd(a, expected):
    assert op.is_psd(a, 1e-9) is expected


@given(seeds, dims)
def test_difference_with_self_is_psd(seed, d):
    a = random_hermitian(d, np.random.default_rng(seed))
    assert op.is_psd(a - a, 1e-9)


@pytest.mark.parametrize(
    "a, expected",
    [
        (np.eye(3), 1.0),
        (0.3 * op.projector(op.ket(0, 2)), 0.3),
        (op.projector(op.ket(0, 2)) + op.projector(op.ket(1, 2)), 1.0),
        (np.diag([0.2, -0.7]), 0.7),
    ],
)
def test_operator_norm(a, expected):
    assert op.operator_norm(a) == pytest.approx(expected, abs=1e-14)


def test_tensor_of_identities():
    np.testing.assert_array_equal(op.tensor(np.eye(2), np.eye(2)), np.eye(4))


def test_tensor_basis_bookkeeping():
    t = op.tensor(op.projector(op.ket(0, 2)), op.projector(op.ket(1, 2)))
    np.testing.assert_allclose(t, op.projector(op.ket(1, 4)))


@given(seeds, dims, dims)
def test_tensor_trace_factorizes(seed, da, db):
    g = np.random.default_rng(seed)
    a, b = random_hermitian(da, g), random_hermitian(db, g)
    assert np.trace(op.tensor(a, b)) == pytest.approx(np.trace(a) * np.trace(b), abs=1e-9)


@given(seeds, dims, dims)
def test_partial_trace_of_product(seed, da, db):
    g = np.random.default_rng(seed)
    a, b = random_hermitian(da, g), random_hermitian(db, g)
    np.testing.assert_allclose(op.partial_trace_b(op.tensor(a, b), da, db), np.trace(b) * a, atol=1e-10)


def test_partial_trace_small_cases():
    np.testing.assert_allclose(op.partial_trace_b(np.eye(4), 2, 2), 2 * np.eye(2))
    np.testing.assert_allclose(op.partial_trace_b(op.projector(op.ket(0, 4)), 2, 2), op.projector(op.ket(0, 2)))


def test_proportional_examples():
    assert op.proportional(0.5 * np.eye(2), np.eye(2)) == pytest.approx(0.5)
    assert op.proportional(op.projector(op.ket(0, 2)), op.projector(op.ket(1, 2))) is None
    assert op.proportional(np.zeros((2, 2)), np.eye(2)) == 0.0


@given(seeds, dims)
def test_proportional_recovers_scale(seed, d):
    g = np.random.default_rng(seed)
    a = random_hermitian(d, g)
    e = a @ a.conj().T + 1e-3 * np.eye(d)
    assert op.proportional(2 * e, e) == pytest.approx(2.0, rel=1e-10)


def test_entropies():
    assert op.shannon_entropy([0.5, 0.5]) == pytest.approx(np.log(2))
    assert op.shannon_entropy([1.0, 0.0]) == 0.0
    assert op.von_neumann_entropy(np.eye(2) / 2) == pytest.approx(np.log(2))
    with pytest.raises(ValueError):
        op.shannon_entropy([1.1, -0.1])
