import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from povmrt import povm as pv
from povmrt import randgen as rg

settings.register_profile(
    "default",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

seeds = st.integers(min_value=0, max_value=2**32 - 1)
dims = st.integers(min_value=1, max_value=4)
small_dims = st.integers(min_value=2, max_value=3)
counts = st.integers(min_value=1, max_value=5)


def random_hermitian(d, g):
    a = rg.ginibre(d, d, g)
    return 0.5 * (a + a.conj().T)


@pytest.fixture
def z():
    return pv.computational_basis(2)


@pytest.fixture
def x():
    return pv.x_basis()


@pytest.fixture
def trivial2():
    return pv.trivial(2)


@pytest.fixture
def g():
    return np.random.default_rng(20240611)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
