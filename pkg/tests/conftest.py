import numpy as np
import pytest

ACCEPTANCE_LINES = []


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def crandn(rng, *shape):
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)


def random_unitary_symmetric(rng, n):
    """W W^T with W Haar-like unitary: symmetric and unitary."""
    q, r = np.linalg.qr(crandn(rng, n, n))
    w = q * (np.diag(r) / np.abs(np.diag(r)))
    return w @ w.T


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
