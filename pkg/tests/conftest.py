import numpy as np
import pytest

from liectl import lie
from liectl._backend import available_backends


@pytest.fixture(params=sorted(available_backends()))
def backend(request, monkeypatch):
    """Run the test once per importable kernel backend."""
    monkeypatch.setattr(lie, "kernels", available_backends()[request.param])
    return request.param


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_skew(rng, n, traceless=False):
    M = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    X = (M - M.conj().T) / 2
    if traceless:
        X = X - np.trace(X) / n * np.eye(n)
    return X


def random_unitary(rng, n):
    M = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    Q, R = np.linalg.qr(M)
    return Q * (np.diag(R) / np.abs(np.diag(R)))


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
