import numpy as np
import pytest

from dualcert.linalg import unit


@pytest.fixture
def rng():
    return np.random.Generator(np.random.PCG64(1234))


def brute_choi(action, n):
    """sum_ij E_ij (x) action(E_ij), assembled term by term."""
    out = None
    for i in range(n):
        for j in range(n):
            term = np.kron(unit(n, i, j), action(unit(n, i, j)))
            out = term if out is None else out + term
    return out


def brute_m_map(elements):
    """C C^T as sum_k vec(B_k) vec(B_k)^T (no conjugation)."""
    n2 = elements[0].size
    out = np.zeros((n2, n2), dtype=complex)
    for b in elements:
        v = b.reshape(-1)
        out += np.outer(v, v)
    return out


SWAP = np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex)
OMEGA = np.array([1, 0, 0, 1], dtype=complex)


# filled by test_acceptance.py, printed once at the end of the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
