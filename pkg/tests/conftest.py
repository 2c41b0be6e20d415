import numpy as np
import pytest

from hidsym.rng import make_rng


def brute_nullspace(rows, ncols):
    """Every vector orthogonal (mod 2) to all rows, by enumeration."""
    return {v for v in range(1 << ncols)
            if all(bin(r & v).count("1") % 2 == 0 for r in rows)}


def span(vectors):
    out = {0}
    for v in vectors:
        out |= {s ^ v for s in out}
    return out


def dft_matrix(N, sign=1):
    k = np.arange(N)
    return np.exp(sign * 2j * np.pi * np.outer(k, k) / N) / np.sqrt(N)


def hadamard_matrix(N):
    H = np.array([[1.0]])
    while H.shape[0] < N:
        H = np.block([[H, H], [H, -H]])
    return H / np.sqrt(N)


@pytest.fixture
def rng():
    return make_rng(12345)


CRITERIA = {}


def record_criterion(number, passed, detail):
    CRITERIA[number] = (bool(passed), detail)


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(CRITERIA):
        passed, detail = CRITERIA[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if passed else 'FAIL'}  {detail}")
