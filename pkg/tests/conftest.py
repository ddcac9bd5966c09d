import random
from contextlib import contextmanager

import numpy as np
import pytest

from qerase.linalg import ComplexMatrix

# One line per acceptance criterion, replayed in the terminal summary so the
# verdicts survive pytest's output capture.
_ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter) -> None:
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def criterion():
    """Context manager that records and prints one PASS/FAIL line."""

    @contextmanager
    def _criterion(number: int, description: str):
        try:
            yield
        except BaseException:
            line = f"ACCEPTANCE {number:02d} FAIL - {description}"
            _ACCEPTANCE_LINES.append(line)
            print(line)
            raise
        line = f"ACCEPTANCE {number:02d} PASS - {description}"
        _ACCEPTANCE_LINES.append(line)
        print(line)

    return _criterion


def to_numpy(m: ComplexMatrix) -> np.ndarray:
    return np.array([[complex(x) for x in row] for row in m.rows], dtype=complex)


def assert_matrix_close(m: ComplexMatrix, expected, atol: float = 1e-12) -> None:
    got = to_numpy(m)
    want = expected if isinstance(expected, np.ndarray) else to_numpy(expected)
    np.testing.assert_allclose(got, want, rtol=0.0, atol=atol)


def random_bloch(rng: random.Random):
    from qerase.states import BlochVector

    while True:
        x, y, z = (rng.uniform(-1.0, 1.0) for _ in range(3))
        if x * x + y * y + z * z <= 1.0:
            return BlochVector(x, y, z)


def random_density(rng: random.Random, dim: int) -> ComplexMatrix:
    """Random full-rank density matrix, built as normalized A A-dagger."""
    a = np.array(
        [
            [complex(rng.gauss(0, 1), rng.gauss(0, 1)) for _ in range(dim)]
            for _ in range(dim)
        ]
    )
    rho = a @ a.conj().T
    rho /= np.trace(rho).real
    return ComplexMatrix(rho.tolist())


def random_hermitian(rng: random.Random, dim: int) -> ComplexMatrix:
    a = np.array(
        [
            [complex(rng.gauss(0, 1), rng.gauss(0, 1)) for _ in range(dim)]
            for _ in range(dim)
        ]
    )
    h = (a + a.conj().T) / 2.0
    return ComplexMatrix(h.tolist())
