import numpy as np
import pytest

from qgames.game import bimatrix

S = 1 / np.sqrt(2)

KET00 = np.array([1, 0, 0, 0], dtype=complex)
KET01 = np.array([0, 1, 0, 0], dtype=complex)
KET10 = np.array([0, 0, 1, 0], dtype=complex)
KET11 = np.array([0, 0, 0, 1], dtype=complex)
PLUS_SECOND = np.array([S, S, 0, 0], dtype=complex)  # |0> (x) (|0>+|1>)/sqrt2
PHI_PLUS = np.array([S, 0, 0, S], dtype=complex)
PSI_PLUS = np.array([0, S, S, 0], dtype=complex)


def bos(alpha=5.0, beta=3.0, gamma=1.0):
    return bimatrix([[(alpha, beta), (gamma, gamma)], [(gamma, gamma), (beta, alpha)]])


@pytest.fixture
def risk_game():
    return bimatrix([[(5, 5), (0, 4)], [(4, 0), (2, 2)]])


def random_density(rng, dim=4, rank=None):
    rank = rank or dim
    z = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    rho = z @ z.conj().T
    return rho / np.trace(rho).real


def random_state(rng, dim=4):
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return v / np.linalg.norm(v)


_acceptance_lines: list[tuple[str, str]] = []


def pytest_runtest_logreport(report):
    if report.when != "call":
        return
    props = dict(report.user_properties)
    if "criterion" in props:
        _acceptance_lines.append((props["criterion"], "PASS" if report.passed else "FAIL"))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance_lines:
        return
    terminalreporter.section("acceptance criteria")
    for criterion, outcome in _acceptance_lines:
        terminalreporter.write_line(f"{outcome}  {criterion}")
