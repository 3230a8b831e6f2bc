import math

import numpy as np
import pytest

from qgames.classify import (
    PINNING_PROFILES,
    classify_emw,
    diagonal_mixture,
    equivalent_pure_state,
    is_separable_pure,
    profile_is_separable,
)
from qgames.emw import emw_bimatrix, emw_config, emw_final_state
from qgames.errors import DimensionMismatch, NotDensityMatrix
from qgames.game import bimatrix, quotient_game
from qgames.linalg import outer, trace_product
from qgames.refined import qubit_state

from conftest import KET00, KET01, KET11, PHI_PLUS, PLUS_SECOND, PSI_PLUS, S, bos, random_density, random_state

GENERIC = bimatrix([[(8, 1), (3, 6)], [(2, 7), (5, 4)]])  # all eight payoffs distinct


def test_diagonal_mixture_examples():
    assert np.allclose(diagonal_mixture(outer(KET00)), [1, 0, 0, 0])
    assert np.allclose(diagonal_mixture((outer(KET00) + outer(KET11)) / 2), [0.5, 0, 0, 0.5])
    assert np.allclose(diagonal_mixture(outer(PLUS_SECOND)), [0.5, 0.5, 0, 0])
    with pytest.raises(NotDensityMatrix):
        diagonal_mixture(np.diag([1.5, -0.5, 0, 0]))


def test_equivalent_pure_state_examples():
    psi = equivalent_pure_state((outer(KET00) + outer(KET11)) / 2)
    assert np.allclose(psi, PHI_PLUS)
    assert np.allclose(equivalent_pure_state(outer(KET01)), KET01)


def test_payoff_equality_chain():
    rng = np.random.default_rng(30)
    for _ in range(25):
        rho = random_density(rng, rank=int(rng.integers(1, 5)))
        psi = equivalent_pure_state(rho)
        weights = diagonal_mixture(rho)
        for _ in range(10):
            x = rng.normal(size=4)
            v = trace_product(x, rho)
            assert abs(v - trace_product(x, outer(psi))) < 1e-9
            assert abs(v - trace_product(x, np.diag(weights))) < 1e-9


def test_separability_examples():
    assert is_separable_pure(KET00)
    assert not is_separable_pure(PHI_PLUS)
    assert is_separable_pure(PLUS_SECOND)
    assert is_separable_pure(np.kron([0.6, 0.8j, 0], [S, -S]), 3, 2)
    assert not is_separable_pure(np.array([1, 0, 0, 1, 0, 0]) / math.sqrt(2), 3, 2)
    with pytest.raises(DimensionMismatch):
        is_separable_pure(KET00, 3, 2)


def _product_grid(n_theta=33, n_phi=64):
    return np.array(
        [qubit_state((t, f)) for t in np.linspace(0, math.pi, n_theta) for f in np.linspace(0, 2 * math.pi, n_phi, endpoint=False)]
    )


def min_product_infidelity(psi, grid):
    """Brute force: 1 - max |<a (x) b|psi>|^2 over a grid of single-qubit states."""
    overlaps = grid.conj() @ psi.reshape(2, 2) @ grid.conj().T
    return 1 - float(np.max(np.abs(overlaps) ** 2))


def test_separability_agrees_with_brute_force_search():
    grid = _product_grid()
    rng = np.random.default_rng(31)
    picks = rng.integers(0, len(grid), size=(30, 2))
    products = [np.exp(1j * rng.uniform(0, 6)) * np.kron(grid[i], grid[j]) for i, j in picks]
    randoms = [random_state(rng) for _ in range(30)]
    for psi in products + randoms + [PHI_PLUS, PSI_PLUS, KET11, PLUS_SECOND]:
        infidelity = min_product_infidelity(psi, grid)
        assert infidelity < 1e-10 or infidelity > 1e-3  # no borderline draws
        assert is_separable_pure(psi) == (infidelity < 1e-10)


@pytest.mark.parametrize("name", list(PINNING_PROFILES))
def test_pinning_equations_match_numeric_determinant(name):
    """Each pinning profile's separability condition equals 16 * (d00 d11 - d01 d10) on the final diagonal."""
    residual = {
        "p1=p4=q1=q3=1/2": lambda e: (2 + e[2]) * e[1] - (1 + e[0]) * e[3],
        "p1=p3=q1=q4=1/2": lambda e: (2 + e[1]) * e[2] - (1 + e[0]) * e[3],
        "p1=p3=q1=q3=1/2": lambda e: (3 + e[0]) * e[3] - e[1] * e[2],
    }[name]
    rng = np.random.default_rng(32)
    t1, t2 = PINNING_PROFILES[name]
    for _ in range(20):
        eta = rng.dirichlet(np.ones(4))
        d = np.real(np.diagonal(emw_final_state(emw_config(bos(), np.diag(eta)), t1, t2)))
        assert abs(16 * (d[0] * d[3] - d[1] * d[2]) - residual(eta)) < 1e-12


def test_classify_ground_state_is_classical():
    result = classify_emw(emw_config(bos(), KET00))
    assert result.classical and result.kind == "Classical"
    assert result.witness is None
    assert result.profiles_tested == 3 + 64


def test_classify_ground_state_up_to_phase():
    assert classify_emw(emw_config(GENERIC, 1j * KET00)).classical


@pytest.mark.parametrize("psi", [KET11, PLUS_SECOND, PHI_PLUS, PSI_PLUS])
def test_classify_nonclassical_with_pinning_witness(psi):
    result = classify_emw(emw_config(bos(), psi))
    assert result.kind == "NonClassical"
    assert result.witness.name in PINNING_PROFILES
    t1, t2 = PINNING_PROFILES[result.witness.name]
    assert np.allclose(result.witness.t1, t1) and np.allclose(result.witness.t2, t2)
    assert not profile_is_separable(emw_config(bos(), psi), t1, t2)


def test_superposed_second_qubit_violates_only_the_first_equation():
    result = classify_emw(emw_config(bos(), PLUS_SECOND))
    mandatory = [w.name for w in result.violations if w.name in PINNING_PROFILES]
    assert mandatory == ["p1=p4=q1=q3=1/2"]


def test_product_state_witness_from_mixing_classical_and_quantum():
    cfg = emw_config(bos(), KET11)
    assert not profile_is_separable(cfg, [0, 0, 1, 0], [0.5, 0, 0.5, 0])


def test_classification_is_reproducible_with_seeded_generator():
    cfg = emw_config(bos(), PLUS_SECOND)
    a = classify_emw(cfg, np.random.default_rng(5))
    b = classify_emw(cfg, np.random.default_rng(5))
    assert [w.name for w in a.violations] == [w.name for w in b.violations]


def _state_grid():
    states = []
    for t1 in np.linspace(0, math.pi, 5):
        for t2 in np.linspace(0, math.pi, 5):
            for f in (0.0, 1.3):
                states.append(np.kron(qubit_state((t1, f)), qubit_state((t2, 2 * f))))
    states += [PHI_PLUS, PSI_PLUS, (KET00 + 1j * KET11) / math.sqrt(2)]
    rng = np.random.default_rng(33)
    states += [random_state(rng) for _ in range(10)]
    return states


def test_classical_iff_quotient_is_input_game():
    for psi in _state_grid():
        cfg = emw_config(GENERIC, psi)
        result = classify_emw(cfg)
        quotient_matches = quotient_game(emw_bimatrix(cfg)).same_payoffs(GENERIC)
        is_ground = abs(abs(psi[0]) - 1) < 1e-9
        assert result.classical == is_ground
        assert quotient_matches == is_ground


def test_classify_requires_single_state_two_by_two():
    with pytest.raises(ValueError):
        classify_emw(emw_config(bos(), KET00, KET11))
