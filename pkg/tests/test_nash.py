import numpy as np
import pytest

from qgames.emw import emw_bimatrix, emw_config
from qgames.errors import DimensionMismatch
from qgames.game import BimatrixGame, bimatrix
from qgames.mw import mw_output_game
from qgames.nash import all_equilibria, best_responses, pure_nash, support_enumeration

from conftest import KET11, PHI_PLUS, PSI_PLUS, bos
from verify import no_profitable_deviation

CI, CX, QI, QX = range(4)


@pytest.fixture
def b22():
    return emw_bimatrix(emw_config(bos(), PHI_PLUS))


@pytest.fixture
def b23():
    return emw_bimatrix(emw_config(bos(), PSI_PLUS))


@pytest.fixture
def b24(risk_game):
    return emw_bimatrix(emw_config(risk_game, KET11))


def pure_profiles(eqs):
    return {(int(e.support1[0]), int(e.support2[0])) for e in eqs if e.kind == "pure"}


def test_best_response_to_quantum_identity(b22):
    assert best_responses(b22, 1, np.eye(4)[QI]) == (CI,)


def test_best_responses_to_even_quantum_mix(b22):
    mix = [0, 0, 0.5, 0.5]
    assert best_responses(b22, 1, mix) == (CI,)
    # the game is mirror-symmetric, so player 2's answer is their own favourite, C*X
    assert best_responses(b22, 2, mix) == (CX,)


def test_best_responses_constant_game():
    g = BimatrixGame(np.ones((3, 2, 2)))
    assert best_responses(g, 1, [0.5, 0.5]) == (0, 1, 2)
    with pytest.raises(DimensionMismatch):
        best_responses(g, 1, [1, 0, 0])


def test_pure_nash_in_extended_games(b22, b23, b24):
    p22 = pure_profiles(pure_nash(b22))
    assert (QI, QI) not in p22 and (QX, QX) not in p22
    assert (QI, QX) in pure_profiles(pure_nash(b23))
    eqs24 = {(int(e.support1[0]), int(e.support2[0])): e for e in pure_nash(b24)}
    assert eqs24[(QX, QX)].payoff == pytest.approx((5, 5))
    assert (QI, QI) not in eqs24


def test_pure_nash_dominant_strategies():
    g = bimatrix([[(3, 3), (2, 1)], [(1, 2), (0, 0)]])
    assert pure_profiles(pure_nash(g)) == {(0, 0)}


def test_pure_nash_row_major_order(b24):
    keys = [(int(e.support1[0]), int(e.support2[0])) for e in pure_nash(b24)]
    assert keys == sorted(keys)


def test_mixed_equilibrium_of_mw_quantum_block():
    block = mw_output_game(bos(), PHI_PLUS)
    mixed = [e for e in support_enumeration(block) if e.kind == "mixed"]
    assert len(mixed) == 1
    assert np.allclose(mixed[0].s1, [0.5, 0.5]) and np.allclose(mixed[0].s2, [0.5, 0.5])


def test_matching_pennies():
    g = bimatrix([[(1, -1), (-1, 1)], [(-1, 1), (1, -1)]])
    eqs = support_enumeration(g)
    assert len(eqs) == 1
    assert np.allclose(eqs[0].s1, [0.5, 0.5]) and np.allclose(eqs[0].s2, [0.5, 0.5])


def test_classical_bos_mixed_equilibrium():
    alpha, beta, gamma = 5.0, 3.0, 1.0
    # hand solution of the 2 x 2 indifference conditions
    x = (alpha - gamma) / (alpha + beta - 2 * gamma)
    eqs = support_enumeration(bos(alpha, beta, gamma))
    assert len(eqs) == 3
    mixed = eqs[-1]
    assert mixed.s1 == pytest.approx([x, 1 - x])
    assert mixed.s1[0] == pytest.approx(2 / 3)
    assert mixed.s2 == pytest.approx([1 - x, x])


def test_one_by_one_game():
    g = bimatrix([[(4, -2)]])
    eqs = all_equilibria(g)
    assert len(eqs) == 1 and eqs[0].payoff == (4, -2)


def test_sorted_by_support_then_indices(b23):
    eqs = support_enumeration(b23)
    keys = [e.sort_key() for e in eqs]
    assert keys == sorted(keys)


def test_degenerate_supports_are_reported():
    g = BimatrixGame(np.ones((2, 2, 2)))
    skipped = []
    eqs = support_enumeration(g, skipped=skipped)
    assert skipped == [((0, 1), (0, 1))]
    assert len(eqs) == 4


def test_size_limits():
    with pytest.raises(DimensionMismatch):
        support_enumeration(BimatrixGame(np.zeros((9, 2, 2))))
    with pytest.raises(ValueError):
        support_enumeration(bos(), max_support=3)


def test_pure_equilibria_appear_among_support_one_solutions():
    rng = np.random.default_rng(40)
    for _ in range(50):
        g = BimatrixGame(rng.integers(0, 4, size=(3, 3, 2)).astype(float))
        singles = pure_profiles(support_enumeration(g, max_support=1))
        assert pure_profiles(pure_nash(g)) <= singles


def test_odd_number_of_equilibria_in_generic_two_by_two():
    rng = np.random.default_rng(41)
    checked = 0
    while checked < 100:
        g = BimatrixGame(rng.normal(size=(2, 2, 2)))
        skipped = []
        eqs = support_enumeration(g, skipped=skipped)
        if skipped:
            continue
        assert len(eqs) % 2 == 1
        checked += 1


def test_every_equilibrium_passes_independent_check():
    rng = np.random.default_rng(42)
    for _ in range(60):
        n, m = rng.integers(2, 5, size=2)
        g = BimatrixGame(rng.integers(-4, 5, size=(n, m, 2)).astype(float))
        for eq in all_equilibria(g):
            assert no_profitable_deviation(g, eq.s1.tolist(), eq.s2.tolist())
