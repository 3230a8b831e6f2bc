"""Two-parameter refinement of the MW quantization protocol for qubits.

A player's strategy is a triple ``(p, theta, phi)``: with probability ``p``
they apply ``U(theta, phi)``, otherwise the companion
``V = U(pi - theta, phi - pi)``. Choosing ``(theta, phi)`` to match their own
qubit of a separable initial state lets each player rotate it onto ``|0>``
(with ``U``) or ``|1>`` (with ``V``), which restores the classical game.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .classify import is_separable_pure
from .errors import NotSeparable, ParamOutOfRange
from .game import BimatrixGame, PayoffPair
from .linalg import get_tolerance, outer
from .mw import check_state, mixture_of_conjugations, payoff_operator_from

TWO_PI = 2 * math.pi


@dataclass(frozen=True)
class UnitaryParams:
    theta: float
    phi: float

    def __post_init__(self):
        tol = get_tolerance()
        if not (-tol <= self.theta <= math.pi + tol):
            raise ParamOutOfRange(f"theta={self.theta} outside [0, pi]")
        if not (-tol <= self.phi <= TWO_PI + tol):
            raise ParamOutOfRange(f"phi={self.phi} outside [0, 2pi]")


# A separable qubit cos(theta/2)|0> + e^{i phi} sin(theta/2)|1> uses the same angles.
SeparableQubitParams = UnitaryParams


@dataclass(frozen=True)
class RefinedStrategy:
    p: float
    params: UnitaryParams

    def __post_init__(self):
        tol = get_tolerance()
        if not (-tol <= self.p <= 1 + tol):
            raise ParamOutOfRange(f"probability {self.p} outside [0, 1]")


def _params(params) -> UnitaryParams:
    return params if isinstance(params, UnitaryParams) else UnitaryParams(*params)


def qubit_state(params) -> np.ndarray:
    params = _params(params)
    half = params.theta / 2
    return np.array([math.cos(half), np.exp(1j * params.phi) * math.sin(half)], dtype=complex)


def two_param_unitary(params) -> np.ndarray:
    """``U(theta, phi)``; Hermitian as well as unitary."""
    params = _params(params)
    c = math.cos(params.theta / 2)
    s = math.sin(params.theta / 2)
    e = np.exp(1j * params.phi)
    return np.array([[c, s / e], [e * s, -c]], dtype=complex)


def companion_operator(params) -> np.ndarray:
    """``U(pi - theta, phi - pi)`` with the phase wrapped into ``[0, 2pi)``."""
    params = _params(params)
    phi = math.fmod(params.phi - math.pi, TWO_PI)
    if phi < 0:
        phi += TWO_PI
    return two_param_unitary(UnitaryParams(min(max(math.pi - params.theta, 0.0), math.pi), phi))


def refined_final_state(psi_in, s1: RefinedStrategy, s2: RefinedStrategy) -> np.ndarray:
    psi = check_state(psi_in, 4)
    ops1 = [two_param_unitary(s1.params), companion_operator(s1.params)]
    ops2 = [two_param_unitary(s2.params), companion_operator(s2.params)]
    return mixture_of_conjugations(outer(psi), [s1.p, 1 - s1.p], [s2.p, 1 - s2.p], ops1, ops2)


def refined_payoff(g: BimatrixGame, psi_in, s1: RefinedStrategy, s2: RefinedStrategy) -> PayoffPair:
    if g.shape != (2, 2):
        raise ValueError("the refined scheme is defined for 2 x 2 games")
    return payoff_operator_from(g).expectation(refined_final_state(psi_in, s1, s2))


def refined_output_game(g: BimatrixGame, psi_in, params1, params2) -> BimatrixGame:
    """2 x 2 game over ``{U, V}`` for fixed angle choices of both players."""
    params1, params2 = _params(params1), _params(params2)
    out = np.empty((2, 2, 2))
    for k, p in enumerate((1.0, 0.0)):
        for l, q in enumerate((1.0, 0.0)):
            out[k, l] = refined_payoff(g, psi_in, RefinedStrategy(p, params1), RefinedStrategy(q, params2))
    return BimatrixGame(out, ("U", "V"), ("U", "V"))


def _qubit_params(v: np.ndarray, tol: float) -> UnitaryParams:
    v = v / np.linalg.norm(v)
    r0, r1 = abs(v[0]), abs(v[1])
    theta = 2 * math.atan2(r1, r0)
    if r0 <= tol or r1 <= tol:
        return UnitaryParams(min(theta, math.pi), 0.0)
    phi = float(np.angle(v[1]) - np.angle(v[0])) % TWO_PI
    return UnitaryParams(min(theta, math.pi), phi)


def classical_recovery_params(psi_in) -> tuple[UnitaryParams, UnitaryParams]:
    """Angles each player should pick so that ``U`` maps their qubit onto ``|0>``.

    The state is factored through its largest-magnitude amplitude. When a
    qubit is ``|0>`` or ``|1>`` its phase is undefined and reported as 0.
    """
    psi = check_state(psi_in, 4)
    if not is_separable_pure(psi, 2, 2):
        raise NotSeparable("initial state is entangled")
    amps = psi.reshape(2, 2)
    r, c = np.unravel_index(np.argmax(np.abs(amps)), amps.shape)
    tol = get_tolerance()
    return _qubit_params(amps[:, c], tol), _qubit_params(amps[r, :], tol)
