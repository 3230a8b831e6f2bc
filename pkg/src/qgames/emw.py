"""Extended MW quantization scheme.

Each player picks a mode (``C`` or one of ``Q_1 .. Q_n``) together with a
local operator. The joint state ``psi_i`` is used only when both players
pick ``Q_i``; every other combination applies the local operators to
``|0...0>``. Strategy vectors are laid out mode-major, operator-minor:
``(C,op_0), (C,op_1), ..., (Q_1,op_0), ...``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .classify import diagonal_mixture
from .errors import DimensionMismatch
from .game import BimatrixGame, PayoffPair, StrategyLabel, mixed_strategy
from .linalg import as_matrix, as_vector, basis_state, check_density_matrix, outer
from .mw import canonical_operators, check_state, mixture_of_conjugations, payoff_operator_from, check_operators


@dataclass(frozen=True, eq=False)
class EmwConfig:
    """Input game, joint quantum strategies and local operator sets.

    A joint state may be a state vector or a density matrix. Density
    matrices are replaced by their diagonal in the product basis, which
    leaves every payoff unchanged because the payoff measurement and the
    default local operators are basis-preserving.
    """

    input_game: BimatrixGame
    joint_states: tuple
    local_ops1: tuple = field(default=())
    local_ops2: tuple = field(default=())

    def __post_init__(self):
        n, m = self.input_game.shape
        if len(self.joint_states) == 0:
            raise ValueError("at least one joint state is required")
        ops1 = check_operators(self.local_ops1 or canonical_operators(n))
        ops2 = check_operators(self.local_ops2 or canonical_operators(m))
        if ops1[0].shape[0] != n or ops2[0].shape[0] != m:
            raise DimensionMismatch("local operators do not act on the game's strategy spaces")
        object.__setattr__(self, "local_ops1", tuple(ops1))
        object.__setattr__(self, "local_ops2", tuple(ops2))
        object.__setattr__(self, "joint_states", tuple(_joint_density(s, n * m) for s in self.joint_states))

    @property
    def n_joint(self) -> int:
        return len(self.joint_states)

    @property
    def n_strategies(self) -> tuple[int, int]:
        modes = self.n_joint + 1
        return modes * len(self.local_ops1), modes * len(self.local_ops2)


def _joint_density(state, dim: int) -> np.ndarray:
    arr = np.asarray(state, dtype=complex)
    if arr.ndim == 1:
        return outer(check_state(as_vector(arr), dim))
    rho = check_density_matrix(as_matrix(arr))
    if rho.shape[0] != dim:
        raise DimensionMismatch(f"joint state has dimension {rho.shape[0]}, expected {dim}")
    return np.diag(diagonal_mixture(rho)).astype(complex)


def emw_config(game: BimatrixGame, *states, ops1: Sequence[np.ndarray] = (), ops2: Sequence[np.ndarray] = ()) -> EmwConfig:
    return EmwConfig(game, tuple(states), tuple(ops1), tuple(ops2))


def strategy_labels(cfg: EmwConfig, player: int) -> list[StrategyLabel]:
    n_local = len(cfg.local_ops1 if player == 1 else cfg.local_ops2)
    return [StrategyLabel(mode, k, n_local, player) for mode in range(cfg.n_joint + 1) for k in range(n_local)]


def strategy_index(cfg: EmwConfig, player: int, mode: int, local: int) -> int:
    n_local = len(cfg.local_ops1 if player == 1 else cfg.local_ops2)
    return mode * n_local + local


def emw_final_state(cfg: EmwConfig, t1, t2) -> np.ndarray:
    """Sum over mode pairs ``(i, j)`` of the local-operator mixture applied to ``phi_ij``.

    ``phi_ij`` is the ``i``-th joint state when ``i == j != 0`` and ``|0...0>`` otherwise.
    """
    s1, s2 = cfg.n_strategies
    t1 = mixed_strategy(t1, s1)
    t2 = mixed_strategy(t2, s2)
    k1, k2 = len(cfg.local_ops1), len(cfg.local_ops2)
    dim = cfg.input_game.n_rows * cfg.input_game.n_cols
    ground = outer(basis_state(0, dim))
    rho = np.zeros((dim, dim), dtype=complex)
    for i in range(cfg.n_joint + 1):
        p = t1[i * k1:(i + 1) * k1]
        if not p.any():
            continue
        for j in range(cfg.n_joint + 1):
            q = t2[j * k2:(j + 1) * k2]
            if not q.any():
                continue
            phi = cfg.joint_states[i - 1] if i == j != 0 else ground
            rho += mixture_of_conjugations(phi, p, q, cfg.local_ops1, cfg.local_ops2)
    return rho


def emw_payoff(cfg: EmwConfig, t1, t2) -> PayoffPair:
    return payoff_operator_from(cfg.input_game).expectation(emw_final_state(cfg, t1, t2))


def emw_bimatrix(cfg: EmwConfig) -> BimatrixGame:
    """Payoffs of every pure profile, labelled ``C*I``, ``C*X``, ``Q1*I``, ..."""
    s1, s2 = cfg.n_strategies
    out = np.empty((s1, s2, 2))
    e1, e2 = np.eye(s1), np.eye(s2)
    for r in range(s1):
        for c in range(s2):
            out[r, c] = emw_payoff(cfg, e1[r], e2[c])
    return BimatrixGame(
        out,
        tuple(str(s) for s in strategy_labels(cfg, 1)),
        tuple(str(s) for s in strategy_labels(cfg, 2)),
    )
