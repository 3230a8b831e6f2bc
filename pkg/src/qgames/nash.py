"""Nash equilibria of bimatrix games: pure enumeration and equal-size support enumeration."""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch
from .game import BimatrixGame, PayoffPair, expected_payoff, mixed_strategy, pure_strategy

logger = logging.getLogger(__name__)

# Looser than the linear-algebra tolerance: indifference solves accumulate error.
NASH_TOLERANCE = 1e-7
MAX_DIM = 8


@dataclass(frozen=True, eq=False)
class Equilibrium:
    s1: np.ndarray
    s2: np.ndarray
    payoff: PayoffPair

    @property
    def kind(self) -> str:
        return "pure" if self.support1.size == 1 and self.support2.size == 1 else "mixed"

    @property
    def support1(self) -> np.ndarray:
        return np.flatnonzero(self.s1 > NASH_TOLERANCE)

    @property
    def support2(self) -> np.ndarray:
        return np.flatnonzero(self.s2 > NASH_TOLERANCE)

    def sort_key(self):
        return (max(self.support1.size, self.support2.size), tuple(self.support1), tuple(self.support2))

    def close_to(self, other: "Equilibrium", tol: float = NASH_TOLERANCE) -> bool:
        return bool(np.allclose(self.s1, other.s1, rtol=0, atol=tol) and np.allclose(self.s2, other.s2, rtol=0, atol=tol))


def _make(g: BimatrixGame, s1, s2) -> Equilibrium:
    return Equilibrium(np.asarray(s1, dtype=float), np.asarray(s2, dtype=float), expected_payoff(g, s1, s2))


def _player_payoffs(g: BimatrixGame, player: int, opponent: np.ndarray) -> np.ndarray:
    if player == 1:
        return g.a @ opponent
    if player == 2:
        return opponent @ g.b
    raise ValueError(f"player must be 1 or 2, got {player}")


def best_responses(g: BimatrixGame, player: int, opponent, tol: float = NASH_TOLERANCE) -> tuple[int, ...]:
    """Pure strategies of ``player`` maximizing their payoff against ``opponent``; ties included."""
    size = g.n_cols if player == 1 else g.n_rows
    opponent = mixed_strategy(opponent, size)
    values = _player_payoffs(g, player, opponent)
    return tuple(int(k) for k in np.flatnonzero(values >= values.max() - tol))


def is_equilibrium(g: BimatrixGame, s1, s2, tol: float = NASH_TOLERANCE) -> bool:
    s1 = np.asarray(s1, dtype=float)
    s2 = np.asarray(s2, dtype=float)
    v1, v2 = expected_payoff(g, s1, s2)
    return bool(np.max(g.a @ s2) <= v1 + tol and np.max(s1 @ g.b) <= v2 + tol)


def pure_nash(g: BimatrixGame, tol: float = NASH_TOLERANCE) -> list[Equilibrium]:
    """All pure equilibria in row-major order."""
    n, m = g.shape
    col_best = g.a >= g.a.max(axis=0, keepdims=True) - tol
    row_best = g.b >= g.b.max(axis=1, keepdims=True) - tol
    return [
        _make(g, pure_strategy(i, n), pure_strategy(j, m))
        for i in range(n)
        for j in range(m)
        if col_best[i, j] and row_best[i, j]
    ]


def _indifference(payoff: np.ndarray) -> np.ndarray | None:
    """Mixture over the rows of ``payoff`` that makes every column equally good for the opponent.

    ``payoff`` is the opponent's payoff restricted to the two supports, with
    the mixing player's strategies along axis 0. Returns ``None`` if the
    system is singular.
    """
    k = payoff.shape[0]
    lhs = np.zeros((k + 1, k + 1))
    lhs[:k, :k] = payoff.T
    lhs[:k, k] = -1.0
    lhs[k, :k] = 1.0
    rhs = np.zeros(k + 1)
    rhs[k] = 1.0
    try:
        sol = np.linalg.solve(lhs, rhs)
    except np.linalg.LinAlgError:
        return None
    if np.linalg.cond(lhs) > 1e12:
        return None
    return sol[:k]


def support_enumeration(
    g: BimatrixGame,
    max_support: int | None = None,
    tol: float = NASH_TOLERANCE,
    skipped: list | None = None,
) -> list[Equilibrium]:
    """Equilibria found by solving indifference conditions on equal-size supports.

    Support pairs with a singular indifference system are passed over; when
    ``skipped`` is a list they are appended to it as ``(rows, cols)``.
    Results are deduplicated and sorted by support size, then support indices.
    """
    n, m = g.shape
    if n > MAX_DIM or m > MAX_DIM:
        raise DimensionMismatch(f"support enumeration is limited to {MAX_DIM} x {MAX_DIM} games")
    limit = min(n, m)
    if max_support is None:
        max_support = limit
    if not 1 <= max_support <= limit:
        raise ValueError(f"max_support must be in [1, {limit}], got {max_support}")

    found: list[Equilibrium] = []
    for k in range(1, max_support + 1):
        for rows in itertools.combinations(range(n), k):
            for cols in itertools.combinations(range(m), k):
                x = _indifference(g.b[np.ix_(rows, cols)])
                y = _indifference(g.a[np.ix_(rows, cols)].T)
                if x is None or y is None:
                    logger.debug("singular indifference system on support %s x %s", rows, cols)
                    if skipped is not None:
                        skipped.append((rows, cols))
                    continue
                if np.any(x < -tol) or np.any(y < -tol):
                    continue
                s1 = np.zeros(n)
                s2 = np.zeros(m)
                s1[list(rows)] = np.clip(x, 0, None)
                s2[list(cols)] = np.clip(y, 0, None)
                s1 /= s1.sum()
                s2 /= s2.sum()
                if not is_equilibrium(g, s1, s2, tol):
                    continue
                eq = _make(g, s1, s2)
                if not any(eq.close_to(other) for other in found):
                    found.append(eq)
    return sorted(found, key=Equilibrium.sort_key)


def all_equilibria(g: BimatrixGame, max_support: int | None = None, skipped: list | None = None) -> list[Equilibrium]:
    """Pure equilibria (which include weak ties) merged with support enumeration output."""
    found = list(pure_nash(g))
    for eq in support_enumeration(g, max_support, skipped=skipped):
        if not any(eq.close_to(other) for other in found):
            found.append(eq)
    return sorted(found, key=Equilibrium.sort_key)
