"""Classical bimatrix games, mixed strategies and quotient games."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from .errors import DimensionMismatch, IndexOutOfRange, InvalidStrategy
from .linalg import get_tolerance


class PayoffPair(NamedTuple):
    p1: float
    p2: float


@dataclass(frozen=True)
class StrategyLabel:
    """A strategy of the extended scheme: a mode (``0`` is C, ``k`` is Q_k) and a local operator."""

    mode: int
    local: int
    n_local: int = 2
    player: int = 1

    def __post_init__(self):
        if self.mode < 0:
            raise ValueError("mode must be non-negative")
        if not 0 <= self.local < self.n_local:
            raise IndexOutOfRange(f"local operator index {self.local} not below {self.n_local}")

    def __str__(self):
        return f"{mode_name(self.mode)}*{local_name(self.local, self.n_local, self.player)}"


def mode_name(mode: int) -> str:
    return "C" if mode == 0 else f"Q{mode}"


def local_name(k: int, n_local: int, player: int = 1) -> str:
    if n_local == 2:
        return "IX"[k]
    return f"{'U' if player == 1 else 'V'}{k}"


def _default_labels(prefix: str, n: int) -> tuple[str, ...]:
    if n == 2:
        return ("t", "b") if prefix == "r" else ("l", "r")
    return tuple(f"{prefix}{i}" for i in range(n))


@dataclass(frozen=True, eq=False)
class BimatrixGame:
    """An ``n x m`` game; ``payoffs[i, j] = (a_ij, b_ij)``.

    Rows belong to player 1 and columns to player 2.
    """

    payoffs: np.ndarray
    row_labels: tuple[str, ...] = field(default=())
    col_labels: tuple[str, ...] = field(default=())

    def __post_init__(self):
        arr = np.array(self.payoffs, dtype=float)
        if arr.ndim != 3 or arr.shape[2] != 2 or arr.shape[0] == 0 or arr.shape[1] == 0:
            raise DimensionMismatch(f"payoffs must have shape (n, m, 2), got {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("payoffs must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "payoffs", arr)
        n, m = arr.shape[:2]
        rows = tuple(self.row_labels) or _default_labels("r", n)
        cols = tuple(self.col_labels) or _default_labels("c", m)
        if len(rows) != n or len(cols) != m:
            raise DimensionMismatch("label counts do not match the payoff array")
        object.__setattr__(self, "row_labels", tuple(str(s) for s in rows))
        object.__setattr__(self, "col_labels", tuple(str(s) for s in cols))

    @classmethod
    def from_matrices(cls, a, b, row_labels=(), col_labels=()) -> "BimatrixGame":
        a = np.asarray(a, dtype=float)
        b = np.asarray(b, dtype=float)
        if a.shape != b.shape:
            raise DimensionMismatch("payoff matrices differ in shape")
        return cls(np.stack([a, b], axis=-1), row_labels, col_labels)

    @property
    def shape(self) -> tuple[int, int]:
        return self.payoffs.shape[0], self.payoffs.shape[1]

    @property
    def n_rows(self) -> int:
        return self.payoffs.shape[0]

    @property
    def n_cols(self) -> int:
        return self.payoffs.shape[1]

    @property
    def a(self) -> np.ndarray:
        return self.payoffs[..., 0]

    @property
    def b(self) -> np.ndarray:
        return self.payoffs[..., 1]

    def entry(self, i: int, j: int) -> PayoffPair:
        return PayoffPair(float(self.payoffs[i, j, 0]), float(self.payoffs[i, j, 1]))

    def same_payoffs(self, other: "BimatrixGame", tol: float | None = None) -> bool:
        """Entrywise payoff equality; labels are ignored."""
        tol = get_tolerance() if tol is None else tol
        return self.shape == other.shape and bool(np.all(np.abs(self.payoffs - other.payoffs) <= tol))

    def __eq__(self, other):
        if not isinstance(other, BimatrixGame):
            return NotImplemented
        return (
            self.shape == other.shape
            and np.array_equal(self.payoffs, other.payoffs)
            and self.row_labels == other.row_labels
            and self.col_labels == other.col_labels
        )

    __hash__ = None

    def __repr__(self):
        return f"BimatrixGame({self.payoffs.tolist()!r}, rows={self.row_labels}, cols={self.col_labels})"


def bimatrix(rows: Sequence[Sequence[Sequence[float]]], row_labels=(), col_labels=()) -> BimatrixGame:
    """Build a game from nested ``[[(a, b), ...], ...]`` pairs."""
    return BimatrixGame(np.asarray(rows, dtype=float), tuple(row_labels), tuple(col_labels))


def mixed_strategy(probs, size: int | None = None, tol: float | None = None) -> np.ndarray:
    """Validate a probability vector and return it as a float array."""
    tol = get_tolerance() if tol is None else tol
    p = np.asarray(probs, dtype=float)
    if p.ndim != 1 or p.size == 0:
        raise InvalidStrategy(f"a mixed strategy must be a non-empty 1-d vector, got shape {p.shape}")
    if size is not None and p.size != size:
        raise DimensionMismatch(f"strategy has {p.size} entries, expected {size}")
    if not np.all(np.isfinite(p)) or np.any(p < -tol) or abs(p.sum() - 1.0) > tol:
        raise InvalidStrategy(f"not a probability vector: {p.tolist()}")
    return p


def pure_strategy(index: int, size: int) -> np.ndarray:
    if not 0 <= index < size:
        raise IndexOutOfRange(f"pure strategy {index} out of range for {size} strategies")
    p = np.zeros(size)
    p[index] = 1.0
    return p


def expected_payoff(g: BimatrixGame, s1, s2) -> PayoffPair:
    s1 = mixed_strategy(s1, g.n_rows)
    s2 = mixed_strategy(s2, g.n_cols)
    return PayoffPair(float(s1 @ g.a @ s2), float(s1 @ g.b @ s2))


def _check_index(idx: int, size: int) -> None:
    if not 0 <= idx < size:
        raise IndexOutOfRange(f"strategy index {idx} out of range for {size} strategies")


def equivalent_strategies(g: BimatrixGame, player: int, i: int, j: int, tol: float | None = None) -> bool:
    """True when two strategies of ``player`` earn both players the same pair against every pure reply."""
    tol = get_tolerance() if tol is None else tol
    if player == 1:
        _check_index(i, g.n_rows)
        _check_index(j, g.n_rows)
        u, v = g.payoffs[i], g.payoffs[j]
    elif player == 2:
        _check_index(i, g.n_cols)
        _check_index(j, g.n_cols)
        u, v = g.payoffs[:, i], g.payoffs[:, j]
    else:
        raise ValueError(f"player must be 1 or 2, got {player}")
    return bool(np.all(np.abs(u - v) <= tol))


def _classes(g: BimatrixGame, player: int, tol: float) -> list[list[int]]:
    count = g.n_rows if player == 1 else g.n_cols
    classes: list[list[int]] = []
    for k in range(count):
        for cls in classes:
            if equivalent_strategies(g, player, cls[0], k, tol):
                cls.append(k)
                break
        else:
            classes.append([k])
    return classes


def quotient_game(g: BimatrixGame, tol: float | None = None) -> BimatrixGame:
    """Merge equivalent rows, then equivalent columns.

    Each class keeps its lowest-index member; merged labels are joined with ``/``.
    """
    tol = get_tolerance() if tol is None else tol
    rows = _classes(g, 1, tol)
    reduced = BimatrixGame(
        g.payoffs[[c[0] for c in rows]],
        tuple("/".join(g.row_labels[k] for k in c) for c in rows),
        g.col_labels,
    )
    cols = _classes(reduced, 2, tol)
    return BimatrixGame(
        reduced.payoffs[:, [c[0] for c in cols]],
        reduced.row_labels,
        tuple("/".join(reduced.col_labels[k] for k in c) for c in cols),
    )
