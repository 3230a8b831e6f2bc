"""The MW quantization protocol and its n x m generalization.

Each player applies one of a fixed set of local unitaries to their own
share of a joint pure state; the payoff pair is read off the final
density matrix with a measurement that is diagonal in the product basis.
For a 2 x 2 game the local sets are the identity and the bit flip.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DimensionMismatch, IndexOutOfRange, NotNormalized, NotUnitary
from .game import BimatrixGame, PayoffPair, local_name, mixed_strategy
from .linalg import as_vector, dagger, is_normalized, is_unitary, outer, tensor, trace_product


@dataclass(frozen=True, eq=False)
class PayoffOperator:
    """Payoff measurement ``X = sum_ij (a_ij, b_ij) |ij><ij|``, stored as one pair per basis index."""

    entries: np.ndarray  # shape (n*m, 2)
    n: int
    m: int

    @property
    def dim(self) -> int:
        return self.n * self.m

    def pair(self, index: int) -> PayoffPair:
        return PayoffPair(float(self.entries[index, 0]), float(self.entries[index, 1]))

    def expectation(self, rho: np.ndarray) -> PayoffPair:
        return PayoffPair(trace_product(self.entries[:, 0], rho), trace_product(self.entries[:, 1], rho))


def payoff_operator_from(g: BimatrixGame) -> PayoffOperator:
    n, m = g.shape
    return PayoffOperator(g.payoffs.reshape(n * m, 2).copy(), n, m)


def shift_operator(k: int, dim: int) -> np.ndarray:
    """Permutation matrix sending ``|i>`` to ``|i + k mod dim>``."""
    if dim < 1 or not 0 <= k < dim:
        raise IndexOutOfRange(f"shift {k} is not in [0, {dim})")
    u = np.zeros((dim, dim), dtype=complex)
    for i in range(dim):
        u[(i + k) % dim, i] = 1.0
    return u


def canonical_operators(dim: int) -> list[np.ndarray]:
    """All shifts ``U_0 .. U_{dim-1}``; for ``dim == 2`` this is ``[I, sigma_x]``."""
    return [shift_operator(k, dim) for k in range(dim)]


def check_state(psi, dim: int | None = None) -> np.ndarray:
    psi = as_vector(psi)
    if dim is not None and psi.size != dim:
        raise DimensionMismatch(f"state has dimension {psi.size}, expected {dim}")
    if not is_normalized(psi):
        raise NotNormalized(f"state norm is {np.linalg.norm(psi):.12g}, expected 1")
    return psi


def check_operators(ops: Sequence[np.ndarray]) -> list[np.ndarray]:
    out = []
    for u in ops:
        u = np.asarray(u, dtype=complex)
        if not is_unitary(u):
            raise NotUnitary("local operator is not unitary")
        out.append(u)
    if not out or any(u.shape != out[0].shape for u in out):
        raise DimensionMismatch("local operator set is empty or mixes dimensions")
    return out


def mixture_of_conjugations(rho: np.ndarray, p, q, ops1, ops2) -> np.ndarray:
    """``sum_kl p_k q_l (A_k (x) B_l) rho (A_k (x) B_l)^dagger``; zero-weight terms are skipped."""
    out = np.zeros_like(rho, dtype=complex)
    for k, pk in enumerate(p):
        if pk == 0:
            continue
        for l, ql in enumerate(q):
            if ql == 0:
                continue
            u = tensor(ops1[k], ops2[l])
            out += (pk * ql) * (u @ rho @ dagger(u))
    return out


def mw_final_state(psi_in, p, q, ops1: Sequence[np.ndarray] | None = None, ops2: Sequence[np.ndarray] | None = None) -> np.ndarray:
    """Final density matrix when player 1 mixes ``ops1`` with ``p`` and player 2 mixes ``ops2`` with ``q``.

    Without explicit operator sets, the shift operators of the dimension of
    ``p`` and ``q`` are used.
    """
    p = mixed_strategy(p)
    q = mixed_strategy(q)
    ops1 = check_operators(ops1 if ops1 is not None else canonical_operators(p.size))
    ops2 = check_operators(ops2 if ops2 is not None else canonical_operators(q.size))
    if len(ops1) != p.size or len(ops2) != q.size:
        raise DimensionMismatch("strategy length differs from the number of local operators")
    psi = check_state(psi_in, ops1[0].shape[0] * ops2[0].shape[0])
    return mixture_of_conjugations(outer(psi), p, q, ops1, ops2)


def mw_payoff(g: BimatrixGame, psi_in, p, q) -> PayoffPair:
    n, m = g.shape
    rho = mw_final_state(psi_in, mixed_strategy(p, n), mixed_strategy(q, m), canonical_operators(n), canonical_operators(m))
    return payoff_operator_from(g).expectation(rho)


def mw_output_game(g: BimatrixGame, psi_in) -> BimatrixGame:
    """The game induced on the players' local operators by a fixed joint state."""
    n, m = g.shape
    check_state(psi_in, n * m)
    out = np.empty((n, m, 2))
    for k in range(n):
        for l in range(m):
            out[k, l] = mw_payoff(g, psi_in, np.eye(n)[k], np.eye(m)[l])
    return BimatrixGame(
        out,
        tuple(local_name(k, n, 1) for k in range(n)),
        tuple(local_name(l, m, 2) for l in range(m)),
    )

