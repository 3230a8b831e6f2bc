"""Payoff-equivalent states and the classical / non-classical test for the extended scheme.

Under a payoff measurement that is diagonal in the product basis, only the
diagonal of a density matrix matters. Any state is therefore
payoff-equivalent both to the classical mixture of its diagonal and to the
pure state whose amplitudes are the square roots of that diagonal. The
extended game is classical (its quotient equals the input game) exactly
when that pure state is separable for every strategy pair.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch
from .linalg import as_vector, check_density_matrix, get_tolerance

DEFAULT_SEED = 20130101
N_RANDOM_PROFILES = 64


def diagonal_mixture(rho: np.ndarray) -> np.ndarray:
    """Weights of the basis-state mixture ``sum_ij w_ij |ij><ij|`` with the same payoffs as ``rho``."""
    rho = check_density_matrix(rho)
    return np.clip(np.real(np.diagonal(rho)), 0.0, None)


def equivalent_pure_state(rho: np.ndarray) -> np.ndarray:
    """Pure state with amplitudes ``sqrt(rho_kk)``."""
    return np.sqrt(diagonal_mixture(rho)).astype(complex)


def is_separable_pure(psi, n: int = 2, m: int = 2, tol: float | None = None) -> bool:
    """Rank-one test on the ``n x m`` amplitude matrix via its 2 x 2 minors.

    For two qubits this is ``|l00 l11 - l01 l10| <= tol``.
    """
    tol = get_tolerance() if tol is None else tol
    psi = as_vector(psi)
    if psi.size != n * m:
        raise DimensionMismatch(f"state of dimension {psi.size} is not in C^{n} (x) C^{m}")
    norm = np.linalg.norm(psi)
    if norm == 0:
        raise ValueError("zero vector is not a state")
    amps = (psi / norm).reshape(n, m)
    for i in range(n):
        for k in range(i + 1, n):
            minors = amps[i, :, None] * amps[k, None, :] - amps[i, None, :] * amps[k, :, None]
            if np.max(np.abs(minors)) > tol:
                return False
    return True


def _profile(p, q) -> tuple[np.ndarray, np.ndarray]:
    return np.asarray(p, dtype=float), np.asarray(q, dtype=float)


# Strategy pairs whose separability conditions, taken together, pin the joint state to |00>.
PINNING_PROFILES: dict[str, tuple[np.ndarray, np.ndarray]] = {
    "p1=p4=q1=q3=1/2": _profile([0.5, 0, 0, 0.5], [0.5, 0, 0.5, 0]),
    "p1=p3=q1=q4=1/2": _profile([0.5, 0, 0.5, 0], [0.5, 0, 0, 0.5]),
    "p1=p3=q1=q3=1/2": _profile([0.5, 0, 0.5, 0], [0.5, 0, 0.5, 0]),
}


@dataclass(frozen=True)
class Witness:
    name: str
    t1: tuple[float, ...]
    t2: tuple[float, ...]
    equivalent_state: tuple[complex, ...]


@dataclass(frozen=True)
class Classification:
    classical: bool
    witness: Witness | None
    violations: tuple[Witness, ...] = field(default=())
    profiles_tested: int = 0

    @property
    def kind(self) -> str:
        return "Classical" if self.classical else "NonClassical"


def profile_is_separable(cfg, t1, t2, tol: float | None = None) -> bool:
    """Whether the final state of one strategy pair is payoff-equivalent to a separable pure state."""
    from .emw import emw_final_state

    n, m = cfg.input_game.shape
    return is_separable_pure(equivalent_pure_state(emw_final_state(cfg, t1, t2)), n, m, tol)


def classify_emw(cfg, rng: np.random.Generator | None = None, n_random: int = N_RANDOM_PROFILES) -> Classification:
    """Classify a single-state 2 x 2 extended game.

    The three pinning profiles are always tested first, followed by
    ``n_random`` Dirichlet-distributed profiles drawn from ``rng``
    (a generator seeded with ``DEFAULT_SEED`` when omitted). The witness is
    the first violating profile; ``violations`` lists all of them.
    """
    from .emw import emw_final_state

    if cfg.n_joint != 1 or cfg.input_game.shape != (2, 2):
        raise ValueError("classification is defined for a 2 x 2 game with a single joint state")
    rng = np.random.default_rng(DEFAULT_SEED) if rng is None else rng
    profiles = list(PINNING_PROFILES.items())
    for k in range(n_random):
        profiles.append((f"random-{k}", (rng.dirichlet(np.ones(4)), rng.dirichlet(np.ones(4)))))
    violations = []
    for name, (t1, t2) in profiles:
        psi = equivalent_pure_state(emw_final_state(cfg, t1, t2))
        if not is_separable_pure(psi, 2, 2):
            violations.append(Witness(name, tuple(map(float, t1)), tuple(map(float, t2)), tuple(map(complex, psi))))
    return Classification(
        classical=not violations,
        witness=violations[0] if violations else None,
        violations=tuple(violations),
        profiles_tested=len(profiles),
    )
