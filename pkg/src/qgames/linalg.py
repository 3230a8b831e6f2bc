"""Small complex linear algebra helpers on top of numpy.

Vectors and matrices are plain ``numpy`` arrays of dtype ``complex128``.
The product basis ``|ij>`` of C^n (x) C^m is ordered row-major, so the
state ``|ij>`` sits at index ``i*m + j``.
"""

from __future__ import annotations

from contextlib import contextmanager
from typing import Iterator, Sequence

import numpy as np

from .errors import DimensionMismatch, NotDensityMatrix, NotUnitary

DEFAULT_TOLERANCE = 1e-9
_tolerance = DEFAULT_TOLERANCE

I2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)


def get_tolerance() -> float:
    return _tolerance


def set_tolerance(tol: float) -> None:
    """Set the shared tolerance used by equality, unitarity and normalization checks."""
    global _tolerance
    if not (tol > 0 and np.isfinite(tol)):
        raise ValueError(f"tolerance must be a positive finite number, got {tol!r}")
    _tolerance = float(tol)


@contextmanager
def tolerance(tol: float) -> Iterator[None]:
    previous = _tolerance
    set_tolerance(tol)
    try:
        yield
    finally:
        set_tolerance(previous)


def _tol(tol: float | None) -> float:
    return _tolerance if tol is None else tol


def as_vector(v: Sequence[complex] | np.ndarray) -> np.ndarray:
    """Convert to a 1-d complex vector, rejecting NaN/Inf and empty input."""
    arr = np.asarray(v, dtype=complex)
    if arr.ndim != 1 or arr.size == 0:
        raise DimensionMismatch(f"expected a non-empty 1-d vector, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("vector entries must be finite")
    return arr


def as_matrix(a: Sequence[Sequence[complex]] | np.ndarray) -> np.ndarray:
    arr = np.asarray(a, dtype=complex)
    if arr.ndim != 2 or arr.size == 0:
        raise DimensionMismatch(f"expected a non-empty 2-d matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("matrix entries must be finite")
    return arr


def basis_state(index: int, dim: int) -> np.ndarray:
    v = np.zeros(dim, dtype=complex)
    v[index] = 1.0
    return v


def product_basis_state(i: int, j: int, n: int = 2, m: int = 2) -> np.ndarray:
    """The product state ``|ij>`` in C^n (x) C^m."""
    return basis_state(i * m + j, n * m)


def tensor(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product; works for vectors and matrices alike."""
    return np.kron(a, b)


def outer(v: np.ndarray) -> np.ndarray:
    """The rank-one operator ``|v><v|``."""
    v = as_vector(v)
    return np.outer(v, v.conj())


def dagger(a: np.ndarray) -> np.ndarray:
    return a.conj().T


def is_unitary(u: np.ndarray, tol: float | None = None) -> bool:
    u = np.asarray(u, dtype=complex)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        return False
    return float(np.max(np.abs(u @ dagger(u) - np.eye(u.shape[0])))) <= _tol(tol)


def is_hermitian(a: np.ndarray, tol: float | None = None) -> bool:
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        return False
    return float(np.max(np.abs(a - dagger(a)))) <= _tol(tol)


def is_psd(a: np.ndarray, tol: float | None = None) -> bool:
    if not is_hermitian(a, tol):
        return False
    herm = (a + dagger(a)) / 2
    return float(np.min(np.linalg.eigvalsh(herm))) >= -_tol(tol)


def is_density_matrix(rho: np.ndarray, tol: float | None = None) -> bool:
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        return False
    return is_psd(rho, tol) and abs(np.trace(rho) - 1) <= _tol(tol)


def check_density_matrix(rho: np.ndarray, tol: float | None = None) -> np.ndarray:
    rho = as_matrix(rho)
    if not is_density_matrix(rho, tol):
        raise NotDensityMatrix("matrix is not Hermitian, positive semidefinite and of unit trace")
    return rho


def conjugate_by(u: np.ndarray, rho: np.ndarray, tol: float | None = None) -> np.ndarray:
    """Return ``u rho u^dagger`` for a unitary ``u``."""
    u = as_matrix(u)
    rho = as_matrix(rho)
    if u.shape[0] != u.shape[1] or rho.shape[0] != rho.shape[1] or u.shape[1] != rho.shape[0]:
        raise DimensionMismatch(f"cannot conjugate {rho.shape} by {u.shape}")
    if not is_unitary(u, tol):
        raise NotUnitary("conjugating operator is not unitary")
    return u @ rho @ dagger(u)


def trace_product(x_diag: Sequence[float] | np.ndarray, rho: np.ndarray, tol: float | None = None) -> float:
    """``tr(X rho)`` for an operator ``X`` diagonal in the product basis."""
    x = np.asarray(x_diag, dtype=float)
    rho = as_matrix(rho)
    if x.ndim != 1 or x.shape[0] != rho.shape[0] or rho.shape[0] != rho.shape[1]:
        raise DimensionMismatch(f"payoff diagonal of length {x.shape} does not fit {rho.shape}")
    diag = np.diagonal(rho)
    if float(np.max(np.abs(diag.imag))) > _tol(tol):
        raise NotDensityMatrix("diagonal of the state has a non-negligible imaginary part")
    return float(np.dot(x, diag.real))


def states_equal(a: np.ndarray, b: np.ndarray, tol: float | None = None) -> bool:
    """Equality of pure states up to a global phase."""
    a, b = as_vector(a), as_vector(b)
    if a.shape != b.shape:
        return False
    return float(np.max(np.abs(outer(a) - outer(b)))) <= _tol(tol)


def is_normalized(v: np.ndarray, tol: float | None = None) -> bool:
    return abs(np.linalg.norm(v) - 1.0) <= _tol(tol)
