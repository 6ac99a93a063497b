"""Spectral functions of symmetric matrices.

Every function symmetrizes its input (``(A + A.T) / 2``) before factorizing,
so tiny round-off asymmetries never reach ``eigh``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from ..errors import DomainError, InvalidArgumentError
from ..tolerances import TOL


@dataclass(frozen=True, eq=False)
class SymmetricEigen:
    """Eigendecomposition ``Q diag(w) Q^T`` with ascending ``eigenvalues``."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return (self.eigenvectors * self.eigenvalues) @ self.eigenvectors.T

    def apply(self, values: np.ndarray) -> np.ndarray:
        """``Q diag(values) Q^T``, exactly symmetric."""
        q = self.eigenvectors
        out = (q * values) @ q.T
        return (out + out.T) / 2.0


def symmetrize(a) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    return (a + a.T) / 2.0


def check_symmetric(a, tol: float = TOL.symmetry) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InvalidArgumentError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise InvalidArgumentError("matrix has non-finite entries")
    scale = np.linalg.norm(a)
    if np.linalg.norm(a - a.T) > tol * max(scale, np.finfo(float).tiny):
        raise InvalidArgumentError("matrix is not symmetric")
    return a


def sym_eigh(a) -> SymmetricEigen:
    w, q = np.linalg.eigh(symmetrize(a))
    return SymmetricEigen(w, q)


def sym_matrix_function(a, f: Callable[[np.ndarray], np.ndarray], eig: SymmetricEigen | None = None) -> np.ndarray:
    """Apply the scalar map ``f`` to the spectrum of the symmetric matrix ``a``.

    Raises :class:`DomainError` if ``f`` produces a non-finite value on any
    eigenvalue.
    """
    if eig is None:
        eig = sym_eigh(a)
    with np.errstate(divide="ignore", invalid="ignore"):
        values = np.asarray(f(eig.eigenvalues), dtype=float)
    if not np.all(np.isfinite(values)):
        raise DomainError(f"function undefined on spectrum {eig.eigenvalues}")
    return eig.apply(values)


def _positive(w: np.ndarray) -> np.ndarray:
    if np.any(w <= 0):
        raise DomainError(f"spectrum is not strictly positive: min eigenvalue {w.min()}")
    return w


def sqrtm(a, eig: SymmetricEigen | None = None) -> np.ndarray:
    """Principal square root of a PSD matrix; tiny negative eigenvalues are clipped."""
    if eig is None:
        eig = sym_eigh(a)
    w = eig.eigenvalues
    floor = -TOL.psd_clip * max(np.abs(w).max(), 1.0)
    if np.any(w < floor):
        raise DomainError(f"matrix is not positive semidefinite: min eigenvalue {w.min()}")
    return eig.apply(np.sqrt(np.clip(w, 0.0, None)))


def invsqrtm(a, eig: SymmetricEigen | None = None) -> np.ndarray:
    return sym_matrix_function(a, lambda w: 1.0 / np.sqrt(_positive(w)), eig)


def logm(a, eig: SymmetricEigen | None = None) -> np.ndarray:
    return sym_matrix_function(a, lambda w: np.log(_positive(w)), eig)


def expm(a, eig: SymmetricEigen | None = None) -> np.ndarray:
    return sym_matrix_function(a, np.exp, eig)


def powm(a, t: float, eig: SymmetricEigen | None = None) -> np.ndarray:
    return sym_matrix_function(a, lambda w: np.power(_positive(w), t), eig)
