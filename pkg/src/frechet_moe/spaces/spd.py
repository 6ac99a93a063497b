"""Symmetric positive definite matrices under the affine-invariant and
Bures-Wasserstein metrics."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Optional

import numpy as np

from ..errors import DomainError, InvalidArgumentError
from ..geometry import CurvatureBound, GeodesicSpace
from . import linalg
from .linalg import SymmetricEigen


@dataclass(frozen=True, eq=False)
class SpdMatrix:
    """A strictly positive definite symmetric matrix.

    The input is validated for symmetry, then replaced by its exact
    symmetrization. Spectral factors are cached on first use.
    """

    m: np.ndarray

    def __post_init__(self):
        a = linalg.symmetrize(linalg.check_symmetric(self.m))
        a.setflags(write=False)
        object.__setattr__(self, "m", a)
        if self.eig.eigenvalues[0] <= 0:
            raise InvalidArgumentError(
                f"matrix is not positive definite: min eigenvalue {self.eig.eigenvalues[0]}"
            )

    @cached_property
    def eig(self) -> SymmetricEigen:
        return linalg.sym_eigh(self.m)

    @property
    def dim(self) -> int:
        return self.m.shape[0]

    @property
    def lambda_min(self) -> float:
        return float(self.eig.eigenvalues[0])

    @cached_property
    def sqrt(self) -> np.ndarray:
        return self.eig.apply(np.sqrt(self.eig.eigenvalues))

    @cached_property
    def invsqrt(self) -> np.ndarray:
        return self.eig.apply(1.0 / np.sqrt(self.eig.eigenvalues))

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.m, dtype=dtype)


def _as_spd(a) -> SpdMatrix:
    return a if isinstance(a, SpdMatrix) else SpdMatrix(a)


# -- affine-invariant metric -------------------------------------------------

def spd_ai_distance(a, b) -> float:
    """``||log(A^{-1/2} B A^{-1/2})||_F``."""
    a, b = _as_spd(a), _as_spd(b)
    if a is b or np.array_equal(a.m, b.m):
        return 0.0
    w = np.linalg.eigvalsh(linalg.symmetrize(a.invsqrt @ b.m @ a.invsqrt))
    if w[0] <= 0:
        raise DomainError("congruence lost positive definiteness")
    return float(math.sqrt(np.sum(np.log(w) ** 2)))


def spd_ai_interpolate(a, b, t: float) -> SpdMatrix:
    """``A^{1/2} (A^{-1/2} B A^{-1/2})^t A^{1/2}``."""
    a, b = _as_spd(a), _as_spd(b)
    if t == 0.0:
        return a
    if t == 1.0:
        return b
    inner = linalg.powm(a.invsqrt @ b.m @ a.invsqrt, t)
    return SpdMatrix(a.sqrt @ inner @ a.sqrt)


# -- Bures-Wasserstein metric ------------------------------------------------

def spd_bw_distance(a, b) -> float:
    """``sqrt(tr A + tr B - 2 tr (A^{1/2} B A^{1/2})^{1/2})``; PSD inputs allowed.

    For positive definite ``A`` the equivalent form
    ``||A^{-1/2} S^{1/2} - A^{1/2}||_F`` with ``S = A^{1/2} B A^{1/2}`` is used,
    which avoids the cancellation of the trace formula for nearby matrices.
    """
    a_m = a.m if isinstance(a, SpdMatrix) else linalg.check_symmetric(a)
    b_m = b.m if isinstance(b, SpdMatrix) else linalg.check_symmetric(b)
    if np.array_equal(a_m, b_m):
        return 0.0
    if isinstance(a, SpdMatrix):
        root_s = linalg.sqrtm(a.sqrt @ b_m @ a.sqrt)
        return float(np.linalg.norm(a.invsqrt @ root_s - a.sqrt))
    root = linalg.sqrtm(a_m)
    w = np.linalg.eigvalsh(linalg.symmetrize(root @ b_m @ root))
    cross = np.sqrt(np.clip(w, 0.0, None)).sum()
    d2 = np.trace(a_m) + np.trace(b_m) - 2.0 * cross
    return float(math.sqrt(max(d2, 0.0)))


def bw_transport_map(a: SpdMatrix, b: SpdMatrix) -> np.ndarray:
    """Optimal map ``T = A^{-1/2} (A^{1/2} B A^{1/2})^{1/2} A^{-1/2}`` with ``T A T = B``."""
    middle = linalg.sqrtm(a.sqrt @ b.m @ a.sqrt)
    return linalg.symmetrize(a.invsqrt @ middle @ a.invsqrt)


def spd_bw_interpolate(a, b, t: float) -> SpdMatrix:
    """``((1-t) I + t T) A ((1-t) I + t T)`` with ``T`` the optimal transport map."""
    a, b = _as_spd(a), _as_spd(b)
    if t == 0.0:
        return a
    if t == 1.0:
        return b
    m = (1.0 - t) * np.eye(a.dim) + t * bw_transport_map(a, b)
    return SpdMatrix(m @ a.m @ m)


class _SpdSpace(GeodesicSpace):
    point_type = SpdMatrix

    def __init__(self, dim: Optional[int] = None):
        self.dim = dim

    def check_point(self, x):
        super().check_point(x)
        if self.dim is not None and x.dim != self.dim:
            raise InvalidArgumentError(f"expected a {self.dim}x{self.dim} matrix, got {x.dim}x{x.dim}")


class SpdAffineInvariant(_SpdSpace):
    """(SPD, d_AI): a Hadamard manifold, so kappa = 0 is a valid upper bound."""

    name = "spd_ai"

    def __init__(self, dim: Optional[int] = None):
        super().__init__(dim)
        self.curvature = CurvatureBound(0.0)

    def _distance(self, x, y):
        return spd_ai_distance(x, y)

    def _interpolate(self, x, y, t):
        return spd_ai_interpolate(x, y, t)


class SpdBuresWasserstein(_SpdSpace):
    """(SPD, d_BW) restricted to matrices with smallest eigenvalue >= ``lambda0``.

    On that region the sectional curvature is bounded by ``3 / (2 lambda0^2)``.
    """

    name = "spd_bw"

    def __init__(self, lambda0: float, dim: Optional[int] = None):
        if not lambda0 > 0:
            raise InvalidArgumentError(f"eigenvalue floor must be positive, got {lambda0}")
        super().__init__(dim)
        self.lambda0 = float(lambda0)
        self.curvature = CurvatureBound(3.0 / (2.0 * self.lambda0**2))

    def _distance(self, x, y):
        return spd_bw_distance(x, y)

    def _interpolate(self, x, y, t):
        return spd_bw_interpolate(x, y, t)

    def perturb(self, x: SpdMatrix, size: float) -> SpdMatrix:
        return SpdMatrix(x.m + size * np.eye(x.dim))

    def weiszfeld_step(self, x: SpdMatrix, points, weights, distances) -> SpdMatrix:
        """Weiszfeld update through the horizontal lift ``A = S S^T``.

        Averaging the lifted logs ``(T_j - I) S`` gives ``S_new = M S`` with
        ``M = sum_j c_j T_j``, hence ``A_new = M A M``.
        """
        c = np.asarray(weights) / np.asarray(distances)
        c = c / c.sum()
        m = sum(ci * bw_transport_map(x, p) for ci, p in zip(c, points))
        return SpdMatrix(m @ x.m @ m)
