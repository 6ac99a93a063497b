"""Seeded samplers for the experiment populations."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List

import numpy as np

from .errors import InvalidArgumentError
from .spaces.poincare import DiskPoint
from .spaces.spd import SpdMatrix
from .spaces.spider import SpiderPoint

OUTLIER_RADIUS = 1.0 - 1e-7


@dataclass(frozen=True)
class RngStream:
    """Independent random stream keyed by ``(seed, stream_id)``.

    Backed by the counter-based Philox generator seeded through
    ``SeedSequence(seed, spawn_key=(stream_id,))``, so distinct ids give
    statistically independent streams and a given key always reproduces
    the same draws.
    """

    seed: int
    stream_id: int = 0

    def generator(self) -> np.random.Generator:
        ss = np.random.SeedSequence(self.seed, spawn_key=(self.stream_id,))
        return np.random.Generator(np.random.Philox(ss))


def _gen(rng) -> np.random.Generator:
    if isinstance(rng, RngStream):
        return rng.generator()
    if isinstance(rng, np.random.Generator):
        return rng
    raise InvalidArgumentError(f"expected RngStream or numpy Generator, got {type(rng).__name__}")


@dataclass(frozen=True)
class SpiderMixtureParams:
    """Uniform leg times ``(1 - a)|N(inlier_mean, sd^2)| + a|N(outlier_mean, sd^2)|``."""

    legs: int = 5
    alpha_outlier: float = 0.1
    inlier_mean: float = 1.0
    outlier_mean: float = 100.0
    sd: float = 1.0

    def __post_init__(self):
        if self.legs < 2:
            raise InvalidArgumentError(f"legs must be >= 2, got {self.legs}")
        if not 0.0 <= self.alpha_outlier <= 1.0:
            raise InvalidArgumentError(f"alpha_outlier must be in [0, 1], got {self.alpha_outlier}")
        if not self.sd > 0:
            raise InvalidArgumentError(f"sd must be positive, got {self.sd}")


def sample_spider_mixture(params: SpiderMixtureParams, rng, size: int = 1) -> List[SpiderPoint]:
    g = _gen(rng)
    legs = g.integers(1, params.legs + 1, size=size)
    outlier = g.random(size) < params.alpha_outlier
    centers = np.where(outlier, params.outlier_mean, params.inlier_mean)
    radii = np.abs(centers + params.sd * g.standard_normal(size))
    return [SpiderPoint(int(l), float(r)) for l, r in zip(legs, radii)]


def sample_multivariate_t(nu: float, sigma, n: int, rng) -> np.ndarray:
    """``n`` draws of ``t_nu(0, sigma)`` with shape matrix ``sigma``; covariance is ``nu/(nu-2) sigma``."""
    if not nu > 2:
        raise InvalidArgumentError(f"nu must exceed 2 for a finite covariance, got {nu}")
    s = sigma.m if isinstance(sigma, SpdMatrix) else SpdMatrix(sigma).m
    g = _gen(rng)
    chol = np.linalg.cholesky(s)
    z = g.standard_normal((n, s.shape[0]))
    w = g.chisquare(nu, size=n)
    return (z @ chol.T) * np.sqrt(nu / w)[:, None]


def sample_disk_mixture(alpha_outlier: float, inlier_sd: float, rng, size: int = 1) -> List[DiskPoint]:
    """``(1 - a) N(0, sd^2 I)`` restricted to the open disk (by rejection) plus ``a`` uniform on radius ``1 - 1e-7``."""
    if not 0.0 <= alpha_outlier <= 1.0:
        raise InvalidArgumentError(f"alpha_outlier must be in [0, 1], got {alpha_outlier}")
    if not inlier_sd > 0:
        raise InvalidArgumentError(f"inlier_sd must be positive, got {inlier_sd}")
    g = _gen(rng)
    out = []
    for _ in range(size):
        if g.random() < alpha_outlier:
            theta = g.uniform(0.0, 2.0 * math.pi)
            out.append(DiskPoint(OUTLIER_RADIUS * math.cos(theta), OUTLIER_RADIUS * math.sin(theta)))
            continue
        while True:
            x, y = inlier_sd * g.standard_normal(2)
            if x * x + y * y < 1.0:
                out.append(DiskPoint(float(x), float(y)))
                break
    return out


def haar_orthogonal(dim: int, rng) -> np.ndarray:
    """Haar-distributed orthogonal matrix via QR with the sign of ``diag(R)`` folded into ``Q``."""
    g = _gen(rng)
    q, r = np.linalg.qr(g.standard_normal((dim, dim)))
    return q * np.sign(np.diag(r))


def generate_spd_with_spectrum(eigenvalues, rng) -> SpdMatrix:
    lam = np.asarray(eigenvalues, dtype=float)
    if lam.ndim != 1 or lam.size == 0 or np.any(lam <= 0) or not np.all(np.isfinite(lam)):
        raise InvalidArgumentError(f"eigenvalues must be positive and finite, got {eigenvalues}")
    if np.all(lam == lam[0]):
        return SpdMatrix(lam[0] * np.eye(lam.size))
    q = haar_orthogonal(lam.size, rng)
    return SpdMatrix((q * lam) @ q.T)
