"""Sample covariance as a base estimator, with eigenvalue-floor bookkeeping."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import InvalidArgumentError
from .spaces.spd import SpdMatrix


@dataclass(frozen=True, eq=False)
class CovarianceEstimate:
    matrix: np.ndarray
    lambda_min: float
    floor_satisfied: bool

    def as_spd(self) -> SpdMatrix:
        return SpdMatrix(self.matrix)


def sample_covariance(data, lambda0: Optional[float] = None) -> CovarianceEstimate:
    """Uncentered ``(1/n) sum x_i x_i^T`` for zero-mean data.

    ``floor_satisfied`` compares the smallest eigenvalue to ``lambda0``
    (inclusive); without a floor it reports strict positive definiteness.
    """
    x = np.asarray(data, dtype=float)
    if x.ndim != 2 or x.shape[0] == 0:
        raise InvalidArgumentError(f"expected a nonempty (n, d) array, got shape {x.shape}")
    s = x.T @ x / x.shape[0]
    s = (s + s.T) / 2.0
    lam = float(np.linalg.eigvalsh(s)[0])
    ok = lam >= lambda0 if lambda0 is not None else lam > 0
    return CovarianceEstimate(s, lam, bool(ok))


def eigenvalue_floor_check(est, lambda0: float) -> bool:
    if not lambda0 > 0:
        raise InvalidArgumentError(f"lambda0 must be positive, got {lambda0}")
    if isinstance(est, CovarianceEstimate):
        lam = est.lambda_min
    elif isinstance(est, SpdMatrix):
        lam = est.lambda_min
    else:
        lam = float(np.linalg.eigvalsh(np.asarray(est, dtype=float))[0])
    return lam >= lambda0


def covariance_estimator(block) -> SpdMatrix:
    """Base estimator for boosting: sample covariance of a block as an SPD point."""
    return SpdMatrix(sample_covariance(block).matrix)
