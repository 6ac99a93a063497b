"""Fréchet median of estimators: block splitting, boosting, and concentration constants."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Callable, List, Optional, Sequence

import numpy as np

from .errors import BlockEstimatorError, InvalidArgumentError, PreconditionError, UnsupportedSpaceError
from .geometry import CurvatureBound, GeodesicSpace, validate_support_radius
from .solvers import SolverResult, SolverSettings, frechet_median_npc, frechet_median_weiszfeld

MEAN_PRESET = (7.0 / 18.0, 0.1)
COVARIANCE_PRESET = (0.4, 0.1)


def psi(alpha: float, p: float) -> float:
    """Chernoff exponent ``(1-a) log((1-a)/(1-p)) + a log(a/p)``; zero when ``p == alpha``."""
    if not (0.0 < p <= alpha < 1.0):
        raise InvalidArgumentError(f"psi needs 0 < p <= alpha < 1, got alpha={alpha}, p={p}")
    return (1.0 - alpha) * math.log((1.0 - alpha) / (1.0 - p)) + alpha * math.log(alpha / p)


def c_alpha(alpha: float) -> float:
    """Inflation constant ``(1 - alpha) / sqrt(1 - 2 alpha)``."""
    if not 0.0 < alpha < 0.5:
        raise InvalidArgumentError(f"c_alpha needs alpha in (0, 0.5), got {alpha}")
    return (1.0 - alpha) / math.sqrt(1.0 - 2.0 * alpha)


@dataclass(frozen=True)
class ConcentrationConstants:
    psi: float
    c_alpha: float

    @classmethod
    def of(cls, alpha: float, p: float) -> "ConcentrationConstants":
        return cls(psi(alpha, p), c_alpha(alpha))


def select_block_count(delta: float, alpha: float, p: float) -> int:
    """Smallest block count ``floor(log(1/delta) / psi) + 1`` guaranteeing ``exp(-k psi) <= delta``."""
    if not 0.0 < delta <= 1.0:
        raise InvalidArgumentError(f"delta must be in (0, 1], got {delta}")
    if not 0.0 < p < alpha < 0.5:
        raise InvalidArgumentError(f"need 0 < p < alpha < 0.5, got alpha={alpha}, p={p}")
    return math.floor(math.log(1.0 / delta) / psi(alpha, p)) + 1


@dataclass(frozen=True)
class BoostConfig:
    k: int
    alpha: float = MEAN_PRESET[0]
    p: float = MEAN_PRESET[1]
    delta: float = 0.05

    def __post_init__(self):
        if int(self.k) != self.k or self.k < 1:
            raise InvalidArgumentError(f"block count k must be a positive integer, got {self.k}")
        if not 0.0 < self.p < self.alpha < 0.5:
            raise InvalidArgumentError(f"need 0 < p < alpha < 0.5, got alpha={self.alpha}, p={self.p}")
        if not 0.0 < self.delta < 1.0:
            raise InvalidArgumentError(f"delta must be in (0, 1), got {self.delta}")

    @classmethod
    def for_confidence(cls, delta: float, alpha: float = MEAN_PRESET[0], p: float = MEAN_PRESET[1]) -> "BoostConfig":
        return cls(select_block_count(delta, alpha, p), alpha, p, delta)

    @property
    def constants(self) -> ConcentrationConstants:
        return ConcentrationConstants.of(self.alpha, self.p)


def split_blocks(n: int, k: int, keep_remainder: bool = False) -> List[range]:
    """``k`` contiguous index ranges of length ``n // k``.

    The trailing ``n % k`` indices are dropped unless ``keep_remainder`` is
    set, in which case they join the last block.
    """
    if int(n) != n or n < 1 or int(k) != k or k < 1:
        raise InvalidArgumentError(f"n and k must be positive integers, got n={n}, k={k}")
    if k > n:
        raise InvalidArgumentError(f"block count k={k} exceeds sample size n={n}")
    size = n // k
    blocks = [range(j * size, (j + 1) * size) for j in range(k)]
    if keep_remainder and n % k:
        blocks[-1] = range((k - 1) * size, n)
    return blocks


@dataclass
class BoostResult:
    estimate: Any
    block_estimates: list
    median: Optional[SolverResult]
    support_ok: Optional[bool] = None

    @property
    def converged(self) -> bool:
        return self.median is None or self.median.converged


def _take(data, idx: range):
    if isinstance(data, np.ndarray):
        return data[idx.start:idx.stop]
    return list(data[idx.start:idx.stop])


def boost(
    space: GeodesicSpace,
    data: Sequence,
    base_estimator: Callable[[Any], Any],
    config: BoostConfig,
    settings: SolverSettings = SolverSettings(),
    seed=0,
    *,
    keep_remainder: bool = False,
    shuffle: bool = False,
    strict_support: bool = True,
    executor=None,
) -> BoostResult:
    """Split ``data`` into ``config.k`` blocks, estimate on each, return the Fréchet median.

    With ``k == 1`` the base estimate on the whole sample is returned as is.
    Block estimates may be computed through ``executor.map``; the result does
    not depend on it. For ``kappa > 0`` the block estimates must lie within
    ``D_kappa / 2`` of the median; a violation raises
    :class:`PreconditionError` unless ``strict_support`` is false, in which
    case it is reported in ``support_ok``.
    """
    n = len(data)
    blocks = split_blocks(n, config.k, keep_remainder)
    if shuffle:
        perm = np.random.default_rng(seed).permutation(n)
        data = data[perm] if isinstance(data, np.ndarray) else [data[i] for i in perm]

    def run(j):
        try:
            est = base_estimator(_take(data, blocks[j]))
            space.check_point(est)
            return est
        except Exception as exc:
            raise BlockEstimatorError(j, exc) from exc

    mapper = executor.map if executor is not None else map
    estimates = list(mapper(run, range(config.k)))
    if config.k == 1:
        return BoostResult(estimates[0], estimates, None)

    kappa = space.curvature.kappa
    if kappa <= 0:
        med = frechet_median_npc(space, estimates, settings, seed)
        return BoostResult(med.point, estimates, med)
    if not hasattr(space, "weiszfeld_step"):
        raise UnsupportedSpaceError(f"no Fréchet median algorithm for {space.name} (kappa={kappa} > 0)")
    med = frechet_median_weiszfeld(space, estimates, settings, check_support=False)
    ok = validate_support_radius(space, estimates, med.point)
    if strict_support and not ok:
        raise PreconditionError(
            f"block estimates leave the ball of radius D_kappa/2 = {space.curvature.diameter_bound / 2} about the median"
        )
    return BoostResult(med.point, estimates, med, ok)


@dataclass(frozen=True)
class BoundReport:
    radius: float
    failure_probability: float


def theoretical_bound(config: BoostConfig, epsilon: float, curvature: CurvatureBound, conditional: bool = False) -> BoundReport:
    """Deviation radius and failure probability of the boosted estimator.

    For ``kappa <= 0`` the radius is ``C_alpha * epsilon``; for ``kappa > 0``
    it is ``(pi / 2) C_alpha epsilon`` and requires
    ``epsilon < D_kappa / (pi C_alpha)``. The probability is
    ``exp(-k psi)``, divided by ``1 - p^k`` in the conditional form.
    """
    if not epsilon > 0:
        raise InvalidArgumentError(f"epsilon must be positive, got {epsilon}")
    consts = config.constants
    radius = consts.c_alpha * epsilon
    if curvature.kappa > 0:
        limit = curvature.diameter_bound / (math.pi * consts.c_alpha)
        if not epsilon < limit:
            raise InvalidArgumentError(f"epsilon={epsilon} must be below D_kappa/(pi C_alpha) = {limit}")
        radius *= math.pi / 2.0
    prob = math.exp(-config.k * consts.psi)
    if conditional:
        prob /= 1.0 - config.p**config.k
    return BoundReport(radius, min(prob, 1.0))


def fmom_radius(sigma2: float, n: int, delta: float) -> float:
    """High-probability radius ``11 sqrt(sigma2 log(1.4 / delta) / n)`` of the median-of-means."""
    if not sigma2 > 0 or not n > 0:
        raise InvalidArgumentError(f"sigma2 and n must be positive, got {sigma2}, {n}")
    if not 0.0 < delta < 1.0:
        raise InvalidArgumentError(f"delta must be in (0, 1), got {delta}")
    return 11.0 * math.sqrt(sigma2 * math.log(1.4 / delta) / n)
