"""Fréchet mean and median estimators over any :class:`GeodesicSpace`."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import InvalidArgumentError, PreconditionError, UnsupportedSpaceError
from .geometry import GeodesicSpace, validate_support_radius
from .tolerances import TOL


@dataclass(frozen=True)
class SolverSettings:
    """Iteration controls shared by the mean and median solvers.

    The proximal solvers use the step schedule ``lambda_k = step_constant / k``
    where ``k`` counts sweeps over the data.
    """

    max_iterations: int = 200
    step_constant: float = 1.0
    objective_tolerance: float = 1e-12
    displacement_tolerance: float = 1e-10

    def __post_init__(self):
        if int(self.max_iterations) != self.max_iterations or self.max_iterations < 1:
            raise InvalidArgumentError(f"max_iterations must be a positive integer, got {self.max_iterations}")
        for name in ("step_constant", "objective_tolerance", "displacement_tolerance"):
            if not getattr(self, name) > 0:
                raise InvalidArgumentError(f"{name} must be positive, got {getattr(self, name)}")


@dataclass(frozen=True, eq=False)
class WeightedSample:
    """Finite sample with nonnegative weights summing to one (uniform by default)."""

    points: tuple
    weights: np.ndarray = None

    def __post_init__(self):
        pts = tuple(self.points)
        if not pts:
            raise InvalidArgumentError("a sample needs at least one point")
        if self.weights is None:
            w = np.full(len(pts), 1.0 / len(pts))
        else:
            w = np.asarray(self.weights, dtype=float)
            if w.shape != (len(pts),) or np.any(w < 0) or not np.all(np.isfinite(w)):
                raise InvalidArgumentError("weights must be one finite nonnegative value per point")
            total = w.sum()
            if total <= 0:
                raise InvalidArgumentError("weights sum to zero")
            w = w / total
        w.setflags(write=False)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "weights", w)

    def __len__(self):
        return len(self.points)


def as_sample(sample) -> WeightedSample:
    return sample if isinstance(sample, WeightedSample) else WeightedSample(tuple(sample))


@dataclass
class SolverResult:
    """Output of an iterative solver.

    ``objectives`` records the incumbent (best so far) objective after every
    sweep, so it is non-increasing. For the proximal solvers ``converged``
    means the sweeps met the displacement tolerance or the final point has
    no descent direction toward any data point.
    """

    point: Any
    objective: float
    iterations: int
    converged: bool
    objectives: list = field(default_factory=list)


def frechet_objective(space: GeodesicSpace, sample, x, power: int = 1) -> float:
    """``sum_j w_j d(x, x_j)^power`` for ``power`` in {1, 2}."""
    if power not in (1, 2):
        raise InvalidArgumentError(f"power must be 1 or 2, got {power}")
    sample = as_sample(sample)
    d = np.fromiter((space.distance(x, p) for p in sample.points), float, len(sample))
    return float(sample.weights @ (d if power == 1 else d * d))


def inductive_mean(space: GeodesicSpace, points: Sequence):
    """Streaming mean ``s_i = interpolate(s_{i-1}, x_i, 1/i)``; depends on the order of ``points``."""
    if len(points) == 0:
        raise InvalidArgumentError("inductive mean of an empty list")
    s = points[0]
    space.check_point(s)
    for i in range(1, len(points)):
        s = space.interpolate(s, points[i], 1.0 / (i + 1))
    return s


def _sweep_order(n: int, seed) -> np.ndarray:
    return np.random.default_rng(seed).permutation(n)


def empirical_frechet_mean(space: GeodesicSpace, sample, settings: SolverSettings = SolverSettings(), seed=0) -> SolverResult:
    """Minimize ``sum_j w_j d^2(x, x_j)`` by cyclic proximal-point sweeps.

    Each step applies the exact proximal map of the j-th squared distance,
    which moves toward ``x_j`` by the fraction ``l / (1 + l)`` with
    ``l = lambda_k * n * w_j``. Warm-started at the inductive mean; the best
    iterate seen is returned.
    """
    sample = as_sample(sample)
    pts, w = sample.points, sample.weights
    n = len(pts)
    x = inductive_mean(space, pts)
    best, best_obj = x, frechet_objective(space, sample, x, 2)
    history = [best_obj]
    if n == 1:
        return SolverResult(x, best_obj, 0, True, history)
    order = _sweep_order(n, seed)
    converged = False
    k = 0
    for k in range(1, settings.max_iterations + 1):
        lam = settings.step_constant / k
        start = x
        for j in order:
            ell = lam * n * w[j]
            x = space.interpolate(x, pts[j], ell / (1.0 + ell))
        obj = frechet_objective(space, sample, x, 2)
        if obj < best_obj:
            best, best_obj = x, obj
        history.append(best_obj)
        if space.distance(start, x) < settings.displacement_tolerance:
            converged = True
            break
    best, best_obj, stationary = _line_search_polish(space, sample, best, best_obj, 2, order)
    converged = converged or stationary
    history.append(best_obj)
    return SolverResult(best, best_obj, k, converged, history)


def _line_search_polish(space, sample, x, obj, power, order, passes: int = 3):
    """Exact line searches along the geodesics from ``x`` toward each data point.

    The proximal sweeps approach minimizers sitting on a kink of the
    objective (a vertex of a tree, say) only at rate ``O(1/k)``; a line
    search lands on them directly. Each direction is first probed with a
    short step; since the objective is geodesically convex, no decrease
    there means no decrease anywhere along that geodesic. Returns the
    refined point, its objective, and whether a full pass found no descent
    direction.
    """
    pts = sample.points

    def along(target, t):
        return frechet_objective(space, sample, space.interpolate(x, target, t), power)

    for _ in range(passes):
        stationary = True
        for j in order:
            target = pts[j]
            d = space.distance(x, target)
            if d == 0.0:
                continue
            t0 = min(1.0, TOL.probe_step / d)
            if obj - along(target, t0) <= TOL.probe_decrease * max(1.0, obj):
                continue
            stationary = False
            res = minimize_scalar(lambda t: along(target, t), bounds=(0.0, 1.0), method="bounded", options={"xatol": 1e-10})
            if res.fun < obj:
                x, obj = space.interpolate(x, target, float(res.x)), float(res.fun)
        if stationary:
            return x, obj, True
    return x, obj, False


def frechet_median_npc(space: GeodesicSpace, sample, settings: SolverSettings = SolverSettings(), seed=0) -> SolverResult:
    """Fréchet median in a CAT(0) space by the cyclic proximal-point algorithm.

    Step ``k`` of a sweep moves from ``x`` toward ``x_j`` by arc length
    ``min(w_j * lambda_k, d(x, x_j))``, the exact proximal map of
    ``w_j d(., x_j)``. The iteration starts at the inductive mean, visits the
    points in a seed-shuffled cyclic order, and stops once a sweep moves less
    than ``displacement_tolerance``. The best of the sweep iterates and the
    data points is then refined by line searches toward each data point.
    """
    if space.curvature.kappa > 0:
        raise UnsupportedSpaceError(f"proximal median requires kappa <= 0, got {space.curvature.kappa}")
    sample = as_sample(sample)
    pts, w = sample.points, sample.weights
    n = len(pts)
    x = inductive_mean(space, pts)
    best, best_obj = x, frechet_objective(space, sample, x, 1)
    history = [best_obj]
    if n == 1:
        return SolverResult(x, best_obj, 0, True, history)
    scale = best_obj
    if scale == 0.0:
        return SolverResult(x, 0.0, 0, True, history)
    order = _sweep_order(n, seed)
    converged = False
    k = 0
    for k in range(1, settings.max_iterations + 1):
        lam = settings.step_constant * scale / k
        moved = 0.0
        for j in order:
            d = space.distance(x, pts[j])
            if d == 0.0:
                continue
            step = min(w[j] * lam, d)
            x = space.interpolate(x, pts[j], step / d)
            moved += step
        obj = frechet_objective(space, sample, x, 1)
        if obj < best_obj:
            best, best_obj = x, obj
        history.append(best_obj)
        if moved < settings.displacement_tolerance:
            converged = True
            break
    best, best_obj = _polish_with_data(space, sample, best, best_obj, settings)
    best, best_obj, stationary = _line_search_polish(space, sample, best, best_obj, 1, order)
    converged = converged or stationary
    history.append(best_obj)
    return SolverResult(best, best_obj, k, converged, history)


def _polish_with_data(space, sample, best, best_obj, settings):
    for p in sample.points:
        obj = frechet_objective(space, sample, p, 1)
        if obj < best_obj - settings.objective_tolerance:
            best, best_obj = p, obj
    return best, best_obj


def frechet_median_weiszfeld(space: GeodesicSpace, sample, settings: SolverSettings = SolverSettings(), *, check_support: bool = True) -> SolverResult:
    """Geometric median by tangent-space Weiszfeld iteration.

    ``space`` must provide ``weiszfeld_step(x, points, weights, distances)``
    and ``perturb(x, size)``. When the iterate lands on a data point it is
    nudged by ``1e-9`` along a fixed tangent direction. For ``kappa > 0`` the
    result is checked against the support-radius condition unless
    ``check_support`` is false.
    """
    if not hasattr(space, "weiszfeld_step"):
        raise UnsupportedSpaceError(f"no Weiszfeld step available for {space.name}")
    sample = as_sample(sample)
    pts, w = sample.points, sample.weights
    x = inductive_mean(space, pts)
    best, best_obj = x, frechet_objective(space, sample, x, 1)
    history = [best_obj]
    converged = len(pts) == 1
    k = 0
    if not converged:
        for k in range(1, settings.max_iterations + 1):
            d = np.array([space.distance(x, p) for p in pts])
            if np.any(d < TOL.coincidence):
                x = space.perturb(x, 1e-9)
                d = np.array([space.distance(x, p) for p in pts])
            new = space.weiszfeld_step(x, pts, w, d)
            step = space.distance(x, new)
            x = new
            obj = frechet_objective(space, sample, x, 1)
            if obj < best_obj:
                best, best_obj = x, obj
            history.append(best_obj)
            if step < settings.displacement_tolerance:
                converged = True
                break
    best, best_obj = _polish_with_data(space, sample, best, best_obj, settings)
    if check_support and space.curvature.kappa > 0 and not validate_support_radius(space, pts, best):
        raise PreconditionError(
            f"sample is not contained in the ball of radius D_kappa/2 = "
            f"{space.curvature.diameter_bound / 2} about the computed median"
        )
    return SolverResult(best, best_obj, k, converged, history)


def frechet_median_sphere(points: Sequence, settings: SolverSettings = SolverSettings()) -> SolverResult:
    from .spaces.sphere import Sphere

    return frechet_median_weiszfeld(Sphere(), points, settings)


def frechet_median(space: GeodesicSpace, sample, settings: SolverSettings = SolverSettings(), seed=0, *, check_support: bool = True) -> SolverResult:
    """Dispatch on curvature sign: proximal point for kappa <= 0, Weiszfeld otherwise."""
    if space.curvature.kappa <= 0:
        return frechet_median_npc(space, sample, settings, seed)
    return frechet_median_weiszfeld(space, sample, settings, check_support=check_support)
