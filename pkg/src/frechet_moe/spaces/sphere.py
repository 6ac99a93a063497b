"""The unit sphere S^2 (curvature +1, diameter bound pi)."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import InvalidArgumentError, NoUniqueGeodesicError
from ..geometry import CurvatureBound, GeodesicSpace
from ..tolerances import TOL


@dataclass(frozen=True, eq=False)
class SpherePoint:
    v: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.v, dtype=float).reshape(-1)
        if v.shape != (3,) or not np.all(np.isfinite(v)):
            raise InvalidArgumentError("sphere point must be a finite vector in R^3")
        if abs(np.linalg.norm(v) - 1.0) > TOL.unit_norm:
            raise InvalidArgumentError(f"sphere point has norm {np.linalg.norm(v)}, expected 1")
        v.setflags(write=False)
        object.__setattr__(self, "v", v)

    @classmethod
    def from_vector(cls, v) -> "SpherePoint":
        v = np.asarray(v, dtype=float)
        n = np.linalg.norm(v)
        if n == 0:
            raise InvalidArgumentError("cannot normalize the zero vector")
        return cls(v / n)

    @classmethod
    def from_angles(cls, colatitude: float, longitude: float) -> "SpherePoint":
        s = math.sin(colatitude)
        return cls.from_vector([s * math.cos(longitude), s * math.sin(longitude), math.cos(colatitude)])


def sphere_distance(a: SpherePoint, b: SpherePoint) -> float:
    # atan2 keeps full precision near 0 and pi where arccos does not
    return math.atan2(float(np.linalg.norm(np.cross(a.v, b.v))), float(a.v @ b.v))


def sphere_interpolate(a: SpherePoint, b: SpherePoint, t: float) -> SpherePoint:
    if t == 0.0:
        return a
    if t == 1.0:
        return b
    theta = sphere_distance(a, b)
    if theta >= math.pi - TOL.antipodal:
        raise NoUniqueGeodesicError("antipodal points have no unique geodesic")
    if theta == 0.0:
        return a
    s = math.sin(theta)
    v = (math.sin((1.0 - t) * theta) * a.v + math.sin(t * theta) * b.v) / s
    return SpherePoint.from_vector(v)


def sphere_log(x: SpherePoint, y: SpherePoint) -> np.ndarray:
    """Tangent vector at ``x`` pointing to ``y`` with length ``d(x, y)``."""
    theta = sphere_distance(x, y)
    if theta >= math.pi - TOL.antipodal:
        raise NoUniqueGeodesicError("log map undefined at the antipode")
    u = y.v - (x.v @ y.v) * x.v
    n = np.linalg.norm(u)
    if n == 0.0:
        return np.zeros(3)
    return theta * u / n


def sphere_exp(x: SpherePoint, v: np.ndarray) -> SpherePoint:
    n = float(np.linalg.norm(v))
    if n == 0.0:
        return x
    return SpherePoint.from_vector(math.cos(n) * x.v + math.sin(n) * (v / n))


def _fixed_tangent(x: SpherePoint) -> np.ndarray:
    # a deterministic unit tangent at x: project the least-aligned basis vector
    e = np.zeros(3)
    e[int(np.argmin(np.abs(x.v)))] = 1.0
    u = e - (x.v @ e) * x.v
    return u / np.linalg.norm(u)


class Sphere(GeodesicSpace):
    name = "sphere"
    point_type = SpherePoint

    def __init__(self):
        self.curvature = CurvatureBound(1.0)

    def _distance(self, x, y):
        return sphere_distance(x, y)

    def _interpolate(self, x, y, t):
        return sphere_interpolate(x, y, t)

    def log(self, x, y):
        return sphere_log(x, y)

    def exp(self, x, v):
        return sphere_exp(x, v)

    def perturb(self, x: SpherePoint, size: float) -> SpherePoint:
        return sphere_exp(x, size * _fixed_tangent(x))

    def weiszfeld_step(self, x: SpherePoint, points, weights, distances) -> SpherePoint:
        """One tangent-space Weiszfeld update at ``x`` (no coincident points)."""
        c = np.asarray(weights) / np.asarray(distances)
        direction = sum(ci * sphere_log(x, p) for ci, p in zip(c, points)) / c.sum()
        return sphere_exp(x, direction)
