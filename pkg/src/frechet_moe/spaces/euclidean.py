"""Euclidean space R^d as a flat (kappa = 0) geodesic space."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import InvalidArgumentError
from ..geometry import CurvatureBound, GeodesicSpace


@dataclass(frozen=True, eq=False)
class EuclideanPoint:
    v: np.ndarray

    def __post_init__(self):
        v = np.atleast_1d(np.asarray(self.v, dtype=float))
        if v.ndim != 1 or not np.all(np.isfinite(v)):
            raise InvalidArgumentError("Euclidean point must be a finite 1-d vector")
        v.setflags(write=False)
        object.__setattr__(self, "v", v)

    def __eq__(self, other):
        return isinstance(other, EuclideanPoint) and np.array_equal(self.v, other.v)

    def __hash__(self):
        return hash(self.v.tobytes())


class Euclidean(GeodesicSpace):
    name = "euclidean"
    point_type = EuclideanPoint

    def __init__(self, dim: int):
        if dim < 1:
            raise InvalidArgumentError(f"dimension must be positive, got {dim}")
        self.dim = int(dim)
        self.curvature = CurvatureBound(0.0)

    def check_point(self, x):
        super().check_point(x)
        if x.v.shape[0] != self.dim:
            raise InvalidArgumentError(f"expected a point of R^{self.dim}, got R^{x.v.shape[0]}")

    def point(self, *coords) -> EuclideanPoint:
        if len(coords) == 1 and np.ndim(coords[0]) == 1:
            return EuclideanPoint(coords[0])
        return EuclideanPoint(np.array(coords, dtype=float))

    def _distance(self, x, y):
        return float(np.linalg.norm(x.v - y.v))

    def _interpolate(self, x, y, t):
        return EuclideanPoint((1.0 - t) * x.v + t * y.v)
