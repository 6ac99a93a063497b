"""Abstract geodesic-space contract and curvature metadata."""

from __future__ import annotations

import abc
import math
from dataclasses import dataclass
from typing import Any, Iterable, Optional

from .errors import InvalidArgumentError


@dataclass(frozen=True)
class CurvatureBound:
    """Upper curvature bound ``kappa`` of a CAT(kappa) space.

    ``diameter_bound`` is ``pi / sqrt(kappa)`` for positive ``kappa`` and
    ``None`` otherwise.
    """

    kappa: float
    diameter_bound: Optional[float] = None

    def __post_init__(self):
        if not math.isfinite(self.kappa):
            raise InvalidArgumentError(f"kappa must be finite, got {self.kappa}")
        if self.kappa > 0:
            expected = math.pi / math.sqrt(self.kappa)
            if self.diameter_bound is None:
                object.__setattr__(self, "diameter_bound", expected)
            elif abs(self.diameter_bound - expected) > 1e-12 * expected:
                raise InvalidArgumentError(
                    f"diameter_bound {self.diameter_bound} != pi/sqrt(kappa) = {expected}"
                )
        elif self.diameter_bound is not None:
            raise InvalidArgumentError("diameter_bound is only defined for kappa > 0")

    @classmethod
    def from_kappa(cls, kappa: float) -> "CurvatureBound":
        return cls(float(kappa))

    @property
    def is_npc(self) -> bool:
        return self.kappa <= 0


class GeodesicSpace(abc.ABC):
    """A uniquely geodesic metric space with a curvature upper bound.

    Subclasses set ``name``, ``point_type`` and ``curvature`` and implement
    ``_distance`` and ``_interpolate`` on already-validated points.
    """

    name: str = "abstract"
    point_type: type = object
    curvature: CurvatureBound

    def check_point(self, x: Any) -> None:
        if not isinstance(x, self.point_type):
            raise InvalidArgumentError(
                f"{self.name} expects {self.point_type.__name__}, got {type(x).__name__}"
            )

    def distance(self, x, y) -> float:
        self.check_point(x)
        self.check_point(y)
        return self._distance(x, y)

    def interpolate(self, x, y, t: float):
        """Point at arc-length fraction ``t`` along the geodesic from ``x`` to ``y``."""
        self.check_point(x)
        self.check_point(y)
        if not 0.0 <= t <= 1.0:
            raise InvalidArgumentError(f"interpolation parameter t={t} is outside [0, 1]")
        if t == 0.0:
            return x
        if t == 1.0:
            return y
        return self._interpolate(x, y, t)

    @abc.abstractmethod
    def _distance(self, x, y) -> float: ...

    @abc.abstractmethod
    def _interpolate(self, x, y, t: float): ...

    def __repr__(self):
        return f"{type(self).__name__}(kappa={self.curvature.kappa})"


def distance(space: GeodesicSpace, x, y) -> float:
    return space.distance(x, y)


def interpolate(space: GeodesicSpace, x, y, t: float):
    return space.interpolate(x, y, t)


def validate_support_radius(space: GeodesicSpace, points: Iterable, center) -> bool:
    """True iff every point lies in the open ball of radius ``D_kappa / 2`` about ``center``.

    Only meaningful for positively curved spaces; raises on ``kappa <= 0``.
    """
    if space.curvature.kappa <= 0:
        raise InvalidArgumentError(
            f"support-radius condition is vacuous for kappa={space.curvature.kappa} <= 0"
        )
    radius = space.curvature.diameter_bound / 2.0
    return all(space.distance(center, p) < radius for p in points)
