"""The d-leg spider: d copies of [0, inf) glued at a common center node."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import InvalidArgumentError
from ..geometry import CurvatureBound, GeodesicSpace


@dataclass(frozen=True, slots=True)
class SpiderPoint:
    """Point at distance ``radius`` from the center along leg ``leg`` (1-based).

    All radius-0 points are the center node; they are canonicalized to leg 1
    so that equality reflects the quotient.
    """

    leg: int
    radius: float

    def __post_init__(self):
        if not self.radius >= 0.0:
            raise InvalidArgumentError(f"spider radius must be >= 0, got {self.radius}")
        if self.leg < 1:
            raise InvalidArgumentError(f"spider legs are numbered from 1, got {self.leg}")
        if self.radius == 0.0 and self.leg != 1:
            object.__setattr__(self, "leg", 1)

    @property
    def is_center(self) -> bool:
        return self.radius == 0.0


CENTER = SpiderPoint(1, 0.0)


def spider_distance(a: SpiderPoint, b: SpiderPoint) -> float:
    if a.leg == b.leg:
        return abs(a.radius - b.radius)
    return a.radius + b.radius


def spider_interpolate(a: SpiderPoint, b: SpiderPoint, t: float) -> SpiderPoint:
    if t == 0.0:
        return a
    if t == 1.0:
        return b
    if a.leg == b.leg:
        return SpiderPoint(a.leg, a.radius + t * (b.radius - a.radius))
    travelled = t * (a.radius + b.radius)
    if travelled <= a.radius:
        return SpiderPoint(a.leg, a.radius - travelled)
    return SpiderPoint(b.leg, travelled - a.radius)


class Spider(GeodesicSpace):
    """Metric tree with ``legs`` half-lines; a CAT(0) (in fact CAT(-inf)) space."""

    name = "spider"
    point_type = SpiderPoint

    def __init__(self, legs: int = 5):
        if legs < 2:
            raise InvalidArgumentError(f"a spider needs at least 2 legs, got {legs}")
        self.legs = int(legs)
        self.curvature = CurvatureBound(0.0)

    def check_point(self, x):
        if not isinstance(x, SpiderPoint):
            raise InvalidArgumentError(f"spider expects SpiderPoint, got {type(x).__name__}")
        if x.leg > self.legs:
            raise InvalidArgumentError(f"leg {x.leg} does not exist on a {self.legs}-leg spider")

    def _distance(self, x, y):
        return spider_distance(x, y)

    def _interpolate(self, x, y, t):
        return spider_interpolate(x, y, t)
