"""Poincare disk model of the hyperbolic plane (curvature -1).

Geodesics are built with the disk isometry ``z -> (z - a) / (1 - conj(a) z)``,
which moves ``a`` to the origin where geodesics are diameters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..errors import InvalidArgumentError
from ..geometry import CurvatureBound, GeodesicSpace


@dataclass(frozen=True, slots=True)
class DiskPoint:
    x: float
    y: float

    def __post_init__(self):
        if not self.x * self.x + self.y * self.y < 1.0:
            raise InvalidArgumentError(f"({self.x}, {self.y}) is not inside the open unit disk")

    @property
    def z(self) -> complex:
        return complex(self.x, self.y)

    @classmethod
    def from_complex(cls, z: complex) -> "DiskPoint":
        return cls(z.real, z.imag)


def _mobius(z: complex, a: complex) -> complex:
    return (z - a) / (1.0 - a.conjugate() * z)


def _mobius_inv(u: complex, a: complex) -> complex:
    return (u + a) / (1.0 + a.conjugate() * u)


def poincare_distance(a: DiskPoint, b: DiskPoint) -> float:
    """Hyperbolic distance ``2 artanh(|a - b| / |1 - conj(a) b|)``.

    Equal to ``arccosh(1 + 2|a-b|^2 / ((1-|a|^2)(1-|b|^2)))`` but accurate
    for nearby points.
    """
    za, zb = a.z, b.z
    ratio = abs(za - zb) / abs(1.0 - za.conjugate() * zb)
    return 2.0 * math.atanh(min(ratio, 1.0 - 1e-16))


def poincare_interpolate(a: DiskPoint, b: DiskPoint, t: float) -> DiskPoint:
    if t == 0.0:
        return a
    if t == 1.0:
        return b
    za = a.z
    w = _mobius(b.z, za)
    r = abs(w)
    if r == 0.0:
        return a
    rt = math.tanh(t * math.atanh(r))
    return DiskPoint.from_complex(_mobius_inv(w * (rt / r), za))


class PoincareDisk(GeodesicSpace):
    name = "poincare"
    point_type = DiskPoint

    def __init__(self):
        self.curvature = CurvatureBound(-1.0)

    def _distance(self, x, y):
        return poincare_distance(x, y)

    def _interpolate(self, x, y, t):
        return poincare_interpolate(x, y, t)
