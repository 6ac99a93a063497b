"""Concrete geodesic spaces."""

from .euclidean import Euclidean, EuclideanPoint
from .linalg import SymmetricEigen, sym_eigh, sym_matrix_function
from .poincare import DiskPoint, PoincareDisk, poincare_distance, poincare_interpolate
from .spd import (
    SpdAffineInvariant,
    SpdBuresWasserstein,
    SpdMatrix,
    spd_ai_distance,
    spd_ai_interpolate,
    spd_bw_distance,
    spd_bw_interpolate,
)
from .sphere import Sphere, SpherePoint, sphere_distance, sphere_interpolate
from .spider import CENTER, Spider, SpiderPoint, spider_distance, spider_interpolate

__all__ = [
    "CENTER",
    "DiskPoint",
    "Euclidean",
    "EuclideanPoint",
    "PoincareDisk",
    "SpdAffineInvariant",
    "SpdBuresWasserstein",
    "SpdMatrix",
    "Sphere",
    "SpherePoint",
    "Spider",
    "SpiderPoint",
    "SymmetricEigen",
    "poincare_distance",
    "poincare_interpolate",
    "spd_ai_distance",
    "spd_ai_interpolate",
    "spd_bw_distance",
    "spd_bw_interpolate",
    "sphere_distance",
    "sphere_interpolate",
    "spider_distance",
    "spider_interpolate",
    "sym_eigh",
    "sym_matrix_function",
]
