"""Fréchet median-of-estimators boosting in CAT(kappa) spaces."""

from .boosting import (
    BoostConfig,
    BoostResult,
    BoundReport,
    ConcentrationConstants,
    boost,
    c_alpha,
    fmom_radius,
    psi,
    select_block_count,
    split_blocks,
    theoretical_bound,
)
from .errors import (
    BlockEstimatorError,
    DomainError,
    FrechetMoEError,
    InvalidArgumentError,
    NoUniqueGeodesicError,
    PreconditionError,
    UnsupportedSpaceError,
)
from .geometry import CurvatureBound, GeodesicSpace, distance, interpolate, validate_support_radius
from .solvers import (
    SolverResult,
    SolverSettings,
    WeightedSample,
    empirical_frechet_mean,
    frechet_median,
    frechet_median_npc,
    frechet_median_sphere,
    frechet_median_weiszfeld,
    frechet_objective,
    inductive_mean,
)

__version__ = "0.1.0"

__all__ = [
    "CurvatureBound",
    "GeodesicSpace",
    "distance",
    "interpolate",
    "validate_support_radius",
    "BoostConfig",
    "BoostResult",
    "BoundReport",
    "ConcentrationConstants",
    "boost",
    "c_alpha",
    "fmom_radius",
    "psi",
    "select_block_count",
    "split_blocks",
    "theoretical_bound",
    "BlockEstimatorError",
    "DomainError",
    "FrechetMoEError",
    "InvalidArgumentError",
    "NoUniqueGeodesicError",
    "PreconditionError",
    "UnsupportedSpaceError",
    "SolverResult",
    "SolverSettings",
    "WeightedSample",
    "empirical_frechet_mean",
    "frechet_median",
    "frechet_median_npc",
    "frechet_median_sphere",
    "frechet_median_weiszfeld",
    "frechet_objective",
    "inductive_mean",
]
