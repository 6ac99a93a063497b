"""Monte Carlo experiment runner: configs, replications, summaries and CSV output."""

from __future__ import annotations

import csv
import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .boosting import BoostConfig, boost
from .covariance import covariance_estimator
from .errors import InvalidArgumentError
from .sampling import (
    RngStream,
    SpiderMixtureParams,
    generate_spd_with_spectrum,
    sample_disk_mixture,
    sample_multivariate_t,
    sample_spider_mixture,
)
from .solvers import SolverSettings, empirical_frechet_mean, inductive_mean
from .spaces import (
    CENTER,
    DiskPoint,
    Euclidean,
    PoincareDisk,
    SpdAffineInvariant,
    SpdBuresWasserstein,
    SpdMatrix,
    Spider,
)

log = logging.getLogger(__name__)

EXPERIMENTS = ("spider5", "poincare", "cov_ai", "cov_bw", "euclidean_demo")
SCHEMA_VERSION = 1
DISK_INLIER_SD = 0.2

_DEFAULTS = {
    "spider5": dict(n=100, k=10, alpha_outlier=0.1),
    "poincare": dict(n=100, k=50, alpha_outlier=0.1),
    "cov_ai": dict(n=100_000, k=5, nu=2.5, dimension=10),
    "cov_bw": dict(n=100_000, k=5, nu=2.5, dimension=10),
    "euclidean_demo": dict(n=100, k=10, nu=2.5, dimension=2),
}


@dataclass(frozen=True)
class ExperimentConfig:
    """One Monte Carlo campaign.

    ``alpha_outlier`` parameterizes the spider and disk populations, ``nu``
    the multivariate-t populations. Missing values take per-experiment
    defaults through :meth:`create`.
    """

    experiment: str
    n: int
    k: int
    sims: int = 1000
    alpha_outlier: Optional[float] = None
    nu: Optional[float] = None
    dimension: Optional[int] = None
    master_seed: int = 0
    output_path: Optional[str] = None
    base: str = "inductive"

    def __post_init__(self):
        if self.experiment not in EXPERIMENTS:
            raise InvalidArgumentError(f"unknown experiment {self.experiment!r}; choose from {', '.join(EXPERIMENTS)}")
        for name in ("n", "k", "sims"):
            v = getattr(self, name)
            if not isinstance(v, (int, np.integer)) or v < 1:
                raise InvalidArgumentError(f"{name} must be a positive integer, got {v!r}")
        if self.k > self.n:
            raise InvalidArgumentError(f"block count k={self.k} exceeds sample size n={self.n}")
        if self.experiment in ("spider5", "poincare"):
            if self.alpha_outlier is None or not 0.0 <= self.alpha_outlier <= 1.0:
                raise InvalidArgumentError(f"{self.experiment} needs alpha_outlier in [0, 1], got {self.alpha_outlier}")
        else:
            if self.nu is None or not self.nu > 2:
                raise InvalidArgumentError(f"{self.experiment} needs nu > 2, got {self.nu}")
            if self.dimension is None or self.dimension < 1:
                raise InvalidArgumentError(f"{self.experiment} needs a positive dimension, got {self.dimension}")
        if self.base not in ("inductive", "empirical"):
            raise InvalidArgumentError(f"base must be 'inductive' or 'empirical', got {self.base!r}")
        if not 0 <= self.master_seed < 2**64:
            raise InvalidArgumentError(f"master_seed must be a 64-bit unsigned integer, got {self.master_seed}")

    @classmethod
    def create(cls, experiment: str, **overrides) -> "ExperimentConfig":
        if experiment not in EXPERIMENTS:
            raise InvalidArgumentError(f"unknown experiment {experiment!r}; choose from {', '.join(EXPERIMENTS)}")
        values = dict(_DEFAULTS[experiment])
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(experiment=experiment, **values)

    @classmethod
    def from_json(cls, text: str, **overrides) -> "ExperimentConfig":
        raw = json.loads(text)
        if not isinstance(raw, dict):
            raise InvalidArgumentError("config must be a JSON object")
        schema = raw.pop("schema", None)
        if schema != SCHEMA_VERSION:
            raise InvalidArgumentError(f"unsupported config schema {schema!r}; expected {SCHEMA_VERSION}")
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(raw) - known)
        if unknown:
            raise InvalidArgumentError(f"unknown config keys: {', '.join(unknown)}")
        raw.update({k: v for k, v in overrides.items() if v is not None})
        if "experiment" not in raw:
            raise InvalidArgumentError("config is missing 'experiment'")
        return cls.create(raw.pop("experiment"), **raw)

    def to_json(self) -> str:
        return json.dumps({"schema": SCHEMA_VERSION, **asdict(self)}, indent=2)

    @property
    def population_parameter(self) -> float:
        return self.alpha_outlier if self.experiment in ("spider5", "poincare") else self.nu


@dataclass
class ReplicationResult:
    replication_id: int
    base_error: float
    fmoe_error: float
    flags: Tuple[str, ...] = ()

    @property
    def failed(self) -> bool:
        return "failed" in self.flags


@dataclass(frozen=True)
class SummaryStats:
    mse_base: float
    mse_fmoe: float
    ci_base: Tuple[float, float]
    ci_fmoe: Tuple[float, float]
    sims: int
    floor_violation_rate: float = 0.0


def percentile_interval(errors, level: float = 0.95) -> Tuple[float, float]:
    """Empirical central interval with linear-interpolation quantiles."""
    tail = (1.0 - level) / 2.0
    lo, hi = np.quantile(np.asarray(errors, dtype=float), [tail, 1.0 - tail], method="linear")
    return float(lo), float(hi)


def summarize(results: Sequence[ReplicationResult]) -> SummaryStats:
    """Mean squared errors and 95% percentile intervals of the errors.

    Failed replications are excluded from the error statistics but counted
    in ``sims``. Records are sorted by id first so the output does not
    depend on their order.
    """
    if len(results) == 0:
        raise InvalidArgumentError("cannot summarize an empty result list")
    ordered = sorted(results, key=lambda r: r.replication_id)
    ok = [r for r in ordered if not r.failed]
    if not ok:
        nan = float("nan")
        return SummaryStats(nan, nan, (nan, nan), (nan, nan), len(ordered), _floor_rate(ordered))
    base = np.array([r.base_error for r in ok])
    fmoe = np.array([r.fmoe_error for r in ok])
    return SummaryStats(
        mse_base=float(np.mean(base**2)),
        mse_fmoe=float(np.mean(fmoe**2)),
        ci_base=percentile_interval(base),
        ci_fmoe=percentile_interval(fmoe),
        sims=len(ordered),
        floor_violation_rate=_floor_rate(ordered),
    )


def _floor_rate(results) -> float:
    return sum("floor" in r.flags for r in results) / len(results)


# -- campaigns -------------------------------------------------------------

@dataclass
class _Campaign:
    """Everything a replication needs beyond its own random stream."""

    config: ExperimentConfig
    settings: SolverSettings
    sigma: Optional[SpdMatrix] = None
    target: Optional[SpdMatrix] = None
    lambda0: Optional[float] = None


def _prepare(config: ExperimentConfig, settings: SolverSettings) -> _Campaign:
    camp = _Campaign(config, settings)
    if config.experiment in ("cov_ai", "cov_bw"):
        d = config.dimension
        camp.sigma = generate_spd_with_spectrum(np.arange(1, d + 1, dtype=float), RngStream(config.master_seed, 0))
        camp.target = SpdMatrix(config.nu / (config.nu - 2.0) * camp.sigma.m)
        camp.lambda0 = camp.target.lambda_min / 2.0
    return camp


def _mean_estimator(space, base: str, settings: SolverSettings):
    if base == "empirical":
        return lambda block: empirical_frechet_mean(space, block, settings).point
    return lambda block: inductive_mean(space, block)


def run_replication(camp: _Campaign, r: int) -> ReplicationResult:
    cfg = camp.config
    rng = RngStream(cfg.master_seed, r + 1).generator()
    flags = []
    try:
        if cfg.experiment == "spider5":
            space = Spider(5)
            data = sample_spider_mixture(SpiderMixtureParams(alpha_outlier=cfg.alpha_outlier), rng, cfg.n)
            estimator = _mean_estimator(space, cfg.base, camp.settings)
            target = CENTER
        elif cfg.experiment == "poincare":
            space = PoincareDisk()
            data = sample_disk_mixture(cfg.alpha_outlier, DISK_INLIER_SD, rng, cfg.n)
            estimator = _mean_estimator(space, cfg.base, camp.settings)
            target = DiskPoint(0.0, 0.0)
        elif cfg.experiment == "euclidean_demo":
            space = Euclidean(cfg.dimension)
            vectors = sample_multivariate_t(cfg.nu, np.eye(cfg.dimension), cfg.n, rng)
            data = [space.point(v) for v in vectors]
            estimator = _mean_estimator(space, cfg.base, camp.settings)
            target = space.point(np.zeros(cfg.dimension))
        else:
            space = SpdAffineInvariant(cfg.dimension) if cfg.experiment == "cov_ai" else SpdBuresWasserstein(camp.lambda0, cfg.dimension)
            data = sample_multivariate_t(cfg.nu, camp.sigma, cfg.n, rng)
            estimator = covariance_estimator
            target = camp.target

        pooled = estimator(data)
        result = boost(space, data, estimator, BoostConfig(cfg.k), camp.settings, seed=r, strict_support=False)
        if not result.converged:
            flags.append("nonconv")
        if result.support_ok is False:
            flags.append("support")
        if cfg.experiment == "cov_bw":
            estimates = [pooled, result.estimate, *result.block_estimates]
            if any(e.lambda_min < camp.lambda0 for e in estimates):
                flags.append("floor")
        return ReplicationResult(r, space.distance(pooled, target), space.distance(result.estimate, target), tuple(flags))
    except Exception as exc:  # one bad replication must not abort the campaign
        log.warning("replication %d failed: %s", r, exc)
        return ReplicationResult(r, float("nan"), float("nan"), tuple(flags) + ("failed",))


def _run_chunk(args) -> List[ReplicationResult]:
    camp, ids = args
    return [run_replication(camp, r) for r in ids]


def run_experiment(config: ExperimentConfig, threads: int = 1, settings: SolverSettings = SolverSettings()):
    """Run all replications and return ``(SummaryStats, [ReplicationResult])``.

    Replication ``r`` draws from ``RngStream(master_seed, r + 1)``; stream 0
    is reserved for the campaign-level covariance shape. Results are
    independent of ``threads`` (worker processes) and ordered by id.
    """
    if threads < 1:
        raise InvalidArgumentError(f"threads must be >= 1, got {threads}")
    camp = _prepare(config, settings)
    ids = list(range(config.sims))
    if threads == 1:
        results = _run_chunk((camp, ids))
    else:
        chunks = [ids[i::threads] for i in range(threads)]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = [r for part in pool.map(_run_chunk, [(camp, c) for c in chunks]) for r in part]
        results.sort(key=lambda r: r.replication_id)
    return summarize(results), results


# -- CSV -------------------------------------------------------------------

RESULT_HEADER = ["experiment", "replication", "base_error", "fmoe_error", "flags"]
SUMMARY_HEADER = [
    "experiment", "n", "k", "sims", "mse_base", "mse_fmoe",
    "ci_base_lo", "ci_base_hi", "ci_fmoe_lo", "ci_fmoe_hi", "floor_violation_rate",
]


def fmt(x: float) -> str:
    return format(float(x), ".17g")


def summary_row(config: ExperimentConfig, stats: SummaryStats) -> list:
    return [
        config.experiment, str(config.n), str(config.k), str(stats.sims),
        fmt(stats.mse_base), fmt(stats.mse_fmoe),
        fmt(stats.ci_base[0]), fmt(stats.ci_base[1]),
        fmt(stats.ci_fmoe[0]), fmt(stats.ci_fmoe[1]),
        fmt(stats.floor_violation_rate),
    ]


def _write_rows(path: Path, header, rows) -> None:
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(header)
            w.writerows(rows)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc}") from exc


def emit_csv(config: ExperimentConfig, stats: SummaryStats, results: Sequence[ReplicationResult], path) -> Tuple[Path, Path]:
    """Write ``path`` (one row per replication) and ``path.summary``."""
    path = Path(path)
    rows = [
        [config.experiment, str(r.replication_id), fmt(r.base_error), fmt(r.fmoe_error), "|".join(r.flags)]
        for r in sorted(results, key=lambda r: r.replication_id)
    ]
    _write_rows(path, RESULT_HEADER, rows)
    summary = path.with_name(path.name + ".summary")
    _write_rows(summary, SUMMARY_HEADER, [summary_row(config, stats)])
    return path, summary


def read_results_csv(path) -> List[ReplicationResult]:
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        return [
            ReplicationResult(
                int(row["replication"]),
                float(row["base_error"]),
                float(row["fmoe_error"]),
                tuple(f for f in row["flags"].split("|") if f),
            )
            for row in reader
        ]


def read_summary_csv(path) -> SummaryStats:
    with open(path, encoding="utf-8", newline="") as fh:
        row = next(csv.DictReader(fh))
    return SummaryStats(
        float(row["mse_base"]), float(row["mse_fmoe"]),
        (float(row["ci_base_lo"]), float(row["ci_base_hi"])),
        (float(row["ci_fmoe_lo"]), float(row["ci_fmoe_hi"])),
        int(row["sims"]), float(row["floor_violation_rate"]),
    )
