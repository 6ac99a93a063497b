"""Shared random-point factories for the property tests."""

import numpy as np
import pytest

from frechet_moe.spaces import (
    DiskPoint,
    Euclidean,
    EuclideanPoint,
    PoincareDisk,
    SpdAffineInvariant,
    SpdBuresWasserstein,
    SpdMatrix,
    Sphere,
    SpherePoint,
    Spider,
    SpiderPoint,
)

SPD_DIM = 3


def random_spd(rng, dim=SPD_DIM, spread=1.0):
    a = rng.standard_normal((dim, dim))
    q, _ = np.linalg.qr(a)
    lam = np.exp(rng.uniform(-spread, spread, dim))
    return SpdMatrix((q * lam) @ q.T)


def _spider(rng):
    return SpiderPoint(int(rng.integers(1, 6)), float(rng.exponential(2.0)))


def _disk(rng):
    r = 0.95 * np.sqrt(rng.uniform())
    th = rng.uniform(0, 2 * np.pi)
    return DiskPoint(r * np.cos(th), r * np.sin(th))


def _sphere(rng):
    return SpherePoint.from_vector(rng.standard_normal(3))


def _euclid(rng):
    return EuclideanPoint(rng.standard_normal(3) * 2)


# (space, point factory) for every concrete space
SPACES = {
    "spider": (Spider(), _spider),
    "disk": (PoincareDisk(), _disk),
    "sphere": (Sphere(), _sphere),
    "spd_ai": (SpdAffineInvariant(), random_spd),
    "spd_bw": (SpdBuresWasserstein(lambda0=np.exp(-1.0)), random_spd),
    "euclidean": (Euclidean(3), _euclid),
}

NPC_SPACES = ("spider", "disk", "spd_ai", "euclidean")


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
