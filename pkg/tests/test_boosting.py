import math
from concurrent.futures import ThreadPoolExecutor

import mpmath
import numpy as np
import pytest

from frechet_moe import (
    BlockEstimatorError,
    BoostConfig,
    CurvatureBound,
    InvalidArgumentError,
    PreconditionError,
    UnsupportedSpaceError,
    boost,
    c_alpha,
    fmom_radius,
    frechet_median_npc,
    inductive_mean,
    psi,
    select_block_count,
    split_blocks,
    theoretical_bound,
)
from frechet_moe.geometry import GeodesicSpace
from frechet_moe.spaces import Euclidean, EuclideanPoint, Sphere, SpherePoint, Spider, SpiderPoint

mpmath.mp.dps = 50


def psi_oracle(alpha, p):
    a, p = mpmath.mpf(alpha), mpmath.mpf(p)
    return float((1 - a) * mpmath.log((1 - a) / (1 - p)) + a * mpmath.log(a / p))


def c_oracle(alpha):
    a = mpmath.mpf(alpha)
    return float((1 - a) / mpmath.sqrt(1 - 2 * a))


class TestConstants:
    @pytest.mark.parametrize("alpha,p,expected", [(7 / 18, 0.1, 0.2915882625129285), (0.4, 0.1, 0.3112386795830576)])
    def test_psi(self, alpha, p, expected):
        assert psi(alpha, p) == pytest.approx(psi_oracle(alpha, p), rel=1e-10)
        assert psi(alpha, p) == pytest.approx(expected, rel=1e-10)

    def test_psi_vanishes_on_diagonal(self):
        assert psi(0.3, 0.3) == 0.0

    def test_psi_positive_and_decreasing(self):
        ps = np.linspace(1e-3, 0.4 - 1e-3, 200)
        vals = np.array([psi(0.4, p) for p in ps])
        assert np.all(vals > 0)
        assert np.all(np.diff(vals) < 1e-12)

    @pytest.mark.parametrize("alpha,p", [(0.3, 0.4), (0.0, 0.0), (1.0, 0.5), (0.3, 0.0)])
    def test_psi_domain(self, alpha, p):
        with pytest.raises(InvalidArgumentError):
            psi(alpha, p)

    def test_c_alpha(self):
        assert c_alpha(7 / 18) == pytest.approx(11 / (6 * math.sqrt(2)), rel=1e-12)
        assert c_alpha(7 / 18) == pytest.approx(c_oracle(7 / 18), rel=1e-10)
        assert c_alpha(0.4) == pytest.approx(0.6 / math.sqrt(0.2), rel=1e-12)
        assert c_alpha(0.4) == pytest.approx(c_oracle(0.4), rel=1e-10)

    def test_c_alpha_decreases_to_one(self):
        grid = np.linspace(0.45, 1e-6, 100)
        vals = [c_alpha(a) for a in grid]
        assert all(b < a for a, b in zip(vals, vals[1:]))
        assert vals[-1] == pytest.approx(1.0, abs=1e-5) and min(vals) >= 1.0

    @pytest.mark.parametrize("alpha", [0.0, 0.5, -0.1, 0.7])
    def test_c_alpha_domain(self, alpha):
        with pytest.raises(InvalidArgumentError):
            c_alpha(alpha)

    def test_block_count(self):
        assert select_block_count(1.0, 7 / 18, 0.1) == 1
        assert select_block_count(0.05, 7 / 18, 0.1) == 11
        assert select_block_count(0.05, 0.4, 0.1) == 10
        for delta in (0.5, 0.1, 0.01, 1e-6):
            k = select_block_count(delta, 7 / 18, 0.1)
            assert math.exp(-k * psi(7 / 18, 0.1)) <= delta
            assert k == math.floor(math.log(1 / delta) / psi_oracle(7 / 18, 0.1)) + 1

    @pytest.mark.parametrize("delta,alpha,p", [(0.0, 0.4, 0.1), (1.5, 0.4, 0.1), (0.05, 0.1, 0.4), (0.05, 0.6, 0.1)])
    def test_block_count_domain(self, delta, alpha, p):
        with pytest.raises(InvalidArgumentError):
            select_block_count(delta, alpha, p)

    def test_fmom_radius(self):
        assert fmom_radius(1.0, 100, 0.05) == pytest.approx(11 * math.sqrt(math.log(28) / 100), rel=1e-14)
        assert fmom_radius(1.0, 100, 0.05) == pytest.approx(2.008, abs=5e-4)
        delta = 0.05
        assert fmom_radius(1.0, 121 * math.log(1.4 / delta), delta) == pytest.approx(1.0, rel=1e-14)
        vals = [fmom_radius(2.0, n, delta) for n in range(10, 1000, 10)]
        assert all(b < a for a, b in zip(vals, vals[1:]))


class TestBoostConfig:
    def test_invariants(self):
        with pytest.raises(InvalidArgumentError):
            BoostConfig(k=0)
        with pytest.raises(InvalidArgumentError):
            BoostConfig(k=3, alpha=0.1, p=0.2)
        with pytest.raises(InvalidArgumentError):
            BoostConfig(k=3, delta=1.0)

    def test_for_confidence(self):
        assert BoostConfig.for_confidence(0.05).k == 11
        assert BoostConfig.for_confidence(0.05, 0.4, 0.1).k == 10


class TestTheoreticalBound:
    def test_flat_radius(self):
        rep = theoretical_bound(BoostConfig(k=5), 1.0, CurvatureBound(0.0))
        assert rep.radius == pytest.approx(1.2963624321753373, rel=1e-12)
        assert rep.failure_probability == pytest.approx(math.exp(-5 * psi(7 / 18, 0.1)), rel=1e-12)

    def test_selected_k_meets_delta(self):
        for delta in (0.2, 0.05, 0.001):
            cfg = BoostConfig.for_confidence(delta)
            assert theoretical_bound(cfg, 0.3, CurvatureBound(-1.0)).failure_probability <= delta

    def test_positive_curvature_factor(self):
        cfg = BoostConfig(k=11)
        rep = theoretical_bound(cfg, 0.5, CurvatureBound(1.0))
        assert rep.radius == pytest.approx(math.pi / 2 * c_alpha(7 / 18) * 0.5, rel=1e-12)
        assert rep.radius / 0.5 == pytest.approx(2.0363213466559179, rel=1e-12)

    def test_positive_curvature_precondition(self):
        cfg = BoostConfig(k=11)
        limit = math.pi / (math.pi * c_alpha(7 / 18))
        assert limit == pytest.approx(0.77138921583987, rel=1e-12)
        with pytest.raises(InvalidArgumentError):
            theoretical_bound(cfg, 1.0, CurvatureBound(1.0))
        with pytest.raises(InvalidArgumentError):
            theoretical_bound(cfg, limit, CurvatureBound(1.0))
        theoretical_bound(cfg, limit * (1 - 1e-9), CurvatureBound(1.0))
        # scaling with the diameter bound
        with pytest.raises(InvalidArgumentError):
            theoretical_bound(cfg, 0.5, CurvatureBound(4.0))

    def test_conditional(self):
        cfg = BoostConfig(k=4)
        plain = theoretical_bound(cfg, 1.0, CurvatureBound(0.0)).failure_probability
        cond = theoretical_bound(cfg, 1.0, CurvatureBound(0.0), conditional=True).failure_probability
        assert cond == pytest.approx(plain / (1 - 0.1**4), rel=1e-14)


class TestSplitBlocks:
    def test_hundred_points_ten_blocks(self):
        blocks = split_blocks(100, 10)
        assert [len(b) for b in blocks] == [10] * 10
        assert sorted(i for b in blocks for i in b) == list(range(100))

    def test_remainder_dropped(self):
        assert split_blocks(7, 3) == [range(0, 2), range(2, 4), range(4, 6)]

    def test_remainder_kept(self):
        assert split_blocks(7, 3, keep_remainder=True)[-1] == range(4, 7)

    def test_singletons(self):
        assert split_blocks(5, 5) == [range(i, i + 1) for i in range(5)]

    def test_k_exceeds_n(self):
        with pytest.raises(InvalidArgumentError):
            split_blocks(3, 4)


R1 = Euclidean(1)


def mean_estimator(block):
    return EuclideanPoint(np.mean(np.asarray(block), axis=0))


class TestBoost:
    def test_k1_is_base_estimator(self, rng):
        data = rng.standard_t(2, size=(37, 1))
        res = boost(R1, data, mean_estimator, BoostConfig(k=1))
        assert res.median is None
        assert np.array_equal(res.estimate.v, mean_estimator(data).v)

    def test_k1_spider_bitwise(self, rng):
        pts = [SpiderPoint(int(rng.integers(1, 6)), rng.exponential()) for _ in range(40)]
        sp = Spider()
        res = boost(sp, pts, lambda b: inductive_mean(sp, b), BoostConfig(k=1))
        assert res.estimate == inductive_mean(sp, pts)

    def test_identical_estimates(self):
        p = SpiderPoint(2, 1.7)
        res = boost(Spider(), [p] * 20, lambda b: b[0], BoostConfig(k=5))
        assert Spider().distance(res.estimate, p) == 0.0

    def test_outlier_block(self, rng):
        data = rng.normal(0, 0.01, size=(100, 1))
        data[90:] = 1e6
        res = boost(R1, data, mean_estimator, BoostConfig(k=10))
        assert abs(res.estimate.v[0]) < 0.05
        assert abs(mean_estimator(data).v[0]) > 1e4

    def test_block_failure_carries_index(self):
        def est(block):
            if block[0][0] > 5:
                raise RuntimeError("bad block")
            return mean_estimator(block)

        data = np.arange(10, dtype=float).reshape(-1, 1)
        with pytest.raises(BlockEstimatorError) as info:
            boost(R1, data, est, BoostConfig(k=5))
        assert info.value.block_index == 3

    def test_executor_does_not_change_result(self, rng):
        data = rng.standard_t(2, size=(200, 2))
        sp = Euclidean(2)
        cfg = BoostConfig(k=8)
        a = boost(sp, data, mean_estimator, cfg, seed=4)
        with ThreadPoolExecutor(4) as ex:
            b = boost(sp, data, mean_estimator, cfg, seed=4, executor=ex)
        assert np.array_equal(a.estimate.v, b.estimate.v)

    def test_permutation_invariance_of_objective(self, rng):
        sp = Spider()
        est = [SpiderPoint(int(rng.integers(1, 6)), rng.exponential()) for _ in range(11)]
        base = frechet_median_npc(sp, est).objective
        for s in range(5):
            perm = [est[i] for i in np.random.default_rng(s).permutation(len(est))]
            assert frechet_median_npc(sp, perm, seed=s).objective == pytest.approx(base, abs=1e-8)

    def test_sphere(self):
        pts = [SpherePoint.from_angles(0.2 + 0.01 * i, 0.3 * i) for i in range(20)]
        res = boost(Sphere(), pts, lambda b: b[0], BoostConfig(k=4))
        assert res.support_ok

    def test_sphere_support_violation(self):
        pts = [SpherePoint.from_angles(c, l) for c, l in [(0.1, 0), (2.8, 0.5), (1.6, 3.0), (1.5, 4.5)]]
        with pytest.raises(PreconditionError):
            boost(Sphere(), pts, lambda b: b[0], BoostConfig(k=4))
        res = boost(Sphere(), pts, lambda b: b[0], BoostConfig(k=4), strict_support=False)
        assert res.support_ok is False

    def test_unsupported_positive_curvature(self):
        class Toy(GeodesicSpace):
            name = "toy"
            point_type = EuclideanPoint

            def __init__(self):
                self.curvature = CurvatureBound(2.0)

            def _distance(self, x, y):
                return float(np.linalg.norm(x.v - y.v))

            def _interpolate(self, x, y, t):
                return EuclideanPoint((1 - t) * x.v + t * y.v)

        pts = [EuclideanPoint([0.0]), EuclideanPoint([0.1])]
        with pytest.raises(UnsupportedSpaceError):
            boost(Toy(), pts, lambda b: b[0], BoostConfig(k=2))
