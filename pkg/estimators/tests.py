import math

import numpy as np
from django.test import SimpleTestCase
from pydantic import ValidationError

from distributions.models import Frechet, SeededStream, StandardNormal, WeibullM
from distributions.sampling import sample
from estimators.classical import hill, moment, pickands, zipf
from estimators.dispatch import estimate
from estimators.models import EstimateResult, EstimatorKind, GGConfig
from estimators.root import correct_bias, gg_bias_corrected, gg_estimate, h_function, spacing_statistics
from samples.models import OrderedSample
from tailindex.exceptions import (
    BracketCapError,
    ConfigError,
    DegenerateMomentError,
    DomainError,
    RootAtInfinityError,
    TieError,
)
from tailindex.special import phi

FIXED_POINTS = (-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 3.0)
AFFINE_MAPS = ((2.0, 0.0), (1.0, 5.0), (0.1, -3.0))
POWERS_OF_TWO = OrderedSample.from_raw([1, 2, 4, 8])


def fixed_point_sample(xi0: float, n: int) -> OrderedSample:
    """X_{n-i+1,n} = phi(xi0, 1/i), on which the root equation holds exactly at xi0."""
    return OrderedSample.from_raw(phi(xi0, 1.0 / np.arange(1, n + 1)))


def random_samples(count: int, n: int = 200):
    specs = (Frechet(xi=1), WeibullM(xi=-1), StandardNormal(), Frechet(xi=0.5))
    for r in range(count):
        yield sample(specs[r % len(specs)], n, SeededStream(master_seed=97, stream_index=r))


class GGConfigTests(SimpleTestCase):
    def test_from_ratio(self):
        cfg = GGConfig.from_ratio(40, 4)
        self.assertEqual((cfg.k, cfg.k_prime), (40, 10))
        self.assertEqual(GGConfig.from_ratio(43, 4).k_prime, 10)
        self.assertAlmostEqual(GGConfig.from_ratio(43, 4).c, 4.3)

    def test_rejects_small_k_prime(self):
        with self.assertRaises(ConfigError):
            GGConfig.from_ratio(7, 4)
        with self.assertRaises(ConfigError):
            GGConfig.from_ratio(40, 1)

    def test_ordering(self):
        with self.assertRaises(ValidationError):
            GGConfig(k=10, k_prime=10)
        with self.assertRaises(ValidationError):
            GGConfig(k=10, k_prime=1)

    def test_sample_size(self):
        with self.assertRaises(ConfigError):
            GGConfig(k=100, k_prime=25).check_sample_size(100)


class SpacingStatisticsTests(SimpleTestCase):
    def test_signs_and_ratio(self):
        spacings = spacing_statistics(fixed_point_sample(-1, 100), GGConfig(k=40, k_prime=10))
        self.assertAlmostEqual(spacings.num, -30.0, places=12)
        self.assertAlmostEqual(spacings.den, -9.0, places=12)
        self.assertAlmostEqual(spacings.z, 30 / 9, places=14)

    def test_tied_maximum_has_no_ratio(self):
        s = OrderedSample.from_raw(list(range(10)) + [50] * 10)
        self.assertIsNone(spacing_statistics(s, GGConfig(k=8, k_prime=2)).z)

    def test_large_sample_ratio(self):
        # z approaches max(0, c^-xi - 1)
        s = sample(WeibullM(xi=-1), 10 ** 5, SeededStream(master_seed=5, stream_index=0))
        self.assertAlmostEqual(spacing_statistics(s, GGConfig(k=2000, k_prime=500)).z, 3.0, delta=0.5)
        exact = fixed_point_sample(2.0, 4000)
        self.assertLess(spacing_statistics(exact, GGConfig(k=4000, k_prime=1000)).z, 0.07)


class HFunctionTests(SimpleTestCase):
    def test_one_at_fixed_point(self):
        for xi0 in FIXED_POINTS:
            with self.subTest(xi0=xi0):
                value = h_function(fixed_point_sample(xi0, 100), GGConfig(k=40, k_prime=10), xi0)
                self.assertAlmostEqual(value, 1.0, delta=1e-12)

    def test_direct_evaluation(self):
        s = fixed_point_sample(-1, 100)
        expected = (math.sqrt(10) - 1) / (math.sqrt(40) - 1) * 39 / 9
        self.assertAlmostEqual(h_function(s, GGConfig(k=40, k_prime=10), -0.5), expected, places=12)

    def test_limit_without_spread(self):
        s = OrderedSample.from_raw(list(range(12)) + [20] * 7 + [30])
        self.assertAlmostEqual(h_function(s, GGConfig(k=8, k_prime=2), 50.0), 1.0, places=12)

    def test_non_decreasing(self):
        rng = np.random.default_rng(3)
        cfg = GGConfig(k=40, k_prime=10)
        for s in random_samples(20):
            thetas = np.sort(rng.uniform(-10, 10, size=50))
            values = np.array([h_function(s, cfg, theta) for theta in thetas])
            self.assertTrue(np.all(np.diff(values) >= -1e-12))

    def test_tie(self):
        s = OrderedSample.from_raw(list(range(10)) + [50] * 10)
        with self.assertRaises(TieError):
            h_function(s, GGConfig(k=8, k_prime=2), 0.0)


class GGEstimateTests(SimpleTestCase):
    def test_fixed_points(self):
        for xi0 in FIXED_POINTS:
            with self.subTest(xi0=xi0):
                result = gg_estimate(fixed_point_sample(xi0, 100), GGConfig(k=40, k_prime=10))
                self.assertAlmostEqual(result.xi_hat, xi0, delta=1e-8)
                self.assertEqual(result.estimator, EstimatorKind.GG)
                self.assertEqual((result.k, result.k_prime), (40, 10))

    def test_fixed_points_other_pairs(self):
        pairs = ((8, 2), (12, 6), (20, 5), (60, 7), (99, 2), (99, 33))
        for xi0 in FIXED_POINTS:
            s = fixed_point_sample(xi0, 100)
            for k, k_prime in pairs:
                with self.subTest(xi0=xi0, k=k, k_prime=k_prime):
                    result = gg_estimate(s, GGConfig(k=k, k_prime=k_prime))
                    self.assertAlmostEqual(result.xi_hat, xi0, delta=1e-8)

    def test_large_index(self):
        result = gg_estimate(fixed_point_sample(3.0, 200), GGConfig(k=80, k_prime=20))
        self.assertAlmostEqual(result.xi_hat, 3.0, delta=1e-8)

    def test_solver_residual(self):
        cfg = GGConfig(k=40, k_prime=10)
        for s in random_samples(40):
            result = gg_estimate(s, cfg)
            self.assertLessEqual(abs(h_function(s, cfg, result.xi_hat) - 1), 1e-8)

    def test_affine_invariance(self):
        cfg = GGConfig(k=40, k_prime=10)
        for s in random_samples(100):
            base = gg_estimate(s, cfg).xi_hat
            for scale, shift in AFFINE_MAPS:
                moved = gg_estimate(s.affine(scale, shift), cfg).xi_hat
                self.assertAlmostEqual(moved, base, delta=1e-8)
                corrected = gg_bias_corrected(s.affine(scale, shift), cfg).xi_hat
                self.assertAlmostEqual(corrected, gg_bias_corrected(s, cfg).xi_hat, delta=1e-8)

    def test_diagnostics(self):
        result = gg_estimate(fixed_point_sample(0.5, 100), GGConfig(k=8, k_prime=2))
        self.assertTrue(result.diagnostics.minimal_k_prime)
        self.assertGreater(result.diagnostics.iterations, 0)
        self.assertEqual(result.diagnostics.bracket_width, 2.0)

        result = gg_estimate(fixed_point_sample(3.0, 100), GGConfig(k=40, k_prime=10))
        self.assertFalse(result.diagnostics.minimal_k_prime)
        self.assertEqual(result.diagnostics.bracket_low, -4.0)

    def test_tie(self):
        s = OrderedSample.from_raw(list(range(10)) + [50] * 10)
        with self.assertRaises(TieError):
            gg_estimate(s, GGConfig(k=8, k_prime=2))

    def test_root_at_infinity(self):
        s = OrderedSample.from_raw(list(range(12)) + [20] * 7 + [30])
        with self.assertRaises(RootAtInfinityError):
            gg_estimate(s, GGConfig(k=8, k_prime=2))

    def test_bracket_cap(self):
        # Z_n ~ 1e300 keeps H_n above 1 even at theta = -64
        s = OrderedSample.from_raw([0.0, -1e-300] + [-float(i) for i in range(1, 19)])
        with self.assertRaises(BracketCapError):
            gg_estimate(s, GGConfig(k=8, k_prime=2))

    def test_sample_too_small(self):
        with self.assertRaises(ConfigError):
            gg_estimate(fixed_point_sample(1.0, 40), GGConfig(k=40, k_prime=10))


class BiasCorrectionTests(SimpleTestCase):
    def test_strongly_negative_is_unchanged(self):
        s = fixed_point_sample(-1.0, 100)
        cfg = GGConfig(k=40, k_prime=10)
        self.assertEqual(gg_bias_corrected(s, cfg).xi_hat, gg_estimate(s, cfg).xi_hat)
        self.assertEqual(gg_bias_corrected(s, cfg).estimator, EstimatorKind.GG_STAR)

    def test_zero_is_unchanged(self):
        result = EstimateResult(xi_hat=0.0, estimator=EstimatorKind.GG, k=100, k_prime=25)
        self.assertEqual(correct_bias(result).xi_hat, 0.0)

    def test_positive_index(self):
        result = EstimateResult(xi_hat=1.0, estimator=EstimatorKind.GG, k=100, k_prime=25)
        expected = 1 - np.euler_gamma / ((1 - 1 / 100) * math.log(100))
        self.assertAlmostEqual(correct_bias(result).xi_hat, expected, places=12)
        self.assertAlmostEqual(correct_bias(result).xi_hat, 0.8734, places=3)

    def test_uses_realised_ratio(self):
        # k' = floor(43 / 4) = 10, so mu is evaluated at c = 4.3
        s = fixed_point_sample(-0.25, 100)
        cfg = GGConfig.from_ratio(43, 4)
        raw = gg_estimate(s, cfg)
        corrected = gg_bias_corrected(s, cfg).xi_hat
        gamma_term = 1 - math.gamma(1 - raw.xi_hat)
        mu_value = -gamma_term * phi(raw.xi_hat, 1 / 4.3) / math.log(4.3)
        rate = phi(-raw.xi_hat, 43)
        self.assertAlmostEqual(corrected, raw.xi_hat - mu_value / rate, places=10)

    def test_only_root_estimates(self):
        with self.assertRaises(ValueError):
            correct_bias(hill(POWERS_OF_TWO, 3))


class HillTests(SimpleTestCase):
    def test_powers_of_two(self):
        self.assertAlmostEqual(hill(POWERS_OF_TWO, 3).xi_hat, 2 * math.log(2), delta=1e-12)

    def test_flat_top(self):
        self.assertAlmostEqual(hill(OrderedSample.from_raw([1, 5, 5, 5, 5]), 3).xi_hat, 0.0, places=14)
        self.assertAlmostEqual(hill(OrderedSample.from_raw([1, math.e, math.e, math.e]), 3).xi_hat, 1.0, places=14)

    def test_domain(self):
        with self.assertRaises(DomainError):
            hill(OrderedSample.from_raw([-1, 0, 1, 2]), 2)
        with self.assertRaises(DomainError):
            hill(POWERS_OF_TWO, 4)
        with self.assertRaises(DomainError):
            hill(POWERS_OF_TWO, 0)


class PickandsTests(SimpleTestCase):
    def test_constructed_ratio(self):
        s = OrderedSample.from_raw([0, 0.2, 0.4, 0.6, 1, 2, 3, 5])
        self.assertAlmostEqual(pickands(s, 2).xi_hat, 1.0, places=14)

    def test_equal_spacings(self):
        s = OrderedSample.from_raw([0, 1, 2, 3, 4, 5, 8, 9])
        self.assertEqual(pickands(s, 2).xi_hat, 0.0)

    def test_linear_sample(self):
        self.assertAlmostEqual(pickands(fixed_point_sample(-1, 100), 25).xi_hat, -1.0, places=14)

    def test_tie(self):
        with self.assertRaises(TieError):
            pickands(OrderedSample.from_raw([0, 1, 2, 3, 4, 4, 4, 9]), 2)

    def test_range(self):
        with self.assertRaises(DomainError):
            pickands(POWERS_OF_TWO, 2)

    def test_affine_invariance(self):
        for s in random_samples(100):
            base = pickands(s, 10).xi_hat
            for scale, shift in AFFINE_MAPS:
                self.assertAlmostEqual(pickands(s.affine(scale, shift), 10).xi_hat, base, delta=1e-8)


class MomentTests(SimpleTestCase):
    def test_powers_of_two(self):
        self.assertAlmostEqual(moment(POWERS_OF_TWO, 3).xi_hat, 2 * math.log(2) - 2.5, delta=1e-12)

    def test_degenerate(self):
        with self.assertRaises(DegenerateMomentError):
            moment(OrderedSample.from_raw([1, math.e, math.e, math.e]), 3)

    def test_non_positive_threshold(self):
        with self.assertRaises(DomainError):
            moment(OrderedSample.from_raw([-2, -1, 1, 2]), 2)


class ZipfTests(SimpleTestCase):
    def test_powers_of_two(self):
        # UH_1 = 4 ln 2, UH_2 = 3 ln 2: slope ln(4/3) / ln 2
        self.assertAlmostEqual(zipf(POWERS_OF_TWO, 2).xi_hat, 0.4150374992788438, delta=1e-9)

    def test_tied_top(self):
        with self.assertRaises(DomainError):
            zipf(OrderedSample.from_raw([1, 2, 3, 3, 3]), 2)

    def test_range(self):
        with self.assertRaises(DomainError):
            zipf(POWERS_OF_TWO, 1)


class ScaleInvarianceTests(SimpleTestCase):
    def test_positive_data_estimators(self):
        for r, s in enumerate(random_samples(40)):
            if r % 4 not in (0, 3):
                continue  # Frechet samples only
            for estimator in (hill, moment, zipf):
                base = estimator(s, 40).xi_hat
                for scale in (2.0, 0.1):
                    with self.subTest(estimator=estimator.__name__, replicate=r, scale=scale):
                        self.assertAlmostEqual(estimator(s.affine(scale), 40).xi_hat, base, delta=1e-8)


class EstimateDispatchTests(SimpleTestCase):
    def test_root_family_uses_ratio(self):
        result = estimate(fixed_point_sample(0.0, 100), 'gg', 40, c=4)
        self.assertEqual(result.k_prime, 10)
        self.assertAlmostEqual(result.xi_hat, 0.0, delta=1e-8)
        self.assertEqual(estimate(fixed_point_sample(0.0, 100), EstimatorKind.GG_STAR, 40).estimator, EstimatorKind.GG_STAR)

    def test_classical(self):
        self.assertEqual(estimate(POWERS_OF_TWO, 'hill', 3), hill(POWERS_OF_TWO, 3))
        self.assertIsNone(estimate(POWERS_OF_TWO, 'moment', 3).k_prime)

    def test_small_k_prime(self):
        with self.assertRaises(ConfigError):
            estimate(fixed_point_sample(0.0, 100), 'gg', 7, c=4)

    def test_unknown_kind(self):
        with self.assertRaises(ValueError):
            estimate(POWERS_OF_TWO, 'mle', 3)
