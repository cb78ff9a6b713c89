import math

import numpy as np
from django.test import SimpleTestCase
from pydantic import ValidationError
from scipy import integrate

from asymptotics.laws import delta, tail_spacing_ratio, limit_cdf, limit_law, limit_quantile, mu, sigma, v_k
from asymptotics.models import LimitLaw, Regime
from distributions.models import Frechet, WeibullM
from tailindex.exceptions import DomainError, UnsupportedLawError

EXPLICIT_LAWS = [
    limit_law(1.0, 4.0),
    limit_law(0.0, 4.0),
    limit_law(-0.25, 4.0),
    limit_law(-1.0, 4.0),
]


def _law_mean(law: LimitLaw, upper=np.inf) -> float:
    """E[T] = int_0^inf (1 - F) - int_-inf^0 F."""
    right, _ = integrate.quad(lambda t: 1.0 - limit_cdf(law, t), 0, upper, limit=200)
    left, _ = integrate.quad(lambda t: limit_cdf(law, t), -np.inf, 0, limit=200)
    return right - left


def phi_over_log(law: LimitLaw) -> float:
    """phi_xi(1/c) / ln(c); its negative is the upper end of the moderate-negative support."""
    return ((1 / law.c) ** law.xi - 1) / law.xi / math.log(law.c)


class DeltaSigmaTests(SimpleTestCase):
    def test_delta(self):
        self.assertEqual(delta(1), -1)
        self.assertAlmostEqual(delta(-0.3), 0.3, places=15)
        self.assertEqual(delta(-2), 0.5)

    def test_sigma(self):
        self.assertAlmostEqual(sigma(0, 4), math.sqrt(3), places=14)
        self.assertAlmostEqual(sigma(-1, 4), 4 * math.sqrt(3), places=13)
        self.assertAlmostEqual(limit_law(1, 4).sigma, math.sqrt(3) / 4, places=14)


class VkTests(SimpleTestCase):
    def test_spot_values(self):
        self.assertAlmostEqual(v_k(0, 100), math.log(100) ** 2, places=12)
        self.assertAlmostEqual(v_k(-2, 100), 18.0, places=12)
        self.assertAlmostEqual(v_k(1, 100), 0.99 * math.log(100), places=12)
        self.assertAlmostEqual(v_k(1, 100), 4.55906, places=5)

    def test_grows_with_k(self):
        for xi in (2.0, 0.5, 0.0, -0.25, -1.0):
            with self.subTest(xi=xi):
                values = [v_k(xi, k) for k in (10 ** 2, 10 ** 4, 10 ** 6)]
                self.assertTrue(values[0] < values[1] < values[2])

    def test_requires_k_at_least_two(self):
        with self.assertRaises(DomainError):
            v_k(1.0, 1)


class MuTests(SimpleTestCase):
    def test_positive_xi_is_euler_constant(self):
        self.assertAlmostEqual(mu(1, 4), 0.5772156649015329, places=15)

    def test_zero_outside_correction_range(self):
        for xi in (0.0, -0.5, -1.0, -2.0):
            with self.subTest(xi=xi):
                self.assertEqual(mu(xi, 4), 0.0)

    def test_moderate_negative(self):
        phi_value = -(4 ** 0.25 - 1) / 0.25
        gamma_125, _ = integrate.quad(lambda u: u ** 0.25 * math.exp(-u), 0, np.inf)
        expected = -(1 - gamma_125) * phi_value / math.log(4)
        self.assertAlmostEqual(mu(-0.25, 4), expected, places=9)
        self.assertAlmostEqual(mu(-0.25, 4), 0.1119, places=4)

    def test_rejects_c_not_above_one(self):
        with self.assertRaises(DomainError):
            mu(0.5, 1.0)


class LimitLawTests(SimpleTestCase):
    def test_regimes(self):
        self.assertEqual(limit_law(2, 4).regime, Regime.POSITIVE_XI)
        self.assertEqual(limit_law(0, 4).regime, Regime.ZERO_XI)
        self.assertEqual(limit_law(-0.25, 4).regime, Regime.MODERATE_NEGATIVE)
        self.assertEqual(limit_law(-0.75, 4).regime, Regime.STRONG_NEGATIVE)
        self.assertEqual(LimitLaw(xi=-0.5, c=4).regime, Regime.HALF_NEGATIVE)

    def test_half_negative_is_unsupported(self):
        with self.assertRaisesRegex(UnsupportedLawError, 'no explicit'):
            limit_law(-0.5, 4)
        with self.assertRaises(UnsupportedLawError):
            limit_cdf(LimitLaw(xi=-0.5, c=4), 0.0)

    def test_c_must_exceed_one(self):
        with self.assertRaises(ValidationError):
            limit_law(1.0, 1.0)

    def test_delta_field(self):
        self.assertEqual(limit_law(-2, 4).delta, 0.5)


class LimitCdfTests(SimpleTestCase):
    def test_spot_values(self):
        self.assertAlmostEqual(limit_cdf(limit_law(1, 4), 0.0), math.exp(-1), places=15)
        self.assertAlmostEqual(limit_cdf(limit_law(-1, 4), 0.0), 0.5, places=15)
        self.assertAlmostEqual(limit_cdf(limit_law(-3, 2.5), 0.0), 0.5, places=15)
        self.assertAlmostEqual(limit_cdf(limit_law(-0.25, 4), 0.0), math.exp(-1), places=15)
        self.assertAlmostEqual(limit_cdf(limit_law(0, 4), 2.0), math.exp(-math.exp(-1)), places=15)
        self.assertAlmostEqual(limit_cdf(limit_law(0, 4), 2.0), 0.6922, places=4)

    def test_monotone_and_normalized(self):
        grid = np.linspace(-60, 60, 1000)
        for law in EXPLICIT_LAWS:
            with self.subTest(regime=law.regime.value):
                values = limit_cdf(law, grid)
                self.assertTrue(np.all(np.diff(values) >= 0))
                self.assertTrue(np.all((values >= 0) & (values <= 1)))
                self.assertLess(limit_cdf(law, -1e3), 1e-12)
                self.assertGreater(limit_cdf(law, 1e3), 1 - 1e-12)

    def test_moderate_negative_clamped_above_support(self):
        law = limit_law(-0.25, 4)
        endpoint = -phi_over_log(law)
        self.assertEqual(limit_cdf(law, endpoint + 1e-6), 1.0)
        self.assertEqual(limit_cdf(law, endpoint + 10), 1.0)

    def test_strong_negative_symmetry(self):
        law = limit_law(-1.5, 3)
        for t in np.linspace(-5, 5, 41):
            self.assertAlmostEqual(limit_cdf(law, t) + limit_cdf(law, -t), 1.0, delta=1e-12)

    def test_moderate_negative_mean_is_mu(self):
        law = limit_law(-0.25, 4)
        mean = _law_mean(law, upper=-phi_over_log(law))
        self.assertAlmostEqual(mean, mu(-0.25, 4), delta=1e-4)

    def test_positive_xi_mean_is_euler_constant(self):
        self.assertAlmostEqual(_law_mean(limit_law(1, 4)), np.euler_gamma, delta=1e-6)


class LimitQuantileTests(SimpleTestCase):
    def test_inverts_cdf(self):
        for law in EXPLICIT_LAWS:
            for p in (0.01, 0.3, 0.5, 0.9, 0.999):
                with self.subTest(regime=law.regime.value, p=p):
                    self.assertAlmostEqual(limit_cdf(law, limit_quantile(law, p)), p, delta=1e-12)

    def test_domain(self):
        with self.assertRaises(DomainError):
            limit_quantile(limit_law(1, 4), 1.0)


class TailSpacingRatioTests(SimpleTestCase):
    def test_equal_arguments_give_one(self):
        self.assertEqual(tail_spacing_ratio(WeibullM(xi=-1), 1e6, 1e-3, 1e-3), 1.0)

    def test_approaches_one_along_ladder(self):
        for spec in (WeibullM(xi=0.5), WeibullM(xi=-0.5)):
            with self.subTest(spec=spec.label()):
                gaps = [abs(tail_spacing_ratio(spec, t, 1e-3, 4e-3) - 1) for t in (1e4, 1e6, 1e8)]
                self.assertTrue(gaps[0] > gaps[1] > gaps[2])
                self.assertLess(gaps[2], 1e-3)

    def test_frechet_closed_form(self):
        t, y = 1e6, 4e-3
        x = y / 2

        def tail_quantile(v):
            return -1.0 / math.log1p(-1.0 / v)

        expected = ((y - 1) / (x - 1)) * (tail_quantile(t * x) - tail_quantile(t)) / (
            tail_quantile(t * y) - tail_quantile(t)
        )
        self.assertAlmostEqual(tail_spacing_ratio(Frechet(xi=1), t, x, y), expected, places=10)

    def test_domain(self):
        spec = Frechet(xi=1)
        with self.assertRaises(DomainError):
            tail_spacing_ratio(spec, 10, 0.01, 0.5)
        with self.assertRaises(DomainError):
            tail_spacing_ratio(spec, 1e6, 1e-3, 1.0)
        with self.assertRaises(DomainError):
            tail_spacing_ratio(spec, 0.5, 1e-3, 2e-3)
