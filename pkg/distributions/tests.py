import math

import numpy as np
from django.test import SimpleTestCase
from pydantic import ValidationError
from scipy import optimize, stats

from distributions.models import (
    Burr,
    Frechet,
    ReversedBurr,
    SeededStream,
    StandardNormal,
    Weibull,
    WeibullM,
    beta,
    cdf,
    model_class,
    quantile,
    tail_quantile,
    true_xi,
)
from distributions.parsing import parse_distribution
from distributions.sampling import sample
from tailindex.exceptions import ConfigError, DomainError

ZOO = [
    WeibullM(xi=-1.0),
    WeibullM(xi=0.0),
    WeibullM(xi=0.5),
    Burr(w=1, tau=1, lam=1),
    Burr(w=2, tau=0.5, lam=3),
    Frechet(xi=3),
    Weibull(lam=1, tau=0.5),
    Weibull(lam=2, tau=1.5),
    StandardNormal(),
    ReversedBurr(w=1, tau=0.5, lam=2, x_f=10),
]


class CdfTests(SimpleTestCase):
    def test_closed_forms(self):
        self.assertAlmostEqual(cdf(Frechet(xi=3), 1.0), math.exp(-1), places=14)
        self.assertAlmostEqual(cdf(Burr(w=1, tau=1, lam=1), 1.0), 0.5, places=14)
        self.assertAlmostEqual(cdf(WeibullM(xi=-1), 0.0), math.exp(-1), places=14)

    def test_gumbel_limit_at_zero(self):
        self.assertAlmostEqual(cdf(WeibullM(xi=0), 0.0), math.exp(-1), places=14)
        self.assertAlmostEqual(cdf(WeibullM(xi=1e-9), 1.3), cdf(WeibullM(xi=0), 1.3), places=8)

    def test_outside_support(self):
        self.assertEqual(cdf(Frechet(xi=2), -1.0), 0.0)
        self.assertEqual(cdf(Burr(w=1, tau=1, lam=1), 0.0), 0.0)
        self.assertEqual(cdf(Weibull(lam=1, tau=2), -3.0), 0.0)
        self.assertEqual(cdf(WeibullM(xi=-1), 2.0), 1.0)
        self.assertEqual(cdf(WeibullM(xi=1), -2.0), 0.0)
        self.assertEqual(cdf(ReversedBurr(w=1, tau=1, lam=1, x_f=10), 11.0), 1.0)

    def test_normal(self):
        self.assertAlmostEqual(cdf(StandardNormal(), 0.0), 0.5, places=15)
        self.assertAlmostEqual(cdf(StandardNormal(), 1.959963984540054), 0.975, places=12)


class QuantileTests(SimpleTestCase):
    def test_closed_forms(self):
        self.assertAlmostEqual(quantile(Frechet(xi=2), math.exp(-1)), 1.0, places=12)
        self.assertAlmostEqual(quantile(WeibullM(xi=-1), math.exp(-1)), 0.0, places=12)

    def test_reversed_burr_against_bisection(self):
        spec = ReversedBurr(w=1, tau=1, lam=1, x_f=10)
        oracle = optimize.brentq(lambda x: cdf(spec, x) - 0.5, -1e6, 10 - 1e-12, xtol=1e-13)
        self.assertAlmostEqual(quantile(spec, 0.5), oracle, places=9)
        self.assertAlmostEqual(quantile(spec, 0.5), 9.0, places=12)

    def test_rejects_probabilities_outside_unit_interval(self):
        for p in (0.0, 1.0, -0.1, 1.5, math.nan):
            with self.assertRaises(DomainError):
                quantile(Frechet(xi=1), p)

    def test_round_trip(self):
        for spec in ZOO:
            for p in (1e-6, 0.01, 0.5, 0.99, 1 - 1e-6):
                with self.subTest(spec=spec.label(), p=p):
                    self.assertLessEqual(abs(cdf(spec, quantile(spec, p)) - p), 1e-9)

    def test_strictly_increasing(self):
        grid = np.linspace(1e-6, 1 - 1e-6, 1000)
        for spec in ZOO:
            with self.subTest(spec=spec.label()):
                self.assertTrue(np.all(np.diff(quantile(spec, grid)) > 0))

    def test_tail_quantile_matches_quantile(self):
        for spec in ZOO:
            for v in (2.0, 10.0, 1e4):
                with self.subTest(spec=spec.label(), v=v):
                    self.assertAlmostEqual(
                        tail_quantile(spec, v), quantile(spec, 1 - 1 / v), delta=1e-8 * (1 + abs(quantile(spec, 1 - 1 / v)))
                    )

    def test_tail_quantile_far_tail(self):
        # U(v) = (-ln(1 - 1/v))^(-1) for the unit Frechet, close to v - 1/2
        self.assertAlmostEqual(tail_quantile(Frechet(xi=1), 1e12) / (1e12 - 0.5), 1.0, places=12)
        with self.assertRaises(DomainError):
            tail_quantile(Frechet(xi=1), 1.0)


class TrueXiTests(SimpleTestCase):
    def test_values(self):
        self.assertEqual(true_xi(Burr(w=1, tau=1, lam=1)), 1.0)
        self.assertEqual(true_xi(ReversedBurr(w=1, tau=0.5, lam=2, x_f=10)), -1.0)
        self.assertEqual(true_xi(StandardNormal()), 0.0)
        self.assertEqual(true_xi(Weibull(lam=1, tau=3)), 0.0)
        self.assertEqual(true_xi(Frechet(xi=3)), 3.0)
        self.assertEqual(true_xi(WeibullM(xi=-0.25)), -0.25)

    def test_model_classification(self):
        self.assertEqual(model_class(Burr(w=1, tau=1, lam=4)), 'A')
        self.assertEqual(beta(Burr(w=1, tau=1, lam=4)), 0.25)
        self.assertEqual(model_class(StandardNormal()), 'B')
        self.assertEqual(beta(StandardNormal()), 0.5)
        self.assertAlmostEqual(beta(Weibull(lam=1, tau=2)), 0.5)


class SpecValidationTests(SimpleTestCase):
    def test_frechet_requires_positive_xi(self):
        with self.assertRaises(ValidationError):
            Frechet(xi=0)
        with self.assertRaises(ValidationError):
            Frechet(xi=-1)

    def test_positive_parameters(self):
        with self.assertRaises(ValidationError):
            Burr(w=0, tau=1, lam=1)
        with self.assertRaises(ValidationError):
            ReversedBurr(w=1, tau=-1, lam=1, x_f=0)
        with self.assertRaises(ValidationError):
            Weibull(lam=1, tau=0)

    def test_lambda_alias(self):
        self.assertEqual(Burr(**{'w': 1, 'tau': 2, 'lambda': 3}).lam, 3.0)


class ParseDistributionTests(SimpleTestCase):
    def test_families(self):
        self.assertEqual(parse_distribution('frechet(xi=3)'), Frechet(xi=3))
        self.assertEqual(parse_distribution('WeibullM(xi=-0.5)'), WeibullM(xi=-0.5))
        self.assertEqual(parse_distribution(' Normal '), StandardNormal())
        self.assertEqual(parse_distribution('standardnormal()'), StandardNormal())
        self.assertEqual(
            parse_distribution('reversedburr(w=1, tau=0.5, lambda=2, x_f=10)'),
            ReversedBurr(w=1, tau=0.5, lam=2, x_f=10),
        )

    def test_unknown_family_is_named(self):
        with self.assertRaisesRegex(ConfigError, "'pareto'"):
            parse_distribution('pareto(alpha=2)')

    def test_bad_parameters(self):
        for text in ('frechet(xi)', 'frechet(xi=abc)', 'frechet(xi=-2)', 'burr(w=1)', 'frechet(xi=1, eta=2)', '3(x=1)'):
            with self.subTest(text=text), self.assertRaises(ConfigError):
                parse_distribution(text)


class SampleTests(SimpleTestCase):
    def test_deterministic(self):
        stream = SeededStream(master_seed=2024, stream_index=7)
        first = sample(Frechet(xi=1), 300, stream)
        second = sample(Frechet(xi=1), 300, stream)
        self.assertEqual(first, second)

    def test_streams_differ(self):
        a = sample(Frechet(xi=1), 50, SeededStream(master_seed=1, stream_index=1))
        b = sample(Frechet(xi=1), 50, SeededStream(master_seed=1, stream_index=2))
        self.assertNotEqual(a, b)

    def test_uniforms_in_open_interval(self):
        u = SeededStream(master_seed=5, stream_index=0).uniforms(100000)
        self.assertTrue(np.all((u > 0) & (u < 1)))

    def test_frechet_matches_cdf(self):
        spec = Frechet(xi=1)
        drawn = sample(spec, 10 ** 4, SeededStream(master_seed=11, stream_index=1))
        statistic = stats.kstest(drawn.values, spec.cdf).statistic
        self.assertLess(statistic, 0.02)

    def test_support(self):
        stream = SeededStream(master_seed=3, stream_index=4)
        self.assertTrue(np.all(sample(WeibullM(xi=-1), 5000, stream).values <= 1))
        self.assertTrue(np.all(sample(WeibullM(xi=-0.25), 5000, stream).values < 4))
        self.assertTrue(np.all(sample(ReversedBurr(w=1, tau=1, lam=1, x_f=10), 5000, stream).values < 10))
        self.assertTrue(np.all(sample(Frechet(xi=3), 5000, stream).values > 0))
        self.assertTrue(np.all(sample(Burr(w=1, tau=1, lam=1), 5000, stream).values > 0))

    def test_needs_two_values(self):
        with self.assertRaises(ValueError):
            sample(Frechet(xi=1), 1, SeededStream(master_seed=0, stream_index=0))

    def test_seed_range(self):
        with self.assertRaises(ValidationError):
            SeededStream(master_seed=2 ** 64, stream_index=0)
        with self.assertRaises(ValidationError):
            SeededStream(master_seed=0, stream_index=-1)
