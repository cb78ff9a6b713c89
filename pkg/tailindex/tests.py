import math

import numpy as np
from django.test import SimpleTestCase
from scipy import integrate

from tailindex.exceptions import DomainError
from tailindex.special import euler_gamma, gamma_function, phi, phi_ratio, phi_star


class PhiTests(SimpleTestCase):
    def test_closed_form_values(self):
        self.assertAlmostEqual(phi(0, math.e), 1.0, places=15)
        self.assertEqual(phi(5, 1), 0.0)
        self.assertAlmostEqual(phi(2, 2), 1.5, places=15)
        self.assertAlmostEqual(phi(-1, 2), 0.5, places=15)

    def test_non_positive_x_is_a_domain_error(self):
        with self.assertRaises(DomainError):
            phi(1.0, 0.0)
        with self.assertRaises(DomainError):
            phi(0.5, -2.0)
        with self.assertRaises(DomainError):
            phi(0.5, np.array([1.0, -1.0]))

    def test_continuous_at_zero(self):
        for x in (1e-6, 0.3, 1.0, 2.0, 1e6):
            bound = 1e-9 * (1 + abs(math.log(x)))
            self.assertLessEqual(abs(phi(1e-12, x) - math.log(x)), bound)
            self.assertLessEqual(abs(phi(-1e-12, x) - math.log(x)), bound)
            self.assertLessEqual(abs(phi(1e-9, x) - math.log(x)), bound)

    def test_strictly_increasing_in_x(self):
        xs = np.linspace(0.01, 50, 500)
        for t in (-3.0, -0.5, 0.0, 0.5, 3.0):
            self.assertTrue(np.all(np.diff(phi(t, xs)) > 0))

    def test_array_input_returns_array(self):
        values = phi(2.0, np.array([1.0, 2.0, 3.0]))
        np.testing.assert_allclose(values, [0.0, 1.5, 4.0])


class PhiStarTests(SimpleTestCase):
    def test_values(self):
        self.assertAlmostEqual(phi_star(0, 1), math.e, places=12)
        self.assertEqual(phi_star(3, 0), 1.0)
        self.assertAlmostEqual(phi_star(2, phi(2, 3)), 9.0, places=12)

    def test_inverts_phi(self):
        for t in (-2.0, -0.5, 0.0, 0.25, 1.0, 3.0):
            for x in (0.1, 0.9, 1.0, 2.5, 40.0):
                expected = x if t == 0 else x ** t
                self.assertAlmostEqual(
                    phi_star(t, phi(t, x)) / expected, 1.0, delta=1e-12
                )


class PhiRatioTests(SimpleTestCase):
    def test_matches_direct_quotient(self):
        for t in (-3.0, -1.0, 0.0, 0.5, 2.0):
            direct = phi(t, 0.1) / phi(t, 0.025)
            self.assertAlmostEqual(phi_ratio(t, 0.1, 0.025), direct, places=12)

    def test_large_negative_exponent_does_not_overflow(self):
        # (1/k')^t / (1/k)^t overflows double for k = 1e5, t = -64
        ratio = phi_ratio(-64.0, 1 / 25000, 1 / 100000)
        self.assertAlmostEqual(ratio, 0.25 ** 64, delta=1e-45)


class GammaFunctionTests(SimpleTestCase):
    def test_known_values(self):
        self.assertAlmostEqual(gamma_function(1.0), 1.0, places=14)
        self.assertAlmostEqual(gamma_function(1.5), math.sqrt(math.pi) / 2, places=12)

    def test_matches_quadrature_oracle(self):
        for x in (1.25, 1.4, 1.75, 2.0):
            oracle, _ = integrate.quad(lambda u: u ** (x - 1) * math.exp(-u), 0, np.inf)
            self.assertLessEqual(abs(gamma_function(x) / oracle - 1), 1e-8)

    def test_recurrence(self):
        for x in np.linspace(0.05, 1.0, 20):
            self.assertAlmostEqual(
                gamma_function(x + 1) / (x * gamma_function(x)), 1.0, delta=1e-9
            )

    def test_outside_domain(self):
        for x in (0.0, -1.0, 200.0):
            with self.assertRaises(DomainError):
                gamma_function(x)


class EulerGammaTests(SimpleTestCase):
    def test_constant(self):
        self.assertEqual(euler_gamma(), 0.5772156649015329)

    def test_harmonic_sum_limit(self):
        m = 10 ** 7
        harmonic = np.sum(1.0 / np.arange(1, m + 1, dtype=float))
        self.assertAlmostEqual(euler_gamma(), harmonic - math.log(m), delta=1e-6)
        self.assertAlmostEqual(math.exp(euler_gamma()), 1.7810724, delta=1e-6)
