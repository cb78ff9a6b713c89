import io
import math

import numpy as np
import pandas as pd
from django.test import SimpleTestCase, tag
from pydantic import ValidationError

from asymptotics.laws import limit_cdf, limit_law, limit_quantile
from distributions.models import Burr, Frechet, SeededStream, StandardNormal, WeibullM
from distributions.sampling import sample
from estimators.classical import hill
from estimators.models import EstimatorKind, GGConfig
from estimators.root import correct_bias, gg_estimate
from montecarlo.engine import default_k_grid, ks_distance, run_asymptotic_check, run_experiment
from montecarlo.models import ExperimentConfig
from montecarlo.presets import DEFAULT_SEED, PRESETS, preset_config
from tailindex.exceptions import ConfigError, DomainError, UnsupportedLawError

GG_FAMILY = [EstimatorKind.GG, EstimatorKind.GG_STAR]


def small_config(**overrides) -> ExperimentConfig:
    fields = {
        'distribution': Frechet(xi=1),
        'n': 200,
        'N': 12,
        'c': 4.0,
        'k_grid': [20, 40, 48],
        'estimators': list(EstimatorKind),
        'master_seed': 31,
    }
    fields.update(overrides)
    return ExperimentConfig(**fields)


def grid_average(result, estimator, field):
    values = [getattr(result.cell(estimator, k), field) for k in result.config.k_grid]
    return float(np.nanmean(values))


class DefaultKGridTests(SimpleTestCase):
    def test_root_family(self):
        grid = default_k_grid(500, 4, GG_FAMILY)
        self.assertEqual(grid[0], 8)
        self.assertEqual(grid[-1], 498)
        self.assertEqual(grid[1] - grid[0], 5)

    def test_pickands_caps_grid(self):
        self.assertEqual(default_k_grid(500, 4, [EstimatorKind.GG_STAR, EstimatorKind.PICKANDS])[-1], 123)

    def test_large_ratio_moves_start(self):
        self.assertEqual(default_k_grid(500, 10, [EstimatorKind.GG])[0], 20)

    def test_small_sample_step(self):
        self.assertEqual(default_k_grid(50, 4, [EstimatorKind.HILL]), list(range(8, 50)))

    def test_empty_grid(self):
        with self.assertRaises(ConfigError):
            default_k_grid(20, 4, [EstimatorKind.PICKANDS])


class ExperimentConfigTests(SimpleTestCase):
    def test_grid_preconditions(self):
        with self.assertRaisesRegex(ConfigError, 'gg'):
            small_config(k_grid=[7], estimators=[EstimatorKind.GG]).validate_grid()
        with self.assertRaisesRegex(ConfigError, 'pickands'):
            small_config(k_grid=[60], estimators=[EstimatorKind.PICKANDS]).validate_grid()
        with self.assertRaisesRegex(ConfigError, 'hill'):
            small_config(k_grid=[200], estimators=[EstimatorKind.HILL]).validate_grid()
        small_config().validate_grid()

    def test_field_constraints(self):
        with self.assertRaises(ValidationError):
            small_config(N=0)
        with self.assertRaises(ValidationError):
            small_config(n=3)
        with self.assertRaises(ValidationError):
            small_config(c=1.0)
        with self.assertRaises(ValidationError):
            small_config(estimators=[])
        with self.assertRaises(ValidationError):
            small_config(estimators=['hill', 'hill'])

    def test_run_rejects_invalid_grid(self):
        with self.assertRaises(ConfigError):
            run_experiment(small_config(k_grid=[7], estimators=[EstimatorKind.GG]))


class RunExperimentTests(SimpleTestCase):
    def test_single_replicate(self):
        cfg = small_config(N=1, estimators=[EstimatorKind.HILL], k_grid=[40])
        cell = run_experiment(cfg).cell('hill', 40)

        estimate = hill(sample(cfg.distribution, 200, SeededStream(master_seed=31, stream_index=1)), 40).xi_hat
        self.assertEqual(cell.mean, estimate)
        self.assertAlmostEqual(cell.mse, (estimate - 1.0) ** 2, places=15)
        self.assertEqual(cell.variance, 0.0)
        self.assertEqual((cell.errors, cell.successes), (0, 1))

    def test_deterministic(self):
        cfg = small_config()
        self.assertEqual(run_experiment(cfg).to_csv(), run_experiment(cfg).to_csv())

    def test_parallel_matches_sequential(self):
        cfg = small_config(N=20)
        sequential = run_experiment(cfg, workers=1)
        parallel = run_experiment(cfg, workers=4)
        self.assertEqual(sequential.cells, parallel.cells)
        self.assertEqual(sequential.to_csv(), parallel.to_csv())

    def test_mse_is_bias_squared_plus_variance(self):
        result = run_experiment(small_config(distribution=WeibullM(xi=-0.25), N=30))
        for cell in (cell for cell in result.cells if cell.successes):
            with self.subTest(estimator=cell.estimator.value, k=cell.k):
                expected = cell.bias ** 2 + cell.variance
                self.assertLessEqual(abs(cell.mse - expected), 1e-10 * max(cell.mse, 1e-300))
                self.assertGreaterEqual(cell.mse, 0)

    def test_root_shared_by_both_variants(self):
        cfg = small_config(N=3, estimators=GG_FAMILY, k_grid=[40])
        result = run_experiment(cfg)

        roots = [
            gg_estimate(sample(cfg.distribution, 200, SeededStream(master_seed=31, stream_index=r)), GGConfig(k=40, k_prime=10))
            for r in (1, 2, 3)
        ]
        self.assertEqual(result.cell('gg', 40).mean, float(np.mean([root.xi_hat for root in roots])))
        self.assertEqual(
            result.cell('gg_star', 40).mean, float(np.mean([correct_bias(root).xi_hat for root in roots]))
        )

    def test_failures_are_counted(self):
        # WeibullM(-2) is negative below its exp(-1) quantile, so Hill at k = 90 of 100 cannot take logs
        cfg = small_config(distribution=WeibullM(xi=-2), n=100, N=5, k_grid=[10, 90],
                           estimators=[EstimatorKind.HILL])
        result = run_experiment(cfg)
        self.assertEqual(result.cell('hill', 10).errors, 0)

        failed = result.cell('hill', 90)
        self.assertEqual((failed.errors, failed.successes), (5, 0))
        self.assertTrue(math.isnan(failed.mean) and math.isnan(failed.mse))
        self.assertIn('hill,90,,,5\n', result.to_csv())

    def test_csv_layout(self):
        text = run_experiment(small_config(N=2, estimators=GG_FAMILY, k_grid=[20, 40])).to_csv()
        lines = text.splitlines()
        self.assertEqual(lines[0], 'estimator,k,mean,mse,errors')
        self.assertEqual([line.split(',')[:2] for line in lines[1:]],
                         [['gg', '20'], ['gg', '40'], ['gg_star', '20'], ['gg_star', '40']])

    def test_csv_round_trip(self):
        text = run_experiment(small_config(N=4)).to_csv()
        reparsed = pd.read_csv(io.StringIO(text), float_precision='round_trip').to_csv(index=False, lineterminator='\n')
        self.assertEqual(reparsed, text)


class KsDistanceTests(SimpleTestCase):
    def test_midpoint_quantiles(self):
        law = limit_law(1.0, 4.0)
        m = 50
        values = limit_quantile(law, (np.arange(1, m + 1) - 0.5) / m)
        self.assertAlmostEqual(ks_distance(values, law), 0.5 / m, delta=1e-12)

    def test_single_value_at_median(self):
        law = limit_law(-1.0, 4.0)
        self.assertAlmostEqual(ks_distance([limit_quantile(law, 0.5)], law), 0.5, delta=1e-12)

    def test_uniforms_through_quantile(self):
        law = limit_law(-0.25, 4.0)
        u = SeededStream(master_seed=8, stream_index=0).uniforms(10 ** 4)
        self.assertLess(ks_distance(limit_quantile(law, u), law), 0.02)

    def test_empty(self):
        with self.assertRaises(DomainError):
            ks_distance([], limit_law(1.0, 4.0))


class RunAsymptoticCheckTests(SimpleTestCase):
    def test_single_replicate(self):
        result = run_asymptotic_check(WeibullM(xi=-1), n=400, N=1, k=40, c=4, seed=3)
        (x,) = result.values
        F = limit_cdf(result.law, x)
        self.assertAlmostEqual(result.ks_distance, max(F, 1 - F), delta=1e-12)
        self.assertEqual(result.error_count, 0)
        self.assertEqual(result.k_prime, 10)

    def test_standardizes_with_true_index(self):
        spec = Frechet(xi=2)
        result = run_asymptotic_check(spec, n=300, N=3, k=30, c=4, seed=9)
        roots = [
            gg_estimate(sample(spec, 300, SeededStream(master_seed=9, stream_index=r)), GGConfig(k=30, k_prime=7)).xi_hat
            for r in (1, 2, 3)
        ]
        rate = (1 - 30 ** -2) / 2 * math.log(30)
        np.testing.assert_allclose(result.values, sorted(rate * (x - 2) for x in roots), rtol=1e-12)
        self.assertAlmostEqual(result.law.c, 30 / 7)

    def test_half_negative_unsupported(self):
        with self.assertRaises(UnsupportedLawError):
            run_asymptotic_check(WeibullM(xi=-0.5), n=400, N=5, k=40, c=4, seed=1)

    def test_parallel_matches_sequential(self):
        args = dict(n=300, N=16, k=40, c=4, seed=5)
        self.assertEqual(
            run_asymptotic_check(StandardNormal(), workers=1, **args),
            run_asymptotic_check(StandardNormal(), workers=3, **args),
        )

    def test_csv(self):
        result = run_asymptotic_check(Burr(w=1, tau=1, lam=1), n=300, N=4, k=40, c=4, seed=2)
        lines = result.to_csv().splitlines()
        self.assertEqual(lines[0], 'value')
        self.assertEqual(len(lines), 6)
        self.assertEqual(lines[-1], f"ks_distance,{result.ks_distance!r}")
        self.assertEqual([float(v) for v in lines[1:-1]], result.values)

    def test_invalid_ratio(self):
        with self.assertRaises(ConfigError):
            run_asymptotic_check(Frechet(xi=1), n=400, N=5, k=7, c=4, seed=1)


class PresetTests(SimpleTestCase):
    def test_all_presets_are_valid(self):
        for name in PRESETS:
            with self.subTest(preset=name):
                cfg = preset_config(name)
                cfg.validate_grid()
                self.assertEqual((cfg.n, cfg.N, cfg.c, cfg.master_seed), (500, 100, 4.0, DEFAULT_SEED))

    def test_reversed_burr_rate_presets_share_index(self):
        for name in ('rate-reversed-burr-1', 'rate-reversed-burr-2', 'rate-reversed-burr-3'):
            self.assertAlmostEqual(preset_config(name).distribution.true_xi, -1.0, places=12)

    def test_overrides(self):
        cfg = preset_config('bias-frechet', seed=7, N=5, k_grid=[40])
        self.assertEqual((cfg.master_seed, cfg.N, cfg.k_grid), (7, 5, [40]))
        self.assertEqual(preset_config('compare-burr', n=1000).k_grid[-1], 248)

    def test_unknown(self):
        with self.assertRaisesRegex(ConfigError, "'nope'"):
            preset_config('nope')


@tag('slow')
class LimitLawAcceptanceTests(SimpleTestCase):
    def test_strongly_negative_index(self):
        spec = WeibullM(xi=-1)
        coarse = run_asymptotic_check(spec, n=5000, N=2000, k=500, c=4, seed=101, workers=4)
        fine = run_asymptotic_check(spec, n=20000, N=2000, k=500, c=4, seed=101, workers=4)
        self.assertLess(fine.ks_distance, 0.15)
        self.assertLess(fine.ks_distance, coarse.ks_distance)

    def test_positive_index(self):
        spec = Frechet(xi=3)
        coarse = run_asymptotic_check(spec, n=5000, N=2000, k=500, c=4, seed=202, workers=4)
        fine = run_asymptotic_check(spec, n=20000, N=2000, k=2000, c=4, seed=202, workers=4)
        self.assertLess(fine.ks_distance, coarse.ks_distance)
        self.assertLess(fine.ks_distance, 0.25)


@tag('slow')
class ConsistencyAcceptanceTests(SimpleTestCase):
    def test_median_error_shrinks(self):
        for spec in (Burr(w=1, tau=1, lam=1), StandardNormal(), WeibullM(xi=-0.25), WeibullM(xi=-2)):
            errors = []
            for n, k in ((500, 100), (100000, 1000)):
                cfg = ExperimentConfig(
                    distribution=spec, n=n, N=200, c=4, k_grid=[k],
                    estimators=[EstimatorKind.GG], master_seed=303,
                )
                errors.append(run_experiment(cfg, workers=4).cell('gg', k).median_abs_error)
            with self.subTest(spec=spec.label()):
                self.assertGreater(errors[0], errors[1])


@tag('slow')
class SimulationStudyAcceptanceTests(SimpleTestCase):
    def test_bias_correction_helps_frechet(self):
        result = run_experiment(preset_config('bias-frechet'), workers=4)
        gg_bias = np.nanmean([abs(result.cell('gg', k).bias) for k in result.config.k_grid])
        star_bias = np.nanmean([abs(result.cell('gg_star', k).bias) for k in result.config.k_grid])
        self.assertLessEqual(star_bias, gg_bias)

    def test_corrected_estimator_mse_strong_negative(self):
        result = run_experiment(preset_config('compare-weibullm-strong'), workers=4)
        star = grid_average(result, 'gg_star', 'mse')
        self.assertLessEqual(star, grid_average(result, 'pickands', 'mse'))
        self.assertLessEqual(star, grid_average(result, 'moment', 'mse'))
