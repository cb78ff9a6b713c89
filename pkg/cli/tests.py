import io
import math
import tempfile
from pathlib import Path

import numpy as np
import pandas as pd
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

from asymptotics.laws import limit_cdf, limit_law
from cli.config import build_experiment, coerce, parse_estimators, parse_k_grid
from estimators.models import EstimatorKind
from montecarlo.presets import DEFAULT_SEED
from tailindex.exceptions import ConfigError


def run(name, *args, **options):
    out, err = io.StringIO(), io.StringIO()
    call_command(name, *args, stdout=out, stderr=err, **options)
    return out.getvalue(), err.getvalue()


class CommandTestCase(SimpleTestCase):
    def setUp(self):
        self._tmp = tempfile.TemporaryDirectory()
        self.tmp = Path(self._tmp.name)

    def tearDown(self):
        self._tmp.cleanup()

    def write(self, name, text):
        path = self.tmp / name
        path.write_text(text, encoding='utf8')
        return str(path)

    def assertExitCode(self, code, name, **options):
        with self.assertRaises(CommandError) as cm:
            run(name, **options)
        self.assertEqual(cm.exception.returncode, code)
        return cm.exception


class ParseKGridTests(SimpleTestCase):
    def test_inclusive(self):
        self.assertEqual(parse_k_grid('8:20:4'), [8, 12, 16, 20])
        self.assertEqual(parse_k_grid('8:18:4'), [8, 12, 16])
        self.assertEqual(parse_k_grid('3:5'), [3, 4, 5])

    def test_malformed(self):
        for text in ('8', '8:x:1', '0:10:1', '10:8:1', '1:5:0', '1:2:3:4'):
            with self.subTest(text=text), self.assertRaises(ConfigError):
                parse_k_grid(text)


class ConfigTests(SimpleTestCase):
    def test_estimators(self):
        self.assertEqual(parse_estimators('gg, hill'), [EstimatorKind.GG, EstimatorKind.HILL])
        self.assertEqual(parse_estimators('all'), list(EstimatorKind))
        with self.assertRaisesRegex(ConfigError, 'unknown estimator'):
            parse_estimators('gg,dekkers')

    def test_unknown_key(self):
        with self.assertRaisesRegex(ConfigError, "'replicates'"):
            coerce({'replicates': '100'})

    def test_typed_values(self):
        values = coerce({'n': '500', 'c': '4', 'k_grid': '8:16:8', 'distribution': 'frechet(xi=3)'})
        self.assertEqual(values['n'], 500)
        self.assertEqual(values['c'], 4.0)
        self.assertEqual(values['k_grid'], [8, 16])
        self.assertEqual(values['distribution'].true_xi, 3.0)
        with self.assertRaises(ConfigError):
            coerce({'n': '5e2'})

    def test_defaults(self):
        cfg = build_experiment(coerce({'distribution': 'normal', 'n': '500', 'N': '10', 'seed': '4'}), 4.0)
        self.assertEqual(cfg.estimators, [EstimatorKind.GG, EstimatorKind.GG_STAR])
        self.assertEqual((cfg.k_grid[0], cfg.k_grid[-1]), (8, 498))
        self.assertEqual(cfg.master_seed, 4)

    def test_seed_is_drawn_when_missing(self):
        cfg = build_experiment(coerce({'distribution': 'normal', 'n': '100', 'N': '1'}), 4.0)
        self.assertTrue(0 <= cfg.master_seed < 2 ** 64)

    def test_preset_keeps_documented_seed(self):
        self.assertEqual(build_experiment(coerce({'preset': 'bias-frechet'}), 4.0).master_seed, DEFAULT_SEED)
        self.assertEqual(build_experiment(coerce({'preset': 'bias-frechet', 'seed': '9'}), 4.0).master_seed, 9)

    def test_missing_keys(self):
        with self.assertRaisesRegex(ConfigError, 'N'):
            build_experiment(coerce({'distribution': 'normal', 'n': '100'}), 4.0)


class EstimateCommandTests(CommandTestCase):
    def test_fixed_point(self):
        values = -np.log(np.arange(1, 101))
        path = self.write('fixedpoint.txt', '\n'.join(repr(float(v)) for v in values) + '\n')

        out, _ = run('estimate', input=path, estimator='gg', k=40, c=4.0)
        frame = pd.read_csv(io.StringIO(out))
        self.assertEqual(list(frame.columns), ['estimator', 'k', 'k_prime', 'xi_hat', 'error'])
        row = frame.iloc[0]
        self.assertEqual((row.estimator, row.k, row.k_prime), ('gg', 40, 10))
        self.assertAlmostEqual(row.xi_hat, 0.0, delta=1e-8)
        self.assertTrue(pd.isna(row.error))

    def test_all_estimators_on_tiny_sample(self):
        path = self.write('tiny.txt', '1\n2\n# comment\n\n4\n8\n')
        out, _ = run('estimate', input=path, estimator='all', k=3)
        frame = pd.read_csv(io.StringIO(out)).set_index('estimator')

        self.assertEqual(list(frame.index), ['gg', 'gg_star', 'hill', 'pickands', 'moment', 'zipf'])
        self.assertAlmostEqual(frame.loc['hill', 'xi_hat'], 2 * math.log(2), places=12)
        self.assertAlmostEqual(frame.loc['moment', 'xi_hat'], 2 * math.log(2) - 2.5, places=12)
        self.assertEqual(frame.loc['gg', 'error'], 'ConfigError')
        self.assertEqual(frame.loc['pickands', 'error'], 'DomainError')
        self.assertTrue(pd.isna(frame.loc['hill', 'error']))
        self.assertTrue(pd.isna(frame.loc['pickands', 'xi_hat']))
        self.assertTrue(pd.isna(frame.loc['hill', 'k_prime']))

    def test_error_rows_are_empty_fields(self):
        path = self.write('tiny.txt', '1\n2\n4\n8\n')
        out, _ = run('estimate', input=path, estimator='gg', k=3)
        self.assertEqual(out.splitlines()[1], 'gg,3,,,ConfigError')

    def test_csv_column_and_grid(self):
        rows = ['id,loss'] + [f"{i},{v!r}" for i, v in enumerate(np.exp(np.arange(1, 21) / 4.0))]
        path = self.write('losses.csv', '\n'.join(rows) + '\n')

        out, _ = run('estimate', input=path, format='csv:loss', estimator='hill', k_grid='2:6:2')
        frame = pd.read_csv(io.StringIO(out))
        self.assertEqual(frame.k.tolist(), [2, 4, 6])
        self.assertTrue(frame.error.isna().all())

    def test_usage_errors(self):
        path = self.write('tiny.txt', '1\n2\n4\n8\n')
        self.assertExitCode(1, 'estimate', input=path, k=0)
        self.assertExitCode(1, 'estimate', input=path, k=3, format='json')
        self.assertExitCode(1, 'estimate', input=path, k=3, c=1.0)
        self.assertExitCode(1, 'estimate', input=path, k_grid='5:1:1')
        self.assertExitCode(1, 'estimate', input=path, k=3, estimator='dekkers')

    def test_data_errors(self):
        self.assertExitCode(2, 'estimate', input=str(self.tmp / 'missing.txt'), k=3)
        path = self.write('bad.txt', '1\n2\nabc\n')
        error = self.assertExitCode(2, 'estimate', input=path, k=1)
        self.assertIn('line 3', str(error))

    def test_undecodable_input(self):
        path = self.tmp / 'bytes.txt'
        path.write_bytes(b'1\n\xff\xfe2\n3\n')
        self.assertExitCode(2, 'estimate', input=str(path), k=1)

    def test_output_round_trips(self):
        values = -np.log(np.arange(1, 101))
        path = self.write('fixedpoint.txt', '\n'.join(repr(float(v)) for v in values) + '\n')
        out, _ = run('estimate', input=path, estimator='all', k_grid='3:40:37')

        frame = pd.read_csv(io.StringIO(out), dtype={'k_prime': 'Int64'}, float_precision='round_trip')
        self.assertTrue(frame.error.isna().any() and frame.error.notna().any())
        self.assertEqual(frame.to_csv(index=False, lineterminator='\n'), out)


class SimulateCommandTests(CommandTestCase):
    CONFIG = (
        "# small study\n"
        "distribution = frechet(xi=1)\n"
        "n = 200\n"
        "N = 3\n"
        "seed = 5\n"
        "estimators = hill,gg\n"
        "k_grid = 20:40:10\n"
    )

    def test_config_file(self):
        path = self.write('study.env', self.CONFIG)
        out, err = run('simulate', config=path)

        lines = out.splitlines()
        self.assertEqual(lines[0], 'estimator,k,mean,mse,errors')
        self.assertEqual([line.split(',')[:2] for line in lines[1:]],
                         [['hill', '20'], ['hill', '30'], ['hill', '40'], ['gg', '20'], ['gg', '30'], ['gg', '40']])
        self.assertIn('seed=5', err)
        self.assertEqual(run('simulate', config=path)[0], out)

    def test_flags_override_file(self):
        path = self.write('study.env', self.CONFIG)
        out, err = run('simulate', config=path, k_grid='40:40:1', seed=6)
        self.assertEqual(len(out.splitlines()), 3)
        self.assertIn('seed=6', err)

    def test_preset(self):
        out, err = run('simulate', preset='bias-frechet', N=2, k_grid='40:48:8', seed=3)
        self.assertEqual([line.split(',')[:2] for line in out.splitlines()[1:]],
                         [['gg', '40'], ['gg', '48'], ['gg_star', '40'], ['gg_star', '48']])
        self.assertIn('frechet(xi=3)', err)

    def test_preset_default_seed(self):
        _, err = run('simulate', preset='bias-frechet', N=1, k_grid='40:40:1')
        self.assertIn(f'seed={DEFAULT_SEED}', err)

    def test_writes_file(self):
        target = self.tmp / 'result.csv'
        out, _ = run('simulate', config=self.write('study.env', self.CONFIG), out=str(target))
        self.assertEqual(out, '')
        self.assertTrue(target.read_text().startswith('estimator,k,mean,mse,errors\n'))

    def test_config_errors(self):
        path = self.write('bad.env', self.CONFIG.replace('frechet(xi=1)', 'gumbel(mu=0)'))
        error = self.assertExitCode(1, 'simulate', config=path)
        self.assertIn('gumbel', str(error))

        self.assertExitCode(1, 'simulate', config=self.write('extra.env', self.CONFIG + 'alpha = 0.05\n'))
        self.assertExitCode(1, 'simulate', config=str(self.tmp / 'missing.env'))
        self.assertExitCode(1, 'simulate', distribution='normal', n=100)
        self.assertExitCode(1, 'simulate', distribution='normal', n=100, N=2, k_grid='2:10:1')
        self.assertExitCode(1, 'simulate', preset='bias-nothing')


class CheckAsymptoticCommandTests(CommandTestCase):
    def test_unsupported_law(self):
        error = self.assertExitCode(2, 'check_asymptotic', distribution='weibullm(xi=-0.5)', n=400, N=5, k=40, seed=1)
        self.assertIn('no explicit distribution function', str(error))

    def test_single_replicate(self):
        out, err = run('check_asymptotic', distribution='weibullm(xi=-1)', n=400, N=1, k=40, c=4.0, seed=3)
        lines = out.splitlines()
        self.assertEqual(lines[0], 'value')
        self.assertTrue(lines[-1].startswith('ks_distance,'))

        value = float(lines[1])
        F = limit_cdf(limit_law(-1.0, 4.0), value)
        self.assertAlmostEqual(float(lines[-1].split(',')[1]), max(F, 1 - F), delta=1e-12)
        self.assertIn('seed=3', err)

    def test_bad_ratio(self):
        self.assertExitCode(1, 'check_asymptotic', distribution='frechet(xi=1)', n=400, N=5, k=7, seed=1)


class ListDistributionsCommandTests(SimpleTestCase):
    def line_with(self, text, needle):
        return next(line for line in text.splitlines() if needle in line)

    def test_table(self):
        out, _ = run('list_distributions')

        burr = self.line_with(out, 'Burr (burr)')
        for part in ('ξ=1/(λτ)', 'Model A', 'β=1/λ', 'lambda'):
            self.assertIn(part, burr)

        normal = self.line_with(out, 'Normal (standardnormal)')
        for part in ('ξ=0', 'Model B', 'β=1/2'):
            self.assertIn(part, normal)

        self.assertIn('bias-frechet: frechet(xi=3) [gg, gg_star]', out)
