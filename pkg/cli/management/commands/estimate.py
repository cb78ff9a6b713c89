import logging

import pandas as pd
from django.conf import settings

from cli.config import parse_estimators, parse_k_grid
from cli.management.commands._base import TailIndexCommand
from estimators.dispatch import estimate
from estimators.models import EstimatorKind
from samples.loaders import SampleFormat, load_sample
from tailindex.exceptions import ConfigError

log = logging.getLogger(__name__)

COLUMNS = ['estimator', 'k', 'k_prime', 'xi_hat', 'error']


def _parse_format(text: str):
    if text == 'plain':
        return SampleFormat.PLAIN, None
    kind, sep, column = text.partition(':')
    if kind == 'csv' and sep and column:
        return SampleFormat.CSV_COLUMN, column
    raise ConfigError(f"--format must be 'plain' or 'csv:<column>', got {text!r}")


class Command(TailIndexCommand):
    help = "Estimate the extreme value index of a data file; prints estimator,k,k_prime,xi_hat,error rows"

    def add_arguments(self, parser):
        parser.add_argument('--input', required=True, help="data file")
        parser.add_argument('--format', default='plain', help="plain (default) or csv:<column>")
        parser.add_argument(
            '--estimator', default='all', choices=[e.value for e in EstimatorKind] + ['all'],
        )
        k_group = parser.add_mutually_exclusive_group(required=True)
        k_group.add_argument('--k', type=int, help="number of upper order statistics")
        k_group.add_argument('--k-grid', dest='k_grid', help="start:stop:step, stop inclusive")
        parser.add_argument('--c', type=float, default=None, help="ratio k/k' of the root estimators")

    def run(self, **options):
        fmt, column = _parse_format(options['format'])
        if options['k'] is not None:
            if options['k'] < 1:
                raise ConfigError(f"--k must be at least 1, got {options['k']}")
            k_grid = [options['k']]
        else:
            k_grid = parse_k_grid(options['k_grid'])
        c = options['c'] if options['c'] is not None else settings.TAILINDEX['DEFAULT_C']
        if not c > 1:
            raise ConfigError(f"--c must exceed 1, got {c}")

        kinds = parse_estimators(options['estimator'])
        sample = load_sample(options['input'], fmt, column)

        rows = []
        for kind in kinds:
            for k in k_grid:
                try:
                    result = estimate(sample, kind, k, c)
                    rows.append([kind.value, k, result.k_prime, result.xi_hat, None])
                except ValueError as e:
                    log.warning(f"{kind.value} at k={k}: {e}")
                    rows.append([kind.value, k, None, None, e.__class__.__name__])

        frame = pd.DataFrame(rows, columns=COLUMNS).astype({'k_prime': 'Int64', 'xi_hat': float})
        self.write_output(frame.to_csv(index=False, lineterminator='\n'))
