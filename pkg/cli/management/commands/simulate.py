import logging

from django.conf import settings

from cli.config import build_experiment, coerce, read_config_file
from cli.management.commands._base import TailIndexCommand
from montecarlo.engine import run_experiment
from montecarlo.presets import preset_names

log = logging.getLogger(__name__)

# flag dest -> config key
FLAG_KEYS = {
    'preset': 'preset',
    'distribution': 'distribution',
    'n': 'n',
    'N': 'N',
    'c': 'c',
    'seed': 'seed',
    'estimators': 'estimators',
    'k_grid': 'k_grid',
    'workers': 'workers',
}


class Command(TailIndexCommand):
    help = "Run a Monte Carlo study and write estimator,k,mean,mse,errors rows"

    def add_arguments(self, parser):
        parser.add_argument('--config', help="key = value file")
        parser.add_argument('--preset', choices=preset_names())
        parser.add_argument('--distribution', help="e.g. frechet(xi=3)")
        parser.add_argument('--n', help="sample size")
        parser.add_argument('--N', help="number of replicates")
        parser.add_argument('--c', help="ratio k/k'")
        parser.add_argument('--seed', help="master seed")
        parser.add_argument('--estimators', help="comma list or 'all'")
        parser.add_argument('--k-grid', dest='k_grid', help="start:stop:step, stop inclusive")
        parser.add_argument('--workers', help="replicate threads")
        parser.add_argument('--out', default='-', help="output file, '-' for standard output")

    def run(self, **options):
        values = read_config_file(options['config']) if options['config'] else {}
        flags = {key: options[dest] for dest, key in FLAG_KEYS.items() if options.get(dest) is not None}
        values.update(coerce({key: str(value) for key, value in flags.items()}))

        workers = values.get('workers', settings.TAILINDEX['WORKERS'])
        cfg = build_experiment(values, settings.TAILINDEX['DEFAULT_C'])
        self.stderr.write(f"simulate: {cfg.echo()} workers={workers}")

        result = run_experiment(cfg, workers=workers)
        self.write_output(result.to_csv(), options['out'])
