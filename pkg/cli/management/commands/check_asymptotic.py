from django.conf import settings

from cli.config import random_seed
from cli.management.commands._base import TailIndexCommand
from distributions.parsing import parse_distribution
from montecarlo.engine import run_asymptotic_check


class Command(TailIndexCommand):
    help = (
        "Compare standardized root-estimator errors with their limit law; "
        "prints the sorted values and a final ks_distance line"
    )

    def add_arguments(self, parser):
        parser.add_argument('--distribution', required=True, help="e.g. weibullm(xi=-1)")
        parser.add_argument('--n', type=int, required=True)
        parser.add_argument('--N', type=int, required=True)
        parser.add_argument('--k', type=int, required=True)
        parser.add_argument('--c', type=float, default=None)
        parser.add_argument('--seed', type=int, default=None)
        parser.add_argument('--workers', type=int, default=None)
        parser.add_argument('--out', default='-', help="output file, '-' for standard output")

    def run(self, **options):
        distribution = parse_distribution(options['distribution'])
        c = options['c'] if options['c'] is not None else settings.TAILINDEX['DEFAULT_C']
        seed = options['seed'] if options['seed'] is not None else random_seed()
        workers = options['workers'] if options['workers'] is not None else settings.TAILINDEX['WORKERS']
        self.stderr.write(
            f"check_asymptotic: distribution={distribution.label()} n={options['n']} N={options['N']} "
            f"k={options['k']} c={c:g} seed={seed}"
        )

        result = run_asymptotic_check(
            distribution, options['n'], options['N'], options['k'], c, seed, workers=workers,
        )
        self.stderr.write(
            f"check_asymptotic: regime={result.law.regime.value} ks_distance={result.ks_distance:.6f} "
            f"p_value={result.p_value:.4g} errors={result.error_count}"
        )
        self.write_output(result.to_csv(), options['out'])
