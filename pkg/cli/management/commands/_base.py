import logging
import sys

from django.core.management.base import BaseCommand, CommandError
from pydantic import ValidationError

from tailindex.exceptions import ConfigError, TailIndexError

log = logging.getLogger(__name__)

EXIT_USAGE = 1
EXIT_DATA = 2


class TailIndexCommand(BaseCommand):
    """
    Base for the tailindex commands. Subclasses implement `run`; configuration
    errors exit with 1, data and domain errors with 2, and usage errors from
    argparse exit with 1 as well instead of argparse's own 2.
    """

    requires_system_checks = []

    def create_parser(self, prog_name, subcommand, **kwargs):
        parser = super().create_parser(prog_name, subcommand, **kwargs)
        # raise CommandError instead of calling sys.exit(2)
        parser.called_from_command_line = False
        return parser

    def run_from_argv(self, argv):
        try:
            super().run_from_argv(argv)
        except CommandError as e:
            self.stderr.write(f"{e.__class__.__name__}: {e}")
            sys.exit(e.returncode)

    def handle(self, *args, **options):
        try:
            self.run(**options)
        except (ConfigError, ValidationError) as e:
            log.error(f"{self.__module__.rsplit('.', 1)[-1]}: {e}")
            raise CommandError(str(e), returncode=EXIT_USAGE) from e
        except TailIndexError as e:
            log.error(f"{self.__module__.rsplit('.', 1)[-1]}: {e}")
            raise CommandError(str(e), returncode=EXIT_DATA) from e

    def run(self, **options):
        raise NotImplementedError

    def write_output(self, text: str, out: str = '-') -> None:
        """CSV goes to standard output for `-`, otherwise to the file `out`."""
        if out == '-':
            self.stdout.write(text, ending='')
            return
        try:
            with open(out, 'w', encoding='utf8', newline='') as handle:
                handle.write(text)
        except OSError as e:
            raise ConfigError(f"cannot write {out}: {e}") from e
        log.info(f"Wrote {out}")
