import pandas as pd

from cli.management.commands._base import TailIndexCommand
from distributions.models import FAMILIES
from montecarlo.presets import describe, preset_names


def family_table() -> pd.DataFrame:
    rows = []
    for name, cls in FAMILIES.items():
        params = ', '.join(field.alias or field_name for field_name, field in cls.model_fields.items() if field_name != 'family')
        rows.append({
            'family': f"{cls.display_name} ({name})",
            'parameters': params or '-',
            'xi': cls.xi_formula,
            'model': f"Model {cls.tail_model}",
            'beta': f"β={cls.beta_formula}",
        })
    return pd.DataFrame(rows)


class Command(TailIndexCommand):
    help = "List the distribution families with their index, second-order model and beta, then the presets"

    def run(self, **options):
        self.stdout.write(family_table().to_string(index=False))
        self.stdout.write('')
        self.stdout.write('presets:')
        for name in preset_names():
            self.stdout.write(f"  {describe(name)}")
