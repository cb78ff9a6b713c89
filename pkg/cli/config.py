"""
Experiment configuration for `simulate`.

Config files are flat `key = value` text with `#` comments, read with
python-dotenv. Values from the file, a named preset and the command line are
merged in the order preset < file < flags.
"""

import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import numpy as np
from dotenv import dotenv_values

from distributions.parsing import parse_distribution
from estimators.models import EstimatorKind
from montecarlo.engine import default_k_grid
from montecarlo.models import ExperimentConfig
from montecarlo.presets import preset_config
from tailindex.exceptions import ConfigError

log = logging.getLogger(__name__)

CONFIG_KEYS = ('distribution', 'n', 'N', 'c', 'seed', 'estimators', 'k_grid', 'workers', 'preset')
DEFAULT_ESTIMATORS = (EstimatorKind.GG, EstimatorKind.GG_STAR)


def parse_k_grid(text: str) -> List[int]:
    """`start:stop:step`, stop inclusive; `start:stop` steps by 1."""
    parts = text.strip().split(':')
    if len(parts) not in (2, 3):
        raise ConfigError(f"k-grid must look like start:stop:step, got {text!r}")
    try:
        start, stop, step = (int(p) for p in parts + ['1'] * (3 - len(parts)))
    except ValueError:
        raise ConfigError(f"k-grid bounds must be integers, got {text!r}") from None
    if start < 1 or step < 1 or stop < start:
        raise ConfigError(f"k-grid needs 1 <= start <= stop and step >= 1, got {text!r}")
    return list(range(start, stop + 1, step))


def parse_estimators(text: str) -> List[EstimatorKind]:
    names = [name.strip().lower() for name in text.split(',') if name.strip()]
    if names == ['all']:
        return list(EstimatorKind)
    try:
        return [EstimatorKind(name) for name in names]
    except ValueError:
        known = ', '.join(e.value for e in EstimatorKind)
        raise ConfigError(f"unknown estimator in {text!r}; known: {known}, all") from None


def _int(key: str, value: str) -> int:
    try:
        return int(value)
    except (TypeError, ValueError):
        raise ConfigError(f"{key} must be an integer, got {value!r}") from None


def _float(key: str, value: str) -> float:
    try:
        return float(value)
    except (TypeError, ValueError):
        raise ConfigError(f"{key} must be a number, got {value!r}") from None


def coerce(raw: Dict[str, Optional[str]]) -> Dict[str, Any]:
    """Typed values for the recognised keys; any other key is an error."""
    unknown = [key for key in raw if key not in CONFIG_KEYS]
    if unknown:
        raise ConfigError(f"unknown config key {unknown[0]!r}; known: {', '.join(CONFIG_KEYS)}")

    out: Dict[str, Any] = {}
    for key, value in raw.items():
        if value is None or str(value).strip() == '':
            raise ConfigError(f"config key {key!r} has no value")
        value = str(value).strip()
        if key == 'distribution':
            out[key] = parse_distribution(value)
        elif key in ('n', 'N', 'seed', 'workers'):
            out[key] = _int(key, value)
        elif key == 'c':
            out[key] = _float(key, value)
        elif key == 'estimators':
            out[key] = parse_estimators(value)
        elif key == 'k_grid':
            out[key] = parse_k_grid(value)
        else:
            out[key] = value
    return out


def read_config_file(path: Union[str, Path]) -> Dict[str, Any]:
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"config file {path} does not exist")
    values = coerce(dict(dotenv_values(path, interpolate=False)))
    log.info(f"Read {len(values)} config keys from {path}")
    return values


def random_seed() -> int:
    return int(np.random.SeedSequence().generate_state(1, dtype=np.uint64)[0])


def build_experiment(values: Dict[str, Any], default_c: float) -> ExperimentConfig:
    """
    Turn merged config values into an ExperimentConfig. A preset keeps its
    documented seed unless one is given. Without a preset, `distribution`, `n`
    and `N` are required; the seed is drawn at random when absent and the
    k-grid defaults to `default_k_grid`.
    """
    values = dict(values)
    values.pop('workers', None)
    preset = values.pop('preset', None)
    seed = values.pop('seed', None)

    fields = {name: values[name] for name in ('distribution', 'n', 'N', 'c', 'estimators', 'k_grid') if name in values}
    if preset is not None:
        return preset_config(preset, seed=seed, **fields)

    if seed is None:
        seed = random_seed()
        log.info(f"No seed given, drew master seed {seed}")

    missing = [name for name in ('distribution', 'n', 'N') if name not in fields]
    if missing:
        raise ConfigError(f"missing config key(s) {', '.join(missing)} (or give a preset)")
    fields.setdefault('c', default_c)
    fields.setdefault('estimators', list(DEFAULT_ESTIMATORS))
    if 'k_grid' not in fields:
        fields['k_grid'] = default_k_grid(fields['n'], fields['c'], fields['estimators'])
    return ExperimentConfig(master_seed=seed, **fields)
