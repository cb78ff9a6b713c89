import re

from pydantic import TypeAdapter, ValidationError

from distributions.models import FAMILIES, BaseFamily, DistributionSpec
from tailindex.exceptions import ConfigError

SPEC_PATTERN = re.compile(r'^\s*([A-Za-z_]+)\s*(?:\((.*)\))?\s*$')

FAMILY_ALIASES = {
    'weibull_m': 'weibullm',
    'gev': 'weibullm',
    'normal': 'standardnormal',
    'standard_normal': 'standardnormal',
    'reversed_burr': 'reversedburr',
}

_adapter = TypeAdapter(DistributionSpec)


def parse_distribution(text: str) -> BaseFamily:
    """
    Parse `family(name=value, ...)`, e.g. `frechet(xi=3)` or
    `reversedburr(w=1, tau=0.5, lambda=2, x_f=10)`.
    """
    match = SPEC_PATTERN.match(text)
    if not match:
        raise ConfigError(f"malformed distribution spec {text!r}")

    family = match.group(1).lower()
    family = FAMILY_ALIASES.get(family, family)
    if family not in FAMILIES:
        raise ConfigError(
            f"unknown distribution family {match.group(1)!r}; known: {', '.join(FAMILIES)}"
        )

    params = {}
    body = (match.group(2) or '').strip()
    for item in filter(None, (part.strip() for part in body.split(','))):
        name, sep, value = item.partition('=')
        if not sep:
            raise ConfigError(f"expected name=value in {text!r}, got {item!r}")
        try:
            params[name.strip()] = float(value)
        except ValueError:
            raise ConfigError(f"parameter {name.strip()!r} is not a number: {value.strip()!r}") from None

    try:
        return _adapter.validate_python({'family': family, **params})
    except ValidationError as e:
        raise ConfigError(f"invalid parameters for {family}: {e}") from e
