import logging

from distributions.models import BaseFamily, SeededStream
from samples.models import OrderedSample

log = logging.getLogger(__name__)


def sample(spec: BaseFamily, n: int, stream: SeededStream) -> OrderedSample:
    """
    Draw n i.i.d. values by inverse-transform sampling and return them sorted.

    The result depends only on (spec, n, stream).
    """
    if n < 2:
        raise ValueError(f"sample size must be at least 2, got {n}")

    draws = spec.quantile(stream.uniforms(n))
    log.debug(f"Drew {n} values from {spec.label()} (stream {stream.stream_index})")
    return OrderedSample.from_raw(draws)
