import logging
from enum import Enum
from pathlib import Path
from typing import Optional, Union

import pandas as pd

from samples.models import OrderedSample
from tailindex.exceptions import SampleIngestionError

log = logging.getLogger(__name__)


class SampleFormat(str, Enum):
    PLAIN = 'plain'
    CSV_COLUMN = 'csv-column'


def _parse_float(token: str, line_no: int) -> float:
    try:
        return float(token)
    except ValueError:
        raise SampleIngestionError(f"cannot parse {token!r} at line {line_no}") from None


def _read_plain(path: Path) -> list:
    values = []
    with path.open(encoding='utf8') as handle:
        for line_no, line in enumerate(handle, start=1):
            token = line.strip()
            if not token or token.startswith('#'):
                continue
            values.append(_parse_float(token, line_no))
    return values


def _read_csv_column(path: Path, column: str) -> list:
    # blank lines stay as empty rows so that data row r sits on line r + 2
    frame = pd.read_csv(path, dtype=str, keep_default_na=False, skip_blank_lines=False)
    if column not in frame.columns:
        raise SampleIngestionError(
            f"column {column!r} not found in {path.name}; available: {', '.join(frame.columns)}"
        )
    return [
        _parse_float(token.strip(), row + 2)
        for row, token in enumerate(frame[column].tolist())
        if isinstance(token, str) and token.strip()
    ]


def load_sample(
    path: Union[str, Path],
    format: Union[SampleFormat, str] = SampleFormat.PLAIN,
    column: Optional[str] = None,
) -> OrderedSample:
    """
    Read a sample from disk.

    plain:       one decimal number per line; blank lines and '#' lines skipped.
    csv-column:  the named column of a comma-separated file with a header row.
    """
    path = Path(path)
    format = SampleFormat(format)

    try:
        if format is SampleFormat.PLAIN:
            values = _read_plain(path)
        else:
            if not column:
                raise SampleIngestionError("csv-column format needs a column name")
            values = _read_csv_column(path, column)
    except (OSError, UnicodeDecodeError) as e:
        raise SampleIngestionError(f"cannot read {path}: {e}") from e
    except (pd.errors.ParserError, pd.errors.EmptyDataError) as e:
        raise SampleIngestionError(f"malformed CSV file {path}: {e}") from e

    sample = OrderedSample.from_raw(values)
    log.info(f"Loaded {sample.n} values from {path}")
    return sample
